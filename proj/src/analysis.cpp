#include "wgif/analysis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wgif/element.hpp"
#include "wgif/errors.hpp"
#include "wgif/family.hpp"
#include "wgif/quadrature.hpp"
#include "wgif/solver.hpp"

namespace wgif {

ErrorRecord error_norms(const TriMesh& mesh, const ProblemSpec& spec, const Eigen::VectorXd& solution,
                        const DofMap& dofs) {
  if (static_cast<std::size_t>(solution.size()) != dofs.total_unknowns)
    throw DataError("solution length does not match the degree-of-freedom map");
  const std::vector<double> dirichlet = apply_dirichlet(spec, mesh, dofs);
  ErrorRecord rec;
  rec.h_max = mesh.h_max();
  double l2 = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const RegionId r = mesh.triangles()[t].region;
    const Point2 c = mesh.centroid(t);
    if (spec.singularity && distance(*spec.singularity, c) < 1e-12) {
      ++rec.excluded;
      continue;
    }
    const RT0Basis basis(mesh.corners(t), static_cast<long>(t));
    const LocalWG w = local_solution(mesh, dofs, dirichlet, solution, t);
    rec.linf_solution = std::max(rec.linf_solution, std::fabs(w.w0 - exact_value(spec, r, c)));
    const Vec2 g = eval_rt0(weak_gradient(basis, w), basis, c);
    const Vec2 ge = exact_gradient(spec, r, c);
    rec.linf_gradient = std::max(rec.linf_gradient, std::hypot(g.x - ge.x, g.y - ge.y));
    l2 += integrate_triangle(
        basis.corners(),
        [&](Point2 x) {
          const double d = w.w0 - exact_value(spec, r, x);
          return d * d;
        },
        triangle_rule_degree2());
  }
  rec.l2_solution = std::sqrt(l2);

  double flux = 0.0;
  const RegionData& u = spec[RegionId::Region1];
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const int lam = dofs.lambda[e];
    if (lam < 0) continue;
    const Vec2 n1 = interface_normal(mesh, e);
    const Edge& edge = mesh.edges()[e];
    flux += integrate_segment(mesh.vertices()[edge.v[0]], mesh.vertices()[edge.v[1]], [&](Point2 x) {
      const double d = solution[lam] - u.coefficient(x) * dot(exact_gradient(spec, RegionId::Region1, x), n1);
      return d * d;
    });
  }
  rec.l2_lambda_flux = std::sqrt(flux);
  return rec;
}

LevelResult solve_level(const ProblemSpec& spec, const TriMesh& mesh, int level) {
  const auto start = std::chrono::steady_clock::now();
  LevelResult out;
  out.level = level;
  out.mesh = mesh_stats(mesh);
  const DofMap dofs = build_dof_map(mesh);
  const SparseSystem sys = assemble(mesh, spec, dofs);
  const SolveReport rep = solve(sys);
  out.unknowns = dofs.total_unknowns;
  out.relative_residual = rep.relative_residual;
  out.errors = error_norms(mesh, spec, rep.solution, dofs);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double order_between(double h0, double e0, double h1, double e1) { return std::log(e0 / e1) / std::log(h0 / h1); }

std::vector<std::optional<double>> convergence_orders(const std::vector<double>& h, const std::vector<double>& e) {
  std::vector<std::optional<double>> out(h.size());
  for (std::size_t l = 1; l < h.size(); ++l) out[l] = order_between(h[l - 1], e[l - 1], h[l], e[l]);
  return out;
}

void compute_orders(StudyReport& report) {
  const auto& lv = report.levels;
  if (lv.size() < 2) throw StudyError("a convergence study needs at least two levels");
  std::vector<double> h, u, g, l2, lam;
  for (std::size_t l = 0; l < lv.size(); ++l) {
    if (l > 0 && !(lv[l].errors.h_max < lv[l - 1].errors.h_max))
      throw StudyError("h_max does not decrease from level " + std::to_string(lv[l - 1].level) + " to level " +
                       std::to_string(lv[l].level));
    h.push_back(lv[l].errors.h_max);
    u.push_back(lv[l].errors.linf_solution);
    g.push_back(lv[l].errors.linf_gradient);
    l2.push_back(lv[l].errors.l2_solution);
    lam.push_back(lv[l].errors.l2_lambda_flux);
  }
  report.order_solution = convergence_orders(h, u);
  report.order_gradient = convergence_orders(h, g);
  report.order_l2 = convergence_orders(h, l2);
  report.order_lambda = convergence_orders(h, lam);
}

double StudyReport::overall_solution() const {
  const auto& a = levels.front().errors;
  const auto& b = levels.back().errors;
  return order_between(a.h_max, a.linf_solution, b.h_max, b.linf_solution);
}

double StudyReport::overall_gradient() const {
  const auto& a = levels.front().errors;
  const auto& b = levels.back().errors;
  return order_between(a.h_max, a.linf_gradient, b.h_max, b.linf_gradient);
}

double StudyReport::lambda_order(std::size_t from, std::size_t to) const {
  const auto& a = levels.at(from).errors;
  const auto& b = levels.at(to).errors;
  return order_between(a.h_max, a.l2_lambda_flux, b.h_max, b.l2_lambda_flux);
}

StudyReport convergence_study(const ProblemSpec& spec, const std::vector<TriMesh>& meshes) {
  if (meshes.size() < 2) throw StudyError("a convergence study needs at least two levels");
  for (std::size_t l = 1; l < meshes.size(); ++l)
    if (!(meshes[l].h_max() < meshes[l - 1].h_max()))
      throw StudyError("h_max does not decrease from level " + std::to_string(l) + " to level " +
                       std::to_string(l + 1));
  StudyReport report;
  for (std::size_t l = 0; l < meshes.size(); ++l)
    report.levels.push_back(solve_level(spec, meshes[l], static_cast<int>(l) + 1));
  compute_orders(report);
  return report;
}

StudyReport convergence_study(const ProblemSpec& spec, int levels) {
  if (levels < 2) throw StudyError("a convergence study needs at least two levels");
  std::vector<TriMesh> meshes;
  for (int l = 1; l <= levels; ++l) meshes.push_back(level_mesh(spec, l));
  return convergence_study(spec, meshes);
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string fixed4(const std::optional<double>& v) {
  if (!v) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::optional<double> order_at(const std::vector<std::optional<double>>& v, std::size_t l) {
  return l < v.size() ? v[l] : std::nullopt;
}

}  // namespace

std::string render_table(const StudyReport& report, TableFormat format, const std::string& caption) {
  if (report.levels.empty()) throw StudyError("cannot render an empty study");
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << "level,h_max,linf_u,order_u,linf_grad,order_grad,l2_u,l2_lambda\n";
    for (std::size_t l = 0; l < report.levels.size(); ++l) {
      const LevelResult& r = report.levels[l];
      out << r.level << ',' << sci(r.errors.h_max) << ',' << sci(r.errors.linf_solution) << ','
          << fixed4(order_at(report.order_solution, l)) << ',' << sci(r.errors.linf_gradient) << ','
          << fixed4(order_at(report.order_gradient, l)) << ',' << sci(r.errors.l2_solution) << ','
          << sci(r.errors.l2_lambda_flux) << '\n';
    }
    return out.str();
  }
  if (!caption.empty()) out << caption << "\n\n";
  out << "| Level | h | Solution L∞ error | order | Gradient L∞ error | order | Solution L2 error | λ-flux L2 error |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (std::size_t l = 0; l < report.levels.size(); ++l) {
    const LevelResult& r = report.levels[l];
    out << "| Level " << r.level << " | " << sci(r.errors.h_max) << " | " << sci(r.errors.linf_solution) << " | "
        << fixed4(order_at(report.order_solution, l)) << " | " << sci(r.errors.linf_gradient) << " | "
        << fixed4(order_at(report.order_gradient, l)) << " | " << sci(r.errors.l2_solution) << " | "
        << sci(r.errors.l2_lambda_flux) << " |\n";
  }
  if (report.levels.size() >= 2)
    out << "\nOverall orders (first to last level): solution " << fixed4(report.overall_solution()) << ", gradient "
        << fixed4(report.overall_gradient()) << "\n";
  return out.str();
}

StudyReport parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  ++lineno;
  if (line != "level,h_max,linf_u,order_u,linf_grad,order_grad,l2_u,l2_lambda")
    throw ParseError("unexpected header", lineno);
  StudyReport report;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (f.size() != 8) throw ParseError("expected 8 fields, found " + std::to_string(f.size()), lineno);
    const auto num = [&](const std::string& s) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != s.size()) throw ParseError("malformed number '" + s + "'", lineno);
      return v;
    };
    const auto opt = [&](const std::string& s) { return s.empty() ? std::optional<double>{} : num(s); };
    LevelResult r;
    r.level = static_cast<int>(num(f[0]));
    r.errors.h_max = num(f[1]);
    r.errors.linf_solution = num(f[2]);
    r.errors.linf_gradient = num(f[4]);
    r.errors.l2_solution = num(f[6]);
    r.errors.l2_lambda_flux = num(f[7]);
    r.mesh.h_max = r.errors.h_max;
    report.levels.push_back(r);
    report.order_solution.push_back(opt(f[3]));
    report.order_gradient.push_back(opt(f[5]));
  }
  if (report.levels.empty()) throw ParseError("no data rows", lineno);
  return report;
}

}  // namespace wgif
