// Command-line driver: mesh, solve, study and stats subcommands over the builtin problems.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wgif/analysis.hpp"
#include "wgif/assembly.hpp"
#include "wgif/config.hpp"
#include "wgif/errors.hpp"
#include "wgif/family.hpp"
#include "wgif/mesh_io.hpp"
#include "wgif/output.hpp"
#include "wgif/solver.hpp"

namespace {

using namespace wgif;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumerical = 3;

// Exit code for an exception escaping a command.
int report_failure(const std::string& context, const std::exception& e) {
  std::cerr << "error: " << (context.empty() ? "" : context + ": ") << e.what() << '\n';
  if (dynamic_cast<const NumericalError*>(&e)) return kNumerical;
  return kData;
}

template <class F>
int guarded(const std::string& context, F&& f) {
  try {
    f();
    return kOk;
  } catch (const std::exception& e) {
    return report_failure(context, e);
  }
}

void print_mesh_line(int level, const MeshStats& s) {
  std::printf("level %d: h_max %.4e, triangles %zu, edges %zu, interface edges %zu, non-acute %.3f\n", level,
              s.h_max, s.n_tri, s.n_edge, s.n_interface_edge, s.nonacute_fraction);
}

int cmd_mesh(const RunConfig& c) {
  if (int rc = guarded("", [&] { validate(c, false); })) return rc;
  const ProblemSpec spec = make_problem(c);
  for (int l = 1; l <= c.levels; ++l) {
    const int rc = guarded("level " + std::to_string(l), [&] {
      std::filesystem::create_directories(c.out_dir);
      const TriMesh mesh = level_mesh(spec, l);
      write_mesh(mesh, mesh_stem(c.out_dir, l));
      print_mesh_line(l, mesh_stats(mesh));
    });
    if (rc) return rc;
  }
  return kOk;
}

int cmd_stats(const RunConfig& c) {
  if (int rc = guarded("", [&] { validate(c, true); })) return rc;
  const ProblemSpec spec = make_problem(c);
  for (int l = 1; l <= c.levels; ++l) {
    const int rc = guarded("level " + std::to_string(l), [&] { print_mesh_line(l, mesh_stats(config_mesh(c, spec, l))); });
    if (rc) return rc;
  }
  return kOk;
}

int cmd_solve(const RunConfig& c) {
  if (int rc = guarded("", [&] { validate(c, false); })) return rc;
  return guarded("level " + std::to_string(c.level), [&] {
    const ProblemSpec spec = make_problem(c);
    const TriMesh mesh = config_mesh(c, spec, c.level);
    const DofMap dofs = build_dof_map(mesh);
    const SparseSystem system = assemble(mesh, spec, dofs);
    const SolveReport report = solve(system);
    const ErrorRecord err = error_norms(mesh, spec, report.solution, dofs);

    std::filesystem::create_directories(c.out_dir);
    const std::string tag = "level" + std::to_string(c.level);
    write_file_atomic(c.out_dir / ("solution_" + tag + ".csv"),
                      solution_csv(mesh, dofs, system.dirichlet, report.solution));
    write_file_atomic(c.out_dir / ("cells_" + tag + ".csv"), cell_values_csv(mesh, dofs, report.solution));
    write_file_atomic(c.out_dir / ("solution_" + tag + ".svg"), svg_heatmap(mesh, dofs, report.solution));

    std::printf("problem %d (%s), level %d\n", spec.id, spec.name.c_str(), c.level);
    std::printf("unknowns %zu, backend %s, factor nnz %zu, factor time %.3f s\n", dofs.total_unknowns,
                report.backend.c_str(), report.factorization_stats.nnz_factor, report.factorization_stats.wall_time);
    std::printf("relative residual %.3e%s\n", report.relative_residual, report.refined ? " (refined)" : "");
    std::printf("h_max %.4e, linf_u %.4e, linf_grad %.4e, l2_u %.4e, l2_lambda %.4e\n", err.h_max,
                err.linf_solution, err.linf_gradient, err.l2_solution, err.l2_lambda_flux);
    if (err.excluded) std::printf("excluded cells at the singular point: %zu\n", err.excluded);
  });
}

int cmd_study(const RunConfig& c) {
  if (c.levels < 2) {
    std::cerr << "error: a study needs at least two levels\n";
    return kUsage;
  }
  if (int rc = guarded("", [&] { validate(c, true); })) return rc;
  const ProblemSpec spec = make_problem(c);
  StudyReport report;
  for (int l = 1; l <= c.levels; ++l) {
    const int rc = guarded("level " + std::to_string(l), [&] {
      report.levels.push_back(solve_level(spec, config_mesh(c, spec, l), l));
      const LevelResult& r = report.levels.back();
      std::fprintf(stderr, "level %d: %zu unknowns, residual %.2e, %.2f s\n", l, r.unknowns, r.relative_residual,
                   r.seconds);
    });
    if (rc) return rc;
  }
  return guarded("study", [&] {
    compute_orders(report);
    const std::string caption = "Example " + std::to_string(spec.id) + " (" + spec.name + ") convergence study";
    std::filesystem::create_directories(c.out_dir);
    for (TableFormat f : c.formats) {
      const bool csv = f == TableFormat::Csv;
      write_file_atomic(c.out_dir / (csv ? "study.csv" : "study.md"), render_table(report, f, caption));
    }
    std::cout << render_table(report, TableFormat::Markdown, caption);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin solver for two-region elliptic interface problems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file, problem, level, levels, b, kappa, mesh_dir, out, format, forcing, hfd;
  app.add_option("--config", config_file, "Flat key = value configuration file");
  const auto* o_problem = app.add_option("--problem", problem, "Builtin problem 1..10");
  const auto* o_level = app.add_option("--level", level, "Level solved by 'solve'");
  const auto* o_levels = app.add_option("--levels", levels, "Levels 1..N for mesh, study and stats");
  const auto* o_b = app.add_option("--b", b, "Coefficient parameter of problems 1 and 3");
  const auto* o_kappa = app.add_option("--kappa", kappa, "Wavenumber of problem 2");
  const auto* o_mesh_dir = app.add_option("--mesh-dir", mesh_dir, "Directory with level<L>.node/.ele meshes");
  const auto* o_out = app.add_option("--out", out, "Output directory (default: $WGIF_OUT_DIR or .)");
  const auto* o_format = app.add_option("--format", format, "Study tables: csv, markdown or csv,markdown");
  const auto* o_forcing = app.add_option("--forcing", forcing, "Right-hand side: analytic or fd")
                              ->check(CLI::IsMember({"analytic", "fd"}));
  const auto* o_hfd = app.add_option("--hfd", hfd, "Finite-difference step of --forcing fd");

  auto* mesh = app.add_subcommand("mesh", "Write level meshes and print their statistics");
  auto* solve = app.add_subcommand("solve", "Solve one level and write the solution");
  auto* study = app.add_subcommand("study", "Convergence study over levels 1..N");
  auto* stats = app.add_subcommand("stats", "Print mesh statistics for levels 1..N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  RunConfig config;
  try {
    if (!config_file.empty()) read_config(std::filesystem::path(config_file), config);
    if (const char* env = std::getenv("WGIF_OUT_DIR"); env && *env) config.out_dir = env;
    const std::pair<const CLI::Option*, std::pair<const char*, const std::string*>> flags[] = {
        {o_problem, {"problem", &problem}}, {o_level, {"level", &level}},       {o_levels, {"levels", &levels}},
        {o_b, {"b", &b}},                   {o_kappa, {"kappa", &kappa}},       {o_mesh_dir, {"mesh_dir", &mesh_dir}},
        {o_out, {"out", &out}},             {o_format, {"format", &format}},   {o_forcing, {"forcing", &forcing}},
        {o_hfd, {"hfd", &hfd}}};
    for (const auto& [opt, kv] : flags)
      if (opt->count() > 0) set_config_value(config, kv.first, *kv.second);
  } catch (const ParseError& e) {
    return report_failure("configuration", e);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (mesh->parsed()) return cmd_mesh(config);
  if (solve->parsed()) return cmd_solve(config);
  if (study->parsed()) return cmd_study(config);
  if (stats->parsed()) return cmd_stats(config);
  return kUsage;
}
