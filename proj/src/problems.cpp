#include "wgif/problems.hpp"

#include <cmath>
#include <numbers>

#include "wgif/errors.hpp"

namespace wgif {

namespace {

constexpr double kPi = std::numbers::pi;

double r2(Point2 p) { return p.x * p.x + p.y * p.y; }

RegionData constant_branch(double value, ScalarField a) {
  RegionData d;
  d.coefficient = std::move(a);
  d.exact = [value](Point2) { return value; };
  d.exact_gradient = [](Point2) { return Vec2{0.0, 0.0}; };
  d.forcing = [](Point2) { return 0.0; };
  return d;
}

ParametricCurve circle(double radius) {
  return {[radius](double t) { return Point2{radius * std::cos(t), radius * std::sin(t)}; }, 0.0, 2.0 * kPi, true};
}

// Graph y = g(x) for x in [x0, x1].
ParametricCurve graph(double (*g)(double), double x0, double x1) {
  return {[g](double x) { return Point2{x, g(x)}; }, x0, x1, false};
}

double line2x(double x) { return 2.0 * x; }
double parabola(double x) { return 2.0 * x + x * x; }
double half_slope(double x) { return -0.5 * x; }

// Ω1 = {y > g(x)} for the piecewise interface graphs; g is extended beyond the pieces.
RegionPredicate above(double (*left)(double)) {
  return [left](Point2 p) { return p.y > (p.x > 0.0 ? line2x(p.x) : left(p.x)) ? RegionId::Region1 : RegionId::Region2; };
}

PointPredicate on_graph(double (*left)(double), double tol) {
  return [left, tol](Point2 p) {
    if (p.x < -1.0 - tol || p.x > 0.5 + tol) return false;
    const double g = p.x > 0.0 ? line2x(p.x) : left(p.x);
    return std::fabs(p.y - g) <= tol;
  };
}

// A1 = (xy + 2)/5 and A2 = (x^2 - y^2 + 3)/7 with v a function of s = x + y.
struct SBranch {
  double (*v)(double);
  double (*dv)(double);
  double (*d2v)(double);
};

double v5(double s) { return s <= 0.0 ? std::sin(s) : s; }
double dv5(double s) { return s <= 0.0 ? std::cos(s) : 1.0; }
double d2v5(double s) { return s <= 0.0 ? -std::sin(s) : 0.0; }
double v6(double s) { return s <= 0.0 ? std::sin(s) + std::cos(s) : s + 1.0; }
double dv6(double s) { return s <= 0.0 ? std::cos(s) - std::sin(s) : 1.0; }
double d2v6(double s) { return s <= 0.0 ? -std::sin(s) - std::cos(s) : 0.0; }

void variable_coefficient_data(ProblemSpec& spec, double u_value, SBranch b) {
  spec.data[0] = constant_branch(u_value, [](Point2 p) { return (p.x * p.y + 2.0) / 5.0; });
  RegionData& d = spec.data[1];
  d.coefficient = [](Point2 p) { return (p.x * p.x - p.y * p.y + 3.0) / 7.0; };
  d.exact = [b](Point2 p) { return b.v(p.x + p.y); };
  d.exact_gradient = [b](Point2 p) {
    const double g = b.dv(p.x + p.y);
    return Vec2{g, g};
  };
  d.forcing = [b](Point2 p) {
    const double s = p.x + p.y;
    const double a = (p.x * p.x - p.y * p.y + 3.0) / 7.0;
    return -(2.0 * (p.x - p.y) / 7.0 * b.dv(s) + 2.0 * a * b.d2v(s));
  };
}

// A1 = 1, u = 8; A2 = 2 + sin(x + y), v = r^(5/3) + sin(x + y).
void singular_data(ProblemSpec& spec) {
  spec.data[0] = constant_branch(8.0, [](Point2) { return 1.0; });
  RegionData& d = spec.data[1];
  d.coefficient = [](Point2 p) { return 2.0 + std::sin(p.x + p.y); };
  d.exact = [](Point2 p) { return std::pow(r2(p), 5.0 / 6.0) + std::sin(p.x + p.y); };
  d.exact_gradient = [](Point2 p) {
    const double c = 5.0 / 3.0 * std::pow(r2(p), -1.0 / 6.0);
    const double cs = std::cos(p.x + p.y);
    return Vec2{c * p.x + cs, c * p.y + cs};
  };
  d.forcing = [](Point2 p) {
    const double s = p.x + p.y;
    const double rm = std::pow(r2(p), -1.0 / 6.0);
    const double a = 2.0 + std::sin(s);
    return -(std::cos(s) * (5.0 / 3.0 * rm * s + 2.0 * std::cos(s)) + a * (25.0 / 9.0 * rm - 2.0 * std::sin(s)));
  };
  d.extends_smoothly = false;
  spec.singularity = Point2{0.0, 0.0};
}

void guard(const ProblemSpec& spec, Point2 x) {
  if (spec.singularity && distance(*spec.singularity, x) < 1e-12)
    throw EvaluationError("evaluation requested at the singular point of problem " + std::to_string(spec.id));
}

}  // namespace

ProblemSpec builtin_problem(int id, const ProblemParameters& params) {
  ProblemSpec spec;
  spec.id = id;
  spec.domain = Rect{-1.0, 1.0, -1.0, 1.0};
  switch (id) {
    case 1: {
      const double b = params.b.value_or(10.0);
      if (!(b > 0.0)) throw DataError("coefficient b must be positive");
      spec.name = "circular interface";
      RegionData& u = spec.data[0];
      u.coefficient = [b](Point2) { return b; };
      u.exact = [b](Point2 p) {
        const double q = r2(p);
        return -(0.25 * (1.0 - 1.0 / (8.0 * b) - 1.0 / b) + (0.5 * q * q + q)) / b;
      };
      u.exact_gradient = [b](Point2 p) {
        const double c = -(2.0 * r2(p) + 2.0) / b;
        return Vec2{c * p.x, c * p.y};
      };
      u.forcing = [](Point2 p) { return 8.0 * r2(p) + 4.0; };
      RegionData& v = spec.data[1];
      v.coefficient = [](Point2) { return 2.0; };
      v.exact = [](Point2 p) { return 1.0 - r2(p); };
      v.exact_gradient = [](Point2 p) { return Vec2{-2.0 * p.x, -2.0 * p.y}; };
      v.forcing = [](Point2) { return 8.0; };
      spec.family = {MeshFamily::Kind::Structured, 5.0, 0.0};
      // 10, 19, 37, 72 and 143 cells per side: grid diagonals track the reference h column.
      spec.family.level_n = {5.0, 9.5, 18.5, 36.0, 71.5};
      spec.family.interface_spacing = 0.5;
      spec.family.clearance = 0.1;
      break;
    }
    case 2: {
      const double kappa = params.kappa.value_or(2.0);
      if (!(kappa > 0.0)) throw DataError("wavenumber kappa must be positive");
      spec.name = "Helmholtz circular interface";
      RegionData& u = spec.data[0];
      u.coefficient = [](Point2) { return 1.0; };
      u.helmholtz_k = kappa * std::sqrt(10.0);
      u.exact = [kappa](Point2 p) { return -std::sin(kappa * p.x) * std::cos(kappa * p.y); };
      u.exact_gradient = [kappa](Point2 p) {
        return Vec2{-kappa * std::cos(kappa * p.x) * std::cos(kappa * p.y),
                    kappa * std::sin(kappa * p.x) * std::sin(kappa * p.y)};
      };
      u.forcing = [kappa](Point2 p) { return 8.0 * kappa * kappa * std::sin(kappa * p.x) * std::cos(kappa * p.y); };
      RegionData& v = spec.data[1];
      v.coefficient = [](Point2) { return 10.0; };
      v.helmholtz_k = kappa;
      v.exact = [](Point2 p) { return -r2(p); };
      v.exact_gradient = [](Point2 p) { return Vec2{-2.0 * p.x, -2.0 * p.y}; };
      v.forcing = [kappa](Point2 p) { return 40.0 + kappa * kappa * r2(p); };
      spec.family = {MeshFamily::Kind::Structured, kappa > 4.0 ? 10.0 : 5.0, 0.0};
      break;
    }
    case 3: {
      const double b = params.b.value_or(10.0);
      if (!(b > 0.0)) throw DataError("coefficient b must be positive");
      spec.name = "elliptic interface, high contrast";
      RegionData& u = spec.data[0];
      u.coefficient = [](Point2) { return 1.0; };
      u.exact = [](Point2 p) { return 5.0 * std::exp(-r2(p)); };
      u.exact_gradient = [](Point2 p) {
        const double c = -10.0 * std::exp(-r2(p));
        return Vec2{c * p.x, c * p.y};
      };
      u.forcing = [](Point2 p) { return (4.0 - 4.0 * r2(p)) * 5.0 * std::exp(-r2(p)); };
      RegionData& v = spec.data[1];
      v.coefficient = [b](Point2) { return b; };
      v.exact = [](Point2 p) { return std::exp(p.x) * std::cos(p.y); };
      v.exact_gradient = [](Point2 p) {
        return Vec2{std::exp(p.x) * std::cos(p.y), -std::exp(p.x) * std::sin(p.y)};
      };
      v.forcing = [](Point2) { return 0.0; };
      spec.family = {MeshFamily::Kind::Curved, 0.0, 0.5};
      spec.family.refine = true;
      break;
    }
    case 4: {
      spec.name = "flower interface";
      RegionData& u = spec.data[0];
      u.coefficient = [](Point2) { return 10.0; };
      u.exact = [](Point2 p) { return 0.1 * r2(p) * r2(p) - 0.01 * std::log(2.0 * std::sqrt(r2(p))); };
      u.exact_gradient = [](Point2 p) {
        const double q = r2(p);
        const double c = 0.4 * q - 0.01 / q;
        return Vec2{c * p.x, c * p.y};
      };
      u.forcing = [](Point2 p) { return -16.0 * r2(p); };
      RegionData& v = spec.data[1];
      v.coefficient = [](Point2) { return 1.0; };
      v.exact = [](Point2 p) { return std::exp(r2(p)); };
      v.exact_gradient = [](Point2 p) {
        const double c = 2.0 * std::exp(r2(p));
        return Vec2{c * p.x, c * p.y};
      };
      v.forcing = [](Point2 p) { return -(4.0 + 4.0 * r2(p)) * std::exp(r2(p)); };
      spec.family = {MeshFamily::Kind::Curved, 0.0, 0.35};
      spec.family.refine = true;
      break;
    }
    case 5:
    case 6:
    case 7: {
      if (id == 7) spec.domain = Rect{-1.0, 3.0, -1.0, 1.0};
      spec.name = id == 7 ? "C1 interface, singular solution" : "C1 interface, variable coefficients";
      if (id == 5) variable_coefficient_data(spec, 2.0, {v5, dv5, d2v5});
      if (id == 6) {
        variable_coefficient_data(spec, 2.0, {v6, dv6, d2v6});
        spec.forcing_breaks = {{{1.0, 1.0}, 0.0}};
      }
      if (id == 7) singular_data(spec);
      spec.family = {MeshFamily::Kind::Structured, 2.0, 0.0};
      break;
    }
    case 8:
    case 9:
    case 10: {
      spec.domain = Rect{-1.0, 3.0, -1.0, 1.0};
      spec.name = id == 10 ? "kinked interface, singular solution" : "kinked interface, variable coefficients";
      if (id == 8) variable_coefficient_data(spec, 8.0, {v5, dv5, d2v5});
      if (id == 9) {
        variable_coefficient_data(spec, 8.0, {v6, dv6, d2v6});
        spec.forcing_breaks = {{{1.0, 1.0}, 0.0}};
      }
      if (id == 10) singular_data(spec);
      spec.family = {MeshFamily::Kind::Structured, 2.0, 0.0};
      break;
    }
    default:
      throw DataError("unknown problem id " + std::to_string(id) + " (expected 1..10)");
  }

  const double itol = interface_tolerance(spec.domain);
  switch (id) {
    case 1:
    case 2:
      spec.region = [](Point2 p) { return r2(p) > 0.25 ? RegionId::Region1 : RegionId::Region2; };
      spec.on_interface = [itol](Point2 p) { return std::fabs(std::sqrt(r2(p)) - 0.5) <= itol; };
      spec.interface = {circle(0.5)};
      break;
    case 3: {
      constexpr double a = 10.0 / 27.0, b = 18.0 / 27.0;
      spec.region = [](Point2 p) {
        return (p.x / a) * (p.x / a) + (p.y / b) * (p.y / b) > 1.0 ? RegionId::Region1 : RegionId::Region2;
      };
      // sqrt(q) - 1 scaled by the smaller semi-axis bounds the distance to the ellipse from above.
      spec.on_interface = [itol](Point2 p) {
        const double q = (p.x / a) * (p.x / a) + (p.y / b) * (p.y / b);
        return std::fabs(std::sqrt(q) - 1.0) * a <= itol;
      };
      spec.interface = {{[](double t) { return Point2{a * std::cos(t), b * std::sin(t)}; }, 0.0, 2.0 * kPi, true}};
      break;
    }
    case 4: {
      const auto rho = [](double th) { return 0.5 + std::sin(5.0 * th) / 7.0; };
      spec.region = [rho](Point2 p) {
        return std::sqrt(r2(p)) > rho(std::atan2(p.y, p.x)) ? RegionId::Region1 : RegionId::Region2;
      };
      spec.on_interface = [rho, itol](Point2 p) {
        return std::fabs(std::sqrt(r2(p)) - rho(std::atan2(p.y, p.x))) <= itol;
      };
      spec.interface = {{[rho](double t) { return Point2{rho(t) * std::cos(t), rho(t) * std::sin(t)}; }, 0.0,
                         2.0 * kPi, true}};
      break;
    }
    case 5:
    case 6:
    case 7:
      spec.region = above(parabola);
      spec.on_interface = on_graph(parabola, itol);
      spec.interface = {graph(parabola, -1.0, 0.0), graph(line2x, 0.0, 0.5)};
      break;
    default:
      spec.region = above(half_slope);
      spec.on_interface = on_graph(half_slope, itol);
      spec.interface = {graph(half_slope, -1.0, 0.0), graph(line2x, 0.0, 0.5)};
      break;
  }
  return spec;
}

ProblemSpec homogeneous(const ProblemSpec& spec) {
  ProblemSpec h = spec;
  for (RegionData& d : h.data) {
    d.exact = [](Point2) { return 0.0; };
    d.exact_gradient = [](Point2) { return Vec2{0.0, 0.0}; };
    d.forcing = [](Point2) { return 0.0; };
    d.extends_smoothly = true;
  }
  h.forcing_mode = ForcingMode::Analytic;
  h.singularity.reset();
  return h;
}

Vec2 fd_gradient(const ScalarField& f, Point2 x, double h) {
  const auto d = [&](Vec2 e) {
    return (f(x - 2.0 * h * e) - 8.0 * f(x - h * e) + 8.0 * f(x + h * e) - f(x + 2.0 * h * e)) / (12.0 * h);
  };
  return {d({1.0, 0.0}), d({0.0, 1.0})};
}

double exact_value(const ProblemSpec& spec, RegionId region, Point2 x) {
  guard(spec, x);
  return spec[region].exact(x);
}

Vec2 exact_gradient(const ProblemSpec& spec, RegionId region, Point2 x) {
  guard(spec, x);
  return spec[region].exact_gradient(x);
}

double forcing(const ProblemSpec& spec, RegionId region, Point2 x) {
  guard(spec, x);
  const RegionData& d = spec[region];
  if (spec.forcing_mode == ForcingMode::Analytic && d.forcing) return d.forcing(x);

  const double h = spec.h_fd;
  if (!(h > 0.0)) throw EvaluationError("finite-difference step must be positive");
  if (!d.extends_smoothly) {
    for (double dx = -4.0; dx <= 4.0; dx += 1.0)
      for (double dy = -4.0; dy <= 4.0; dy += 1.0) {
        if (dx != 0.0 && dy != 0.0) continue;
        const Point2 p{x.x + dx * h, x.y + dy * h};
        if (spec.region(p) != region)
          throw EvaluationError("finite-difference stencil at (" + std::to_string(x.x) + ", " + std::to_string(x.y) +
                                ") crosses the interface; reduce h_fd or use analytic forcing");
        if (spec.singularity && distance(*spec.singularity, p) < 1e-12)
          throw EvaluationError("finite-difference stencil touches the singular point");
      }
  }
  // Flux components A * dw/dx_i, each differentiated again.
  const auto flux = [&](Point2 p, int axis) {
    const Vec2 g = fd_gradient(d.exact, p, h);
    return d.coefficient(p) * (axis == 0 ? g.x : g.y);
  };
  const Vec2 g = fd_gradient([&](Point2 p) { return flux(p, 0); }, x, h);
  const Vec2 gy = fd_gradient([&](Point2 p) { return flux(p, 1); }, x, h);
  const double k2 = d.helmholtz_k * d.helmholtz_k;
  return -(g.x + gy.y) - k2 * d.exact(x);
}

JumpData jump_data(const ProblemSpec& spec, Point2 x, Vec2 n1) {
  guard(spec, x);
  const RegionData& u = spec[RegionId::Region1];
  const RegionData& v = spec[RegionId::Region2];
  JumpData j;
  j.phi = u.exact(x) - v.exact(x);
  j.psi = u.coefficient(x) * dot(u.exact_gradient(x), n1) - v.coefficient(x) * dot(v.exact_gradient(x), n1);
  return j;
}

std::vector<Point2> interface_polyline(const ProblemSpec& spec, double spacing) {
  std::vector<Point2> out;
  for (const ParametricCurve& piece : spec.interface) {
    const std::vector<Point2> pts = sample_polyline(piece, spacing, piece.closed ? 8 : 1);
    for (const Point2& p : pts)
      if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  return out;
}

}  // namespace wgif
