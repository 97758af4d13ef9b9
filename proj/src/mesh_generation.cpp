#include "wgif/mesh_generation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "wgif/delaunay.hpp"
#include "wgif/errors.hpp"

namespace wgif {

namespace {

double circumradius(Point2 a, Point2 b, Point2 c) {
  const double area2 = std::fabs(orient2d(a, b, c));
  if (area2 == 0.0) return std::numeric_limits<double>::infinity();
  return distance(a, b) * distance(b, c) * distance(c, a) / (2.0 * area2);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double d1 = orient2d(q1, q2, p1), d2 = orient2d(q1, q2, p2);
  const double d3 = orient2d(p1, p2, q1), d4 = orient2d(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  const auto on = [](Point2 a, Point2 b, Point2 p, double o) {
    return o == 0.0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  };
  return on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4);
}

// Throws unless non-adjacent segments of the polyline are disjoint.
void check_simple(const std::vector<Point2>& poly, bool closed) {
  const std::size_t m = poly.size() < 2 ? 0 : poly.size() - 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 2; j < m; ++j) {
      if (closed && i == 0 && j == m - 1) continue;
      if (segments_intersect(poly[i], poly[i + 1], poly[j], poly[j + 1]))
        throw GenerationError("interface polyline intersects itself");
    }
}

// Removes candidates closer than `gap` to any polyline segment. Candidates on the boundary of
// `box` are removed only when closer than `boundary_gap`.
std::vector<Point2> clear_near(const std::vector<Point2>& candidates, const std::vector<Point2>& poly,
                               double gap, double boundary_gap, const Rect& box) {
  const double cell = std::max(gap, 1e-12 * box.diameter());
  const int nx = std::max(1, static_cast<int>(std::ceil(box.width() / cell)));
  const int ny = std::max(1, static_cast<int>(std::ceil(box.height() / cell)));
  const auto cx = [&](double x) { return std::clamp(static_cast<int>((x - box.xmin) / cell), 0, nx - 1); };
  const auto cy = [&](double y) { return std::clamp(static_cast<int>((y - box.ymin) / cell), 0, ny - 1); };
  std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(nx) * ny);
  for (std::size_t k = 0; k < candidates.size(); ++k)
    buckets[static_cast<std::size_t>(cy(candidates[k].y)) * nx + cx(candidates[k].x)].push_back(k);
  std::vector<bool> drop(candidates.size(), false);
  const auto visit = [&](Point2 a, Point2 b) {
    const int i0 = cx(std::min(a.x, b.x) - gap), i1 = cx(std::max(a.x, b.x) + gap);
    const int j0 = cy(std::min(a.y, b.y) - gap), j1 = cy(std::max(a.y, b.y) + gap);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        for (std::size_t k : buckets[static_cast<std::size_t>(j) * nx + i])
          if (!drop[k] && point_segment_distance(candidates[k], a, b) <
                              (box.on_boundary(candidates[k], 0.0) ? boundary_gap : gap))
            drop[k] = true;
  };
  if (poly.size() == 1) visit(poly[0], poly[0]);
  for (std::size_t s = 0; s + 1 < poly.size(); ++s) visit(poly[s], poly[s + 1]);
  std::vector<Point2> kept;
  kept.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k)
    if (!drop[k]) kept.push_back(candidates[k]);
  return kept;
}

Point2 clamp_to(const Rect& box, Point2 p) {
  const double tol = 1e-12 * box.diameter();
  if (!box.contains(p, tol)) throw GenerationError("interface polyline leaves the domain");
  return {std::clamp(p.x, box.xmin, box.xmax), std::clamp(p.y, box.ymin, box.ymax)};
}

TriMesh finish(const ConstrainedDelaunay& cdt, const RegionPredicate& region) {
  std::vector<Point2> vertices = cdt.points();
  std::vector<std::array<int, 3>> triangles = cdt.triangles();
  std::vector<bool> flags = cdt.segment_vertices();
  std::set<std::pair<int, int>> segs;
  for (const auto& s : cdt.segments()) segs.emplace(s[0], s[1]);
  const auto barrier = [&segs](int a, int b) { return segs.count({std::min(a, b), std::max(a, b)}) > 0; };
  auto regions = label_regions(vertices, triangles, flags, barrier, region, {});
  return TriMesh::build(std::move(vertices), std::move(triangles), std::move(regions), std::move(flags));
}

}  // namespace

std::vector<double> sample_curve(const ParametricCurve& curve, double spacing, std::size_t min_samples,
                                 double curvature_fraction) {
  if (!curve.point) throw GenerationError("curve has no parametrization");
  if (!(spacing > 0.0)) throw GenerationError("curve sample spacing must be positive");
  if (!(curve.t_end > curve.t_begin)) throw GenerationError("curve parameter range is empty");
  constexpr int kFine = 8192;
  const double dt = (curve.t_end - curve.t_begin) / kFine;
  std::vector<Point2> p(kFine + 1);
  for (int k = 0; k <= kFine; ++k) p[k] = curve.point(curve.t_begin + k * dt);

  std::vector<double> target(kFine + 1);
  for (int k = 0; k <= kFine; ++k) {
    int km = k - 1, kc = k, kp = k + 1;
    if (curve.closed) {
      if (km < 0) km = kFine - 1;
      if (kp > kFine) kp = 1;
    } else if (k == 0) {
      km = 0, kc = 1, kp = 2;
    } else if (k == kFine) {
      km = kFine - 2, kc = kFine - 1, kp = kFine;
    }
    target[k] = std::min(spacing, curvature_fraction * circumradius(p[km], p[kc], p[kp]));
  }
  std::vector<double> cumulative(kFine + 1, 0.0);
  for (int k = 0; k < kFine; ++k)
    cumulative[k + 1] = cumulative[k] + distance(p[k], p[k + 1]) * 0.5 * (1.0 / target[k] + 1.0 / target[k + 1]);
  const double total = cumulative[kFine];
  const std::size_t chords = std::max<std::size_t>(
      {min_samples, static_cast<std::size_t>(std::ceil(total)), curve.closed ? std::size_t{3} : std::size_t{1}});

  std::vector<double> params;
  const std::size_t count = curve.closed ? chords : chords + 1;
  params.reserve(count);
  int k = 0;
  for (std::size_t j = 0; j < count; ++j) {
    if (!curve.closed && j + 1 == count) {
      params.push_back(curve.t_end);
      break;
    }
    const double level = total * static_cast<double>(j) / static_cast<double>(chords);
    while (k < kFine - 1 && cumulative[k + 1] < level) ++k;
    const double span = cumulative[k + 1] - cumulative[k];
    const double f = span > 0.0 ? std::clamp((level - cumulative[k]) / span, 0.0, 1.0) : 0.0;
    params.push_back(curve.t_begin + (k + f) * dt);
  }
  return params;
}

std::vector<Point2> sample_polyline(const ParametricCurve& curve, double spacing, std::size_t min_samples,
                                    double curvature_fraction) {
  const auto params = sample_curve(curve, spacing, min_samples, curvature_fraction);
  std::vector<Point2> out;
  out.reserve(params.size() + 1);
  for (double t : params) out.push_back(curve.point(t));
  if (curve.closed) out.push_back(out.front());
  return out;
}

TriMesh generate_structured_fitted(const Rect& domain, double n, const std::vector<Point2>& polyline,
                                   const RegionPredicate& region, const StructuredMeshOptions& options) {
  if (!(n > 0.0)) throw GenerationError("subdivisions per unit length must be positive");
  const long nx = std::max(1L, std::lround(n * domain.width()));
  const long ny = std::max(1L, std::lround(n * domain.height()));
  const double hx = domain.width() / static_cast<double>(nx);
  const double hy = domain.height() / static_cast<double>(ny);
  const double h = std::max(hx, hy);

  std::vector<Point2> poly;
  for (const Point2& q : polyline) {
    const Point2 p = clamp_to(domain, q);
    if (!poly.empty() && p == poly.back()) continue;
    if (!poly.empty()) {
      const Point2 a = poly.back();
      const int pieces = static_cast<int>(std::ceil(distance(a, p) / h * (1.0 - 1e-9)));
      for (int k = 1; k < pieces; ++k) poly.push_back(a + (static_cast<double>(k) / pieces) * (p - a));
    }
    poly.push_back(p);
  }
  const bool closed = poly.size() >= 4 && poly.front() == poly.back();
  check_simple(poly, closed);

  std::vector<Point2> grid;
  grid.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (long j = 0; j <= ny; ++j)
    for (long i = 0; i <= nx; ++i) {
      const double x = i == nx ? domain.xmax : domain.xmin + static_cast<double>(i) * hx;
      const double y = j == ny ? domain.ymax : domain.ymin + static_cast<double>(j) * hy;
      grid.push_back({x, y});
    }
  if (!poly.empty()) grid = clear_near(grid, poly, options.clearance * h, options.boundary_clearance * h, domain);

  ConstrainedDelaunay cdt(domain);
  cdt.insert_all(grid);
  const std::vector<int> ids = cdt.insert_all(poly);
  for (std::size_t k = 0; k + 1 < ids.size(); ++k) cdt.insert_segment(ids[k], ids[k + 1]);
  return finish(cdt, region);
}

TriMesh generate_curved_fitted(const Rect& domain, double target_h, const ParametricCurve& curve,
                               const RegionPredicate& region, std::size_t samples, const CurvedMeshOptions& options) {
  if (!(target_h > 0.0)) throw GenerationError("target mesh size must be positive");
  const double s = target_h / options.lattice_factor;

  const std::vector<double> params = sample_curve(curve, s, samples, options.curvature_fraction);
  std::vector<Point2> poly;
  for (double t : params) poly.push_back(clamp_to(domain, curve.point(t)));
  if (curve.closed) poly.push_back(poly.front());
  check_simple(poly, curve.closed);

  std::map<std::pair<double, double>, double> param_of;
  for (std::size_t k = 0; k < params.size(); ++k) param_of[{poly[k].x, poly[k].y}] = params[k];

  std::vector<Point2> boundary;
  const auto side = [&](Point2 a, Point2 b) {
    const int m = std::max(1, static_cast<int>(std::ceil(distance(a, b) / s)));
    for (int k = 0; k < m; ++k) boundary.push_back(a + (static_cast<double>(k) / m) * (b - a));
  };
  side({domain.xmin, domain.ymin}, {domain.xmax, domain.ymin});
  side({domain.xmax, domain.ymin}, {domain.xmax, domain.ymax});
  side({domain.xmax, domain.ymax}, {domain.xmin, domain.ymax});
  side({domain.xmin, domain.ymax}, {domain.xmin, domain.ymin});

  std::vector<Point2> lattice;
  const double row = s * std::sqrt(3.0) / 2.0;
  const Point2 centre = midpoint({domain.xmin, domain.ymin}, {domain.xmax, domain.ymax});
  const long rows = static_cast<long>(std::ceil(0.5 * domain.height() / row)) + 1;
  const long cols = static_cast<long>(std::ceil(0.5 * domain.width() / s)) + 1;
  for (long j = -rows; j <= rows; ++j)
    for (long i = -cols; i <= cols; ++i) {
      const Point2 p{centre.x + (static_cast<double>(i) + 0.5 * static_cast<double>(j & 1)) * s,
                     centre.y + static_cast<double>(j) * row};
      if (p.x - domain.xmin < 0.5 * s || domain.xmax - p.x < 0.5 * s || p.y - domain.ymin < 0.5 * s ||
          domain.ymax - p.y < 0.5 * s)
        continue;
      lattice.push_back(p);
    }
  lattice = clear_near(lattice, poly, 0.5 * s, 0.5 * s, domain);

  ConstrainedDelaunay cdt(domain);
  cdt.insert_all(boundary);
  cdt.insert_all(lattice);
  const std::vector<int> ids = cdt.insert_all(poly);
  for (std::size_t k = 0; k + 1 < ids.size(); ++k) cdt.insert_segment(ids[k], ids[k + 1]);

  const double period = curve.t_end - curve.t_begin;
  ConstrainedDelaunay::RefineOptions refine;
  refine.max_edge = target_h;
  refine.max_radius_edge_ratio = options.max_radius_edge_ratio;
  refine.segment_split = [&](int a, int b) {
    const Point2 pa = cdt.points()[a], pb = cdt.points()[b];
    const auto ia = param_of.find({pa.x, pa.y}), ib = param_of.find({pb.x, pb.y});
    if (ia == param_of.end() || ib == param_of.end()) return midpoint(pa, pb);
    double ta = ia->second, tb = ib->second;
    if (curve.closed && std::fabs(ta - tb) > 0.5 * period) (ta < tb ? ta : tb) += period;
    double t = 0.5 * (ta + tb);
    if (curve.closed && t >= curve.t_end) t -= period;
    const Point2 m = clamp_to(domain, curve.point(t));
    param_of[{m.x, m.y}] = t;
    return m;
  };
  cdt.refine(refine);
  if (options.smoothing_iterations > 0) {
    cdt.smooth(options.smoothing_iterations);
    cdt.refine(refine);
  }
  return finish(cdt, region);
}

TriMesh refine_uniform(const TriMesh& mesh, const MidpointRule& interface_midpoint) {
  std::vector<Point2> vertices = mesh.vertices();
  std::vector<bool> on_interface = mesh.interface_vertices();
  std::vector<int> mid(mesh.n_edges());
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    const Point2 a = mesh.vertices()[edge.v[0]], b = mesh.vertices()[edge.v[1]];
    const bool fitted = edge.kind == EdgeKind::Interface;
    mid[e] = static_cast<int>(vertices.size());
    vertices.push_back(fitted && interface_midpoint ? interface_midpoint(a, b) : 0.5 * (a + b));
    on_interface.push_back(fitted);
  }
  std::vector<std::array<int, 3>> triangles;
  std::vector<RegionId> regions;
  triangles.reserve(4 * mesh.n_triangles());
  regions.reserve(4 * mesh.n_triangles());
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& v = mesh.triangles()[t].v;
    const auto& te = mesh.triangle_edges(t);
    // m[i] is the midpoint of local edge i, opposite v[i].
    const std::array<int, 3> m{mid[te[0]], mid[te[1]], mid[te[2]]};
    triangles.push_back({v[0], m[2], m[1]});
    triangles.push_back({m[2], v[1], m[0]});
    triangles.push_back({m[1], m[0], v[2]});
    triangles.push_back({m[0], m[1], m[2]});
    for (int k = 0; k < 4; ++k) regions.push_back(mesh.triangles()[t].region);
  }
  for (const auto& tri : triangles)
    if (!(orient2d(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) > 0.0))
      throw ValidationError("refined triangle is inverted");
  return TriMesh::build(std::move(vertices), std::move(triangles), std::move(regions), std::move(on_interface));
}

Point2 closest_curve_point(const ParametricCurve& curve, Point2 p) {
  constexpr int kSamples = 4096;
  const double span = curve.t_end - curve.t_begin;
  const double step = span / kSamples;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kSamples; ++k) {
    const double d = distance(curve.point(curve.t_begin + k * step), p);
    if (d < best_d) best_d = d, best = k;
  }
  double lo = curve.t_begin + (best - 1) * step, hi = curve.t_begin + (best + 1) * step;
  if (!curve.closed) lo = std::max(lo, curve.t_begin), hi = std::min(hi, curve.t_end);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = distance(curve.point(x1), p), f2 = distance(curve.point(x2), p);
  for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::fabs(span)); ++it) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo), f1 = distance(curve.point(x1), p);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo), f2 = distance(curve.point(x2), p);
    }
  }
  return curve.point(0.5 * (lo + hi));
}

}  // namespace wgif
