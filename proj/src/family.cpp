#include "wgif/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wgif/errors.hpp"

namespace wgif {

namespace {

Point2 nearest_interface_point(const ProblemSpec& spec, Point2 p) {
  Point2 best = p;
  double best_d = std::numeric_limits<double>::infinity();
  for (const ParametricCurve& piece : spec.interface) {
    const Point2 q = closest_curve_point(piece, p);
    if (distance(q, p) < best_d) best_d = distance(q, p), best = q;
  }
  return best;
}

}  // namespace

TriMesh level_mesh(const ProblemSpec& spec, int level) {
  if (level < 1) throw DataError("mesh level must be at least 1");
  if (spec.family.refine && level > 1) {
    TriMesh mesh = level_mesh(spec, 1);
    const MidpointRule snap = [&spec](Point2 a, Point2 b) { return nearest_interface_point(spec, 0.5 * (a + b)); };
    for (int l = 1; l < level; ++l) mesh = refine_uniform(mesh, snap);
    return mesh;
  }
  const double scale = std::ldexp(1.0, level - 1);
  const MeshFamily& f = spec.family;
  if (f.kind == MeshFamily::Kind::Structured) {
    double n = f.n * scale;
    if (!f.level_n.empty()) {
      const auto k = std::min(static_cast<std::size_t>(level), f.level_n.size());
      n = std::ldexp(f.level_n[k - 1], level - static_cast<int>(k));
    }
    StructuredMeshOptions options;
    options.clearance = f.clearance;
    return generate_structured_fitted(spec.domain, n, interface_polyline(spec, f.interface_spacing / n), spec.region,
                                      options);
  }
  if (spec.interface.size() != 1) throw GenerationError("curved meshes need a single interface curve");
  return generate_curved_fitted(spec.domain, f.target_h / scale, spec.interface.front(), spec.region,
                                kMinInterfaceSamples);
}

}  // namespace wgif
