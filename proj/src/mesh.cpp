#include "wgif/mesh.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "wgif/errors.hpp"

namespace wgif {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Which sides of the box does p touch (bit mask: 1 xmin, 2 xmax, 4 ymin, 8 ymax).
unsigned box_sides(const Rect& box, Point2 p, double tol) {
  unsigned mask = 0;
  if (std::fabs(p.x - box.xmin) <= tol) mask |= 1u;
  if (std::fabs(p.x - box.xmax) <= tol) mask |= 2u;
  if (std::fabs(p.y - box.ymin) <= tol) mask |= 4u;
  if (std::fabs(p.y - box.ymax) <= tol) mask |= 8u;
  return mask;
}

}  // namespace

TriMesh TriMesh::build(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles,
                       std::vector<RegionId> regions, std::vector<bool> on_interface) {
  if (vertices.empty() || triangles.empty()) throw ValidationError("mesh has no triangles");
  if (regions.size() != triangles.size())
    throw ValidationError("region label count does not match triangle count");
  if (on_interface.size() != vertices.size())
    throw ValidationError("interface flag count does not match vertex count");

  TriMesh m;
  m.box_ = Rect{vertices[0].x, vertices[0].x, vertices[0].y, vertices[0].y};
  for (const Point2& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValidationError("non-finite vertex coordinate");
    m.box_.xmin = std::min(m.box_.xmin, p.x);
    m.box_.xmax = std::max(m.box_.xmax, p.x);
    m.box_.ymin = std::min(m.box_.ymin, p.y);
    m.box_.ymax = std::max(m.box_.ymax, p.y);
  }
  const double tol = 1e-12 * m.box_.diameter();
  const int nv = static_cast<int>(vertices.size());

  std::vector<bool> used(vertices.size(), false);
  double area_sum = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    auto& tri = triangles[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) throw ValidationError("triangle " + std::to_string(t) + " references a missing vertex");
      used[v] = true;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw ValidationError("triangle " + std::to_string(t) + " repeats a vertex");
    double a2 = orient2d(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    if (a2 < 0.0) {
      std::swap(tri[1], tri[2]);
      a2 = -a2;
    }
    if (!(a2 > 0.0)) throw ValidationError("triangle " + std::to_string(t) + " is degenerate");
    area_sum += 0.5 * a2;
  }
  for (int v = 0; v < nv; ++v)
    if (!used[v]) throw ValidationError("vertex " + std::to_string(v) + " is not used by any triangle");
  if (std::fabs(area_sum - m.box_.area()) > 1e-9 * m.box_.area())
    throw ValidationError("triangles do not tile the bounding rectangle (overlap or hole)");

  m.vertices_ = std::move(vertices);
  m.on_interface_ = std::move(on_interface);
  m.triangles_.resize(triangles.size());
  m.tri_edges_.resize(triangles.size());
  m.tri_signs_.resize(triangles.size());

  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(triangles.size() * 2);
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    m.triangles_[t] = Triangle{triangles[t], regions[t]};
    for (int i = 0; i < 3; ++i) {
      const int a = triangles[t][(i + 1) % 3];
      const int b = triangles[t][(i + 2) % 3];
      auto [it, inserted] = lookup.try_emplace(edge_key(a, b), static_cast<int>(m.edges_.size()));
      if (inserted) {
        Edge e;
        e.v = {a, b};
        e.tri = {static_cast<int>(t), -1};
        m.edges_.push_back(e);
        m.tri_signs_[t][i] = 1;
      } else {
        Edge& e = m.edges_[it->second];
        if (e.tri[1] != -1)
          throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                ") is shared by more than two triangles");
        if (e.v[0] == a)
          throw ValidationError("triangles " + std::to_string(e.tri[0]) + " and " + std::to_string(t) +
                                " overlap along a shared edge");
        e.tri[1] = static_cast<int>(t);
        m.tri_signs_[t][i] = -1;
      }
      m.tri_edges_[t][i] = it->second;
    }
  }

  std::vector<int> interface_degree(m.vertices_.size(), 0);
  for (std::size_t ei = 0; ei < m.edges_.size(); ++ei) {
    Edge& e = m.edges_[ei];
    const Point2 p = m.vertices_[e.v[0]];
    const Point2 q = m.vertices_[e.v[1]];
    m.h_max_ = std::max(m.h_max_, distance(p, q));
    const RegionId r0 = m.triangles_[e.tri[0]].region;
    if (e.tri[1] < 0) {
      if ((box_sides(m.box_, p, tol) & box_sides(m.box_, q, tol)) == 0u)
        throw ValidationError("boundary edge " + std::to_string(ei) +
                              " is not on the domain boundary (hanging vertex or hole)");
      e.kind = EdgeKind::DirichletBoundary;
      e.region = r0;
      continue;
    }
    const RegionId r1 = m.triangles_[e.tri[1]].region;
    if (r0 == r1) {
      e.kind = EdgeKind::Interior;
      e.region = r0;
      continue;
    }
    if (!m.on_interface_[e.v[0]] || !m.on_interface_[e.v[1]])
      throw TopologyError("triangles " + std::to_string(e.tri[0]) + " and " + std::to_string(e.tri[1]) +
                          " have different regions across an edge that is not on the interface");
    e.kind = EdgeKind::Interface;
    e.region = RegionId::Region1;
    if (r0 == RegionId::Region2) std::swap(e.tri[0], e.tri[1]);
    ++m.n_interface_;
    if (++interface_degree[e.v[0]] > 2 || ++interface_degree[e.v[1]] > 2)
      throw TopologyError("interface edges do not form simple polylines");
  }
  return m;
}

std::array<Point2, 3> TriMesh::corners(std::size_t t) const {
  const auto& v = triangles_[t].v;
  return {vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]};
}

Point2 TriMesh::centroid(std::size_t t) const {
  const auto c = corners(t);
  return (c[0] + c[1] + c[2]) / 3.0;
}

double TriMesh::area(std::size_t t) const {
  const auto c = corners(t);
  return 0.5 * orient2d(c[0], c[1], c[2]);
}

double TriMesh::edge_length(std::size_t e) const {
  return distance(vertices_[edges_[e].v[0]], vertices_[edges_[e].v[1]]);
}

Point2 TriMesh::edge_midpoint(std::size_t e) const {
  return midpoint(vertices_[edges_[e].v[0]], vertices_[edges_[e].v[1]]);
}

Vec2 TriMesh::outward_normal(std::size_t t, std::size_t e) const {
  const auto& te = tri_edges_[t];
  for (int i = 0; i < 3; ++i) {
    if (te[i] != static_cast<int>(e)) continue;
    const auto& v = triangles_[t].v;
    const Vec2 d = vertices_[v[(i + 2) % 3]] - vertices_[v[(i + 1) % 3]];
    return Vec2{d.y, -d.x} / norm(d);
  }
  throw ValidationError("edge " + std::to_string(e) + " is not an edge of triangle " + std::to_string(t));
}

bool operator==(const TriMesh& a, const TriMesh& b) {
  if (a.vertices_ != b.vertices_ || a.on_interface_ != b.on_interface_) return false;
  if (a.triangles_.size() != b.triangles_.size() || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t t = 0; t < a.triangles_.size(); ++t)
    if (a.triangles_[t].v != b.triangles_[t].v || a.triangles_[t].region != b.triangles_[t].region) return false;
  for (std::size_t e = 0; e < a.edges_.size(); ++e) {
    const Edge& x = a.edges_[e];
    const Edge& y = b.edges_[e];
    if (x.v != y.v || x.kind != y.kind || x.region != y.region || x.tri != y.tri) return false;
  }
  return a.tri_edges_ == b.tri_edges_ && a.tri_signs_ == b.tri_signs_;
}

std::vector<RegionId> label_regions(const std::vector<Point2>& vertices,
                                    const std::vector<std::array<int, 3>>& triangles,
                                    const std::vector<bool>& on_interface, const EdgePredicate& barrier,
                                    const RegionPredicate& region, const PointPredicate& centroid_on_interface) {
  const std::size_t nt = triangles.size();
  for (std::size_t t = 0; t < nt; ++t)
    for (int v : triangles[t])
      if (v < 0 || static_cast<std::size_t>(v) >= vertices.size())
        throw ValidationError("triangle " + std::to_string(t) + " references a missing vertex");

  // Triangle adjacency through shared edges.
  std::vector<std::array<int, 3>> nb(nt, {-1, -1, -1});
  std::unordered_map<std::uint64_t, std::pair<int, int>> open;
  open.reserve(2 * nt);
  for (std::size_t t = 0; t < nt; ++t)
    for (int i = 0; i < 3; ++i) {
      const int a = triangles[t][(i + 1) % 3], b = triangles[t][(i + 2) % 3];
      auto [it, inserted] = open.try_emplace(edge_key(a, b), static_cast<int>(t), i);
      if (!inserted) {
        nb[t][i] = it->second.first;
        nb[it->second.first][it->second.second] = static_cast<int>(t);
      }
    }

  std::vector<int> component(nt, -1);
  std::vector<RegionId> out(nt, RegionId::Region1);
  std::vector<int> stack;
  int n_comp = 0;
  for (std::size_t seed = 0; seed < nt; ++seed) {
    if (component[seed] >= 0) continue;
    component[seed] = n_comp;
    stack.assign(1, static_cast<int>(seed));
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3; ++i) {
        const int u = nb[t][i];
        if (u < 0) continue;
        const int a = triangles[t][(i + 1) % 3], b = triangles[t][(i + 2) % 3];
        const bool wall = barrier(a, b);
        if (!region) {
          const RegionId want = wall ? other(out[t]) : out[t];
          if (component[u] < 0) {
            component[u] = n_comp;
            out[u] = want;
            stack.push_back(u);
          } else if (out[u] != want) {
            throw TopologyError("interface edges do not separate the domain into two regions");
          }
        } else if (!wall && component[u] < 0) {
          component[u] = n_comp;
          stack.push_back(u);
        }
      }
    }
    ++n_comp;
  }
  if (!region) return out;

  std::vector<double> vote(n_comp, 0.0);
  std::vector<RegionId> predicted(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const Point2 a = vertices[triangles[t][0]], b = vertices[triangles[t][1]], c = vertices[triangles[t][2]];
    const Point2 g = (a + b + c) / 3.0;
    if (centroid_on_interface && centroid_on_interface(g))
      throw TopologyError("centroid of triangle " + std::to_string(t) + " lies on the interface");
    predicted[t] = region(g);
    const double w = 0.5 * std::fabs(orient2d(a, b, c));
    vote[component[t]] += predicted[t] == RegionId::Region1 ? w : -w;
  }
  for (int k = 0; k < n_comp; ++k)
    if (vote[k] == 0.0) throw TopologyError("region of a mesh component is ambiguous");
  for (std::size_t t = 0; t < nt; ++t) {
    out[t] = vote[component[t]] > 0.0 ? RegionId::Region1 : RegionId::Region2;
    if (out[t] == predicted[t]) continue;
    int flagged = 0;
    for (int v : triangles[t]) flagged += on_interface[v] ? 1 : 0;
    if (flagged < 2)
      throw TopologyError("triangle " + std::to_string(t) +
                          " lies in the wrong region: the mesh does not resolve the interface");
  }
  return out;
}

double max_angle(Point2 a, Point2 b, Point2 c) {
  const auto angle_at = [](Point2 p, Point2 q, Point2 r) {
    const Vec2 u = q - p, w = r - p;
    return std::atan2(std::fabs(cross(u, w)), dot(u, w));
  };
  return std::max({angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)});
}

MeshStats mesh_stats(const TriMesh& mesh) {
  MeshStats s;
  s.h_max = mesh.h_max();
  s.n_tri = mesh.n_triangles();
  s.n_edge = mesh.n_edges();
  s.n_interface_edge = mesh.n_interface_edges();
  std::size_t nonacute = 0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto c = mesh.corners(t);
    if (max_angle(c[0], c[1], c[2]) >= 0.5 * std::numbers::pi - 1e-9) ++nonacute;
  }
  s.nonacute_fraction = static_cast<double>(nonacute) / static_cast<double>(s.n_tri);
  return s;
}

}  // namespace wgif
