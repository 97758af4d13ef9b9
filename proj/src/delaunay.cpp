#include "wgif/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <numeric>
#include <optional>
#include <string>

#include "wgif/errors.hpp"

namespace wgif {

namespace {

constexpr double kTieTolerance = 1e-10;

int next(int i) { return (i + 1) % 3; }
int prev(int i) { return (i + 2) % 3; }

// Position of (x, y) in [0, 2^16)^2 along a Hilbert curve.
std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << 15; s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1u : 0u;
    const std::uint32_t ry = (y & s) ? 1u : 0u;
    d += static_cast<std::uint64_t>(s) * s * ((3u * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

bool preferred_diagonal(Point2 a, Point2 b) {
  const Vec2 d = b - a;
  return d.x * d.y > 0.0;
}

// Strict crossing of open segments (p, q) and (a, b).
bool segments_cross(Point2 p, Point2 q, Point2 a, Point2 b) {
  const double o1 = orient2d(a, b, p), o2 = orient2d(a, b, q);
  const double o3 = orient2d(p, q, a), o4 = orient2d(p, q, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

}  // namespace

ConstrainedDelaunay::ConstrainedDelaunay(const Rect& box) : box_(box), scale_(box.diameter()) {
  if (!(box.width() > 0.0) || !(box.height() > 0.0)) throw GenerationError("empty domain rectangle");
  points_ = {{box.xmin, box.ymin}, {box.xmax, box.ymin}, {box.xmax, box.ymax}, {box.xmin, box.ymax}};
  // Diagonal 0-2 runs south-west to north-east.
  Tri t0, t1;
  t0.v = {0, 1, 2};
  t1.v = {0, 2, 3};
  t0.n = {-1, 1, -1};
  t1.n = {-1, -1, 0};
  t0.tag = {kBoundary, kFree, kBoundary};
  t1.tag = {kBoundary, kBoundary, kFree};
  tris_ = {t0, t1};
  vertex_tri_ = {0, 0, 0, 1};
}

int ConstrainedDelaunay::new_tri(const Tri& t) {
  tris_.push_back(t);
  return static_cast<int>(tris_.size()) - 1;
}

void ConstrainedDelaunay::set_neighbor(int tri, int old_nb, int new_nb) {
  if (tri < 0) return;
  for (int& n : tris_[tri].n)
    if (n == old_nb) {
      n = new_nb;
      return;
    }
  throw GenerationError("triangulation adjacency is corrupt");
}

int ConstrainedDelaunay::index_in(int tri, int vertex) const {
  const auto& v = tris_[tri].v;
  for (int i = 0; i < 3; ++i)
    if (v[i] == vertex) return i;
  return -1;
}

ConstrainedDelaunay::Location ConstrainedDelaunay::locate(Point2 p, int start) const {
  int t = (start >= 0 && start < static_cast<int>(tris_.size()) && tris_[start].alive) ? start : -1;
  if (t < 0) {
    for (int k = static_cast<int>(tris_.size()) - 1; k >= 0; --k)
      if (tris_[k].alive) {
        t = k;
        break;
      }
  }
  // Stochastic visibility walk; a linear scan takes over if it has not arrived.
  const auto classify = [&](int t) -> std::optional<Location> {
    const Tri& T = tris_[t];
    double o[3];
    for (int i = 0; i < 3; ++i) o[i] = orient2d(points_[T.v[next(i)]], points_[T.v[prev(i)]], p);
    if (o[0] < 0.0 || o[1] < 0.0 || o[2] < 0.0) return std::nullopt;
    for (int i = 0; i < 3; ++i)
      if (points_[T.v[i]] == p) return Location{t, LocKind::OnVertex, i};
    int zeros = 0, zi = -1;
    for (int i = 0; i < 3; ++i)
      if (o[i] == 0.0) {
        ++zeros;
        zi = i;
      }
    if (zeros == 0) return Location{t, LocKind::Inside, 0};
    if (zeros == 1) return Location{t, LocKind::OnEdge, zi};
    for (int i = 0; i < 3; ++i)
      if (o[i] != 0.0) return Location{t, LocKind::OnVertex, i};
    throw GenerationError("degenerate triangle during point location");
  };
  std::uint64_t state = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(t);
  const std::size_t limit = 4 * tris_.size() + 64;
  for (std::size_t step = 0; step < limit; ++step) {
    const Tri& T = tris_[t];
    double o[3];
    for (int i = 0; i < 3; ++i) o[i] = orient2d(points_[T.v[next(i)]], points_[T.v[prev(i)]], p);
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    const int k0 = static_cast<int>(state % 3);
    bool moved = false;
    for (int j = 0; j < 3; ++j) {
      const int i = (k0 + j) % 3;
      if (o[i] < 0.0) {
        if (T.n[i] < 0) throw GenerationError("point lies outside the domain rectangle");
        t = T.n[i];
        moved = true;
        break;
      }
    }
    if (!moved) return *classify(t);
  }
  for (int k = 0; k < static_cast<int>(tris_.size()); ++k)
    if (tris_[k].alive)
      if (const auto loc = classify(k)) return *loc;
  char buf[96];
  std::snprintf(buf, sizeof buf, "no triangle contains (%.17g, %.17g)", p.x, p.y);
  throw GenerationError(buf);
}

int ConstrainedDelaunay::insert(Point2 p) {
  if (!box_.contains(p)) throw GenerationError("point lies outside the domain rectangle");
  const Location loc = locate(p, last_);
  return insert_at(p, loc);
}

int ConstrainedDelaunay::insert_at(Point2 p, const Location& loc) {
  if (loc.kind == LocKind::OnVertex) return tris_[loc.tri].v[loc.index];
  for (int i = 0; i < 3; ++i)
    if (distance(points_[tris_[loc.tri].v[i]], p) <= 1e-13 * scale_) return tris_[loc.tri].v[i];

  const int pv = static_cast<int>(points_.size());
  points_.push_back(p);
  vertex_tri_.push_back(-1);
  std::vector<std::pair<int, int>> stack;

  if (loc.kind == LocKind::Inside) {
    const int t = loc.tri;
    const Tri T = tris_[t];
    const int a = T.v[0], b = T.v[1], c = T.v[2];
    const int ta = t;
    const int tb = new_tri(Tri{});
    const int tc = new_tri(Tri{});
    tris_[ta] = Tri{{pv, b, c}, {T.n[0], tb, tc}, {T.tag[0], kFree, kFree}, true};
    tris_[tb] = Tri{{pv, c, a}, {T.n[1], tc, ta}, {T.tag[1], kFree, kFree}, true};
    tris_[tc] = Tri{{pv, a, b}, {T.n[2], ta, tb}, {T.tag[2], kFree, kFree}, true};
    set_neighbor(T.n[1], t, tb);
    set_neighbor(T.n[2], t, tc);
    vertex_tri_[pv] = ta;
    vertex_tri_[a] = tb;
    vertex_tri_[b] = tc;
    vertex_tri_[c] = ta;
    stack = {{ta, 0}, {tb, 0}, {tc, 0}};
  } else {
    const int t = loc.tri;
    const int i = loc.index;
    const Tri T = tris_[t];
    const int c = T.v[i], a = T.v[next(i)], b = T.v[prev(i)];
    const int n_ca = T.n[prev(i)], n_bc = T.n[next(i)];
    const std::uint8_t tag_ab = T.tag[i], tag_ca = T.tag[prev(i)], tag_bc = T.tag[next(i)];
    const int u = T.n[i];
    const int t1 = t;
    const int t2 = new_tri(Tri{});
    if (u < 0) {
      tris_[t1] = Tri{{pv, c, a}, {n_ca, -1, t2}, {tag_ca, tag_ab, kFree}, true};
      tris_[t2] = Tri{{pv, b, c}, {n_bc, t1, -1}, {tag_bc, kFree, tag_ab}, true};
      set_neighbor(n_bc, t, t2);
      vertex_tri_[pv] = t1;
      vertex_tri_[a] = t1;
      vertex_tri_[b] = t2;
      vertex_tri_[c] = t1;
      stack = {{t1, 0}, {t2, 0}};
    } else {
      const Tri U = tris_[u];
      // U = (d, b, a) up to rotation.
      const int ib = index_in(u, b), ia = index_in(u, a);
      const int d = U.v[3 - ia - ib];
      const int n_ad = U.n[ib], n_db = U.n[ia];
      const std::uint8_t tag_ad = U.tag[ib], tag_db = U.tag[ia];
      const int t3 = u;
      const int t4 = new_tri(Tri{});
      tris_[t1] = Tri{{pv, c, a}, {n_ca, t3, t2}, {tag_ca, tag_ab, kFree}, true};
      tris_[t2] = Tri{{pv, b, c}, {n_bc, t1, t4}, {tag_bc, kFree, tag_ab}, true};
      tris_[t3] = Tri{{pv, a, d}, {n_ad, t4, t1}, {tag_ad, kFree, tag_ab}, true};
      tris_[t4] = Tri{{pv, d, b}, {n_db, t2, t3}, {tag_db, tag_ab, kFree}, true};
      set_neighbor(n_bc, t, t2);
      set_neighbor(n_db, u, t4);
      vertex_tri_[pv] = t1;
      vertex_tri_[a] = t1;
      vertex_tri_[b] = t2;
      vertex_tri_[c] = t1;
      vertex_tri_[d] = t3;
      stack = {{t1, 0}, {t2, 0}, {t3, 0}, {t4, 0}};
    }
  }
  legalize(stack);
  last_ = vertex_tri_[pv];
  return pv;
}

bool ConstrainedDelaunay::flippable(int t, int i) const {
  const Tri& T = tris_[t];
  const int u = T.n[i];
  if (u < 0 || T.tag[i] != kFree) return false;
  const int p = T.v[i], a = T.v[next(i)], b = T.v[prev(i)];
  const int j = index_in(u, a);
  const int d = tris_[u].v[next(j)];
  return orient2d(points_[p], points_[a], points_[d]) > 0.0 && orient2d(points_[p], points_[d], points_[b]) > 0.0;
}

bool ConstrainedDelaunay::should_flip(int t, int i) const {
  if (!flippable(t, i)) return false;
  const Tri& T = tris_[t];
  const int p = T.v[i], a = T.v[next(i)], b = T.v[prev(i)];
  const int u = T.n[i];
  const int d = tris_[u].v[next(index_in(u, a))];
  double mag = 0.0;
  const double det = incircle(points_[p], points_[a], points_[b], points_[d], &mag);
  if (det > kTieTolerance * mag) return true;
  if (det < -kTieTolerance * mag) return false;
  return !preferred_diagonal(points_[a], points_[b]) && preferred_diagonal(points_[p], points_[d]);
}

// t = (p, a, b), u = (d, b, a)  ->  t = (p, a, d), u = (p, d, b).
std::pair<int, int> ConstrainedDelaunay::flip(int t, int i) {
  const Tri T = tris_[t];
  const int u = T.n[i];
  const Tri U = tris_[u];
  const int p = T.v[i], a = T.v[next(i)], b = T.v[prev(i)];
  const int ja = index_in(u, a), jb = index_in(u, b);
  const int jd = 3 - ja - jb;
  const int d = U.v[jd];
  const int n_pa = T.n[prev(i)], n_bp = T.n[next(i)];
  const std::uint8_t g_pa = T.tag[prev(i)], g_bp = T.tag[next(i)];
  const int n_ad = U.n[jb], n_db = U.n[ja];
  const std::uint8_t g_ad = U.tag[jb], g_db = U.tag[ja];
  tris_[t] = Tri{{p, a, d}, {n_ad, u, n_pa}, {g_ad, kFree, g_pa}, true};
  tris_[u] = Tri{{p, d, b}, {n_db, n_bp, t}, {g_db, g_bp, kFree}, true};
  set_neighbor(n_ad, u, t);
  set_neighbor(n_bp, t, u);
  vertex_tri_[p] = t;
  vertex_tri_[a] = t;
  vertex_tri_[d] = t;
  vertex_tri_[b] = u;
  return {t, u};
}

void ConstrainedDelaunay::legalize(std::vector<std::pair<int, int>>& stack) {
  std::size_t guard = 0;
  const std::size_t limit = 64 * tris_.size() + 1024;
  while (!stack.empty()) {
    if (++guard > limit) throw GenerationError("edge legalization did not terminate");
    const auto [t, i] = stack.back();
    stack.pop_back();
    if (!should_flip(t, i)) continue;
    const auto [t1, t2] = flip(t, i);
    stack.emplace_back(t1, 0);
    stack.emplace_back(t2, 0);
  }
}

void ConstrainedDelaunay::restore_delaunay() {
  std::deque<std::pair<int, int>> queue;
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
    if (tris_[t].alive)
      for (int i = 0; i < 3; ++i) queue.emplace_back(t, i);
  std::size_t guard = 0;
  const std::size_t limit = 256 * tris_.size() + 1024;
  while (!queue.empty()) {
    if (++guard > limit) throw GenerationError("Delaunay restoration did not terminate");
    const auto [t, i] = queue.front();
    queue.pop_front();
    if (!should_flip(t, i)) continue;
    const auto [t1, t2] = flip(t, i);
    queue.emplace_back(t1, 0);
    queue.emplace_back(t1, 2);
    queue.emplace_back(t2, 0);
    queue.emplace_back(t2, 1);
  }
}

std::vector<int> ConstrainedDelaunay::insert_all(std::span<const Point2> points) {
  std::vector<std::uint64_t> keys(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double fx = std::clamp((points[k].x - box_.xmin) / box_.width(), 0.0, 1.0);
    const double fy = std::clamp((points[k].y - box_.ymin) / box_.height(), 0.0, 1.0);
    keys[k] = hilbert_index(static_cast<std::uint32_t>(fx * 65535.0), static_cast<std::uint32_t>(fy * 65535.0));
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<int> ids(points.size());
  for (std::size_t k : order) ids[k] = insert(points[k]);
  return ids;
}

std::vector<int> ConstrainedDelaunay::triangles_around(int v) const {
  std::vector<int> out;
  const int start = vertex_tri_[v];
  if (start < 0) return out;
  int t = start;
  bool open = false;
  do {
    out.push_back(t);
    const int i = index_in(t, v);
    const int nb = tris_[t].n[prev(i)];  // across edge (v, v[i+1])
    if (nb < 0) {
      open = true;
      break;
    }
    t = nb;
  } while (t != start && out.size() < 4096);
  if (open) {
    t = start;
    while (true) {
      const int i = index_in(t, v);
      const int nb = tris_[t].n[next(i)];  // across edge (v[i+2], v)
      if (nb < 0) break;
      t = nb;
      out.push_back(t);
      if (out.size() > 4096) break;
    }
  }
  return out;
}

std::pair<int, int> ConstrainedDelaunay::find_edge(int a, int b) const {
  for (int t : triangles_around(a)) {
    const int i = index_in(t, a);
    if (tris_[t].v[next(i)] == b) return {t, prev(i)};
    if (tris_[t].v[prev(i)] == b) return {t, next(i)};
  }
  return {-1, -1};
}

void ConstrainedDelaunay::insert_segment(int a, int b, Tag tag) {
  if (a == b) return;
  const auto set_tag = [&](int x, int y) {
    const auto [t, i] = find_edge(x, y);
    if (t < 0) throw GenerationError("constraint recovery lost an edge");
    tris_[t].tag[i] = tag;
    const int u = tris_[t].n[i];
    if (u >= 0) {
      for (int k = 0; k < 3; ++k)
        if (tris_[u].n[k] == t) tris_[u].tag[k] = tag;
    }
  };
  if (find_edge(a, b).first >= 0) {
    set_tag(a, b);
    return;
  }
  const Point2 A = points_[a], B = points_[b];

  // Collect the edges crossed by the open segment (a, b).
  std::vector<std::pair<int, int>> crossed;
  int t = -1, ci = -1;
  for (int s : triangles_around(a)) {
    const int i = index_in(s, a);
    const int c = tris_[s].v[next(i)], d = tris_[s].v[prev(i)];
    for (int w : {c, d}) {
      if (orient2d(A, B, points_[w]) == 0.0 && dot(points_[w] - A, B - A) > 0.0) {
        insert_segment(a, w, tag);
        insert_segment(w, b, tag);
        return;
      }
    }
    if (orient2d(A, B, points_[c]) < 0.0 && orient2d(A, B, points_[d]) > 0.0) {
      t = s;
      ci = i;
      break;
    }
  }
  if (t < 0) throw GenerationError("constraint segment leaves the triangulation");
  int c = tris_[t].v[next(ci)], d = tris_[t].v[prev(ci)];
  crossed.emplace_back(c, d);
  while (true) {
    int k = -1;
    for (int m = 0; m < 3; ++m)
      if (tris_[t].v[m] != c && tris_[t].v[m] != d) k = m;
    const int u = tris_[t].n[k];
    if (u < 0) throw GenerationError("constraint segment leaves the triangulation");
    int e = -1;
    for (int m = 0; m < 3; ++m)
      if (tris_[u].v[m] != c && tris_[u].v[m] != d) e = tris_[u].v[m];
    if (e == b) break;
    const double oe = orient2d(A, B, points_[e]);
    if (oe == 0.0) {
      insert_segment(a, e, tag);
      insert_segment(e, b, tag);
      return;
    }
    if (oe < 0.0)
      c = e;
    else
      d = e;
    crossed.emplace_back(c, d);
    t = u;
  }
  for (const auto& [x, y] : crossed) {
    const auto [s, i] = find_edge(x, y);
    if (s >= 0 && tris_[s].tag[i] != kFree) throw GenerationError("constraint segments intersect");
  }

  // Flip crossed edges away.
  std::deque<std::pair<int, int>> queue(crossed.begin(), crossed.end());
  std::vector<std::pair<int, int>> created;
  std::size_t guard = 0;
  const std::size_t limit = 64 * queue.size() * queue.size() + 1024;
  while (!queue.empty()) {
    if (++guard > limit) throw GenerationError("constraint recovery did not terminate");
    const auto [x, y] = queue.front();
    queue.pop_front();
    const auto [s, i] = find_edge(x, y);
    if (s < 0) continue;
    if (!flippable(s, i)) {
      queue.emplace_back(x, y);
      continue;
    }
    const int p = tris_[s].v[i];
    const int u = tris_[s].n[i];
    const int q = tris_[u].v[next(index_in(u, tris_[s].v[next(i)]))];
    flip(s, i);
    if ((p == a && q == b) || (p == b && q == a)) continue;
    if (p != a && p != b && q != a && q != b && segments_cross(points_[p], points_[q], A, B))
      queue.emplace_back(p, q);
    else
      created.emplace_back(p, q);
  }
  set_tag(a, b);

  // Restore the Delaunay property around the new edges.
  std::vector<std::pair<int, int>> stack;
  for (const auto& [x, y] : created) {
    const auto [s, i] = find_edge(x, y);
    if (s >= 0) stack.emplace_back(s, i);
  }
  std::size_t g2 = 0;
  while (!stack.empty()) {
    if (++g2 > 64 * tris_.size() + 1024) throw GenerationError("edge legalization did not terminate");
    const auto [s, i] = stack.back();
    stack.pop_back();
    if (!should_flip(s, i)) continue;
    const auto [t1, t2] = flip(s, i);
    for (int k = 0; k < 3; ++k) {
      stack.emplace_back(t1, k);
      stack.emplace_back(t2, k);
    }
  }
}

void ConstrainedDelaunay::check() const {
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    const Tri& T = tris_[t];
    if (!T.alive) continue;
    const std::string where = "triangle " + std::to_string(t);
    if (!(orient2d(points_[T.v[0]], points_[T.v[1]], points_[T.v[2]]) > 0.0))
      throw GenerationError(where + " is not counterclockwise");
    for (int i = 0; i < 3; ++i) {
      const int u = T.n[i];
      if (u < 0) continue;
      if (!tris_[u].alive) throw GenerationError(where + " links a deleted neighbour");
      const int a = T.v[next(i)], b = T.v[prev(i)];
      bool mutual = false;
      for (int j = 0; j < 3; ++j)
        mutual = mutual || (tris_[u].n[j] == static_cast<int>(t) && tris_[u].v[next(j)] == b && tris_[u].v[prev(j)] == a &&
                            tris_[u].tag[j] == T.tag[i]);
      if (!mutual) throw GenerationError(where + " has a non-mutual neighbour link");
    }
  }
}

std::vector<std::array<int, 3>> ConstrainedDelaunay::triangles() const {
  std::vector<std::array<int, 3>> out;
  out.reserve(tris_.size());
  for (const Tri& t : tris_)
    if (t.alive) out.push_back(t.v);
  return out;
}

std::vector<bool> ConstrainedDelaunay::segment_vertices() const {
  std::vector<bool> flag(points_.size(), false);
  for (const Tri& t : tris_)
    for (int i = 0; i < 3; ++i)
      if (t.tag[i] == kSegment) {
        flag[t.v[next(i)]] = true;
        flag[t.v[prev(i)]] = true;
      }
  return flag;
}

std::vector<std::array<int, 2>> ConstrainedDelaunay::segments() const {
  std::vector<std::array<int, 2>> out;
  for (const Tri& t : tris_)
    for (int i = 0; i < 3; ++i)
      if (t.tag[i] == kSegment) {
        const int a = t.v[next(i)], b = t.v[prev(i)];
        if (a < b || t.n[i] < 0) out.push_back({std::min(a, b), std::max(a, b)});
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ConstrainedDelaunay::is_bad(int t, const RefineOptions& options) const {
  const auto& v = tris_[t].v;
  const Point2 a = points_[v[0]], b = points_[v[1]], c = points_[v[2]];
  const double lab = distance(a, b), lbc = distance(b, c), lca = distance(c, a);
  const double lmax = std::max({lab, lbc, lca});
  if (options.max_edge > 0.0 && lmax > options.max_edge) return true;
  if (options.max_radius_edge_ratio > 0.0) {
    const double lmin = std::min({lab, lbc, lca});
    const double area2 = std::fabs(orient2d(a, b, c));
    const double radius = lab * lbc * lca / (2.0 * area2);
    if (radius / lmin > options.max_radius_edge_ratio) return true;
  }
  return false;
}

void ConstrainedDelaunay::split_segment(int t, int i, const RefineOptions& options) {
  const int a = tris_[t].v[next(i)], b = tris_[t].v[prev(i)];
  const std::uint8_t tag = tris_[t].tag[i];
  Point2 m = midpoint(points_[a], points_[b]);
  if (tag == kSegment && options.segment_split) m = options.segment_split(a, b);
  const Location loc = locate(m, t);
  if (loc.kind == LocKind::OnEdge) {
    const int ea = tris_[loc.tri].v[next(loc.index)], eb = tris_[loc.tri].v[prev(loc.index)];
    if ((ea == a && eb == b) || (ea == b && eb == a)) {
      insert_at(m, loc);
      return;
    }
  }
  // Off-segment split point: release the edge, insert, re-impose both halves.
  tris_[t].tag[i] = kFree;
  const int u = tris_[t].n[i];
  if (u >= 0)
    for (int k = 0; k < 3; ++k)
      if (tris_[u].n[k] == t) tris_[u].tag[k] = kFree;
  const int pm = insert_at(m, locate(m, t));
  insert_segment(a, pm, static_cast<Tag>(tag));
  insert_segment(pm, b, static_cast<Tag>(tag));
}

void ConstrainedDelaunay::refine(const RefineOptions& options) {
  std::size_t steiner = 0;
  for (int pass = 0; pass < 10000; ++pass) {
    std::vector<int> bad;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
      if (tris_[t].alive && is_bad(t, options)) bad.push_back(t);
    if (bad.empty()) return;
    for (int t : bad) {
      if (!tris_[t].alive || !is_bad(t, options)) continue;
      if (++steiner > options.max_steiner) throw GenerationError("mesh refinement exceeded its point budget");
      const auto& v = tris_[t].v;
      const Point2 cc = circumcenter(points_[v[0]], points_[v[1]], points_[v[2]]);

      // Walk towards the circumcenter without crossing tagged edges.
      int s = t;
      int blocked_tri = -1, blocked_edge = -1;
      for (std::size_t step = 0; step < 4 * tris_.size() + 64; ++step) {
        const Tri& S = tris_[s];
        int cross = -1;
        for (int j = 0; j < 3; ++j) {
          const int i = (static_cast<int>(step) + j) % 3;
          if (orient2d(points_[S.v[next(i)]], points_[S.v[prev(i)]], cc) < 0.0) {
            cross = i;
            break;
          }
        }
        if (cross < 0) break;
        if (S.tag[cross] != kFree || S.n[cross] < 0) {
          blocked_tri = s;
          blocked_edge = cross;
          break;
        }
        s = S.n[cross];
      }
      if (blocked_tri >= 0) {
        split_segment(blocked_tri, blocked_edge, options);
        continue;
      }
      // Split any tagged edge whose diametral circle contains the circumcenter.
      bool encroached = false;
      for (int j = 0; j < 3; ++j) {
        if (tris_[s].tag[j] == kFree) continue;
        const Point2 ea = points_[tris_[s].v[next(j)]], eb = points_[tris_[s].v[prev(j)]];
        if (dot(ea - cc, eb - cc) < 0.0) {
          split_segment(s, j, options);
          encroached = true;
          break;
        }
      }
      if (encroached) continue;
      const Location loc = locate(cc, s);
      if (loc.kind == LocKind::OnEdge && tris_[loc.tri].tag[loc.index] != kFree) {
        split_segment(loc.tri, loc.index, options);
        continue;
      }
      insert_at(cc, loc);
    }
  }
  throw GenerationError("mesh refinement did not converge");
}

void ConstrainedDelaunay::smooth(int iterations) {
  std::vector<bool> fixed(points_.size(), false);
  for (const Tri& t : tris_)
    if (t.alive)
      for (int i = 0; i < 3; ++i)
        if (t.tag[i] != kFree || t.n[i] < 0) {
          fixed[t.v[next(i)]] = true;
          fixed[t.v[prev(i)]] = true;
        }
  for (int it = 0; it < iterations; ++it) {
    for (int v = 0; v < static_cast<int>(points_.size()); ++v) {
      if (fixed[v]) continue;
      const auto star = triangles_around(v);
      Point2 acc{0.0, 0.0};
      double wsum = 0.0;
      for (int t : star) {
        const auto& tv = tris_[t].v;
        const Point2 a = points_[tv[0]], b = points_[tv[1]], c = points_[tv[2]];
        const double w = 0.5 * orient2d(a, b, c);
        acc += w * ((a + b + c) / 3.0);
        wsum += w;
      }
      if (!(wsum > 0.0)) continue;
      const Point2 target = acc / wsum;
      bool ok = true;
      for (int t : star) {
        auto pts = std::array<Point2, 3>{points_[tris_[t].v[0]], points_[tris_[t].v[1]], points_[tris_[t].v[2]]};
        const double before = orient2d(pts[0], pts[1], pts[2]);
        pts[index_in(t, v)] = target;
        if (!(orient2d(pts[0], pts[1], pts[2]) > 1e-3 * before)) {
          ok = false;
          break;
        }
      }
      if (ok) points_[v] = target;
    }
    restore_delaunay();
  }
}

}  // namespace wgif
