#include "wgif/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "wgif/errors.hpp"

namespace wgif {

namespace {

// Whitespace-separated tokens of the next non-empty, non-comment line.
class RecordReader {
public:
  explicit RecordReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }
  std::size_t line() const { return line_no_; }

private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

long parse_int(const std::string& s, std::size_t line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("expected an integer, got '" + s + "'", line);
  return value;
}

double parse_real(const std::string& s, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("expected a number, got '" + s + "'", line);
  return value;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TriMesh ingest_mesh(std::istream& node, std::istream& ele, const RegionPredicate& region,
                    const PointPredicate& on_interface) {
  std::vector<std::string> tok;

  RecordReader nr(node);
  if (!nr.next(tok)) throw ParseError(".node file is empty", nr.line());
  if (tok.size() < 2) throw ParseError(".node header needs at least 2 fields", nr.line());
  const long n = parse_int(tok[0], nr.line());
  if (n <= 0) throw ParseError("vertex count must be positive", nr.line());
  if (parse_int(tok[1], nr.line()) != 2) throw ParseError("only 2D meshes are supported", nr.line());
  const long n_attr = tok.size() > 2 ? parse_int(tok[2], nr.line()) : 0;
  const long n_mark = tok.size() > 3 ? parse_int(tok[3], nr.line()) : 0;
  if (n_attr < 0 || n_mark < 0 || n_mark > 1) throw ParseError("invalid attribute or marker count", nr.line());

  std::vector<Point2> vertices(static_cast<std::size_t>(n));
  std::vector<bool> seen(vertices.size(), false);
  long base = -1;
  for (long k = 0; k < n; ++k) {
    if (!nr.next(tok)) throw ParseError("expected " + std::to_string(n) + " vertex records", nr.line());
    if (static_cast<long>(tok.size()) != 3 + n_attr + n_mark)
      throw ParseError("vertex record has " + std::to_string(tok.size()) + " fields", nr.line());
    long idx = parse_int(tok[0], nr.line());
    if (base < 0) {
      if (idx != 0 && idx != 1) throw ParseError("vertex numbering must start at 0 or 1", nr.line());
      base = idx;
    }
    idx -= base;
    if (idx < 0 || idx >= n || seen[idx]) throw ParseError("invalid or repeated vertex index", nr.line());
    seen[idx] = true;
    vertices[idx] = {parse_real(tok[1], nr.line()), parse_real(tok[2], nr.line())};
    if (!std::isfinite(vertices[idx].x) || !std::isfinite(vertices[idx].y))
      throw ParseError("non-finite vertex coordinate", nr.line());
  }
  if (nr.next(tok)) throw ParseError("unexpected data after the last vertex record", nr.line());

  RecordReader er(ele);
  if (!er.next(tok)) throw ParseError(".ele file is empty", er.line());
  if (tok.size() < 2) throw ParseError(".ele header needs at least 2 fields", er.line());
  const long m = parse_int(tok[0], er.line());
  if (m <= 0) throw ParseError("triangle count must be positive", er.line());
  if (parse_int(tok[1], er.line()) != 3) throw ParseError("only 3-node triangles are supported", er.line());
  const long t_attr = tok.size() > 2 ? parse_int(tok[2], er.line()) : 0;
  if (t_attr < 0) throw ParseError("invalid attribute count", er.line());

  std::vector<std::array<int, 3>> triangles(static_cast<std::size_t>(m));
  std::vector<bool> tseen(triangles.size(), false);
  for (long k = 0; k < m; ++k) {
    if (!er.next(tok)) throw ParseError("expected " + std::to_string(m) + " triangle records", er.line());
    if (static_cast<long>(tok.size()) != 4 + t_attr)
      throw ParseError("triangle record has " + std::to_string(tok.size()) + " fields", er.line());
    const long idx = parse_int(tok[0], er.line()) - base;
    if (idx < 0 || idx >= m || tseen[idx]) throw ParseError("invalid or repeated triangle index", er.line());
    tseen[idx] = true;
    for (int j = 0; j < 3; ++j) {
      const long v = parse_int(tok[1 + j], er.line()) - base;
      if (v < 0 || v >= n) throw ParseError("triangle references a missing vertex", er.line());
      triangles[idx][j] = static_cast<int>(v);
    }
  }
  if (er.next(tok)) throw ParseError("unexpected data after the last triangle record", er.line());

  std::vector<bool> flags(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) flags[v] = on_interface(vertices[v]);
  const auto barrier = [&flags](int a, int b) { return flags[a] && flags[b]; };
  auto regions = label_regions(vertices, triangles, flags, barrier, region, on_interface);
  return TriMesh::build(std::move(vertices), std::move(triangles), std::move(regions), std::move(flags));
}

TriMesh ingest_mesh(const std::filesystem::path& node_file, const std::filesystem::path& ele_file,
                    const RegionPredicate& region, const PointPredicate& on_interface) {
  std::ifstream node(node_file);
  if (!node) throw DataError("cannot open " + node_file.string());
  std::ifstream ele(ele_file);
  if (!ele) throw DataError("cannot open " + ele_file.string());
  return ingest_mesh(node, ele, region, on_interface);
}

void write_mesh(const TriMesh& mesh, std::ostream& node, std::ostream& ele) {
  const Rect box = mesh.bounding_box();
  const double tol = 1e-12 * box.diameter();
  node << mesh.n_vertices() << " 2 0 1\n";
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    const Point2 p = mesh.vertices()[v];
    const int marker = mesh.interface_vertices()[v] ? 2 : (box.on_boundary(p, tol) ? 1 : 0);
    node << v + 1 << ' ' << format_real(p.x) << ' ' << format_real(p.y) << ' ' << marker << '\n';
  }
  ele << mesh.n_triangles() << " 3 0\n";
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& v = mesh.triangles()[t].v;
    ele << t + 1 << ' ' << v[0] + 1 << ' ' << v[1] + 1 << ' ' << v[2] + 1 << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DataError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void write_mesh(const TriMesh& mesh, const std::filesystem::path& stem) {
  std::ostringstream node, ele;
  write_mesh(mesh, node, ele);
  std::filesystem::path node_path = stem, ele_path = stem;
  node_path += ".node";
  ele_path += ".ele";
  write_file_atomic(node_path, node.str());
  write_file_atomic(ele_path, ele.str());
}

}  // namespace wgif
