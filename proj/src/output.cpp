#include "wgif/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wgif {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string solution_csv(const TriMesh& mesh, const DofMap& dofs, const std::vector<double>& dirichlet,
                         const Eigen::VectorXd& x) {
  std::ostringstream out;
  out << "entity,index,side,value\n";
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t)
    out << "cell," << t << ',' << index_of(mesh.triangles()[t].region) + 1 << ',' << num(x[dofs.cell[t]]) << '\n';
  for (std::size_t e = 0; e < mesh.n_edges(); ++e)
    for (int side = 0; side < 2; ++side) {
      const int k = dofs.edge[e][side];
      if (k == DofMap::kNone) continue;
      out << "edge," << e << ',' << side + 1 << ',' << num(k >= 0 ? x[k] : dirichlet[e]) << '\n';
    }
  for (std::size_t e = 0; e < mesh.n_edges(); ++e)
    if (dofs.lambda[e] >= 0) out << "lambda," << e << ",," << num(x[dofs.lambda[e]]) << '\n';
  return out.str();
}

std::string cell_values_csv(const TriMesh& mesh, const DofMap& dofs, const Eigen::VectorXd& x) {
  std::ostringstream out;
  out << "cx,cy,w0\n";
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const Point2 c = mesh.centroid(t);
    out << num(c.x) << ',' << num(c.y) << ',' << num(x[dofs.cell[t]]) << '\n';
  }
  return out.str();
}

std::string svg_heatmap(const TriMesh& mesh, const DofMap& dofs, const Eigen::VectorXd& x, int pixels) {
  const Rect box = mesh.bounding_box();
  const double scale = pixels / std::max(box.width(), box.height());
  const int w = static_cast<int>(std::ceil(box.width() * scale)), h = static_cast<int>(std::ceil(box.height() * scale));
  double lo = 0.0, hi = 0.0;
  if (mesh.n_triangles() > 0) {
    lo = hi = x[dofs.cell[0]];
    for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
      lo = std::min(lo, x[dofs.cell[t]]);
      hi = std::max(hi, x[dofs.cell[t]]);
    }
  }
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\">\n";
  char buf[160];
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const double s = hi > lo ? (x[dofs.cell[t]] - lo) / (hi - lo) : 0.5;
    const int r = static_cast<int>(std::lround(255.0 * s)), b = 255 - r;
    out << "<polygon points=\"";
    for (const Point2& p : mesh.corners(t)) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", (p.x - box.xmin) * scale, (box.ymax - p.y) * scale);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "\" fill=\"rgb(%d,64,%d)\" stroke=\"rgb(%d,64,%d)\" stroke-width=\"0.3\"/>\n", r, b,
                  r, b);
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace wgif
