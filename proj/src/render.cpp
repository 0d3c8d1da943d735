#include "lvt/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace lvt {

namespace {

constexpr double kArea = 480;   // drawing area in px
constexpr double kMargin = 48;  // around it, for labels
constexpr double kLabelOffset = 14;

struct Vec {
  double x = 0, y = 0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string point_label(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

// Maps projected coordinates into the canvas (y pointing down).
struct Frame {
  double min_x, max_y, unit;

  Vec screen(Vec v) const { return {kMargin + (v.x - min_x) * unit, kMargin + (max_y - v.y) * unit}; }
};

Frame fit(const std::vector<Vec>& pts, double& width, double& height) {
  double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  const double unit = kArea / span;
  width = (hi_x - lo_x) * unit + 2 * kMargin;
  height = (hi_y - lo_y) * unit + 2 * kMargin;
  return Frame{lo_x, hi_y, unit};
}

void open_svg(std::ostringstream& os, double width, double height, const PotentialRecord& r) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height + 24)
     << "\" viewBox=\"0 0 " << num(width) << " " << num(height + 24) << "\" font-family=\"sans-serif\">\n"
     << "<title>Newton polytope for (" << r.triple.to_string() << "), " << r.dim << " variables</title>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << num(kMargin) << "\" y=\"" << num(height + 12)
     << "\" font-size=\"13\">(" << r.triple.to_string() << "), n=" << r.dim << "</text>\n";
}

void label(std::ostringstream& os, Vec at, const std::string& text, int size, const char* color) {
  os << "<text x=\"" << num(at.x) << "\" y=\"" << num(at.y) << "\" font-size=\"" << size
     << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"" << color << "\">" << text << "</text>\n";
}

// Offset of an edge label away from the centre of the figure.
Vec outward(Vec mid, Vec centre) {
  double dx = mid.x - centre.x, dy = mid.y - centre.y;
  const double len = std::hypot(dx, dy);
  if (len < 1e-9) return mid;
  return {mid.x + dx / len * kLabelOffset, mid.y + dy / len * kLabelOffset};
}

std::string planar(const PotentialRecord& r, const LatticePolytope& p, const RenderOptions& opt) {
  const auto& verts = p.vertices();
  std::vector<Vec> pts;
  for (const auto& v : verts) pts.push_back({double(v[0]), double(v[1])});
  auto bounds = pts;
  bounds.push_back({0, 0});
  double width = 0, height = 0;
  const Frame f = fit(bounds, width, height);

  std::ostringstream os;
  open_svg(os, width, height, r);

  if (opt.grid) {
    std::int64_t lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (const auto& v : verts) {
      lo_x = std::min(lo_x, v[0]);
      hi_x = std::max(hi_x, v[0]);
      lo_y = std::min(lo_y, v[1]);
      hi_y = std::max(hi_y, v[1]);
    }
    // At most about forty grid lines per direction.
    const std::int64_t step = std::max<std::int64_t>(1, (std::max(hi_x - lo_x, hi_y - lo_y) + 39) / 40);
    os << "<g stroke=\"#d8d8d8\" stroke-width=\"0.6\">\n";
    for (std::int64_t x = lo_x - (((lo_x % step) + step) % step); x <= hi_x; x += step) {
      auto a = f.screen({double(x), double(lo_y)}), b = f.screen({double(x), double(hi_y)});
      os << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(b.y)
         << "\"/>\n";
    }
    for (std::int64_t y = lo_y - (((lo_y % step) + step) % step); y <= hi_y; y += step) {
      auto a = f.screen({double(lo_x), double(y)}), b = f.screen({double(hi_x), double(y)});
      os << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(b.y)
         << "\"/>\n";
    }
    os << "</g>\n";
  }

  // Boundary in cyclic order around the centroid.
  Vec centre;
  for (const auto& q : pts) centre = {centre.x + q.x / pts.size(), centre.y + q.y / pts.size()};
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::atan2(pts[a].y - centre.y, pts[a].x - centre.x) < std::atan2(pts[b].y - centre.y, pts[b].x - centre.x);
  });
  os << "<polygon points=\"";
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto s = f.screen(pts[order[k]]);
    os << (k ? " " : "") << num(s.x) << "," << num(s.y);
  }
  os << "\" fill=\"#cfe3f7\" fill-opacity=\"0.7\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n";

  const auto origin = f.screen({0, 0});
  os << "<circle cx=\"" << num(origin.x) << "\" cy=\"" << num(origin.y) << "\" r=\"3\" fill=\"#c00000\"/>\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto s = f.screen(pts[i]);
    os << "<circle cx=\"" << num(s.x) << "\" cy=\"" << num(s.y) << "\" r=\"4\" fill=\"#1f4e79\"/>\n";
  }
  if (opt.labels) {
    const auto c = f.screen(centre);
    for (const auto& [i, j] : p.edges()) {
      auto a = f.screen(pts[i]), b = f.screen(pts[j]);
      label(os, outward({(a.x + b.x) / 2, (a.y + b.y) / 2}, c), std::to_string(affine_length(verts[i], verts[j])),
            14, "#000000");
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      label(os, outward(f.screen(pts[i]), c), point_label(verts[i]), 10, "#555555");
  }
  os << "</svg>\n";
  return os.str();
}

Vec isometric(const Point& v) {
  const double c30 = std::sqrt(3.0) / 2;
  return {(double(v[0]) - double(v[1])) * c30, (double(v[0]) + double(v[1])) / 2 + double(v[2])};
}

std::string spatial(const PotentialRecord& r, const LatticePolytope& p, const RenderOptions& opt) {
  const auto& verts = p.vertices();
  std::vector<Vec> pts;
  for (const auto& v : verts) pts.push_back(isometric(v));
  auto bounds = pts;
  bounds.push_back({0, 0});
  double width = 0, height = 0;
  const Frame f = fit(bounds, width, height);

  std::set<std::size_t> tri;
  for (const auto& t : distinguished_face(r.poly).vertices()) {
    auto it = std::find(verts.begin(), verts.end(), t);
    if (it != verts.end()) tri.insert(static_cast<std::size_t>(it - verts.begin()));
  }

  std::ostringstream os;
  open_svg(os, width, height, r);
  Vec centre;
  for (const auto& q : pts) centre = {centre.x + q.x / pts.size(), centre.y + q.y / pts.size()};
  const auto c = f.screen(centre);
  for (const auto& [i, j] : p.edges()) {
    const bool on_triangle = tri.count(i) && tri.count(j);
    auto a = f.screen(pts[i]), b = f.screen(pts[j]);
    os << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(b.y)
       << "\" stroke=\"" << (on_triangle ? "#1f4e79" : "#7f7f7f") << "\" stroke-width=\""
       << (on_triangle ? "2.5" : "1.5") << "\"/>\n";
    if (opt.labels)
      label(os, outward({(a.x + b.x) / 2, (a.y + b.y) / 2}, c), std::to_string(affine_length(verts[i], verts[j])),
            14, "#000000");
  }
  const auto origin = f.screen({0, 0});
  os << "<circle cx=\"" << num(origin.x) << "\" cy=\"" << num(origin.y) << "\" r=\"3\" fill=\"#c00000\"/>\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto s = f.screen(pts[i]);
    os << "<circle cx=\"" << num(s.x) << "\" cy=\"" << num(s.y) << "\" r=\"4\" fill=\"#1f4e79\"/>\n";
    if (opt.labels) label(os, outward(s, c), point_label(verts[i]), 10, "#555555");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const PotentialRecord& record, const RenderOptions& options) {
  const auto p = newton_polytope(record.poly);
  if (record.dim == 2) return planar(record, p, options);
  if (record.dim == 3) return spatial(record, p, options);
  throw UnsupportedDim("rendering supports two or three variables, got " + std::to_string(record.dim));
}

}  // namespace lvt
