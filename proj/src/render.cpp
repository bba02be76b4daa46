#include "hqec/render.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "hqec/check.hpp"

namespace hqec {
namespace {

constexpr double kUnit = 48.0;    // pixels per lattice step
constexpr double kMargin = 24.0;  // canvas border

struct Point {
  double x = 0, y = 0;
};

// Triangular-grid vertex (i, j) in the plane; rows grow downward and
// shift half a step left so triangles come out equilateral.
Point vertex(int i, int j) {
  return {i - 0.5 * j, 0.5 * std::sqrt(3.0) * j};
}

void emit_point(std::ostream& out, const Point& p, double dx, double dy) {
  out << kMargin + kUnit * (p.x + dx) << ',' << kMargin + kUnit * (p.y + dy);
}

// The three vertices of qudit q's up-triangle: apex, then base left,
// then base right.
std::array<Point, 3> triangle(const Qudit& qu) {
  return {vertex(qu.ax, qu.ay), vertex(qu.ax, qu.ay + 1), vertex(qu.ax + 1, qu.ay + 1)};
}

void emit_triangle(std::ostream& out, const Qudit& qu, double dx, const std::string& style) {
  out << "    <polygon points=\"";
  const std::array<Point, 3> tri = triangle(qu);
  for (int k = 0; k < 3; ++k) {
    if (k) out << ' ';
    emit_point(out, tri[k], dx, 0.0);
  }
  out << "\" " << style << "/>\n";
}

std::string fractal_svg(const Lattice& lat, const gf2::BitVec* region, const gf2::BitVec* wedge) {
  // The gasket spans rows 0..2^level; leftmost vertex is (0, 2^level).
  const int side = 1 << lat.level;
  const double dx = 0.5 * side;  // shift right so all x >= 0
  const double width = 2 * kMargin + kUnit * side;
  const double height = 2 * kMargin + kUnit * 0.5 * std::sqrt(3.0) * side;
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "  <g id=\"lattice\">\n";
  for (const Qudit& qu : lat.qudits)
    emit_triangle(out, qu, dx, "fill=\"#e8e4da\" stroke=\"#5b5b5b\" stroke-width=\"1\"");
  out << "  </g>\n";
  if (region != nullptr) {
    out << "  <g id=\"regions\">\n";
    for (const Qudit& qu : lat.qudits)
      if (region->get(qu.id))
        emit_triangle(out, qu, dx, "fill=\"#4f86c6\" fill-opacity=\"0.75\" stroke=\"none\"");
    out << "  </g>\n";
  }
  if (wedge != nullptr) {
    out << "  <g id=\"wedges\">\n";
    for (const Qudit& qu : lat.qudits)
      if (wedge->get(qu.id))
        emit_triangle(out, qu, dx,
                      "fill=\"#e0a13c\" fill-opacity=\"0.45\" stroke=\"#b5731a\" "
                      "stroke-width=\"2\"");
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string boundary_svg(const Lattice& lat, const gf2::BitVec* region, const gf2::BitVec* wedge) {
  const double ring = kUnit * std::max(2.0, lat.N / 4.0);
  const double size = 2 * (ring + 2 * kMargin);
  const double cx = size / 2, cy = size / 2;
  const double dot = std::max(4.0, ring * std::sin(M_PI / lat.N) * 0.6);
  const auto site = [&](int q) {
    const double a = 2.0 * M_PI * q / lat.N - M_PI / 2.0;
    return Point{cx + ring * std::cos(a), cy + ring * std::sin(a)};
  };
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "  <g id=\"lattice\">\n";
  out << "    <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << ring
      << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  for (const GateEdge& e : lat.edges) {
    const Point a = site(e.q[0]), b = site(e.q[1]);
    out << "    <line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\""
        << b.y << "\" stroke=\"" << (e.kind == EdgeKind::SameBlock ? "#9bb7d4" : "#c4a98b")
        << "\" stroke-width=\"1\"/>\n";
  }
  for (int q = 0; q < lat.N; ++q) {
    const Point p = site(q);
    out << "    <circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << dot
        << "\" fill=\"#e8e4da\" stroke=\"#5b5b5b\" stroke-width=\"1\"/>\n";
  }
  out << "  </g>\n";
  if (region != nullptr) {
    out << "  <g id=\"regions\">\n";
    for (int q = 0; q < lat.N; ++q)
      if (region->get(q)) {
        const Point p = site(q);
        out << "    <circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << dot
            << "\" fill=\"#4f86c6\" fill-opacity=\"0.9\" stroke=\"none\"/>\n";
      }
    out << "  </g>\n";
  }
  if (wedge != nullptr) {
    out << "  <g id=\"wedges\">\n";
    for (int q = 0; q < lat.N; ++q)
      if (wedge->get(q)) {
        const Point p = site(q);
        out << "    <circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << dot * 1.5
            << "\" fill=\"none\" stroke=\"#b5731a\" stroke-width=\"2.5\"/>\n";
      }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_svg(const Lattice& lat, Geometry geometry, const gf2::BitVec* region,
                       const gf2::BitVec* wedge) {
  detail::check(region == nullptr || region->n == lat.N, "region indexes qudits");
  detail::check(wedge == nullptr || wedge->n == lat.N, "wedge indexes qudits");
  return geometry == Geometry::Fractal ? fractal_svg(lat, region, wedge)
                                       : boundary_svg(lat, region, wedge);
}

}  // namespace hqec
