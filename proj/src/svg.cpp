#include "frechet/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "frechet/geometry.hpp"

namespace frechet {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string arrangement_svg(const TriangleArrangement& a) {
  Box2 box;
  for (const Vec2& c : a.corners) box.add(c);
  const double w = std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  const double pad = 0.05 * (w > 0 ? w : 1.0);
  const double size = 600.0;
  const double s = size / (w + 2 * pad);
  auto X = [&](double x) { return num((x - box.xmin + pad) * s); };
  auto Y = [&](double y) { return num((box.ymax + pad - y) * s); };  // flip so y points up

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size) << "\" height=\"" << num(size)
      << "\" viewBox=\"0 0 " << num(size) << " " << num(size) << "\">\n";
  out << "  <style>.covered{fill:#b8e0b8}.uncovered{fill:#f4b0b0}.face{stroke:#999;stroke-width:0.3}</style>\n";
  out << "  <g id=\"faces\">\n";
  for (const auto& f : a.faces) {
    out << "    <polygon class=\"face " << (f.covered ? "covered" : "uncovered") << "\" points=\"" << X(f.x0) << ","
        << Y(f.bottom[0]) << " " << X(f.x1) << "," << Y(f.bottom[1]) << " " << X(f.x1) << "," << Y(f.top[1]) << " "
        << X(f.x0) << "," << Y(f.top[0]) << "\"/>\n";
  }
  out << "  </g>\n";
  out << "  <polygon id=\"triangle\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (int i = 0; i < 3; ++i) out << (i ? " " : "") << X(a.corners[i].x) << "," << Y(a.corners[i].y);
  out << "\"/>\n";
  out << "  <g id=\"arcs\">\n";
  for (const auto& arc : a.arcs) {
    const char* color = kPalette[(arc.tag < 0 ? 0 : arc.tag) % 10];
    out << "    <g class=\"arc\" fill=\"" << color << "\">";
    for (const Vec2& p : sample_arc(arc, 120)) out << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"1\"/>";
    out << "</g>\n";
  }
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

std::string curve_free_space_svg(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol,
                                 int samples) {
  const CurveFreeSpace fs = curve_free_space(f, g, eps, tol);
  samples = std::max(1, samples);
  const double cell = std::max(8.0, 480.0 / std::max(fs.n, fs.m));
  const double pad = 10.0;
  const double W = fs.n * cell + 2 * pad, H = fs.m * cell + 2 * pad;
  auto X = [&](double s) { return num(pad + s * cell); };
  auto Y = [&](double t) { return num(H - pad - t * cell); };
  const double r = eps + tol.slack(eps, eps);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H) << "\" viewBox=\"0 0 "
      << num(W) << " " << num(H) << "\">\n";
  out << "  <g id=\"cells\" stroke=\"#888\" stroke-width=\"0.5\">\n";
  for (int i = 0; i < fs.n; ++i)
    for (int j = 0; j < fs.m; ++j) {
      int free = 0;
      for (int a = 0; a < samples; ++a)
        for (int b = 0; b < samples; ++b) {
          const double s = i + (a + 0.5) / samples, t = j + (b + 0.5) / samples;
          if (distance(f.at(s), g.at(t)) <= r) ++free;
        }
      const int shade = 255 - static_cast<int>(175.0 * free / (samples * samples));
      out << "    <rect class=\"cell\" x=\"" << X(i) << "\" y=\"" << Y(j + 1) << "\" width=\"" << num(cell)
          << "\" height=\"" << num(cell) << "\" fill=\"rgb(" << shade << "," << shade << ",255)\"/>\n";
    }
  out << "  </g>\n";
  out << "  <g id=\"intervals\" stroke=\"#c00\" stroke-width=\"2\">\n";
  for (int i = 0; i <= fs.n; ++i)
    for (int j = 0; j < fs.m; ++j) {
      const FreeInterval& iv = fs.vertical[i][j];
      if (iv.empty()) continue;
      out << "    <line x1=\"" << X(i) << "\" y1=\"" << Y(j + iv.lo) << "\" x2=\"" << X(i) << "\" y2=\"" << Y(j + iv.hi)
          << "\"/>\n";
    }
  for (int i = 0; i < fs.n; ++i)
    for (int j = 0; j <= fs.m; ++j) {
      const FreeInterval& iv = fs.horizontal[i][j];
      if (iv.empty()) continue;
      out << "    <line x1=\"" << X(i + iv.lo) << "\" y1=\"" << Y(j) << "\" x2=\"" << X(i + iv.hi) << "\" y2=\"" << Y(j)
          << "\"/>\n";
    }
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace frechet
