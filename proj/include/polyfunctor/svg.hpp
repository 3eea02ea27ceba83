#pragma once

// Deterministic SVG drawings of polytopes of dimension at most 2 and of
// chamber complexes. 3D inputs are drawn through the (x0, x1) projection.

#include <cstdio>
#include <string>
#include <vector>

#include "polyfunctor/errors.hpp"
#include "polyfunctor/fiber.hpp"
#include "polyfunctor/polytope.hpp"

namespace polyfunctor {

inline constexpr int kSvgSize = 400;
inline constexpr int kSvgMargin = 20;

namespace detail {

inline Polytope planar(const Polytope& p) {
  const std::size_t n = p.ambient_dim();
  if (n == 2) return p;
  if (n == 3) return image(p, AffineMap::coordinate_projection(3, {0, 1}));
  if (n > 3) throw DimensionTooHigh("render-svg draws polytopes in at most three coordinates");
  Matrix m(2, zeros(n));
  if (n == 1) m[0][0] = 1;
  return image(p, AffineMap(m, zeros(2), n));
}

class Canvas {
 public:
  explicit Canvas(const std::vector<Polytope>& ps) {
    bool first = true;
    for (const auto& p : ps)
      for (const auto& v : p.vertices())
        for (int i = 0; i < 2; ++i) {
          double x = to_double(v[i]);
          if (first || x < lo_[i]) lo_[i] = x;
          if (first || x > hi_[i]) hi_[i] = x;
          if (i == 1) first = false;
        }
    double span = std::max(hi_[0] - lo_[0], hi_[1] - lo_[1]);
    const double inner = kSvgSize - 2 * kSvgMargin;
    scale_ = span > 0 ? inner / span : 1;
    for (int i = 0; i < 2; ++i) pad_[i] = (inner - (hi_[i] - lo_[i]) * scale_) / 2;
  }

  std::string point(const Vec& v) const {
    double x = kSvgMargin + pad_[0] + (to_double(v[0]) - lo_[0]) * scale_;
    double y = kSvgSize - kSvgMargin - pad_[1] - (to_double(v[1]) - lo_[1]) * scale_;
    return fmt(x) + " " + fmt(y);
  }

  std::string shape(const Polytope& p, const std::string& style) const {
    if (p.dim() == 0) {
      std::string xy = point(p.vertices().front());
      std::size_t sp = xy.find(' ');
      return "<circle cx=\"" + xy.substr(0, sp) + "\" cy=\"" + xy.substr(sp + 1) + "\" r=\"4\" " + style + "/>";
    }
    std::vector<Vec> ring = p.dim() == 1 ? p.vertices() : counterclockwise(p);
    std::string d = "M " + point(ring.front());
    for (std::size_t i = 1; i < ring.size(); ++i) d += " L " + point(ring[i]);
    if (p.dim() == 2) d += " Z";
    return "<path d=\"" + d + "\" " + style + "/>";
  }

 private:
  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s(buf);
    return s == "-0.000" ? "0.000" : s;
  }
  double lo_[2] = {0, 0}, hi_[2] = {0, 0}, pad_[2] = {0, 0};
  double scale_ = 1;
};

inline std::string svg_document(const std::vector<std::string>& elements) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kSvgSize) + "\" height=\"" +
                    std::to_string(kSvgSize) + "\" viewBox=\"0 0 " + std::to_string(kSvgSize) + " " +
                    std::to_string(kSvgSize) + "\">\n";
  for (const auto& e : elements) out += "  " + e + "\n";
  return out + "</svg>\n";
}

}  // namespace detail

inline std::string render_svg(const Polytope& p) {
  Polytope q = detail::planar(p);
  detail::Canvas canvas({q});
  const char* style = q.dim() == 2 ? "fill=\"#cfe2f3\" stroke=\"#000000\" stroke-width=\"1.5\""
                                   : "fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"";
  return detail::svg_document({canvas.shape(q, q.dim() == 0 ? "fill=\"#000000\"" : style)});
}

/// One element per cell, in the complex's cell order, then the outline.
inline std::string render_svg(const ChamberComplex& cc) {
  std::vector<Polytope> cells;
  for (const auto& c : cc.cells) cells.push_back(detail::planar(c));
  Polytope base = detail::planar(cc.base);
  std::vector<Polytope> all = cells;
  all.push_back(base);
  detail::Canvas canvas(all);
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string hue = std::to_string(i * 360 / std::max<std::size_t>(cells.size(), 1));
    std::string colour = "hsl(" + hue + ",65%,72%)";
    std::string style = cells[i].dim() == 2 ? "fill=\"" + colour + "\" stroke=\"#333333\" stroke-width=\"0.75\""
                                            : "fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"6\"";
    if (cells[i].dim() == 0) style = "fill=\"" + colour + "\"";
    elements.push_back(canvas.shape(cells[i], style));
  }
  elements.push_back(canvas.shape(base, base.dim() == 0 ? "fill=\"#000000\""
                                                        : "fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\""));
  return detail::svg_document(elements);
}

}  // namespace polyfunctor
