#include "dff/svg.hpp"

#include <cstdio>
#include <sstream>

#include "dff/complex2d.hpp"
#include "dff/error.hpp"

namespace dff {

namespace {

constexpr const char* kGreen = "#5cb85c";
constexpr const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a6a600", "#a65628", "#f781bf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Canvas {
 public:
  explicit Canvas(int size) : size_(size), margin_(Rational(size, 5)), side_(Rational(size) - margin_ - 12) {}

  std::string px(const Rational& x) const { return num((margin_ + x * side_).to_double()); }
  std::string py(const Rational& y) const { return num((margin_ + y * side_).to_double()); }
  // Height of a function value in the border strips.
  std::string lift(const Rational& v) const { return num((margin_ - 6 - v * (margin_ - 16)).to_double()); }
  std::string strip(int k) const { return num((margin_ - 6 + Rational(k)).to_double()); }
  std::string len(const Rational& d) const { return num((d * side_).to_double()); }

  std::string point(const Point2& p) const { return px(p.first) + "," + py(p.second); }

 private:
  int size_;
  Rational margin_;
  Rational side_;
};

// Component of the face's projection onto the x axis; the label I can be wider than the polygon.
std::size_t component_of(const Cover& cover, const Face& F) {
  Cell I{F.vertices.front().first, F.vertices.front().first};
  for (const auto& v : F.vertices) {
    I.lo = min(I.lo, v.first);
    I.hi = max(I.hi, v.first);
  }
  for (std::size_t c = 0; c < cover.components.size(); ++c)
    for (const auto& iv : cover.components[c])
      if (iv.lo <= I.lo && I.hi <= iv.hi) return c;
  return cover.components.size();
}

const char* color(std::size_t c) { return kPalette[c % (sizeof kPalette / sizeof *kPalette)]; }

}  // namespace

std::string render_svg(const PwlFunction& f, const PlotSpec& spec) {
  if (!f.on_unit_interval()) throw Error(ErrorKind::kNonCanonicalDomain, "plot needs a function on [0,1]");
  if (spec.canvas_size < 100) throw Error(ErrorKind::kBadParameter, "canvas must be at least 100 pixels");
  const Canvas cv(spec.canvas_size);
  const Rational zero(0), one(1);
  std::ostringstream out;
  const std::string size = std::to_string(spec.canvas_size);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";

  Cover cover = covered_components(f);
  std::vector<Face> faces = additive_faces(f);
  if (spec.color_additive_faces) {
    out << "<g id=\"faces\" stroke=\"none\">\n";
    for (const auto& F : faces) {
      if (F.dim != 2) continue;
      const char* fill = kGreen;
      if (spec.color_by_component) {
        std::size_t c = component_of(cover, F);
        if (c < cover.components.size()) fill = color(c);
      }
      out << "<polygon points=\"";
      for (std::size_t i = 0; i < F.vertices.size(); ++i) out << (i ? " " : "") << cv.point(F.vertices[i]);
      out << "\" fill=\"" << fill << "\"/>\n";
    }
    out << "</g>\n";
  }

  out << "<g id=\"grid\" stroke=\"#999999\" stroke-width=\"0.5\">\n";
  for (const auto& b : f.xs()) {
    if (b.is_zero()) continue;
    Rational r = one - b;
    if (b < one) {
      out << "<line x1=\"" << cv.px(b) << "\" y1=\"" << cv.py(zero) << "\" x2=\"" << cv.px(b) << "\" y2=\"" << cv.py(r)
          << "\"/>\n";
      out << "<line x1=\"" << cv.px(zero) << "\" y1=\"" << cv.py(b) << "\" x2=\"" << cv.px(r) << "\" y2=\"" << cv.py(b)
          << "\"/>\n";
    }
    out << "<line x1=\"" << cv.px(b) << "\" y1=\"" << cv.py(zero) << "\" x2=\"" << cv.px(zero) << "\" y2=\""
        << cv.py(b) << "\"/>\n";
  }
  out << "<polygon points=\"" << cv.point({zero, zero}) << " " << cv.point({one, zero}) << " " << cv.point({zero, one})
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "</g>\n";

  out << "<g id=\"additive\" stroke=\"" << kGreen << "\" fill=\"" << kGreen << "\">\n";
  for (const auto& F : faces) {
    if (F.dim == 1)
      out << "<line x1=\"" << cv.px(F.vertices[0].first) << "\" y1=\"" << cv.py(F.vertices[0].second) << "\" x2=\""
          << cv.px(F.vertices[1].first) << "\" y2=\"" << cv.py(F.vertices[1].second) << "\" stroke-width=\"2\"/>\n";
    else if (F.dim == 0)
      out << "<circle cx=\"" << cv.px(F.vertices[0].first) << "\" cy=\"" << cv.py(F.vertices[0].second)
          << "\" r=\"2.5\"/>\n";
  }
  out << "</g>\n";

  if (spec.show_function_on_borders) {
    // upper border: (x, phi(x)); left border: (phi(y), y)
    out << "<g id=\"function\" stroke=\"black\" stroke-width=\"1.5\" fill=\"black\">\n";
    const auto& bps = f.breakpoints();
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      const Rational& a = bps[i].x;
      const Rational& b = bps[i + 1].x;
      Rational va = bps[i].limit_right.value_or(bps[i].value);
      Rational vb = bps[i + 1].limit_left.value_or(bps[i + 1].value);
      out << "<line x1=\"" << cv.px(a) << "\" y1=\"" << cv.lift(va) << "\" x2=\"" << cv.px(b) << "\" y2=\""
          << cv.lift(vb) << "\"/>\n";
      out << "<line x1=\"" << cv.lift(va) << "\" y1=\"" << cv.py(a) << "\" x2=\"" << cv.lift(vb) << "\" y2=\""
          << cv.py(b) << "\"/>\n";
    }
    for (const auto& bp : bps) {
      bool isolated = (bp.limit_left && *bp.limit_left != bp.value) || (bp.limit_right && *bp.limit_right != bp.value);
      if (!isolated) continue;
      out << "<circle cx=\"" << cv.px(bp.x) << "\" cy=\"" << cv.lift(bp.value) << "\" r=\"2\"/>\n";
      out << "<circle cx=\"" << cv.lift(bp.value) << "\" cy=\"" << cv.py(bp.x) << "\" r=\"2\"/>\n";
    }
    out << "</g>\n";
  }

  out << "<g id=\"components\" stroke=\"none\" fill-opacity=\"0.5\">\n";
  for (std::size_t c = 0; c < cover.components.size(); ++c)
    for (const auto& iv : cover.components[c]) {
      const char* fill = spec.color_by_component ? color(c) : kGreen;
      out << "<rect x=\"" << cv.px(iv.lo) << "\" y=\"" << cv.strip(0) << "\" width=\""
          << cv.len(iv.hi - iv.lo) << "\" height=\"4\" fill=\""
          << fill << "\"/>\n";
      out << "<rect x=\"" << cv.strip(0) << "\" y=\"" << cv.py(iv.lo) << "\" width=\"4\" height=\""
          << cv.len(iv.hi - iv.lo) << "\" fill=\"" << fill
          << "\"/>\n";
    }
  out << "</g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace dff
