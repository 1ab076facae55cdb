#pragma once

#include <string>

#include "dff/pwl.hpp"

namespace dff {

struct PlotSpec {
  bool show_function_on_borders = true;
  bool color_additive_faces = true;
  bool color_by_component = false;
  int canvas_size = 480;
};

// Diagram of the triangle {x, y, x+y in [0,1]}: breakpoint grid, maximal additive faces,
// the function along the upper and left borders and covered components on both axes.
// Output depends only on f and spec.
std::string render_svg(const PwlFunction& f, const PlotSpec& spec = {});

}  // namespace dff
