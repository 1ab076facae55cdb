#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "dff/compendium.hpp"
#include "dff/io.hpp"
#include "dff/svg.hpp"
#include "oracles.hpp"

using namespace dff;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

std::string golden(const std::string& name) {
  return read_text(std::filesystem::path(DFF_SOURCE_DIR) / "tests" / "golden" / name);
}

std::size_t count(const std::string& s, const std::string& pat) {
  std::regex re(pat);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

std::string faces_group(const std::string& svg) {
  auto a = svg.find("<g id=\"faces\"");
  return svg.substr(a, svg.find("</g>", a) - a);
}

}  // namespace

TEST(Svg, GoldenIdentity) { EXPECT_EQ(render_svg(identity()), golden("identity.svg")); }

TEST(Svg, GoldenBjFiveHalves) { EXPECT_EQ(render_svg(phi_bj_1(R(5, 2))), golden("phi_bj_1_5_2.svg")); }

TEST(Svg, Deterministic) {
  PwlFunction f = phi_bj_1(R(7, 3));
  PlotSpec spec;
  spec.color_by_component = true;
  EXPECT_EQ(render_svg(f, spec), render_svg(f, spec));
}

TEST(Svg, IdentityIsOneTriangle) { EXPECT_EQ(count(faces_group(render_svg(identity())), "<polygon"), 1u); }

TEST(Svg, BjFiveHalvesFaceCount) {
  // small triangles of the 1/5 grid inside x + y <= 1 on which the closed formula is additive
  auto phi = [](const Rational& x) { return oracle::bj_formula(R(5, 2), x); };
  std::size_t additive = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; i + j < 5; ++j) {
      // lower triangle (i, j), (i+1, j), (i, j+1) and, when it fits, the upper one
      std::vector<std::pair<Rational, Rational>> centroids{{R(3 * i + 1, 15), R(3 * j + 1, 15)}};
      if (i + j + 2 <= 5) centroids.emplace_back(R(3 * i + 2, 15), R(3 * j + 2, 15));
      for (const auto& [x, y] : centroids)
        if (phi(x) + phi(y) == phi(x + y)) ++additive;
    }
  std::string svg = render_svg(phi_bj_1(R(5, 2)));
  EXPECT_EQ(count(faces_group(svg), "<polygon"), additive);
  EXPECT_EQ(additive, 7u);
}

TEST(Svg, ComponentColors) {
  PlotSpec spec;
  spec.color_by_component = true;
  std::string svg = render_svg(phi_bj_1(R(3, 2)), spec);
  // one component: two shadows on each axis, no shadow over (1/3, 2/3)
  EXPECT_EQ(count(svg, "<rect x=\"[0-9.]+\" y=\"90\""), 2u);
  PlotSpec bare;
  bare.show_function_on_borders = false;
  EXPECT_EQ(render_svg(identity(), bare).find("id=\"function\""), std::string::npos);
}

TEST(Svg, EveryFaceGetsAComponentColor) {
  // faces whose label interval straddles two components must still be colored
  PwlFunction f = load_pwl(std::filesystem::path(DFF_SOURCE_DIR) / "compendium" / "search_c_q28_v4030.json");
  PlotSpec spec;
  spec.color_by_component = true;
  std::string faces = faces_group(render_svg(f, spec));
  EXPECT_EQ(count(faces, "#5cb85c"), 0u);
  std::set<std::string> colors;
  std::regex re("fill=\"(#[0-9a-f]+)\"");
  for (auto it = std::sregex_iterator(faces.begin(), faces.end(), re); it != std::sregex_iterator(); ++it)
    colors.insert((*it)[1]);
  EXPECT_EQ(colors.size(), 3u);
}
