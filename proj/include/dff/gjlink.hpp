#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dff/complex2d.hpp"
#include "dff/gdff.hpp"
#include "dff/pwl.hpp"

namespace dff {

// Z-periodic function given on one period [0,1], for the right-hand side b.
struct GjFunction {
  PwlFunction period;
  Rational b;

  GjFunction(PwlFunction p, Rational rhs);
  Rational evaluate(const Rational& x) const;
  Rational limit(const Rational& x, Side side) const;
  Rational f() const { return b.frac(); }
};

struct GjVerdict {
  bool is_minimal = true;
  std::vector<std::string> failures;
};

GjVerdict gj_minimality_test(const GjFunction& pi);

// Vertices (x, y) of the periodic complex in [0,1]^2 with pi(x) + pi(y) = pi(x+y).
std::vector<Point2> gj_additive_vertices(const GjFunction& pi);

Rational max_slope(const PwlFunction& f);

// Sawtooth pi(x) = x/f on [0,f], (1-x)/(1-f) on [f,1] with f = frac(b).
GjFunction gmic(const Rational& b);
// w * gmic + (1 - w) * gmic(frac(3x)); needs frac(b) = 1/2. Checked minimal on construction.
GjFunction sawtooth_mix(const Rational& b, const Rational& w);

// phi_lambda(x) = (b x - lambda pi(b x)) / (b - lambda), quasiperiodic with period 1/b.
GdffFunction gj_to_gdff(const GjFunction& pi, const Rational& lambda);
PwlFunction restrict_to_unit(const GdffFunction& psi);

enum class ExtensionMode { kAffine, kQuasiperiodic };
GdffFunction extend_to_gdff(const PwlFunction& phi, const Rational& b, ExtensionMode mode);

// pi_lambda(x) = (x - (1 - lambda) psi(x)) / lambda.
GdffFunction dff_to_yc(const GdffFunction& psi, const Rational& lambda);
// psi(x) = (x - lambda pi(x)) / (1 - lambda).
GdffFunction yc_to_dff(const GdffFunction& pi, const Rational& lambda);

std::pair<std::vector<Rational>, Rational> generate_cut(const GdffFunction& psi, const std::vector<Rational>& coeffs,
                                                        const Rational& rhs);

// E[phi(X)] / E[X] for X uniform on [a, b].
Rational lueker_bound(const PwlFunction& phi, const Rational& a, const Rational& b);

}  // namespace dff
