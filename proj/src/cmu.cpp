#include "clifft/cmu.hpp"

#include <cmath>
#include <numbers>

namespace clifft {

CMu operator/(const CMu& a, const CMu& b) {
  const double d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

double cmu_abs(const CMu& z) { return std::hypot(z.re, z.im); }

CMu cmu_exp(double theta) { return {std::cos(theta), std::sin(theta)}; }

CMuPolar to_polar(const CMu& z) {
  if (z.re == 0.0 && z.im == 0.0) return {0.0, 0.0};
  double angle = std::atan2(z.im, z.re);
  if (angle <= -std::numbers::pi) angle = std::numbers::pi;
  return {cmu_abs(z), angle};
}

Multivector embed(const CMu& z, const ImaginaryUnit& mu) {
  Multivector out = mu.value() * z.im;
  out[0] += z.re;
  return out;
}

CMu cmu_component(const Multivector& value, BladeIndex blade,
                  const ImaginaryUnit& mu) {
  // e_blade * e_blade~ = 1 for unit blades, so the reverse is the inverse.
  const Multivector inv =
      principal_reverse(Multivector::basis_blade(value.signature(), blade));
  const Multivector z = inv * value;
  const double a = z.scalar_part();
  const double b = scalar_product(z, mu.value()) /
                   scalar_product(mu.value(), mu.value());
  return {a, b};
}

}  // namespace clifft
