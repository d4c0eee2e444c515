#pragma once

#include "clifft/algebra.hpp"

namespace clifft {

/// Element a + b*mu of the commutative plane spanned by {1, mu} for a fixed
/// square root mu of -1. Arithmetic mirrors the complex numbers.
struct CMu {
  double re = 0.0;
  double im = 0.0;

  constexpr CMu() = default;
  constexpr CMu(double a, double b) : re(a), im(b) {}

  constexpr CMu& operator+=(const CMu& z) {
    re += z.re;
    im += z.im;
    return *this;
  }
  constexpr CMu& operator-=(const CMu& z) {
    re -= z.re;
    im -= z.im;
    return *this;
  }
  constexpr CMu& operator*=(const CMu& z) {
    const double a = re * z.re - im * z.im;
    im = re * z.im + im * z.re;
    re = a;
    return *this;
  }
  constexpr CMu& operator*=(double s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend constexpr CMu operator+(CMu a, const CMu& b) { return a += b; }
  friend constexpr CMu operator-(CMu a, const CMu& b) { return a -= b; }
  friend constexpr CMu operator*(CMu a, const CMu& b) { return a *= b; }
  friend constexpr CMu operator*(CMu a, double s) { return a *= s; }
  friend constexpr CMu operator*(double s, CMu a) { return a *= s; }
  friend constexpr CMu operator-(const CMu& a) { return {-a.re, -a.im}; }
  friend CMu operator/(const CMu& a, const CMu& b);
  friend constexpr CMu operator/(const CMu& a, double s) {
    return {a.re / s, a.im / s};
  }
  friend constexpr bool operator==(const CMu&, const CMu&) = default;
};

double cmu_abs(const CMu& z);

/// cos(theta) + mu sin(theta).
CMu cmu_exp(double theta);

struct CMuPolar {
  double modulus;
  double angle;  // in (-pi, pi]; 0 for the origin
};

/// Polar decomposition z = modulus * (cos(angle) + mu sin(angle)).
CMuPolar to_polar(const CMu& z);

/// The multivector a + b*mu.
Multivector embed(const CMu& z, const ImaginaryUnit& mu);

/// Recovers z from gp(e_blade, z-embedded): left-divides by the unit blade
/// and projects onto {1, mu}.
CMu cmu_component(const Multivector& value, BladeIndex blade,
                  const ImaginaryUnit& mu);

}  // namespace clifft
