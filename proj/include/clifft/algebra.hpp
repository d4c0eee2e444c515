#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace clifft {

/// Metric signature (p,q) of the Clifford algebra Cl(p,q): basis vectors
/// e_1..e_p square to +1 and e_{p+1}..e_{p+q} square to -1. The dimension
/// n = p+q is capped so that dense 2^n coefficient arrays stay small.
class Signature {
 public:
  static constexpr int kMaxDimension = 12;

  Signature(int p, int q);

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int dimension() const noexcept { return p_ + q_; }
  std::size_t blade_count() const noexcept {
    return std::size_t{1} << dimension();
  }

  /// Square of the basis vector e_ell (1-based index): +1 or -1.
  int basis_square(int ell) const noexcept { return ell <= p_ ? +1 : -1; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  int p_;
  int q_;
};

/// A basis blade encoded as a bitmask: bit k set means e_{k+1} is a factor.
/// Mask 0 is the scalar blade. Canonical factor order is ascending index.
using BladeIndex = std::uint32_t;

/// Number of basis vectors in the blade (0 for scalars, n for the
/// pseudo-scalar).
inline int blade_grade(BladeIndex blade) noexcept {
  return std::popcount(blade);
}

struct BladeProduct {
  double sign;
  BladeIndex blade;
};

/// Product of two basis blades. The sign counts the transpositions needed to
/// merge the two ascending factor lists, times the metric square of every
/// repeated factor; the resulting blade is the symmetric difference a^b.
inline BladeProduct blade_mul(const Signature& sig, BladeIndex a,
                              BladeIndex b) noexcept {
  int swaps = 0;
  for (BladeIndex rest = a >> 1; rest != 0; rest >>= 1) {
    swaps += std::popcount(rest & b);
  }
  double sign = (swaps & 1) ? -1.0 : 1.0;
  for (BladeIndex common = a & b; common != 0; common &= common - 1) {
    sign *= sig.basis_square(std::countr_zero(common) + 1);
  }
  return {sign, a ^ b};
}

/// Dense multivector of Cl(p,q): one real coefficient per blade, indexed by
/// BladeIndex in ascending bitmask order. Immutable value semantics; all
/// operations are pure functions.
class Multivector {
 public:
  explicit Multivector(const Signature& sig)
      : sig_(sig), coeffs_(sig.blade_count(), 0.0) {}

  Multivector(const Signature& sig, std::vector<double> coeffs);

  static Multivector scalar(const Signature& sig, double value);
  static Multivector basis_blade(const Signature& sig, BladeIndex blade,
                                 double coef = 1.0);

  const Signature& signature() const noexcept { return sig_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double operator[](BladeIndex blade) const { return coeffs_[blade]; }
  double& operator[](BladeIndex blade) { return coeffs_[blade]; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }

  double scalar_part() const { return coeffs_[0]; }

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector lhs, const Multivector& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend Multivector operator-(Multivector lhs, const Multivector& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend Multivector operator*(Multivector lhs, double s) {
    lhs *= s;
    return lhs;
  }
  friend Multivector operator*(double s, Multivector rhs) {
    rhs *= s;
    return rhs;
  }
  Multivector operator-() const;

  /// Geometric product.
  friend Multivector operator*(const Multivector& lhs, const Multivector& rhs);

  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  Signature sig_;
  std::vector<double> coeffs_;
};

/// Keeps exactly the coefficients whose blade has the given grade.
Multivector grade_project(const Multivector& value, int grade);

/// Grade-signed reversal combined with a sign flip for every negative-square
/// factor: sum over grades of (-1)^{l(l-1)/2} applied to the grade part with
/// each blade negated once per contained negative-square basis vector.
/// Linear, involutive and anti-automorphic.
Multivector principal_reverse(const Multivector& value);

/// Coefficient-wise dot product; equals the scalar part of
/// lhs * principal_reverse(rhs).
double scalar_product(const Multivector& lhs, const Multivector& rhs);

/// Euclidean norm of the coefficient array.
double modulus(const Multivector& value);

/// True when |value^2 + 1| <= tol, i.e. value is a usable square root of -1.
bool is_imaginary_unit(const Multivector& value, double tol = 1e-12);

/// A validated square root of -1. Construction rejects multivectors whose
/// square is not -1 within the tolerance.
class ImaginaryUnit {
 public:
  explicit ImaginaryUnit(Multivector value, double tolerance = 1e-12);

  const Multivector& value() const noexcept { return value_; }
  const Signature& signature() const noexcept { return value_.signature(); }
  double tolerance() const noexcept { return tolerance_; }

 private:
  Multivector value_;
  double tolerance_;
};

}  // namespace clifft
