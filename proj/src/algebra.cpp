#include "clifft/algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace clifft {

namespace {

void require_same_signature(const Multivector& a, const Multivector& b) {
  if (!(a.signature() == b.signature())) {
    throw std::invalid_argument("multivector signature mismatch");
  }
}

}  // namespace

Signature::Signature(int p, int q) : p_(p), q_(q) {
  if (p < 0 || q < 0) {
    throw std::invalid_argument("signature counts must be nonnegative");
  }
  if (p + q > kMaxDimension) {
    throw std::invalid_argument("signature dimension exceeds cap of " +
                                std::to_string(kMaxDimension));
  }
}

Multivector::Multivector(const Signature& sig, std::vector<double> coeffs)
    : sig_(sig), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != sig.blade_count()) {
    throw std::invalid_argument("coefficient array size must be 2^n");
  }
}

Multivector Multivector::scalar(const Signature& sig, double value) {
  Multivector out(sig);
  out[0] = value;
  return out;
}

Multivector Multivector::basis_blade(const Signature& sig, BladeIndex blade,
                                     double coef) {
  if (blade >= sig.blade_count()) {
    throw std::invalid_argument("blade index out of range for signature");
  }
  Multivector out(sig);
  out[blade] = coef;
  return out;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  require_same_signature(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  require_same_signature(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  out *= -1.0;
  return out;
}

Multivector operator*(const Multivector& lhs, const Multivector& rhs) {
  require_same_signature(lhs, rhs);
  const Signature& sig = lhs.signature();
  const std::size_t blades = sig.blade_count();
  Multivector out(sig);
  for (std::size_t i = 0; i < blades; ++i) {
    const double ca = lhs.coeffs_[i];
    if (ca == 0.0) continue;
    for (std::size_t j = 0; j < blades; ++j) {
      const double cb = rhs.coeffs_[j];
      if (cb == 0.0) continue;
      const BladeProduct prod = blade_mul(sig, static_cast<BladeIndex>(i),
                                          static_cast<BladeIndex>(j));
      out.coeffs_[prod.blade] += prod.sign * ca * cb;
    }
  }
  return out;
}

Multivector grade_project(const Multivector& value, int grade) {
  const int n = value.signature().dimension();
  if (grade < 0 || grade > n) {
    throw std::out_of_range("grade out of range");
  }
  Multivector out(value.signature());
  for (BladeIndex b = 0; b < value.size(); ++b) {
    if (blade_grade(b) == grade) out[b] = value[b];
  }
  return out;
}

Multivector principal_reverse(const Multivector& value) {
  const Signature& sig = value.signature();
  Multivector out(sig);
  for (BladeIndex b = 0; b < value.size(); ++b) {
    const int grade = blade_grade(b);
    double sign = ((grade * (grade - 1) / 2) & 1) ? -1.0 : 1.0;
    for (BladeIndex rest = b; rest != 0; rest &= rest - 1) {
      if (sig.basis_square(std::countr_zero(rest) + 1) < 0) sign = -sign;
    }
    out[b] = sign * value[b];
  }
  return out;
}

double scalar_product(const Multivector& lhs, const Multivector& rhs) {
  require_same_signature(lhs, rhs);
  double sum = 0.0;
  for (BladeIndex b = 0; b < lhs.size(); ++b) sum += lhs[b] * rhs[b];
  return sum;
}

double modulus(const Multivector& value) {
  return std::sqrt(scalar_product(value, value));
}

bool is_imaginary_unit(const Multivector& value, double tol) {
  Multivector square = value * value;
  square[0] += 1.0;
  return modulus(square) <= tol;
}

ImaginaryUnit::ImaginaryUnit(Multivector value, double tolerance)
    : value_(std::move(value)), tolerance_(tolerance) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("imaginary unit tolerance must be positive");
  }
  if (!is_imaginary_unit(value_, tolerance)) {
    throw std::invalid_argument("multivector does not square to -1");
  }
}

}  // namespace clifft
