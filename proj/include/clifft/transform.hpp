#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clifft/algebra.hpp"
#include "clifft/cmu.hpp"

namespace clifft {

/// Uniformly sampled multivector-valued function: values[j] at
/// x_j = x0 + j*dx.
struct SampledSignal {
  Signature signature;
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<Multivector> values;

  std::size_t size() const noexcept { return values.size(); }
  double x(std::size_t j) const noexcept { return x0 + dx * double(j); }
};

/// Transform of a sampled signal on the centered angular-frequency grid
/// xi_k = xi0 + k*dxi with xi0 = -pi/dx and dxi = 2*pi/(N*dx).
struct Spectrum {
  Signature signature;
  double xi0 = 0.0;
  double dxi = 1.0;
  std::vector<Multivector> values;

  std::size_t size() const noexcept { return values.size(); }
  double xi(std::size_t k) const noexcept { return xi0 + dxi * double(k); }
  std::vector<double> xi_values() const;
};

enum class Direction { kForward, kInverse };
enum class Method { kFft, kQuadrature };

/// Fixes the kernel root mu, the direction and the evaluation method for a
/// transform. Immutable and shareable.
struct TransformPlan {
  ImaginaryUnit mu;
  Direction direction = Direction::kForward;
  Method method = Method::kFft;
};

/// Discretization of integral f(x) e^{mu*x*xi} dx as dx * sum_j f(x_j)
/// e^{mu*x_j*xi_k}. The kernel always multiplies on the right of the signal
/// values; mu need not commute with them. The FFT path runs one complex
/// transform per populated blade and requires a power-of-two length.
Spectrum cft_forward(const SampledSignal& f, const TransformPlan& plan);

/// Discretization of (1/2pi) integral F(xi) e^{-mu*xi*x} dxi on the centered
/// reciprocal grid x0 = -N*dx/2, dx = 2*pi/(N*dxi). Spectra carry no signal
/// offset, so round trips reproduce signals sampled on centered grids.
SampledSignal cft_inverse(const Spectrum& F, const TransformPlan& plan);

/// Direct O(N * |xi_list|) summation dx * sum_j f(x_j) (cos + mu sin)(x_j xi).
/// Reference path for the FFT implementation; accepts any length.
std::vector<Multivector> cft_quadrature_oracle(const SampledSignal& f,
                                               const ImaginaryUnit& mu,
                                               std::span<const double> xi_list);

/// Discrete (f*g)(y_m) = dx * sum_j f(x_j) g(y_m - x_j) with zero padding;
/// output grid starts at f.x0 + g.x0 and has size(f)+size(g)-1 samples.
SampledSignal convolve_direct(const SampledSignal& f, const SampledSignal& g);

/// Spectral form sum_Sigma F[f e_Sigma](xi) * F[g_Sigma](xi), computed
/// blade-by-blade on a common power-of-two grid covering the full
/// convolution support. Matches cft_forward(convolve_direct(f, g)) there.
Spectrum convolution_via_spectra(const SampledSignal& f,
                                 const SampledSignal& g,
                                 const ImaginaryUnit& mu);

/// Pointwise f(x_j) * c with the constant on the right.
SampledSignal signal_right_mul(const SampledSignal& f, const Multivector& c);

/// (tau_h f)(x) = f(x + h) by index shift with zero fill; h must be an
/// integer multiple of dx.
SampledSignal translate_signal(const SampledSignal& f, double h);

/// sqrt(dx * sum_j |f_j|^2).
double signal_l2_norm(const SampledSignal& f);

/// sqrt(dxi * sum_k |F_k|^2).
double spectrum_l2_norm(const Spectrum& F);

/// Fraction of spectral energy carried by the top `top_fraction` of |xi|;
/// the band-limit guard for round-trip claims.
double spectral_tail_fraction(const Spectrum& F, double top_fraction = 0.1);

/// Same grid extended by zeros on both sides (n_left samples before x0).
SampledSignal zero_extend(const SampledSignal& f, std::size_t n_left,
                          std::size_t n_right);

}  // namespace clifft
