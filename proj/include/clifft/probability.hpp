#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "clifft/algebra.hpp"
#include "clifft/cmu.hpp"
#include "clifft/transform.hpp"

namespace clifft {

/// Indicator of [alpha, beta] with height 1; unit mass exactly when
/// beta - alpha = 1.
struct UniformDensity {
  double alpha;
  double beta;
};

/// sqrt(lambda/pi) e^{-lambda x^2}.
struct GaussianDensity {
  double lambda;
};

/// lambda e^{-lambda x} on [0, inf).
struct ExponentialDensity {
  double lambda;
};

/// Nonnegative samples on a uniform grid, interpreted with linear
/// interpolation between samples and zero outside.
struct SampledBladeDensity {
  double x0;
  double dx;
  std::vector<double> values;
};

using BladeDensity = std::variant<UniformDensity, GaussianDensity,
                                  ExponentialDensity, SampledBladeDensity>;

double blade_density_value(const BladeDensity& d, double x);

/// Multivector-valued probability density: one real density per populated
/// blade. Blades absent from the map are identically zero and take no part
/// in validation or aggregate quantities.
class CliffordDensity {
 public:
  explicit CliffordDensity(const Signature& sig) : sig_(sig) {}

  const Signature& signature() const noexcept { return sig_; }
  void set_component(BladeIndex blade, BladeDensity density);
  const std::map<BladeIndex, BladeDensity>& components() const noexcept {
    return components_;
  }

  Multivector operator()(double x) const;

 private:
  Signature sig_;
  std::map<BladeIndex, BladeDensity> components_;
};

struct BladeValidation {
  BladeIndex blade;
  double integral;
  double min_value;
  bool passed;
};

struct DensityValidation {
  std::vector<BladeValidation> blades;
  bool passed;
};

/// Per populated blade: integral (exact for analytic families, trapezoid for
/// sampled) and minimum value; a blade passes iff |integral - 1| <= 1e-9 and
/// min >= 0. Failures are reported, never thrown.
DensityValidation validate_density(const CliffordDensity& d);

/// Evaluation grid [-half_width, half_width) with `samples` points.
struct GridSpec {
  std::size_t samples = 1024;
  double half_width = 16.0;
};

SampledSignal sample_density(const CliffordDensity& d, const GridSpec& grid);

/// phi_X(t) = integral f_X(x) e^{mu t x} dx. Analytic families evaluate
/// closed forms; sampled densities carry one tabulated C_mu transform per
/// populated blade, so blade components never mix even when e_Sigma * mu
/// products overlap across blades.
class CharacteristicFunction {
 public:
  static CharacteristicFunction analytic(CliffordDensity density,
                                         ImaginaryUnit mu);
  static CharacteristicFunction gridded(
      double t0, double dt,
      std::map<BladeIndex, std::vector<CMu>> blade_tables, ImaginaryUnit mu);

  Multivector operator()(double t) const;
  CMu blade_component(BladeIndex blade, double t) const;

  const ImaginaryUnit& mu() const noexcept { return mu_; }
  const Signature& signature() const noexcept { return mu_.signature(); }
  bool is_gridded() const noexcept { return grid_size_ != 0; }
  double grid_t0() const noexcept { return t0_; }
  double grid_dt() const noexcept { return dt_; }
  std::size_t grid_size() const noexcept { return grid_size_; }
  double grid_t(std::size_t k) const noexcept { return t0_ + dt_ * double(k); }
  const std::vector<BladeIndex>& blades() const noexcept { return blades_; }

 private:
  CharacteristicFunction(ImaginaryUnit mu, std::vector<BladeIndex> blades)
      : mu_(std::move(mu)), blades_(std::move(blades)) {}

  std::size_t grid_index(double t) const;

  ImaginaryUnit mu_;
  std::vector<BladeIndex> blades_;
  std::optional<CliffordDensity> density_;
  double t0_ = 0.0;
  double dt_ = 0.0;
  std::size_t grid_size_ = 0;
  std::map<BladeIndex, std::vector<CMu>> tables_;
};

/// Builds the characteristic function of d with respect to mu. Densities
/// with sampled blades are gridded through cft_forward on `grid`; fully
/// analytic densities stay closed-form.
CharacteristicFunction characteristic_function(const CliffordDensity& d,
                                               const ImaginaryUnit& mu,
                                               const GridSpec& grid = {});

/// Closed-form C_mu value of the transform of one analytic blade family.
CMu analytic_blade_cf(const BladeDensity& d, double t);

/// Closed-form derivative (order 1 or 2) of the blade characteristic
/// function. Gaussian and exponential support any t; the uniform family is
/// available at t = 0 only.
CMu analytic_blade_cf_derivative(const BladeDensity& d, int order, double t);

enum class MomentMethod { kDirect, kCfDerivative };

struct MomentResult {
  int order;
  Multivector value;
  MomentMethod method;
  std::optional<std::string> warning;

  /// |m|^2 = sum over blades of the squared coefficients.
  double squared_modulus() const { return scalar_product(value, value); }
};

/// m_l = sum_Sigma e_Sigma integral x^l f_Sigma(x) dx; closed forms for the
/// analytic families, trapezoid quadrature for sampled blades (with a
/// divergent-tail warning when the window looks too short).
MomentResult moment_direct(const CliffordDensity& d, int order);

/// Differentiates phi at 0 with a 5-point central stencil (h = 1e-2 for
/// analytic forms, 2*dxi for gridded ones) and right-multiplies by (-mu)^l.
MomentResult moment_from_cf(const CharacteristicFunction& phi, int order);

/// sigma^2 = m_2 - m_1 * m_1 (geometric square).
Multivector variance(const CliffordDensity& d);

/// Characteristic-function form [phi'(0)]^2 - phi''(0); equals variance()
/// when every blade component of m_1 commutes with mu.
Multivector variance_from_cf(const CharacteristicFunction& phi);

/// Cumulative distribution on a uniform grid with per-blade values rising
/// from 0 to 1; evaluation linearly interpolates.
struct CliffordCdf {
  Signature signature;
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<Multivector> values;

  Multivector operator()(double x) const;
};

/// Per-blade cumulative trapezoid integration of d over the grid.
CliffordCdf cdf_build(const CliffordDensity& d, const GridSpec& grid);

/// The characteristic function tabulated on the reciprocal grid of `grid`
/// (its own grid when already gridded), ready for file output or inversion.
Spectrum cf_spectrum(const CharacteristicFunction& phi,
                     const GridSpec& grid = {});

struct DensityFromCfResult {
  CliffordDensity density;
  double cf_tail_fraction;
  std::optional<std::string> warning;
};

/// Inversion of the characteristic function onto a sampled density. The
/// warning fires when the CF grid truncates visible tail energy.
DensityFromCfResult density_from_cf(const CharacteristicFunction& phi,
                                    const GridSpec& grid = {});

/// Modulus of LHS - RHS for the pairing identity
///   integral g(t) phi_f(t) e^{-mu t y} dt
///     = sum_Sigma e_Sigma (f * psi_flip_Sigma)(y),
/// where psi_Sigma is the C_mu transform component of g's blade Sigma and
/// psi_flip_Sigma(x) = psi_Sigma(-x). The two sides are evaluated by
/// independent quadratures.
double cf_pair_identity_defect(const CliffordDensity& f,
                               const CliffordDensity& g,
                               const ImaginaryUnit& mu, double y,
                               const GridSpec& grid = {});

}  // namespace clifft
