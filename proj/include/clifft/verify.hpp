#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clifft/algebra.hpp"
#include "clifft/transform.hpp"

namespace clifft {

/// One checkable identity; each id maps to exactly one defect procedure.
enum class IdentityId {
  kParseval,
  kInversion,
  kTranslation,
  kDerivative,
  kConvolution,
  kNagy,
  kUncertainty,
  kSubmultiplicativity,
  kRiemannLebesgue,
  kLinearity,
  kCfMoments,
};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);
std::vector<IdentityId> all_identities();

struct VerifyConfig {
  Signature signature{3, 0};
  std::string mu_text = "e12";
  std::size_t samples = 1024;
  double domain = 16.0;  // half-width L; signals live on [-L, L)
  std::uint64_t seed = 7;
  std::optional<double> tolerance_override;
};

/// Measured discrepancy of one identity. For inequalities the defect is
/// one-sided: satisfied instances report 0 and the slack lands in `extra`.
struct IdentityReport {
  IdentityId id;
  double defect = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  VerifyConfig config;
  std::optional<std::string> warning;
  std::vector<std::pair<std::string, double>> extra;
};

/// Tolerance ladder: algebraic identities at 1e-12, transform identities at
/// 1e-6 (round trip at 1e-9), quadrature-coupled identities at 1e-4.
double default_tolerance(IdentityId id);

/// Generates seeded test data, evaluates both sides of the identity through
/// independent code paths and reports the worst relative defect.
IdentityReport identity_defect(IdentityId id, const VerifyConfig& config);

struct SuiteResult {
  std::vector<IdentityReport> reports;
  bool all_passed = false;
};

/// Runs the ids in enum order; failures are reported, never thrown.
SuiteResult run_suite(std::span<const IdentityId> ids,
                      const VerifyConfig& config);

/// Uniform double in [lo, hi) built from the top 53 bits of the generator,
/// identical on every platform.
double uniform_double(std::mt19937_64& rng, double lo, double hi);

/// Sum of at most eight Gaussian bumps with random centers in [-L/2, L/2],
/// widths in [0.3, 2] and multivector amplitudes with coefficients in
/// [-1, 1], sampled on [-L, L) together with its exact derivative.
/// A grid_factor of f keeps the bump parameters tied to L but samples the
/// mixture on [-f*L, f*L) with f*samples points (same step); with f = 2 the
/// tails reach machine zero before the grid edge, so the periodic extension
/// has no cut.
struct SmoothSignal {
  SampledSignal value;
  SampledSignal derivative;
};

SmoothSignal random_smooth_signal(std::mt19937_64& rng, const Signature& sig,
                                  std::size_t samples, double half_width,
                                  std::size_t grid_factor = 1);

/// Random multivector with coefficients uniform in [-1, 1].
Multivector random_multivector(std::mt19937_64& rng, const Signature& sig);

}  // namespace clifft
