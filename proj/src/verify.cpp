#include "clifft/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "clifft/cmu.hpp"
#include "clifft/parse.hpp"
#include "clifft/probability.hpp"

namespace clifft {

namespace {

struct DefectResult {
  double defect = 0.0;
  std::vector<std::pair<std::string, double>> extra;
  std::optional<std::string> warning;
};

constexpr std::array<std::string_view, 11> kIdentityNames = {
    "parseval",     "inversion",   "translation",
    "derivative",   "convolution", "nagy",
    "uncertainty",  "submultiplicativity",
    "riemann_lebesgue", "linearity", "cf_moments"};

std::size_t identity_index(IdentityId id) {
  return static_cast<std::size_t>(id);
}

double relative_spectrum_gap(const Spectrum& lhs, const Spectrum& rhs) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const Multivector diff = lhs.values[k] - rhs.values[k];
    num += scalar_product(diff, diff);
    den += scalar_product(rhs.values[k], rhs.values[k]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

double relative_signal_gap(const SampledSignal& lhs, const SampledSignal& rhs) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    const Multivector diff = lhs.values[j] - rhs.values[j];
    num += scalar_product(diff, diff);
    den += scalar_product(rhs.values[j], rhs.values[j]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

DefectResult parseval_defect(const VerifyConfig& cfg, const ImaginaryUnit& mu,
                             std::mt19937_64& rng) {
  const TransformPlan plan{mu, Direction::kForward, Method::kFft};
  double worst = 0.0;
  double worst_literal = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const SampledSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain)
            .value;
    const Spectrum F = cft_forward(f, plan);
    const double lhs = 2.0 * std::numbers::pi * signal_l2_norm(f) *
                       signal_l2_norm(f);
    const double rhs = spectrum_l2_norm(F) * spectrum_l2_norm(F);
    worst = std::max(worst, std::abs(lhs - rhs) / lhs);
    // Defect of the unsquared reading, reported but never asserted.
    const double lit_lhs = 2.0 * std::numbers::pi * signal_l2_norm(f);
    worst_literal =
        std::max(worst_literal, std::abs(lit_lhs - spectrum_l2_norm(F)) /
                                    lit_lhs);
  }
  return {worst, {{"literal_unsquared_defect", worst_literal}}, std::nullopt};
}

DefectResult inversion_defect(const VerifyConfig& cfg, const ImaginaryUnit& mu,
                              std::mt19937_64& rng) {
  const TransformPlan fwd{mu, Direction::kForward, Method::kFft};
  const TransformPlan inv{mu, Direction::kInverse, Method::kFft};
  double worst = 0.0;
  double worst_tail = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const SampledSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain)
            .value;
    const Spectrum F = cft_forward(f, fwd);
    worst_tail = std::max(worst_tail, spectral_tail_fraction(F));
    const SampledSignal back = cft_inverse(F, inv);
    worst = std::max(worst, relative_signal_gap(back, f));
  }
  DefectResult out{worst, {{"max_tail_energy_fraction", worst_tail}}, {}};
  if (worst_tail >= 1e-12) {
    out.warning =
        "input is not band-limited on this grid; round-trip accuracy is not "
        "claimed";
  }
  return out;
}

DefectResult translation_defect(const VerifyConfig& cfg,
                                const ImaginaryUnit& mu,
                                std::mt19937_64& rng) {
  const TransformPlan plan{mu, Direction::kForward, Method::kFft};
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    // Double-width grid: the bump tails reach machine zero before the edge,
    // so the index shift never truncates visible samples.
    const SampledSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain, 2)
            .value;
    const double h = 8.0 * f.dx;
    const Spectrum lhs = cft_forward(translate_signal(f, h), plan);
    Spectrum rhs = cft_forward(f, plan);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      rhs.values[k] = rhs.values[k] * embed(cmu_exp(-h * rhs.xi(k)), mu);
    }
    worst = std::max(worst, relative_spectrum_gap(lhs, rhs));
  }
  return {worst, {}, {}};
}

DefectResult derivative_defect(const VerifyConfig& cfg,
                               const ImaginaryUnit& mu, std::mt19937_64& rng) {
  const TransformPlan plan{mu, Direction::kForward, Method::kFft};
  // Periodic central differences of order eight; the grid wrap sees only
  // machine-zero samples for decaying test signals.
  constexpr std::array<double, 4> kWeights = {4.0 / 5.0, -1.0 / 5.0,
                                              4.0 / 105.0, -1.0 / 280.0};
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    // Double-width grid: a bump tail cut at the edge would put a 1/xi jump
    // spectrum on top of the band where the two sides differ most.
    const SampledSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain, 2)
            .value;
    const std::size_t n = f.size();
    SampledSignal df{f.signature, f.x0, f.dx,
                     std::vector<Multivector>(n, Multivector(f.signature))};
    for (std::size_t j = 0; j < n; ++j) {
      Multivector acc(f.signature);
      for (std::size_t s = 1; s <= kWeights.size(); ++s) {
        acc += (f.values[(j + s) % n] - f.values[(j + n - s) % n]) *
               kWeights[s - 1];
      }
      df.values[j] = acc * (1.0 / f.dx);
    }
    const Spectrum lhs = cft_forward(df, plan);
    Spectrum rhs = cft_forward(f, plan);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      rhs.values[k] = rhs.values[k] * embed(CMu{0.0, -rhs.xi(k)}, mu);
    }
    worst = std::max(worst, relative_spectrum_gap(lhs, rhs));
  }
  return {worst, {}, {}};
}

DefectResult convolution_defect(const VerifyConfig& cfg,
                                const ImaginaryUnit& mu,
                                std::mt19937_64& rng) {
  const TransformPlan plan{mu, Direction::kForward, Method::kFft};
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const SampledSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain)
            .value;
    const SampledSignal g =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain)
            .value;
    const Spectrum via_spectra = convolution_via_spectra(f, g, mu);
    SampledSignal direct = convolve_direct(f, g);
    direct = zero_extend(direct, 0, via_spectra.size() - direct.size());
    const Spectrum via_direct = cft_forward(direct, plan);
    worst = std::max(worst, relative_spectrum_gap(via_direct, via_spectra));
  }
  return {worst, {}, {}};
}

DefectResult nagy_defect(const VerifyConfig& cfg, std::mt19937_64& rng) {
  double worst = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const SmoothSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain);
    double sup = 0.0;
    for (const Multivector& v : f.value.values) {
      sup = std::max(sup, scalar_product(v, v));
    }
    const double bound =
        signal_l2_norm(f.value) * signal_l2_norm(f.derivative);
    if (bound == 0.0) continue;
    worst = std::max(worst, std::max(0.0, sup - bound) / bound);
    min_slack = std::min(min_slack, (bound - sup) / bound);
  }
  return {worst, {{"min_slack_fraction", min_slack}}, {}};
}

/// Product side of the per-blade uncertainty bound for a scalar-blade
/// density sampled on the configured window.
double uncertainty_product(const CliffordDensity& density,
                           const ImaginaryUnit& mu, const VerifyConfig& cfg,
                           double* window_out) {
  const GridSpec grid{cfg.samples, cfg.domain};
  const SampledSignal samples = sample_density(density, grid);
  const BladeIndex blade = density.components().begin()->first;

  // || d/dx ln f ||^2 over the part of the window where f is numerically
  // alive; the full-line norm may diverge.
  double peak = 0.0;
  for (const Multivector& v : samples.values) {
    peak = std::max(peak, v[blade]);
  }
  const double floor = 1e-12 * peak;
  double log_norm = 0.0;
  double window = 0.0;
  for (std::size_t j = 1; j + 1 < samples.size(); ++j) {
    const double lo = samples.values[j - 1][blade];
    const double mid = samples.values[j][blade];
    const double hi = samples.values[j + 1][blade];
    if (lo <= floor || mid <= floor || hi <= floor) continue;
    const double dlog = (std::log(hi) - std::log(lo)) / (2.0 * samples.dx);
    log_norm += dlog * dlog * samples.dx;
    window = std::max(window, std::abs(samples.x(j)));
  }

  const TransformPlan plan{mu, Direction::kForward, Method::kFft};
  const Spectrum phi = cft_forward(samples, plan);
  double xi_norm = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const CMu z = cmu_component(phi.values[k], blade, mu);
    xi_norm += phi.xi(k) * phi.xi(k) * (z.re * z.re + z.im * z.im) * phi.dxi;
  }

  double m2 = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    m2 += samples.x(j) * samples.x(j) * samples.values[j][blade] * samples.dx;
  }
  if (window_out != nullptr) *window_out = window;
  return log_norm * xi_norm * m2;
}

DefectResult uncertainty_defect(const VerifyConfig& cfg,
                                const ImaginaryUnit& mu) {
  double worst = 0.0;
  double min_product = std::numeric_limits<double>::infinity();
  double window = 0.0;
  for (const double lambda : {0.25, 0.5, 1.0, 2.0}) {
    CliffordDensity d(cfg.signature);
    d.set_component(0, GaussianDensity{lambda});
    const double product = uncertainty_product(d, mu, cfg, &window);
    min_product = std::min(min_product, product);
    worst = std::max(worst, std::max(0.0, 1.0 - product));
  }
  {
    // Uniform density mollified by a narrow Gaussian, as an erf difference.
    const double sigma = 0.25;
    SampledBladeDensity smoothed{-cfg.domain,
                                 2.0 * cfg.domain / double(cfg.samples),
                                 std::vector<double>(cfg.samples)};
    for (std::size_t j = 0; j < cfg.samples; ++j) {
      const double x = smoothed.x0 + smoothed.dx * double(j);
      smoothed.values[j] =
          0.5 * (std::erf((x + 0.5) / (sigma * std::numbers::sqrt2)) -
                 std::erf((x - 0.5) / (sigma * std::numbers::sqrt2)));
    }
    CliffordDensity d(cfg.signature);
    d.set_component(0, std::move(smoothed));
    const double product = uncertainty_product(d, mu, cfg, &window);
    min_product = std::min(min_product, product);
    worst = std::max(worst, std::max(0.0, 1.0 - product));
  }
  return {worst,
          {{"min_product", min_product}, {"window_half_width", window}},
          {}};
}

DefectResult submultiplicativity_defect(const VerifyConfig& cfg,
                                        std::mt19937_64& rng) {
  const double factor = double(cfg.signature.blade_count());  // 2^n
  double worst = 0.0;
  double max_ratio = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Multivector a = random_multivector(rng, cfg.signature);
    const Multivector b = random_multivector(rng, cfg.signature);
    const double lhs = modulus(a * b);
    const double bound = factor * modulus(a) * modulus(b);
    if (bound == 0.0) continue;
    worst = std::max(worst, std::max(0.0, lhs - bound) / bound);
    max_ratio = std::max(max_ratio, lhs / (modulus(a) * modulus(b)));
  }
  return {worst, {{"max_ratio", max_ratio}}, {}};
}

DefectResult riemann_lebesgue_defect(const VerifyConfig& cfg,
                                     const ImaginaryUnit& mu,
                                     std::mt19937_64& rng) {
  const TransformPlan plan{mu, Direction::kForward, Method::kFft};
  double worst = 0.0;
  double max_ratio = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const SampledSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain)
            .value;
    const Spectrum F = cft_forward(f, plan);
    double xi_max = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
      xi_max = std::max(xi_max, std::abs(F.xi(k)));
    }
    double global = 0.0;
    double tail = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
      const double mag = modulus(F.values[k]);
      global = std::max(global, mag);
      if (std::abs(F.xi(k)) >= 0.9 * xi_max) tail = std::max(tail, mag);
    }
    if (global == 0.0) continue;
    const double ratio = tail / global;
    max_ratio = std::max(max_ratio, ratio);
    worst = std::max(worst, std::max(0.0, ratio - 0.05) / 0.05);
  }
  return {worst, {{"max_tail_to_peak_ratio", max_ratio}}, {}};
}

DefectResult linearity_defect(const VerifyConfig& cfg, const ImaginaryUnit& mu,
                              std::mt19937_64& rng) {
  const TransformPlan plan{mu, Direction::kForward, Method::kFft};
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Multivector c = random_multivector(rng, cfg.signature);
    const Multivector d = random_multivector(rng, cfg.signature);
    const SampledSignal f =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain)
            .value;
    const SampledSignal g =
        random_smooth_signal(rng, cfg.signature, cfg.samples, cfg.domain)
            .value;
    SampledSignal mixed{f.signature, f.x0, f.dx,
                        std::vector<Multivector>()};
    mixed.values.reserve(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      mixed.values.push_back(c * f.values[j] + d * g.values[j]);
    }
    const Spectrum lhs = cft_forward(mixed, plan);
    const Spectrum ff = cft_forward(f, plan);
    const Spectrum gg = cft_forward(g, plan);
    Spectrum rhs = ff;
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      rhs.values[k] = c * ff.values[k] + d * gg.values[k];
    }
    worst = std::max(worst, relative_spectrum_gap(lhs, rhs));
  }
  return {worst, {}, {}};
}

DefectResult cf_moments_defect(const VerifyConfig& cfg,
                               const ImaginaryUnit& mu,
                               std::mt19937_64& rng) {
  double worst = 0.0;
  const std::size_t blades = cfg.signature.blade_count();
  for (int family = 0; family < 3; ++family) {
    CliffordDensity d(cfg.signature);
    for (BladeIndex b = 0; b < blades; ++b) {
      switch (family) {
        case 0: {
          const double alpha = uniform_double(rng, -1.0, 0.0);
          d.set_component(b, UniformDensity{alpha, alpha + 1.0});
          break;
        }
        case 1:
          d.set_component(b, GaussianDensity{uniform_double(rng, 0.5, 2.0)});
          break;
        default:
          d.set_component(b,
                          ExponentialDensity{uniform_double(rng, 0.5, 2.0)});
          break;
      }
    }
    const CharacteristicFunction phi = characteristic_function(d, mu);
    for (int order = 0; order <= 2; ++order) {
      const Multivector direct = moment_direct(d, order).value;
      const Multivector from_cf = moment_from_cf(phi, order).value;
      const double gap = modulus(from_cf - direct) /
                         std::max(1.0, modulus(direct));
      worst = std::max(worst, gap);
    }
  }
  return {worst, {}, {}};
}

}  // namespace

std::string_view identity_name(IdentityId id) {
  return kIdentityNames[identity_index(id)];
}

std::optional<IdentityId> identity_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kIdentityNames.size(); ++i) {
    if (kIdentityNames[i] == name) return static_cast<IdentityId>(i);
  }
  return std::nullopt;
}

std::vector<IdentityId> all_identities() {
  std::vector<IdentityId> ids;
  for (std::size_t i = 0; i < kIdentityNames.size(); ++i) {
    ids.push_back(static_cast<IdentityId>(i));
  }
  return ids;
}

double default_tolerance(IdentityId id) {
  switch (id) {
    case IdentityId::kLinearity:
    case IdentityId::kSubmultiplicativity:
      return 1e-12;
    case IdentityId::kInversion:
      return 1e-9;
    case IdentityId::kNagy:
    case IdentityId::kUncertainty:
    case IdentityId::kRiemannLebesgue:
      return 1e-9;
    case IdentityId::kConvolution:
    case IdentityId::kCfMoments:
      return 1e-4;
    default:
      return 1e-6;
  }
}

double uniform_double(std::mt19937_64& rng, double lo, double hi) {
  const double unit = double(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Multivector random_multivector(std::mt19937_64& rng, const Signature& sig) {
  Multivector out(sig);
  for (BladeIndex b = 0; b < sig.blade_count(); ++b) {
    out[b] = uniform_double(rng, -1.0, 1.0);
  }
  return out;
}

SmoothSignal random_smooth_signal(std::mt19937_64& rng, const Signature& sig,
                                  std::size_t samples, double half_width,
                                  std::size_t grid_factor) {
  const std::size_t bumps = 1 + static_cast<std::size_t>(rng() % 8);
  std::vector<double> centers(bumps), widths(bumps);
  std::vector<Multivector> amplitudes;
  amplitudes.reserve(bumps);
  for (std::size_t b = 0; b < bumps; ++b) {
    centers[b] = uniform_double(rng, -half_width / 2.0, half_width / 2.0);
    widths[b] = uniform_double(rng, 0.3, 2.0);
    amplitudes.push_back(random_multivector(rng, sig));
  }
  const double grid_half_width = half_width * double(grid_factor);
  samples *= grid_factor;
  const double dx = 2.0 * grid_half_width / double(samples);
  SmoothSignal out{
      {sig, -grid_half_width, dx, std::vector<Multivector>()},
      {sig, -grid_half_width, dx, std::vector<Multivector>()},
  };
  out.value.values.reserve(samples);
  out.derivative.values.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double x = out.value.x(j);
    Multivector v(sig);
    Multivector dv(sig);
    for (std::size_t b = 0; b < bumps; ++b) {
      const double z = (x - centers[b]) / widths[b];
      const double bump = std::exp(-0.5 * z * z);
      v += amplitudes[b] * bump;
      dv += amplitudes[b] * (-z / widths[b] * bump);
    }
    out.value.values.push_back(std::move(v));
    out.derivative.values.push_back(std::move(dv));
  }
  return out;
}

IdentityReport identity_defect(IdentityId id, const VerifyConfig& config) {
  const ImaginaryUnit mu(
      parse_multivector(config.signature, config.mu_text));
  std::mt19937_64 rng(config.seed ^
                      (0x9E3779B97F4A7C15ull * (identity_index(id) + 1)));

  DefectResult result;
  switch (id) {
    case IdentityId::kParseval:
      result = parseval_defect(config, mu, rng);
      break;
    case IdentityId::kInversion:
      result = inversion_defect(config, mu, rng);
      break;
    case IdentityId::kTranslation:
      result = translation_defect(config, mu, rng);
      break;
    case IdentityId::kDerivative:
      result = derivative_defect(config, mu, rng);
      break;
    case IdentityId::kConvolution:
      result = convolution_defect(config, mu, rng);
      break;
    case IdentityId::kNagy:
      result = nagy_defect(config, rng);
      break;
    case IdentityId::kUncertainty:
      result = uncertainty_defect(config, mu);
      break;
    case IdentityId::kSubmultiplicativity:
      result = submultiplicativity_defect(config, rng);
      break;
    case IdentityId::kRiemannLebesgue:
      result = riemann_lebesgue_defect(config, mu, rng);
      break;
    case IdentityId::kLinearity:
      result = linearity_defect(config, mu, rng);
      break;
    case IdentityId::kCfMoments:
      result = cf_moments_defect(config, mu, rng);
      break;
  }

  IdentityReport report;
  report.id = id;
  report.defect = result.defect;
  report.tolerance = config.tolerance_override.value_or(default_tolerance(id));
  report.passed = report.defect <= report.tolerance;
  report.config = config;
  report.warning = std::move(result.warning);
  report.extra = std::move(result.extra);
  return report;
}

SuiteResult run_suite(std::span<const IdentityId> ids,
                      const VerifyConfig& config) {
  if (ids.empty()) {
    throw std::invalid_argument("identity set must not be empty");
  }
  std::vector<IdentityId> ordered(ids.begin(), ids.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  SuiteResult out;
  out.all_passed = true;
  for (const IdentityId id : ordered) {
    try {
      out.reports.push_back(identity_defect(id, config));
    } catch (const std::exception& err) {
      IdentityReport failed;
      failed.id = id;
      failed.defect = std::numeric_limits<double>::max();
      failed.tolerance =
          config.tolerance_override.value_or(default_tolerance(id));
      failed.passed = false;
      failed.config = config;
      failed.warning = std::string("error: ") + err.what();
      out.reports.push_back(std::move(failed));
    }
    out.all_passed = out.all_passed && out.reports.back().passed;
  }
  return out;
}

}  // namespace clifft
