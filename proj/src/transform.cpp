#include "clifft/transform.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "clifft/fft.hpp"
#include "clifft/parallel.hpp"

namespace clifft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_signal_signature(const SampledSignal& f) {
  for (const Multivector& v : f.values) {
    if (!(v.signature() == f.signature)) {
      throw std::invalid_argument("signal values disagree with its signature");
    }
  }
}

void require_mu_signature(const Signature& sig, const ImaginaryUnit& mu) {
  if (!(mu.signature() == sig)) {
    throw std::invalid_argument("mu signature does not match the data");
  }
}

bool grids_compatible(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

/// Sparse view of e_Sigma * mu: accumulation targets for the mu-part of each
/// per-blade complex transform.
struct MuRight {
  std::vector<std::pair<BladeIndex, double>> terms;
};

std::vector<MuRight> mu_right_table(const Signature& sig,
                                    const ImaginaryUnit& mu) {
  std::vector<MuRight> table(sig.blade_count());
  for (BladeIndex b = 0; b < sig.blade_count(); ++b) {
    const Multivector prod = Multivector::basis_blade(sig, b) * mu.value();
    for (BladeIndex t = 0; t < prod.size(); ++t) {
      if (prod[t] != 0.0) table[b].terms.emplace_back(t, prod[t]);
    }
  }
  return table;
}

bool blade_is_populated(const std::vector<Multivector>& values, BladeIndex b) {
  for (const Multivector& v : values) {
    if (v[b] != 0.0) return true;
  }
  return false;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> Spectrum::xi_values() const {
  std::vector<double> xs(values.size());
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = xi(k);
  return xs;
}

Spectrum cft_forward(const SampledSignal& f, const TransformPlan& plan) {
  if (plan.direction != Direction::kForward) {
    throw std::invalid_argument("plan direction must be forward");
  }
  require_signal_signature(f);
  require_mu_signature(f.signature, plan.mu);
  const std::size_t n = f.size();
  if (n < 2) throw std::invalid_argument("signal needs at least two samples");

  const double dxi = kTwoPi / (double(n) * f.dx);
  const double xi0 = -std::numbers::pi / f.dx;
  Spectrum out{f.signature, xi0, dxi,
               std::vector<Multivector>(n, Multivector(f.signature))};

  if (plan.method == Method::kQuadrature) {
    out.values = cft_quadrature_oracle(f, plan.mu, out.xi_values());
    return out;
  }
  if (!detail::is_power_of_two(n)) {
    throw std::invalid_argument("fft path requires a power-of-two length");
  }

  std::vector<BladeIndex> blades;
  for (BladeIndex b = 0; b < f.signature.blade_count(); ++b) {
    if (blade_is_populated(f.values, b)) blades.push_back(b);
  }
  const std::vector<MuRight> mu_right = mu_right_table(f.signature, plan.mu);

  // One complex transform per populated blade; every transform lands in its
  // own slot so the blade loop can run on several workers.
  std::vector<std::vector<std::complex<double>>> per_blade(
      blades.size(), std::vector<std::complex<double>>(n));
  detail::parallel_for(blades.size(), [&](std::size_t bi) {
    std::vector<std::complex<double>>& scratch = per_blade[bi];
    const BladeIndex blade = blades[bi];
    for (std::size_t j = 0; j < n; ++j) {
      const double parity = (j & 1) ? -1.0 : 1.0;  // e^{mu*j*dx*xi0}
      scratch[j] = {parity * f.values[j][blade], 0.0};
    }
    detail::fft_radix2(scratch, +1);
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = f.x0 * (xi0 + dxi * double(k));
      scratch[k] *= f.dx * std::complex<double>(std::cos(theta),
                                                std::sin(theta));
    }
  });

  for (std::size_t bi = 0; bi < blades.size(); ++bi) {
    const BladeIndex blade = blades[bi];
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> z = per_blade[bi][k];
      out.values[k][blade] += z.real();
      for (const auto& [target, weight] : mu_right[blade].terms) {
        out.values[k][target] += z.imag() * weight;
      }
    }
  }
  return out;
}

SampledSignal cft_inverse(const Spectrum& F, const TransformPlan& plan) {
  if (plan.direction != Direction::kInverse) {
    throw std::invalid_argument("plan direction must be inverse");
  }
  require_mu_signature(F.signature, plan.mu);
  const std::size_t n = F.size();
  if (n < 2) throw std::invalid_argument("spectrum needs at least two samples");

  const double dx = kTwoPi / (double(n) * F.dxi);
  const double x0 = -0.5 * double(n) * dx;
  SampledSignal out{F.signature, x0, dx,
                    std::vector<Multivector>(n, Multivector(F.signature))};

  if (plan.method == Method::kQuadrature) {
    const Multivector mu_neg = -plan.mu.value();
    detail::parallel_for(n, [&](std::size_t j) {
      Multivector acc(F.signature);
      for (std::size_t k = 0; k < n; ++k) {
        const double theta = F.xi(k) * out.x(j);
        acc += F.values[k] * std::cos(theta) +
               (F.values[k] * mu_neg) * std::sin(theta);
      }
      out.values[j] = acc * (F.dxi / kTwoPi);
    });
    return out;
  }
  if (!detail::is_power_of_two(n)) {
    throw std::invalid_argument("fft path requires a power-of-two length");
  }

  std::vector<BladeIndex> blades;
  for (BladeIndex b = 0; b < F.signature.blade_count(); ++b) {
    if (blade_is_populated(F.values, b)) blades.push_back(b);
  }
  const std::vector<MuRight> mu_right = mu_right_table(F.signature, plan.mu);

  std::vector<std::vector<std::complex<double>>> per_blade(
      blades.size(), std::vector<std::complex<double>>(n));
  detail::parallel_for(blades.size(), [&](std::size_t bi) {
    std::vector<std::complex<double>>& scratch = per_blade[bi];
    const BladeIndex blade = blades[bi];
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = -F.dxi * double(k) * x0;
      scratch[k] = std::complex<double>(std::cos(theta), std::sin(theta)) *
                   F.values[k][blade];
    }
    detail::fft_radix2(scratch, -1);
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = -F.xi0 * out.x(j);
      scratch[j] *= (F.dxi / kTwoPi) *
                    std::complex<double>(std::cos(theta), std::sin(theta));
    }
  });

  for (std::size_t bi = 0; bi < blades.size(); ++bi) {
    const BladeIndex blade = blades[bi];
    for (std::size_t j = 0; j < n; ++j) {
      const std::complex<double> z = per_blade[bi][j];
      out.values[j][blade] += z.real();
      for (const auto& [target, weight] : mu_right[blade].terms) {
        out.values[j][target] += z.imag() * weight;
      }
    }
  }
  return out;
}

std::vector<Multivector> cft_quadrature_oracle(
    const SampledSignal& f, const ImaginaryUnit& mu,
    std::span<const double> xi_list) {
  require_signal_signature(f);
  require_mu_signature(f.signature, mu);
  // f_j e^{mu theta} = f_j cos(theta) + (f_j mu) sin(theta); the right factor
  // stays on the right of the signal value.
  std::vector<Multivector> f_mu;
  f_mu.reserve(f.size());
  for (const Multivector& v : f.values) f_mu.push_back(v * mu.value());

  std::vector<Multivector> out(xi_list.size(), Multivector(f.signature));
  detail::parallel_for(xi_list.size(), [&](std::size_t k) {
    const double xi = xi_list[k];
    Multivector acc(f.signature);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double theta = f.x(j) * xi;
      acc += f.values[j] * std::cos(theta) + f_mu[j] * std::sin(theta);
    }
    out[k] = acc * f.dx;
  });
  return out;
}

SampledSignal convolve_direct(const SampledSignal& f, const SampledSignal& g) {
  if (!(f.signature == g.signature)) {
    throw std::invalid_argument("convolution signature mismatch");
  }
  if (!grids_compatible(f.dx, g.dx)) {
    throw std::invalid_argument("convolution grid step mismatch");
  }
  require_signal_signature(f);
  require_signal_signature(g);
  if (f.size() == 0 || g.size() == 0) {
    throw std::invalid_argument("convolution of an empty signal");
  }
  const std::size_t nf = f.size();
  const std::size_t ng = g.size();
  const std::size_t m = nf + ng - 1;
  SampledSignal out{f.signature, f.x0 + g.x0, f.dx,
                    std::vector<Multivector>(m, Multivector(f.signature))};

  // Expand bilinearly over blade pairs so the inner loops are plain real
  // convolutions of coefficient sequences.
  const std::size_t blades = f.signature.blade_count();
  std::vector<double> fa(nf), gb(ng);
  for (BladeIndex a = 0; a < blades; ++a) {
    if (!blade_is_populated(f.values, a)) continue;
    for (std::size_t j = 0; j < nf; ++j) fa[j] = f.values[j][a];
    for (BladeIndex b = 0; b < blades; ++b) {
      if (!blade_is_populated(g.values, b)) continue;
      for (std::size_t j = 0; j < ng; ++j) gb[j] = g.values[j][b];
      const BladeProduct prod = blade_mul(f.signature, a, b);
      const double scale = prod.sign * f.dx;
      for (std::size_t idx = 0; idx < m; ++idx) {
        const std::size_t j_lo = idx >= ng - 1 ? idx - (ng - 1) : 0;
        const std::size_t j_hi = std::min(idx, nf - 1);
        double sum = 0.0;
        for (std::size_t j = j_lo; j <= j_hi; ++j) sum += fa[j] * gb[idx - j];
        out.values[idx][prod.blade] += scale * sum;
      }
    }
  }
  return out;
}

Spectrum convolution_via_spectra(const SampledSignal& f,
                                 const SampledSignal& g,
                                 const ImaginaryUnit& mu) {
  if (!(f.signature == g.signature)) {
    throw std::invalid_argument("convolution signature mismatch");
  }
  if (!grids_compatible(f.dx, g.dx)) {
    throw std::invalid_argument("convolution grid step mismatch");
  }
  const std::size_t m = next_power_of_two(f.size() + g.size() - 1);
  const SampledSignal f_pad = zero_extend(f, 0, m - f.size());
  const SampledSignal g_pad = zero_extend(g, 0, m - g.size());
  const TransformPlan plan{mu, Direction::kForward, Method::kFft};

  Spectrum out{f.signature, 0.0, 0.0,
               std::vector<Multivector>(m, Multivector(f.signature))};
  bool grid_set = false;
  for (BladeIndex b = 0; b < g.signature.blade_count(); ++b) {
    if (!blade_is_populated(g.values, b)) continue;
    // F[f e_Sigma]: the blade sits inside the transform, left of the kernel.
    const SampledSignal f_blade =
        signal_right_mul(f_pad, Multivector::basis_blade(f.signature, b));
    const Spectrum f_spec = cft_forward(f_blade, plan);

    SampledSignal g_scalar{g.signature, g_pad.x0, g_pad.dx,
                           std::vector<Multivector>()};
    g_scalar.values.reserve(m);
    for (const Multivector& v : g_pad.values) {
      g_scalar.values.push_back(Multivector::scalar(g.signature, v[b]));
    }
    const Spectrum g_spec = cft_forward(g_scalar, plan);
    if (!grid_set) {
      out.xi0 = f_spec.xi0;
      out.dxi = f_spec.dxi;
      grid_set = true;
    }
    for (std::size_t k = 0; k < m; ++k) {
      out.values[k] += f_spec.values[k] * g_spec.values[k];
    }
  }
  if (!grid_set) {
    const Spectrum empty_grid = cft_forward(f_pad, plan);
    out.xi0 = empty_grid.xi0;
    out.dxi = empty_grid.dxi;
  }
  return out;
}

SampledSignal signal_right_mul(const SampledSignal& f, const Multivector& c) {
  if (!(c.signature() == f.signature)) {
    throw std::invalid_argument("constant signature mismatch");
  }
  SampledSignal out = f;
  for (Multivector& v : out.values) v = v * c;
  return out;
}

SampledSignal translate_signal(const SampledSignal& f, double h) {
  const double steps = h / f.dx;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps))) {
    throw std::invalid_argument(
        "translation must be an integer multiple of dx");
  }
  const long long s = static_cast<long long>(rounded);
  SampledSignal out{f.signature, f.x0, f.dx,
                    std::vector<Multivector>(f.size(), Multivector(f.signature))};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const long long src = static_cast<long long>(j) + s;
    if (src >= 0 && src < static_cast<long long>(f.size())) {
      out.values[j] = f.values[static_cast<std::size_t>(src)];
    }
  }
  return out;
}

double signal_l2_norm(const SampledSignal& f) {
  double sum = 0.0;
  for (const Multivector& v : f.values) sum += scalar_product(v, v);
  return std::sqrt(f.dx * sum);
}

double spectrum_l2_norm(const Spectrum& F) {
  double sum = 0.0;
  for (const Multivector& v : F.values) sum += scalar_product(v, v);
  return std::sqrt(F.dxi * sum);
}

double spectral_tail_fraction(const Spectrum& F, double top_fraction) {
  double total = 0.0;
  double tail = 0.0;
  double xi_max = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    xi_max = std::max(xi_max, std::abs(F.xi(k)));
  }
  const double cutoff = (1.0 - top_fraction) * xi_max;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double e = scalar_product(F.values[k], F.values[k]);
    total += e;
    if (std::abs(F.xi(k)) >= cutoff) tail += e;
  }
  return total == 0.0 ? 0.0 : tail / total;
}

SampledSignal zero_extend(const SampledSignal& f, std::size_t n_left,
                          std::size_t n_right) {
  SampledSignal out{f.signature, f.x0 - double(n_left) * f.dx, f.dx,
                    std::vector<Multivector>()};
  out.values.reserve(f.size() + n_left + n_right);
  out.values.insert(out.values.end(), n_left, Multivector(f.signature));
  out.values.insert(out.values.end(), f.values.begin(), f.values.end());
  out.values.insert(out.values.end(), n_right, Multivector(f.signature));
  return out;
}

}  // namespace clifft
