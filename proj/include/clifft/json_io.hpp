#pragma once

#include <span>
#include <string>

#include "clifft/probability.hpp"
#include "clifft/transform.hpp"
#include "clifft/verify.hpp"

namespace clifft {

/// 17-significant-digit decimal form: lossless round trips, byte-stable
/// output for identical inputs.
std::string format_double(double value);

// Signal files: {"signature":[p,q],"x0":...,"dx":...,"values":[[...],...]}
// with one coefficient row per sample in ascending blade-bitmask order.
std::string signal_to_json(const SampledSignal& f);
SampledSignal signal_from_json(const std::string& text);

// Spectrum files replace x0/dx with "xi0"/"dxi".
std::string spectrum_to_json(const Spectrum& F);
Spectrum spectrum_from_json(const std::string& text);

// Distribution specs:
// {"signature":[p,q],"blades":{"0":{"kind":"gaussian","lambda":0.5},...}}
// where blade keys are bitmask integers as strings and kinds are
// uniform(alpha,beta), gaussian(lambda), exponential(lambda) or
// sampled(x0,dx,values).
CliffordDensity density_spec_from_json(const std::string& text);

std::string multivector_coeffs_json(const Multivector& value);

// Report files: one array entry per identity, in suite order.
std::string reports_to_json(std::span<const IdentityReport> reports);

}  // namespace clifft
