#pragma once

#include <string>
#include <string_view>

#include "clifft/algebra.hpp"

namespace clifft {

/// Canonical text form: signed terms `coef*eK...` in ascending blade order,
/// with a bare coefficient for the scalar blade, e.g. `2-1*e3+0.5*e12`.
/// Each digit after `e` is one basis index, so the form covers dimensions
/// up to 9; larger algebras use the JSON coefficient-array form instead.
std::string to_string(const Multivector& value);

/// Parses the text form. Accepts bare blades (`e12`, `-e3`), repeated and
/// out-of-order factors (`e21` folds to `-1*e12`), and plain numbers. A `*`
/// is required between a coefficient and its blade, so `2e1` is the number
/// 20 while `2*e1` is twice e_1.
Multivector parse_multivector(const Signature& sig, std::string_view text);

}  // namespace clifft
