#include "clifft/parse.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace clifft {

namespace {

std::string format_coefficient(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

class Parser {
 public:
  Parser(const Signature& sig, std::string_view text)
      : sig_(sig), text_(text) {}

  Multivector run() {
    Multivector out(sig_);
    skip_spaces();
    if (at_end()) throw error("empty multivector expression");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1.0;
        ++pos_;
        skip_spaces();
      } else if (!first) {
        throw error("expected '+' or '-' between terms");
      }
      parse_term(sign, out);
      skip_spaces();
      first = false;
    }
    return out;
  }

 private:
  void parse_term(double sign, Multivector& out) {
    double coef = sign;
    if (at_end()) throw error("dangling sign");
    if (peek() != 'e') {
      coef = sign * parse_number();
      skip_spaces();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_spaces();
        if (at_end() || peek() != 'e') throw error("expected blade after '*'");
      } else {
        out[0] += coef;
        return;
      }
    }
    // Parse the blade, folding factors left-to-right so repeated or
    // out-of-order indices collapse to the canonical blade with a sign.
    ++pos_;  // consume 'e'
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw error("expected basis indices after 'e'");
    }
    BladeIndex blade = 0;
    double fold = 1.0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const int index = peek() - '0';
      ++pos_;
      if (index < 1 || index > sig_.dimension()) {
        throw error("basis index out of range for signature");
      }
      const BladeProduct prod =
          blade_mul(sig_, blade, BladeIndex{1} << (index - 1));
      fold *= prod.sign;
      blade = prod.blade;
    }
    out[blade] += coef * fold;
  }

  double parse_number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) throw error("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return value;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_spaces() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }

  std::invalid_argument error(const std::string& what) const {
    return std::invalid_argument("multivector parse error at offset " +
                                 std::to_string(pos_) + ": " + what);
  }

  const Signature& sig_;
  std::string text_;  // owned copy so strtod sees a terminated buffer
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Multivector& value) {
  if (value.signature().dimension() > 9) {
    throw std::invalid_argument(
        "multivector text form supports dimensions up to 9");
  }
  std::string out;
  for (BladeIndex b = 0; b < value.size(); ++b) {
    const double c = value[b];
    if (c == 0.0) continue;
    if (!out.empty() && c >= 0.0) out += '+';
    if (b == 0) {
      out += format_coefficient(c);
      continue;
    }
    out += format_coefficient(c);
    out += "*e";
    for (BladeIndex rest = b; rest != 0; rest &= rest - 1) {
      out += static_cast<char>('1' + std::countr_zero(rest));
    }
  }
  if (out.empty()) out = "0";
  return out;
}

Multivector parse_multivector(const Signature& sig, std::string_view text) {
  return Parser(sig, text).run();
}

}  // namespace clifft
