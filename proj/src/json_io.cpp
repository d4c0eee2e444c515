#include "clifft/json_io.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace clifft {

namespace {

using nlohmann::json;

std::string coeff_row(const Multivector& value) {
  std::string out = "[";
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (i != 0) out += ',';
    out += format_double(value[static_cast<BladeIndex>(i)]);
  }
  out += ']';
  return out;
}

std::string values_block(const std::vector<Multivector>& values) {
  std::string out = "[";
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j != 0) out += ',';
    out += coeff_row(values[j]);
  }
  out += ']';
  return out;
}

std::string quoted(const std::string& text) {
  return json(text).dump();  // escaping only; no numbers involved
}

json parse_or_fail(const std::string& text, const char* what) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    throw std::invalid_argument(std::string("malformed JSON in ") + what);
  }
  return parsed;
}

Signature signature_from_json(const json& node) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number_integer() ||
      !node[1].is_number_integer()) {
    throw std::invalid_argument("signature must be an integer pair [p,q]");
  }
  return Signature(node[0].get<int>(), node[1].get<int>());
}

std::vector<Multivector> values_from_json(const json& node,
                                          const Signature& sig,
                                          const char* what) {
  if (!node.is_array()) {
    throw std::invalid_argument(std::string(what) + ": values must be an array");
  }
  std::vector<Multivector> out;
  out.reserve(node.size());
  for (const json& row : node) {
    if (!row.is_array() || row.size() != sig.blade_count()) {
      throw std::invalid_argument(
          std::string(what) + ": each value row needs 2^n coefficients");
    }
    std::vector<double> coeffs;
    coeffs.reserve(row.size());
    for (const json& c : row) {
      if (!c.is_number()) {
        throw std::invalid_argument(std::string(what) +
                                    ": coefficients must be numbers");
      }
      coeffs.push_back(c.get<double>());
    }
    out.emplace_back(sig, std::move(coeffs));
  }
  return out;
}

double number_field(const json& node, const char* key, const char* what) {
  if (!node.contains(key) || !node[key].is_number()) {
    throw std::invalid_argument(std::string(what) + ": missing number field " +
                                key);
  }
  return node[key].get<double>();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string signal_to_json(const SampledSignal& f) {
  std::string out = "{\"signature\":[" + std::to_string(f.signature.p()) +
                    "," + std::to_string(f.signature.q()) + "],";
  out += "\"x0\":" + format_double(f.x0) + ",";
  out += "\"dx\":" + format_double(f.dx) + ",";
  out += "\"values\":" + values_block(f.values) + "}";
  return out;
}

SampledSignal signal_from_json(const std::string& text) {
  const json parsed = parse_or_fail(text, "signal");
  if (!parsed.is_object() || !parsed.contains("signature")) {
    throw std::invalid_argument("signal: missing signature");
  }
  const Signature sig = signature_from_json(parsed["signature"]);
  SampledSignal out{sig, number_field(parsed, "x0", "signal"),
                    number_field(parsed, "dx", "signal"),
                    values_from_json(parsed.value("values", json::array()),
                                     sig, "signal")};
  if (!(out.dx > 0.0)) {
    throw std::invalid_argument("signal: dx must be positive");
  }
  return out;
}

std::string spectrum_to_json(const Spectrum& F) {
  std::string out = "{\"signature\":[" + std::to_string(F.signature.p()) +
                    "," + std::to_string(F.signature.q()) + "],";
  out += "\"xi0\":" + format_double(F.xi0) + ",";
  out += "\"dxi\":" + format_double(F.dxi) + ",";
  out += "\"values\":" + values_block(F.values) + "}";
  return out;
}

Spectrum spectrum_from_json(const std::string& text) {
  const json parsed = parse_or_fail(text, "spectrum");
  if (!parsed.is_object() || !parsed.contains("signature")) {
    throw std::invalid_argument("spectrum: missing signature");
  }
  const Signature sig = signature_from_json(parsed["signature"]);
  Spectrum out{sig, number_field(parsed, "xi0", "spectrum"),
               number_field(parsed, "dxi", "spectrum"),
               values_from_json(parsed.value("values", json::array()), sig,
                                "spectrum")};
  if (!(out.dxi > 0.0)) {
    throw std::invalid_argument("spectrum: dxi must be positive");
  }
  return out;
}

CliffordDensity density_spec_from_json(const std::string& text) {
  const json parsed = parse_or_fail(text, "distribution spec");
  if (!parsed.is_object() || !parsed.contains("signature") ||
      !parsed.contains("blades") || !parsed["blades"].is_object()) {
    throw std::invalid_argument(
        "distribution spec needs signature and a blades object");
  }
  const Signature sig = signature_from_json(parsed["signature"]);
  CliffordDensity out(sig);
  for (const auto& [key, node] : parsed["blades"].items()) {
    std::size_t consumed = 0;
    unsigned long blade = 0;
    try {
      blade = std::stoul(key, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != key.size() || blade >= sig.blade_count()) {
      throw std::invalid_argument("distribution spec: bad blade key " + key);
    }
    if (!node.is_object() || !node.contains("kind") ||
        !node["kind"].is_string()) {
      throw std::invalid_argument("distribution spec: blade " + key +
                                  " needs a kind");
    }
    const std::string kind = node["kind"].get<std::string>();
    if (kind == "uniform") {
      out.set_component(static_cast<BladeIndex>(blade),
                        UniformDensity{number_field(node, "alpha", "uniform"),
                                       number_field(node, "beta", "uniform")});
    } else if (kind == "gaussian") {
      out.set_component(
          static_cast<BladeIndex>(blade),
          GaussianDensity{number_field(node, "lambda", "gaussian")});
    } else if (kind == "exponential") {
      out.set_component(
          static_cast<BladeIndex>(blade),
          ExponentialDensity{number_field(node, "lambda", "exponential")});
    } else if (kind == "sampled") {
      SampledBladeDensity sampled{number_field(node, "x0", "sampled"),
                                  number_field(node, "dx", "sampled"),
                                  {}};
      if (!node.contains("values") || !node["values"].is_array()) {
        throw std::invalid_argument("sampled component needs values");
      }
      for (const json& v : node["values"]) {
        if (!v.is_number()) {
          throw std::invalid_argument("sampled values must be numbers");
        }
        sampled.values.push_back(v.get<double>());
      }
      out.set_component(static_cast<BladeIndex>(blade), std::move(sampled));
    } else {
      throw std::invalid_argument("distribution spec: unknown kind " + kind);
    }
  }
  return out;
}

std::string multivector_coeffs_json(const Multivector& value) {
  return coeff_row(value);
}

std::string reports_to_json(std::span<const IdentityReport> reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const IdentityReport& r = reports[i];
    if (i != 0) out += ',';
    out += "{\"id\":" + quoted(std::string(identity_name(r.id))) + ",";
    out += "\"defect\":" + format_double(r.defect) + ",";
    out += "\"tolerance\":" + format_double(r.tolerance) + ",";
    out += std::string("\"passed\":") + (r.passed ? "true" : "false") + ",";
    out += "\"config\":{\"signature\":[" +
           std::to_string(r.config.signature.p()) + "," +
           std::to_string(r.config.signature.q()) + "],";
    out += "\"mu\":" + quoted(r.config.mu_text) + ",";
    out += "\"N\":" + std::to_string(r.config.samples) + ",";
    out += "\"L\":" + format_double(r.config.domain) + ",";
    out += "\"seed\":" + std::to_string(r.config.seed) + "}";
    if (r.warning.has_value()) {
      out += ",\"warning\":" + quoted(*r.warning);
    }
    if (!r.extra.empty()) {
      out += ",\"extra\":{";
      for (std::size_t e = 0; e < r.extra.size(); ++e) {
        if (e != 0) out += ',';
        out += quoted(r.extra[e].first) + ":" +
               format_double(r.extra[e].second);
      }
      out += "}";
    }
    out += "}";
  }
  out += "]";
  return out;
}

}  // namespace clifft
