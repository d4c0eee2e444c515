#include <random>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "clifft/json_io.hpp"
#include "clifft/verify.hpp"

using namespace clifft;

TEST_CASE("signal json round trip") {
  const Signature sig(2, 1);
  std::mt19937_64 rng(67);
  SampledSignal f{sig, -3.25, 0.125, {}};
  for (int j = 0; j < 16; ++j) {
    f.values.push_back(random_multivector(rng, sig));
  }
  const SampledSignal back = signal_from_json(signal_to_json(f));
  CHECK(back.signature == sig);
  CHECK(back.x0 == f.x0);
  CHECK(back.dx == f.dx);
  REQUIRE(back.size() == f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(back.values[j] == f.values[j]);  // bit-exact through %.17g
  }
}

TEST_CASE("spectrum json round trip") {
  const Signature sig(0, 2);
  std::mt19937_64 rng(71);
  Spectrum F{sig, -12.56637, 0.3926991, {}};
  for (int k = 0; k < 8; ++k) {
    F.values.push_back(random_multivector(rng, sig));
  }
  const Spectrum back = spectrum_from_json(spectrum_to_json(F));
  CHECK(back.xi0 == F.xi0);
  CHECK(back.dxi == F.dxi);
  for (std::size_t k = 0; k < F.size(); ++k) {
    CHECK(back.values[k] == F.values[k]);
  }
}

TEST_CASE("malformed payloads are rejected") {
  CHECK_THROWS_AS(signal_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(signal_from_json("{\"x0\":0}"), std::invalid_argument);
  CHECK_THROWS_AS(
      signal_from_json(
          "{\"signature\":[1,0],\"x0\":0,\"dx\":0.5,\"values\":[[1]]}"),
      std::invalid_argument);  // row needs 2 coefficients
  CHECK_THROWS_AS(
      signal_from_json(
          "{\"signature\":[1,0],\"x0\":0,\"dx\":-1,\"values\":[[1,0]]}"),
      std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_json("{\"signature\":[0,1]}"),
                  std::invalid_argument);
}

TEST_CASE("distribution specs") {
  const std::string text = R"({
    "signature": [1, 1],
    "blades": {
      "0": {"kind": "gaussian", "lambda": 0.5},
      "3": {"kind": "uniform", "alpha": 0, "beta": 1}
    }
  })";
  const CliffordDensity d = density_spec_from_json(text);
  CHECK(d.signature() == Signature(1, 1));
  REQUIRE(d.components().size() == 2);
  CHECK(std::holds_alternative<GaussianDensity>(d.components().at(0)));
  CHECK(std::holds_alternative<UniformDensity>(d.components().at(3)));

  SUBCASE("sampled components load their grid") {
    const std::string sampled = R"({
      "signature": [0, 1],
      "blades": {
        "1": {"kind": "sampled", "x0": -1.0, "dx": 0.5,
               "values": [0, 0.5, 1, 0.5, 0]}
      }
    })";
    const CliffordDensity s = density_spec_from_json(sampled);
    const auto& blade =
        std::get<SampledBladeDensity>(s.components().at(1));
    CHECK(blade.values.size() == 5);
    CHECK(blade.x0 == -1.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(density_spec_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(density_spec_from_json(
                        R"({"signature":[0,1],"blades":{"9":
                           {"kind":"gaussian","lambda":1}}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(density_spec_from_json(
                        R"({"signature":[0,1],"blades":{"0":
                           {"kind":"cauchy","gamma":1}}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(density_spec_from_json(
                        R"({"signature":[0,1],"blades":{"x":
                           {"kind":"gaussian","lambda":1}}})"),
                    std::invalid_argument);
  }
}

TEST_CASE("report serialization shape") {
  VerifyConfig config;
  config.samples = 128;
  const IdentityReport report =
      identity_defect(IdentityId::kSubmultiplicativity, config);
  const std::string text = reports_to_json(std::vector<IdentityReport>{report});

  const nlohmann::json parsed = nlohmann::json::parse(text);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["id"] == "submultiplicativity");
  CHECK(parsed[0]["passed"].is_boolean());
  CHECK(parsed[0]["defect"].is_number());
  CHECK(parsed[0]["tolerance"].is_number());
  CHECK(parsed[0]["config"]["signature"][0] == 3);
  CHECK(parsed[0]["config"]["mu"] == "e12");
  CHECK(parsed[0]["config"]["N"] == 128);
  CHECK(parsed[0]["config"]["seed"] == 7);
  CHECK(parsed[0]["extra"]["max_ratio"].is_number());
}

TEST_CASE("doubles survive the decimal form") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const double value = uniform_double(rng, -1e6, 1e6) *
                         std::pow(10.0, int(rng() % 13) - 6);
    const double back = std::stod(format_double(value));
    CHECK(back == value);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
}
