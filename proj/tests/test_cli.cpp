#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include "clifft/json_io.hpp"
#include "clifft/parse.hpp"
#include "clifft/probability.hpp"
#include "clifft/transform.hpp"

using namespace clifft;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command =
      std::string(CLIFFT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
    output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, output};
}

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "clifft_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SampledSignal rectangle_signal(const Signature& sig, std::size_t n, double l) {
  SampledSignal f{sig, -l, 2.0 * l / double(n), {}};
  for (std::size_t j = 0; j < n; ++j) {
    const double x = f.x(j);
    double v = std::abs(x) < 0.5 ? 1.0 : 0.0;
    if (x == -0.5 || x == 0.5) v = 0.5;
    f.values.push_back(Multivector::scalar(sig, v));
  }
  return f;
}

}  // namespace

TEST_CASE("transform: rectangle spectrum matches the closed form") {
  const Signature sig(0, 1);
  const fs::path in = workdir() / "rect.json";
  const fs::path out = workdir() / "rect_spectrum.json";
  write_file(in, signal_to_json(rectangle_signal(sig, 1024, 16.0)));

  const RunResult result = run_cli("transform --signature 0,1 --mu e1 --in " +
                                   in.string() + " --out " + out.string());
  REQUIRE(result.exit_code == 0);

  const Spectrum spectrum = spectrum_from_json(read_file(out));
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double xi = spectrum.xi(k);
    if (std::abs(xi) > 20.0) continue;
    const double expected =
        std::abs(xi) < 1e-9 ? 1.0 : (2.0 / xi) * std::sin(xi / 2.0);
    CHECK(std::abs(spectrum.values[k][0] - expected) <= 1e-2);
  }
}

TEST_CASE("transform: forward then inverse reproduces the file") {
  const Signature sig(0, 1);
  SampledSignal f{sig, -16.0, 32.0 / 1024.0, {}};
  for (std::size_t j = 0; j < 1024; ++j) {
    const double x = f.x(j);
    f.values.push_back(Multivector::scalar(sig, std::exp(-x * x)));
  }
  const fs::path in = workdir() / "gauss.json";
  const fs::path mid = workdir() / "gauss_spec.json";
  const fs::path back = workdir() / "gauss_back.json";
  write_file(in, signal_to_json(f));

  REQUIRE(run_cli("transform --signature 0,1 --mu e1 --in " + in.string() +
                  " --out " + mid.string())
              .exit_code == 0);
  REQUIRE(run_cli("transform --signature 0,1 --mu e1 --inverse --in " +
                  mid.string() + " --out " + back.string())
              .exit_code == 0);

  const SampledSignal recovered = signal_from_json(read_file(back));
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Multivector diff = recovered.values[j] - f.values[j];
    num += scalar_product(diff, diff);
    den += scalar_product(f.values[j], f.values[j]);
  }
  CHECK(std::sqrt(num / den) <= 1e-9);
}

TEST_CASE("transform: oracle flag reproduces the fft path") {
  const Signature sig(0, 1);
  const fs::path in = workdir() / "small.json";
  const fs::path fft_out = workdir() / "small_fft.json";
  const fs::path oracle_out = workdir() / "small_oracle.json";
  write_file(in, signal_to_json(rectangle_signal(sig, 64, 4.0)));

  REQUIRE(run_cli("transform --signature 0,1 --mu e1 --in " + in.string() +
                  " --out " + fft_out.string())
              .exit_code == 0);
  REQUIRE(run_cli("transform --signature 0,1 --mu e1 --oracle --in " +
                  in.string() + " --out " + oracle_out.string())
              .exit_code == 0);
  const Spectrum a = spectrum_from_json(read_file(fft_out));
  const Spectrum b = spectrum_from_json(read_file(oracle_out));
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(modulus(a.values[k] - b.values[k]) <= 1e-10);
  }
}

TEST_CASE("transform: error exit codes") {
  const fs::path in = workdir() / "any.json";
  write_file(in, signal_to_json(rectangle_signal(Signature(1, 0), 16, 4.0)));
  const fs::path out = workdir() / "unused.json";

  SUBCASE("mu that squares to +1 exits 3") {
    CHECK(run_cli("transform --signature 1,0 --mu e1 --in " + in.string() +
                  " --out " + out.string())
              .exit_code == 3);
  }
  SUBCASE("malformed input exits 2") {
    const fs::path bad = workdir() / "bad.json";
    write_file(bad, "{\"nope\": true}");
    CHECK(run_cli("transform --signature 0,1 --mu e1 --in " + bad.string() +
                  " --out " + out.string())
              .exit_code == 2);
  }
  SUBCASE("missing file exits 2") {
    CHECK(run_cli("transform --signature 0,1 --mu e1 --in /nonexistent.json"
                  " --out " +
                  out.string())
              .exit_code == 2);
  }
  SUBCASE("unparsable mu exits 2") {
    CHECK(run_cli("transform --signature 0,1 --mu seven --in " + in.string() +
                  " --out " + out.string())
              .exit_code == 2);
  }
}

TEST_CASE("dist: gaussian variance is 1 per blade at lambda one half") {
  const fs::path spec = workdir() / "gauss_dist.json";
  write_file(spec, R"({"signature":[0,1],"blades":{
    "0":{"kind":"gaussian","lambda":0.5},
    "1":{"kind":"gaussian","lambda":0.5}}})");
  const RunResult result =
      run_cli("dist variance --spec " + spec.string() + " --mu e1");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["variance"][0].get<double>() == doctest::Approx(1.0));
  CHECK(parsed["variance"][1].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("dist: exponential moments agree across methods") {
  const fs::path spec = workdir() / "expo_dist.json";
  write_file(spec, R"({"signature":[0,1],"blades":{
    "0":{"kind":"exponential","lambda":2}}})");
  const RunResult direct = run_cli("dist moments --order 2 --method direct "
                                   "--spec " +
                                   spec.string() + " --mu e1");
  const RunResult from_cf = run_cli("dist moments --order 2 --method cf "
                                    "--spec " +
                                    spec.string() + " --mu e1");
  REQUIRE(direct.exit_code == 0);
  REQUIRE(from_cf.exit_code == 0);
  const double a =
      nlohmann::json::parse(direct.output)["value"][0].get<double>();
  const double b =
      nlohmann::json::parse(from_cf.output)["value"][0].get<double>();
  CHECK(a == doctest::Approx(0.5));
  CHECK(std::abs(a - b) <= 1e-4);
}

TEST_CASE("dist: the unit-mass gate and its override") {
  const fs::path spec = workdir() / "indicator.json";
  write_file(spec, R"({"signature":[0,1],"blades":{
    "0":{"kind":"uniform","alpha":0,"beta":2}}})");

  CHECK(run_cli("dist moments --spec " + spec.string() + " --mu e1")
            .exit_code == 2);

  const RunResult forced = run_cli("dist moments --unnormalized --spec " +
                                   spec.string() + " --mu e1");
  REQUIRE(forced.exit_code == 0);
  // Indicator of [0,2]: first moment (beta^2 - alpha^2)/2 = 2.
  CHECK(nlohmann::json::parse(forced.output)["value"][0].get<double>() ==
        doctest::Approx(2.0));
}

TEST_CASE("dist: cf table matches the analytic form") {
  const fs::path spec = workdir() / "cf_dist.json";
  write_file(spec, R"({"signature":[0,1],"blades":{
    "0":{"kind":"gaussian","lambda":0.5}}})");
  const RunResult result =
      run_cli("dist cf --spec " + spec.string() + " --mu e1");
  REQUIRE(result.exit_code == 0);
  const Spectrum table = spectrum_from_json(result.output);
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double t = table.xi(k);
    if (std::abs(t) > 6.0) continue;
    CHECK(std::abs(table.values[k][0] - std::exp(-t * t / 2.0)) <= 1e-9);
  }
}

TEST_CASE("thread cap changes nothing in the output bytes") {
  const Signature sig(0, 2);
  SampledSignal f{sig, -8.0, 16.0 / 256.0, {}};
  for (std::size_t j = 0; j < 256; ++j) {
    const double x = f.x(j);
    Multivector v(sig);
    v[0] = std::exp(-x * x);
    v[3] = std::exp(-2.0 * (x - 1.0) * (x - 1.0));
    f.values.push_back(v);
  }
  const fs::path in = workdir() / "threads_in.json";
  const fs::path out_serial = workdir() / "threads_serial.json";
  const fs::path out_parallel = workdir() / "threads_parallel.json";
  write_file(in, signal_to_json(f));

  REQUIRE(run_cli("transform --signature 0,2 --mu e1 --in " + in.string() +
                  " --out " + out_serial.string())
              .exit_code == 0);
  const std::string command = "CLIFFT_THREADS=4 " + std::string(CLIFFT_CLI_PATH) +
                              " transform --signature 0,2 --mu e1 --in " +
                              in.string() + " --out " + out_parallel.string() +
                              " 2>/dev/null";
  REQUIRE(std::system(command.c_str()) == 0);
  CHECK(read_file(out_serial) == read_file(out_parallel));
}

TEST_CASE("verify: single identity and error paths") {
  SUBCASE("parseval alone passes") {
    const RunResult result =
        run_cli("verify --identity parseval --samples 1024");
    CHECK(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.output);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0]["id"] == "parseval");
    CHECK(parsed[0]["passed"] == true);
  }
  SUBCASE("unknown identity exits 2") {
    CHECK(run_cli("verify --identity bogus").exit_code == 2);
  }
  SUBCASE("invalid mu exits 3") {
    CHECK(run_cli("verify --identity parseval --signature 3,0 --mu e1")
              .exit_code == 3);
  }
  SUBCASE("impossible tolerance exits 1") {
    CHECK(run_cli("verify --identity parseval --tol 1e-30").exit_code == 1);
  }
}
