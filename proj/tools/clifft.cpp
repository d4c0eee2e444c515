#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clifft/json_io.hpp"
#include "clifft/parse.hpp"
#include "clifft/probability.hpp"
#include "clifft/transform.hpp"
#include "clifft/verify.hpp"

namespace {

using namespace clifft;

// Exit codes are a stable contract: 0 success, 1 verification failure,
// 2 input/spec error, 3 invalid mu.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInvalidMu = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MuError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Signature parse_signature(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw InputError("signature must be P,Q");
  }
  try {
    const int p = std::stoi(text.substr(0, comma));
    const int q = std::stoi(text.substr(comma + 1));
    return Signature(p, q);
  } catch (const std::exception& err) {
    throw InputError(std::string("bad signature: ") + err.what());
  }
}

ImaginaryUnit parse_mu(const Signature& sig, const std::string& text) {
  Multivector value(sig);
  try {
    value = parse_multivector(sig, text);
  } catch (const std::exception& err) {
    throw InputError(std::string("bad mu expression: ") + err.what());
  }
  if (!is_imaginary_unit(value)) {
    throw MuError("mu does not square to -1 in Cl(" +
                  std::to_string(sig.p()) + "," + std::to_string(sig.q()) +
                  ")");
  }
  return ImaginaryUnit(std::move(value));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::optional<std::string>& path,
                  const std::string& payload) {
  if (!path.has_value() || path->empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw InputError("cannot write " + *path);
  out << payload << "\n";
}

struct TransformArgs {
  std::string signature;
  std::string mu;
  std::string input;
  std::string output;
  bool inverse = false;
  bool oracle = false;
};

int run_transform(const TransformArgs& args) {
  const Signature sig = parse_signature(args.signature);
  const ImaginaryUnit mu = parse_mu(sig, args.mu);
  const Method method = args.oracle ? Method::kQuadrature : Method::kFft;
  const std::string text = read_file(args.input);

  try {
    if (args.inverse) {
      const Spectrum spectrum = spectrum_from_json(text);
      if (!(spectrum.signature == sig)) {
        throw InputError("spectrum signature differs from --signature");
      }
      const SampledSignal out =
          cft_inverse(spectrum, {mu, Direction::kInverse, method});
      write_output(args.output, signal_to_json(out));
    } else {
      const SampledSignal signal = signal_from_json(text);
      if (!(signal.signature == sig)) {
        throw InputError("signal signature differs from --signature");
      }
      const Spectrum out =
          cft_forward(signal, {mu, Direction::kForward, method});
      const double tail = spectral_tail_fraction(out);
      if (tail >= 1e-12) {
        std::cerr << "warning: spectral tail energy fraction "
                  << format_double(tail)
                  << "; the grid may alias this signal\n";
      }
      write_output(args.output, spectrum_to_json(out));
    }
  } catch (const InputError&) {
    throw;
  } catch (const MuError&) {
    throw;
  } catch (const std::exception& err) {
    throw InputError(err.what());
  }
  return kExitOk;
}

struct DistArgs {
  std::string spec_path;
  std::string mu;
  int order = 1;
  std::string method = "direct";
  bool unnormalized = false;
  std::size_t samples = 1024;
  double domain = 16.0;
  std::string output;
};

int run_dist(const std::string& quantity, const DistArgs& args) {
  const std::string text = read_file(args.spec_path);
  CliffordDensity density(Signature(0, 1));
  try {
    density = density_spec_from_json(text);
  } catch (const std::exception& err) {
    throw InputError(err.what());
  }
  const ImaginaryUnit mu = parse_mu(density.signature(), args.mu);

  const DensityValidation validation = validate_density(density);
  if (!validation.passed && !args.unnormalized) {
    std::cerr << "distribution spec violates the density contract:\n";
    for (const BladeValidation& blade : validation.blades) {
      if (blade.passed) continue;
      std::cerr << "  blade " << blade.blade << ": integral "
                << format_double(blade.integral) << ", min "
                << format_double(blade.min_value) << "\n";
    }
    throw InputError(
        "invalid distribution spec (pass --unnormalized to override the "
        "unit-mass check)");
  }

  const GridSpec grid{args.samples, args.domain};
  const std::string sig_prefix =
      "{\"signature\":[" + std::to_string(density.signature().p()) + "," +
      std::to_string(density.signature().q()) + "],";
  const std::optional<std::string> out_path =
      args.output.empty() ? std::nullopt
                          : std::optional<std::string>(args.output);

  try {
    if (quantity == "cf") {
      const CharacteristicFunction phi =
          characteristic_function(density, mu, grid);
      write_output(out_path, spectrum_to_json(cf_spectrum(phi, grid)));
      return kExitOk;
    }
    if (quantity == "moments") {
      MomentResult moment{0, Multivector(density.signature()),
                          MomentMethod::kDirect, std::nullopt};
      if (args.method == "direct") {
        moment = moment_direct(density, args.order);
      } else {
        moment = moment_from_cf(characteristic_function(density, mu, grid),
                                args.order);
      }
      std::string payload = sig_prefix;
      payload += "\"order\":" + std::to_string(moment.order) + ",";
      payload += "\"method\":\"" + args.method + "\",";
      payload += "\"value\":" + multivector_coeffs_json(moment.value) + ",";
      payload +=
          "\"modulus_squared\":" + format_double(moment.squared_modulus());
      if (moment.warning.has_value()) {
        payload += ",\"warning\":\"" + *moment.warning + "\"";
      }
      payload += "}";
      write_output(out_path, payload);
      return kExitOk;
    }
    const Multivector sigma2 = variance(density);
    write_output(out_path, sig_prefix + "\"variance\":" +
                               multivector_coeffs_json(sigma2) + "}");
    return kExitOk;
  } catch (const InputError&) {
    throw;
  } catch (const MuError&) {
    throw;
  } catch (const std::exception& err) {
    throw InputError(err.what());
  }
}

struct VerifyArgs {
  std::string identity = "all";
  std::string signature = "3,0";
  std::string mu = "e12";
  std::size_t samples = 1024;
  double domain = 16.0;
  double tol = 0.0;
  bool tol_set = false;
  std::uint64_t seed = 7;
  std::string output;
};

int run_verify(const VerifyArgs& args) {
  VerifyConfig config;
  config.signature = parse_signature(args.signature);
  config.mu_text = args.mu;
  config.samples = args.samples;
  config.domain = args.domain;
  config.seed = args.seed;
  if (args.tol_set) config.tolerance_override = args.tol;

  // Validate mu up front so a bad unit is an exit 3, not a failed report.
  parse_mu(config.signature, config.mu_text);

  std::vector<IdentityId> ids;
  if (args.identity == "all") {
    ids = all_identities();
  } else {
    const auto id = identity_from_name(args.identity);
    if (!id.has_value()) {
      throw InputError("unknown identity " + args.identity);
    }
    ids.push_back(*id);
  }

  const SuiteResult result = run_suite(ids, config);
  for (const IdentityReport& report : result.reports) {
    std::fprintf(stderr, "%-20s defect=%-12.5g tolerance=%-8.1g %s\n",
                 std::string(identity_name(report.id)).c_str(), report.defect,
                 report.tolerance, report.passed ? "PASS" : "FAIL");
    if (report.warning.has_value()) {
      std::fprintf(stderr, "  warning: %s\n", report.warning->c_str());
    }
  }
  const std::optional<std::string> out_path =
      args.output.empty() ? std::nullopt
                          : std::optional<std::string>(args.output);
  write_output(out_path, reports_to_json(result.reports));
  return result.all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford algebra Fourier transforms and probability tools"};
  app.require_subcommand(1);

  TransformArgs transform_args;
  CLI::App* transform =
      app.add_subcommand("transform", "Transform a sampled signal file");
  transform
      ->add_option("--signature", transform_args.signature,
                   "Algebra signature P,Q")
      ->required();
  transform
      ->add_option("--mu", transform_args.mu,
                   "Square root of -1, e.g. e12 or a multivector expression")
      ->required();
  transform->add_option("--in", transform_args.input, "Input JSON file")
      ->required();
  transform->add_option("--out", transform_args.output, "Output JSON file")
      ->required();
  transform->add_flag("--inverse", transform_args.inverse,
                      "Invert a spectrum file back to a signal");
  transform->add_flag("--oracle", transform_args.oracle,
                      "Use the direct quadrature path instead of the FFT");

  DistArgs dist_args;
  CLI::App* dist =
      app.add_subcommand("dist", "Distribution quantities from a spec file");
  dist->require_subcommand(1);
  std::vector<CLI::App*> dist_kinds;
  for (const std::string kind : {"cf", "moments", "variance"}) {
    CLI::App* sub = dist->add_subcommand(kind);
    sub->add_option("--spec", dist_args.spec_path, "Distribution spec JSON")
        ->required();
    sub->add_option("--mu", dist_args.mu, "Square root of -1")->required();
    sub->add_option("--order", dist_args.order, "Moment order");
    sub->add_option("--method", dist_args.method, "direct or cf")
        ->check(CLI::IsMember({"direct", "cf"}));
    sub->add_flag("--unnormalized", dist_args.unnormalized,
                  "Skip the unit-mass validation gate");
    sub->add_option("--samples", dist_args.samples, "Grid samples");
    sub->add_option("--domain", dist_args.domain, "Grid half-width");
    sub->add_option("--out", dist_args.output,
                    "Output JSON file (default stdout)");
    dist_kinds.push_back(sub);
  }

  VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "Measure identity defects and report");
  verify->add_option("--identity", verify_args.identity,
                     "Identity name or 'all'");
  verify->add_option("--signature", verify_args.signature,
                     "Algebra signature P,Q");
  verify->add_option("--mu", verify_args.mu, "Square root of -1");
  verify->add_option("--samples", verify_args.samples, "Grid samples N");
  verify->add_option("--domain", verify_args.domain, "Grid half-width L");
  verify->add_option("--tol", verify_args.tol, "Tolerance override")
      ->each(
          [&verify_args](const std::string&) { verify_args.tol_set = true; });
  verify->add_option("--seed", verify_args.seed, "Random seed");
  verify->add_option("--out", verify_args.output,
                     "Report JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (transform->parsed()) return run_transform(transform_args);
    if (dist->parsed()) {
      for (CLI::App* sub : dist_kinds) {
        if (sub->parsed()) return run_dist(sub->get_name(), dist_args);
      }
    }
    if (verify->parsed()) return run_verify(verify_args);
  } catch (const MuError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidMu;
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
