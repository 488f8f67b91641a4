// Command-line front end for the identification experiments.
//
//   tfid density  --gen a1,b1,c1,d1,a2,b2,c2,d2
//   tfid thm51    --L 64 --a 8
//   tfid gauss    --variant 1 --alpha 2 --beta 2 --L 128
//   tfid notident --alpha 2 --beta 0.25 --L 128
//   tfid sweep    --samples 200 --L 64 --seed 7 --out sweep.csv [--format csv|json]
//
// Exit status: 0 success, 1 usage error, 2 failed check.

#include "tfid/error.hpp"
#include "tfid/experiments.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;

void print_record(const tfid::SweepRecord& r) {
  std::printf("generator      :");
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 4; ++i) std::printf(" %.6g", r.generator.gen(i, j));
  }
  std::printf("\ndiscrete       :");
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 4; ++i) std::printf(" %lld", static_cast<long long>(r.discrete(i, j)));
  }
  std::printf("\nL              : %zu\n", r.L);
  std::printf("points         : %zu%s\n", r.num_points, r.truncated ? " (truncated box)" : "");
  std::printf("D2             : %.12g\n", r.density_2);
  std::printf("Dtilde         : %.12g\n", r.density_tilde);
  std::printf("spreading lo   : %.6e\n", r.spreading_lower);
  std::printf("response lo    : %.6e (%s)\n", r.response_lower, r.identifier.c_str());
  std::printf("identifiable   : %s\n", r.identifiable ? "yes" : "no");
}

int run_density(const std::vector<double>& entries) {
  if (entries.size() != 8) {
    std::cerr << "--gen needs exactly 8 comma-separated values\n";
    return kUsage;
  }
  const auto lattice = tfid::Lattice4::from_entries(entries[0], entries[1], entries[2],
                                                    entries[3], entries[4], entries[5],
                                                    entries[6], entries[7]);
  const double d2 = tfid::two_beurling_density(lattice);
  const tfid::Lattice2 tilde = tfid::tilde_lattice(lattice);
  std::printf("D2             : %.15g\n", d2);
  if (tilde.degenerate()) {
    std::printf("Dtilde         : inf (degenerate)\n");
  } else {
    std::printf("Dtilde         : %.15g\n", tfid::beurling_density_2d(tilde));
  }
  std::printf("|det tilde|    : %.15g\n", std::abs(tilde.gen.determinant()));
  std::printf("D2 <= sqrt(2)  : %s\n", tfid::necessary_condition_holds(lattice) ? "yes" : "no");
  return kOk;
}

int run_thm51(std::size_t L, std::int64_t a) {
  const auto start = std::chrono::steady_clock::now();
  const auto out = tfid::run_thm51(L, a);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("max |A - I|      : %.3e\n", out.identity_deviation);
  std::printf("recovery error   : %.3e\n", out.report.recovery_error);
  std::printf("cond(A)          : %.12g\n", out.report.condition);
  std::printf("spreading bounds : [%.12g, %.12g]\n", out.report.spreading.lower,
              out.report.spreading.upper);
  std::printf("response bounds  : [%.12g, %.12g]\n", out.report.response.lower,
              out.report.response.upper);
  std::printf("analysis bounds  : [%.12g, %.12g]\n", out.analysis_bounds.lower,
              out.analysis_bounds.upper);
  std::printf("D2               : %.12g\n", out.report.density_2.value_or(NAN));
  std::printf("runtime          : %.3f s\n", secs);
  const bool ok = out.identity_deviation < 1e-10 && out.report.recovery_error < 1e-10;
  std::printf("check            : %s\n", ok ? "PASS" : "FAIL");
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-frequency operator identification experiments"};
  app.require_subcommand(1);

  tfid::ExperimentConfig config;
  app.add_option("--tol", config.tol, "Identifiability tolerance on sigma_min/sigma_max")
      ->check(CLI::PositiveNumber);
  app.add_option("--trunc-N", config.trunc_n, "Half-width of the truncated index box")
      ->check(CLI::PositiveNumber);

  auto* density = app.add_subcommand("density", "2-density of a lattice in R^4");
  std::vector<double> gen_entries;
  density->add_option("--gen", gen_entries, "a1,b1,c1,d1,a2,b2,c2,d2")
      ->required()
      ->delimiter(',');

  auto* thm51 = app.add_subcommand("thm51", "Box class sounded by a delta train");
  std::size_t thm_l = 64;
  std::int64_t thm_a = 8;
  thm51->add_option("--L", thm_l, "Signal length")->required();
  thm51->add_option("--a", thm_a, "Box length (must divide L)")->required();

  auto* gauss = app.add_subcommand("gauss", "Gaussian-kernel rank-2 lattice examples");
  int variant = 1;
  double g_alpha = 2.0, g_beta = 2.0;
  gauss->add_option("--variant", variant, "1 or 2")->check(CLI::IsMember({1, 2}));
  gauss->add_option("--alpha", g_alpha)->required();
  gauss->add_option("--beta", g_beta)->required();
  gauss->add_option("--L", config.L, "Signal length");

  auto* notident = app.add_subcommand("notident", "Non-identifiable family with |alpha beta| < 1");
  double n_alpha = 2.0, n_beta = 0.25;
  notident->add_option("--alpha", n_alpha)->required();
  notident->add_option("--beta", n_beta)->required();
  notident->add_option("--L", config.L, "Signal length");

  auto* sweep = app.add_subcommand("sweep", "Random-lattice falsification sweep");
  sweep->add_option("--samples", config.samples, "Number of retained lattices");
  sweep->add_option("--L", config.L, "Signal length");
  sweep->add_option("--seed", config.seed, "RNG seed");
  sweep->add_option("--out", config.out_path, "Output file");
  sweep->add_option("--format", config.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*density) return run_density(gen_entries);
    if (*thm51) return run_thm51(thm_l, thm_a);
    if (*gauss) {
      const auto out = tfid::run_gaussian_example(variant, g_alpha, g_beta, config);
      print_record(out.record);
      std::printf("sufficient region (|ab| > sqrt 2) : %s\n", out.sufficient_region ? "yes" : "no");
      std::printf("caption region    (|ab| > 2)      : %s\n", out.caption_region ? "yes" : "no");
      std::printf("outside Riesz regime              : %s\n",
                  out.outside_riesz_regime ? "yes" : "no");
      return kOk;
    }
    if (*notident) {
      const auto out = tfid::run_notident(n_alpha, n_beta, config);
      print_record(out.record);
      std::printf("D2 closed form : %.12g\n", out.density_formula);
      for (const auto& r : out.record.per_identifier) {
        std::printf("  %-20s lo(N) = %.3e  lo(2N) = %.3e\n", r.name.c_str(), r.response_lower,
                    r.response_lower_doubled);
      }
      const bool ok = out.spreading_riesz && out.all_below_tol && out.decreasing;
      std::printf("check          : %s\n", ok ? "PASS" : "FAIL");
      return ok ? kOk : kCheckFailed;
    }
    if (*sweep) {
      const auto start = std::chrono::steady_clock::now();
      const auto result = tfid::run_density_sweep(config);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::size_t identifiable = 0;
      for (const auto& r : result.records) identifiable += r.identifiable ? 1 : 0;
      std::printf("records             : %zu (rejected %zu)\n", result.records.size(),
                  result.rejected);
      std::printf("identifiable        : %zu\n", identifiable);
      std::printf("density violations  : %zu\n", result.violations);
      std::printf("arithmetic failures : %zu\n", result.arithmetic_failures);
      std::printf("runtime             : %.1f s\n", secs);
      if (!config.out_path.empty()) std::printf("written             : %s\n", config.out_path.c_str());
      return result.violations == 0 && result.arithmetic_failures == 0 ? kOk : kCheckFailed;
    }
  } catch (const tfid::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
