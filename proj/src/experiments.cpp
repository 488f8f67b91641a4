#include "tfid/experiments.hpp"

#include "tfid/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

namespace tfid {

namespace {

using Key = std::array<std::int64_t, 4>;

Key key_of(const Lambda4& p) { return {p.s, p.omega, p.z, p.y}; }

std::int64_t column_order(const IntGenerator& gen, int col, std::int64_t L) {
  std::int64_t g = L;
  for (int i = 0; i < 4; ++i) g = std::gcd(g, wrap(gen(i, col), L));
  return L / g;
}

bool is_rational(double x, std::int64_t max_den, double tol) {
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (std::abs(x - p / static_cast<double>(q)) <= tol) return true;
  }
  return false;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double density_tilde_of(const Lattice4& generator) {
  const Lattice2 tilde = tilde_lattice(generator);
  return tilde.degenerate() ? std::numeric_limits<double>::infinity()
                            : beurling_density_2d(tilde);
}

std::size_t effective_limit(const ExperimentConfig& config) {
  return config.closure_limit > 0 ? config.closure_limit : 4 * config.L;
}

}  // namespace

Lambda4 DiscreteLattice::point(std::int64_t m, std::int64_t n) const {
  const Eigen::Matrix<std::int64_t, 4, 1> v = gen.col(0) * m + gen.col(1) * n;
  return Lambda4{v(0), v(1), v(2), v(3)}.reduced(static_cast<std::int64_t>(L));
}

Lattice4 DiscreteLattice::continuous() const {
  return Lattice4(gen.cast<double>() / std::sqrt(static_cast<double>(L)));
}

DiscreteLattice discretize(const Lattice4& lattice, std::size_t L) {
  if (L == 0) throw InvalidParams("L must be positive");
  const double scale = std::sqrt(static_cast<double>(L));
  DiscreteLattice out;
  out.L = L;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 2; ++j) out.gen(i, j) = std::llround(lattice.gen(i, j) * scale);
  }
  if (Lattice4(out.gen.cast<double>()).rank() < lattice.rank()) {
    throw DegenerateDiscretization("rounding to the grid of length " + std::to_string(L) +
                                   " collapses the lattice rank");
  }
  return out;
}

std::size_t subgroup_size(const DiscreteLattice& lattice) {
  const auto L = static_cast<std::int64_t>(lattice.L);
  const std::int64_t o1 = column_order(lattice.gen, 0, L);
  const std::int64_t o2 = column_order(lattice.gen, 1, L);
  std::set<Key> seen;
  for (std::int64_t m = 0; m < o1; ++m) {
    for (std::int64_t n = 0; n < o2; ++n) seen.insert(key_of(lattice.point(m, n)));
  }
  return seen.size();
}

LatticePoints enumerate_points(const DiscreteLattice& lattice, int trunc_n,
                               std::size_t closure_limit) {
  LatticePoints out;
  std::set<Key> seen;
  auto add = [&](std::int64_t m, std::int64_t n) {
    const Lambda4 p = lattice.point(m, n);
    if (seen.insert(key_of(p)).second) out.points.push_back(p);
  };
  if (subgroup_size(lattice) <= closure_limit) {
    const auto L = static_cast<std::int64_t>(lattice.L);
    const std::int64_t o1 = column_order(lattice.gen, 0, L);
    const std::int64_t o2 = column_order(lattice.gen, 1, L);
    for (std::int64_t m = 0; m < o1; ++m) {
      for (std::int64_t n = 0; n < o2; ++n) add(m, n);
    }
    return out;
  }
  out.truncated = true;
  for (std::int64_t m = -trunc_n; m <= trunc_n; ++m) {
    for (std::int64_t n = -trunc_n; n <= trunc_n; ++n) add(m, n);
  }
  return out;
}

bool density_implication_exact(const IntGenerator& num, std::int64_t scale_sq) {
  using i128 = __int128;
  i128 sum = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const i128 minor = static_cast<i128>(num(i, 0)) * num(j, 1) -
                         static_cast<i128>(num(j, 0)) * num(i, 1);
      sum += minor * minor;
    }
  }
  if (sum == 0) return true;
  const i128 d = scale_sq;
  const bool dense = d * d > 2 * sum;
  if (!dense) return true;
  i128 det = static_cast<i128>(num(0, 0) - num(3, 0)) * num(2, 1) -
             static_cast<i128>(num(0, 1) - num(3, 1)) * num(2, 0);
  if (det < 0) det = -det;
  return det < d;
}

std::vector<Identifier> identifier_catalog(std::size_t L, std::uint64_t seed) {
  std::vector<Identifier> out;
  auto unit = [](Signal s) { return Signal(s.data().normalized()); };
  for (const auto a : divisors(static_cast<std::int64_t>(L))) {
    out.push_back({"delta_train(" + std::to_string(a) + ")",
                   unit(make_window(WindowKind::delta_train, L, {.a = a}))});
  }
  out.push_back({"gauss", make_window(WindowKind::gauss, L)});
  out.push_back({"chirp", unit(make_window(WindowKind::chirp, L, {.chirp_rate = 1.0}))});
  for (std::uint64_t i = 1; i <= 3; ++i) {
    out.push_back({"random_unit(" + std::to_string(seed + i) + ")",
                   make_window(WindowKind::random_unit, L, {.seed = seed + i})});
  }
  return out;
}

HSOperator unit_gauss_h0(std::size_t L) {
  const HSOperator g = make_h0(H0Kind::gauss_kernel, L);
  return HSOperator(g.kernel() / g.hs_norm());
}

SweepRecord evaluate_lattice(const HSOperator& h0, const Lattice4& generator,
                             const DiscreteLattice& lattice, const ExperimentConfig& config,
                             bool always_double) {
  SweepRecord rec;
  rec.generator = generator;
  rec.discrete = lattice.gen;
  rec.L = lattice.L;
  rec.density_2 = two_beurling_density(generator);
  rec.density_tilde = density_tilde_of(generator);

  const std::size_t limit = effective_limit(config);
  const LatticePoints pts = enumerate_points(lattice, config.trunc_n, limit);
  rec.num_points = pts.points.size();
  rec.truncated = pts.truncated;
  rec.spreading_lower = riesz_bounds(spreading_family(h0, pts.points)).lower;

  std::optional<LatticePoints> doubled;
  const GaborSystem analysis = default_analysis(lattice.L);
  const ReportOptions options{.trials = 1, .seed = config.seed, .tol = config.tol,
                              .compute_spreading = false};

  double best_any = -1.0, best_ok = -1.0;
  for (const auto& id : identifier_catalog(lattice.L, config.seed)) {
    IdentificationProblem problem{h0, pts.points, id.signal, analysis, generator};
    const IdentificationReport rep = identify_report(problem, options);
    IdentifierResult res{id.name, rep.response.lower, -1.0, rep.identifiable};

    bool stable = true;
    if (pts.truncated) {
      if (rep.identifiable || always_double) {
        if (!doubled) doubled = enumerate_points(lattice, 2 * config.trunc_n, 0);
        res.response_lower_doubled =
            riesz_bounds(response_family(h0, doubled->points, id.signal)).lower;
      }
      const double lo = res.response_lower;
      stable = lo > 0.0 && res.response_lower_doubled >= 0.0 &&
               std::abs(res.response_lower_doubled - lo) < 0.1 * lo;
    } else {
      res.response_lower_doubled = res.response_lower;
    }

    const bool ok = rep.identifiable && stable;
    if (res.response_lower > best_any) {
      best_any = res.response_lower;
      if (best_ok < 0.0) rec.identifier = id.name;
    }
    if (ok && res.response_lower > best_ok) {
      best_ok = res.response_lower;
      rec.identifier = id.name;
    }
    rec.per_identifier.push_back(std::move(res));
  }
  rec.identifiable = best_ok >= 0.0;
  rec.response_lower = rec.identifiable ? best_ok : best_any;
  return rec;
}

Thm51Outcome run_thm51(std::size_t L, std::int64_t a, std::uint64_t seed) {
  const auto n = static_cast<std::int64_t>(L);
  if (a <= 0 || n % a != 0) {
    throw NotADivisor(std::to_string(a) + " does not divide " + std::to_string(L));
  }
  const std::int64_t b = n / a;

  // Unit-norm spreading functions and responses.
  H0Params box_params;
  box_params.box_time = a;
  box_params.box_freq = b;
  const HSOperator box = make_h0(H0Kind::opw_box, L, box_params);
  const HSOperator h0(box.kernel() / std::sqrt(static_cast<double>(L)));
  const Signal g(make_window(WindowKind::delta_train, L, {.a = a}).data() *
                 std::sqrt(static_cast<double>(a)));

  // Column (k, l) modulates the box by (k b, l a); its response lives on the
  // time block -l, so row (k, l) analyses with the shift (-l a, k b).
  std::vector<Lambda4> points;
  GaborSystem analysis{make_window(WindowKind::char_box, L, {.a = a}), {}};
  for (std::int64_t l = 0; l < b; ++l) {
    for (std::int64_t k = 0; k < a; ++k) {
      points.push_back(Lambda4{0, 0, k * b, l * a}.reduced(n));
      analysis.indices.push_back(TFIndex{-l * a, k * b}.reduced(n));
    }
  }

  Eigen::Matrix<double, 4, 2> cont;
  const double root_l = std::sqrt(static_cast<double>(L));
  cont << 0, 0, 0, 0, static_cast<double>(b) / root_l, 0, 0, static_cast<double>(a) / root_l;

  IdentificationProblem problem{h0, points, g, analysis, Lattice4(cont)};
  Thm51Outcome out;
  out.report = identify_report(problem, {.trials = 4, .seed = seed, .tol = 1e-6});
  out.matrix = identification_matrix(problem);
  out.identity_deviation =
      (out.matrix - Eigen::MatrixXcd::Identity(out.matrix.rows(), out.matrix.cols()))
          .cwiseAbs()
          .maxCoeff();
  out.analysis_bounds = riesz_bounds(analysis.atoms());
  return out;
}

GaussianOutcome run_gaussian_example(int variant, double alpha, double beta,
                                     const ExperimentConfig& config) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw InvalidParams("alpha and beta must be positive");
  Eigen::Matrix<double, 4, 2> gen;
  if (variant == 1) {
    gen << alpha, 0, 0, beta, 0, alpha, 0, 0;
  } else if (variant == 2) {
    gen << alpha, 0, 0, 0, 0, alpha, 0, beta;
  } else {
    throw InvalidParams("variant must be 1 or 2");
  }
  const Lattice4 generator(gen);
  const DiscreteLattice lattice = discretize(generator, config.L);

  GaussianOutcome out;
  out.variant = variant;
  out.alpha = alpha;
  out.beta = beta;
  out.record = evaluate_lattice(unit_gauss_h0(config.L), generator, lattice, config);

  const double ab = std::abs(alpha * beta);
  const double root2 = std::sqrt(2.0);
  bool rational_ratio = true;
  if (variant == 1) {
    const bool parabola = std::abs(alpha * (beta + alpha * root2)) >= root2;
    out.sufficient_region = parabola && ab > root2 && std::abs(alpha) > 1.0;
    out.caption_region = parabola && ab > 2.0 && std::abs(alpha) > 1.0;
  } else {
    rational_ratio = is_rational(root2 * beta / alpha, 64, 1e-9);
    out.sufficient_region = std::abs(alpha) > 1.0 && rational_ratio;
    out.caption_region = out.sufficient_region;
  }
  out.outside_riesz_regime = !rational_ratio || out.record.spreading_lower < config.tol;
  return out;
}

NotIdentOutcome run_notident(double alpha, double beta, const ExperimentConfig& config) {
  if (alpha == 0.0 || beta == 0.0 || !(std::abs(alpha * beta) < 1.0)) {
    throw InvalidParams("requires nonzero alpha, beta with |alpha beta| < 1");
  }
  Eigen::Matrix<double, 4, 2> gen;
  gen << 0, alpha, 0, beta, 0, 0, beta, 0;
  const Lattice4 generator(gen);
  const DiscreteLattice lattice = discretize(generator, config.L);

  NotIdentOutcome out;
  out.record = evaluate_lattice(unit_gauss_h0(config.L), generator, lattice, config, true);
  out.density_formula = 1.0 / (std::abs(beta) * std::hypot(alpha, beta));
  out.spreading_riesz = out.record.spreading_lower >= config.tol;

  out.all_below_tol = true;
  bool each_nonincreasing = true;
  for (const auto& r : out.record.per_identifier) {
    out.best_lower = std::max(out.best_lower, r.response_lower);
    out.best_lower_doubled = std::max(out.best_lower_doubled, r.response_lower_doubled);
    out.all_below_tol = out.all_below_tol && r.response_lower < config.tol;
    each_nonincreasing = each_nonincreasing && r.response_lower_doubled <= r.response_lower;
  }
  out.decreasing = each_nonincreasing && out.best_lower_doubled < out.best_lower;
  return out;
}

SweepResult run_density_sweep(const ExperimentConfig& config) {
  SweepResult result;
  const auto L = static_cast<std::int64_t>(config.L);
  std::vector<std::int64_t> steps;
  for (const auto q : divisors(L)) {
    if (q > 1 && q <= 16) steps.push_back(L / q);
  }
  if (steps.empty()) throw InvalidParams("L needs a divisor in [2, 16] for the sweep sampler");

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::size_t> pick_step(0, steps.size() - 1);
  std::uniform_int_distribution<int> coin(0, 2);
  const HSOperator h0 = unit_gauss_h0(config.L);
  const std::size_t limit = effective_limit(config);
  const std::size_t max_attempts = 1000 * std::max<std::size_t>(config.samples, 1);
  const double cutoff = std::sqrt(2.0) * 1.05;

  for (std::size_t attempt = 0;
       result.records.size() < config.samples && attempt < max_attempts; ++attempt) {
    DiscreteLattice lattice;
    lattice.L = config.L;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (coin(rng) == 0) continue;
        const std::int64_t step = steps[pick_step(rng)];
        std::uniform_int_distribution<std::int64_t> mult(1, L / step - 1);
        lattice.gen(i, j) = mult(rng) * step;
      }
    }
    const Lattice4 generator = lattice.continuous();
    if (generator.rank() < 2) {
      ++result.rejected;
      continue;
    }
    if (!density_implication_exact(lattice.gen, L)) ++result.arithmetic_failures;
    if (subgroup_size(lattice) > limit) {
      ++result.rejected;
      continue;
    }
    SweepRecord rec = evaluate_lattice(h0, generator, lattice, config);
    if (rec.spreading_lower < config.tol) {
      ++result.rejected;
      continue;
    }
    if (rec.identifiable && rec.density_2 > cutoff) ++result.violations;
    result.records.push_back(std::move(rec));
  }

  if (!config.out_path.empty()) save_records(config.out_path, config.format, result.records);
  return result;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 4; ++i) out << format_double(r.generator.gen(i, j)) << ',';
    }
    out << r.L << ',' << format_double(r.density_2) << ',' << format_double(r.density_tilde)
        << ',' << format_double(r.spreading_lower) << ',' << format_double(r.response_lower)
        << ',' << r.identifier << ',' << (r.identifiable ? 1 : 0) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<SweepRecord>& records) {
  static const char* names[8] = {"a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json row;
    nlohmann::json discrete = nlohmann::json::array();
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 4; ++i) {
        row[names[4 * j + i]] = r.generator.gen(i, j);
        discrete.push_back(r.discrete(i, j));
      }
    }
    row["L"] = r.L;
    row["D2"] = r.density_2;
    row["Dtilde"] = std::isinf(r.density_tilde) ? nlohmann::json("inf")
                                                 : nlohmann::json(r.density_tilde);
    row["riesz_spreading_lo"] = r.spreading_lower;
    row["riesz_response_lo"] = r.response_lower;
    row["identifier"] = r.identifier;
    row["identifiable"] = r.identifiable;
    row["discrete_generator"] = discrete;
    row["num_points"] = r.num_points;
    row["truncated"] = r.truncated;
    arr.push_back(std::move(row));
  }
  out << arr.dump(2) << '\n';
}

void save_records(const std::string& path, const std::string& format,
                  const std::vector<SweepRecord>& records) {
  std::ofstream file(path);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  if (format == "csv") {
    write_csv(file, records);
  } else if (format == "json") {
    write_json(file, records);
  } else {
    throw InvalidParams("unknown output format '" + format + "'");
  }
  if (!file) throw Error("failed writing '" + path + "'");
}

}  // namespace tfid
