#pragma once

#include "tfid/identify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tfid {

using IntGenerator = Eigen::Matrix<std::int64_t, 4, 2>;

/// Generator of a lattice in Z_L^4 together with the length L.
struct DiscreteLattice {
  IntGenerator gen = IntGenerator::Zero();
  std::size_t L = 0;

  Lambda4 point(std::int64_t m, std::int64_t n) const;
  /// The continuous generator gen / sqrt(L).
  Lattice4 continuous() const;
};

/// Rounds every entry of the continuous generator to round(entry * sqrt(L)).
/// Throws DegenerateDiscretization when rounding lowers the rank.
DiscreteLattice discretize(const Lattice4& lattice, std::size_t L);

/// Number of distinct points of the subgroup generated in Z_L^4.
std::size_t subgroup_size(const DiscreteLattice& lattice);

struct LatticePoints {
  std::vector<Lambda4> points;
  bool truncated = false;
};

/// All distinct points of the generated subgroup when it has at most
/// `closure_limit` elements; otherwise the distinct images of the index box
/// (m, n) in [-N, N]^2.
LatticePoints enumerate_points(const DiscreteLattice& lattice, int trunc_n,
                               std::size_t closure_limit);

/// Exact version of "D_2 > sqrt 2 implies |det tilde| < 1" for the generator
/// num / sqrt(scale_sq). Returns false only on a counterexample.
bool density_implication_exact(const IntGenerator& num, std::int64_t scale_sq);

struct Identifier {
  std::string name;
  Signal signal;
};

/// Unit-norm identifiers: delta_train(a) for every divisor a of L, gauss,
/// chirp, and three seeded random_unit signals.
std::vector<Identifier> identifier_catalog(std::size_t L, std::uint64_t seed);

/// The Gaussian-kernel operator normalized to unit HS norm.
HSOperator unit_gauss_h0(std::size_t L);

struct ExperimentConfig {
  std::string scenario = "sweep";
  std::size_t L = 64;
  Lattice4 generator;
  int trunc_n = 4;
  double tol = 1e-6;
  std::uint64_t seed = 7;
  std::size_t samples = 200;
  /// Closed subgroups up to this many points are used in full; 0 means 4 L.
  std::size_t closure_limit = 0;
  std::string out_path;
  std::string format = "csv";
};

struct IdentifierResult {
  std::string name;
  double response_lower = 0.0;
  double response_lower_doubled = -1.0;  // < 0 when not evaluated
  bool well_conditioned = false;
};

struct SweepRecord {
  Lattice4 generator;
  IntGenerator discrete = IntGenerator::Zero();
  std::size_t L = 0;
  double density_2 = 0.0;
  double density_tilde = 0.0;
  double spreading_lower = 0.0;
  double response_lower = 0.0;  // best over the catalog
  std::string identifier;       // achieving the best bound
  bool identifiable = false;
  std::size_t num_points = 0;
  bool truncated = false;
  std::vector<IdentifierResult> per_identifier;
};

/// Runs the identifier catalog on the lattice family of h0. A lattice counts
/// as identifiable when some identifier gives sigma_min(A)/sigma_max(A) >= tol
/// and, for truncated point sets, its lower bound moves by less than 10% when
/// the truncation box doubles. With `always_double` the doubled box is
/// evaluated for every identifier.
SweepRecord evaluate_lattice(const HSOperator& h0, const Lattice4& generator,
                             const DiscreteLattice& lattice, const ExperimentConfig& config,
                             bool always_double = false);

struct Thm51Outcome {
  IdentificationReport report;
  Eigen::MatrixXcd matrix;
  double identity_deviation = 0.0;  // max |A - I|
  RieszBounds analysis_bounds;
};

/// Box operator class OPW([0,a) x [0,L/a)) sounded by a delta train.
Thm51Outcome run_thm51(std::size_t L, std::int64_t a, std::uint64_t seed = 0);

struct GaussianOutcome {
  SweepRecord record;
  int variant = 1;
  double alpha = 0.0;
  double beta = 0.0;
  bool sufficient_region = false;  // variant 1 with |alpha beta| > sqrt 2; variant 2 with rational ratio
  bool caption_region = false;     // variant 1 with |alpha beta| > 2 instead
  bool outside_riesz_regime = false;
};

/// Gaussian-kernel family on (alpha 0 0 0; 0 beta alpha 0)^T Z^2 (variant 1)
/// or (alpha 0 0 0; 0 0 alpha beta)^T Z^2 (variant 2).
GaussianOutcome run_gaussian_example(int variant, double alpha, double beta,
                                     const ExperimentConfig& config);

struct NotIdentOutcome {
  SweepRecord record;
  double density_formula = 0.0;  // 1 / (|beta| sqrt(alpha^2 + beta^2))
  double best_lower = 0.0;
  double best_lower_doubled = 0.0;
  bool all_below_tol = false;
  bool decreasing = false;
  bool spreading_riesz = false;
};

/// Gaussian-kernel family on (0 0 0 beta; alpha beta 0 0)^T Z^2, |alpha beta| < 1.
NotIdentOutcome run_notident(double alpha, double beta, const ExperimentConfig& config);

struct SweepResult {
  std::vector<SweepRecord> records;
  std::size_t rejected = 0;
  std::size_t violations = 0;           // identifiable with D_2 > 1.05 sqrt 2
  std::size_t arithmetic_failures = 0;  // counterexamples to the exact implication
};

/// Samples random discrete generators, keeps families whose spreading
/// functions form a Riesz sequence, and runs the identifier catalog.
SweepResult run_density_sweep(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "a1,b1,c1,d1,a2,b2,c2,d2,L,D2,Dtilde,riesz_spreading_lo,riesz_response_lo,identifier,"
    "identifiable";

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_json(std::ostream& out, const std::vector<SweepRecord>& records);
/// Writes to `path` in "csv" or "json" format.
void save_records(const std::string& path, const std::string& format,
                  const std::vector<SweepRecord>& records);

}  // namespace tfid
