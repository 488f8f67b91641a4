#pragma once

#include "tfid/lattice.hpp"
#include "tfid/opcalc.hpp"

#include <optional>
#include <vector>

namespace tfid {

/// Window plus a finite set of time-frequency shifts.
struct GaborSystem {
  Signal window;
  std::vector<TFIndex> indices;

  /// The shifted windows T_k M_l window, one per index.
  std::vector<Signal> atoms() const;
};

/// Orthonormal basis (char_box(a), a Z_L x (L/a) Z_L). Atom q * a + p is
/// the shift by (a q, (L/a) p), q in [0, L/a), p in [0, a).
GaborSystem box_basis(std::size_t L, std::int64_t a);

/// Default analysis system for length L: box_basis with the largest
/// divisor a <= sqrt(L).
GaborSystem default_analysis(std::size_t L);

struct IdentificationProblem {
  HSOperator h0;
  std::vector<Lambda4> lattice_points;
  Signal identifier;
  GaborSystem analysis;
  /// Continuous generator, when the points come from one.
  std::optional<Lattice4> generator;
};

struct RieszBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Optimal Riesz constants (sigma_min^2, sigma_max^2) of the synthesis
/// matrix whose columns are `vectors`. More vectors than dimensions gives
/// lower = 0.
RieszBounds riesz_bounds(const Eigen::MatrixXcd& vectors);
RieszBounds riesz_bounds(const std::vector<Signal>& vectors);

/// Spreading functions of the family, flattened into columns of length L^2.
Eigen::MatrixXcd spreading_family(const HSOperator& h0, const std::vector<Lambda4>& points);

/// The responses H_lambda g, one per lattice point.
std::vector<Signal> response_family(const HSOperator& h0, const std::vector<Lambda4>& points,
                                    const Signal& g);

/// A(mu, lambda) = <H_lambda g, T_mu gamma>; rows follow analysis.indices.
Eigen::MatrixXcd identification_matrix(const IdentificationProblem& problem);

struct Recovery {
  CVector coefficients;
  double residual = 0.0;
  double condition = 0.0;
};

/// Least-squares solve of A c = v through the SVD. Throws NotIdentifiable when
/// sigma_min / sigma_max < tol, ShapeMismatch when A is wide or v mismatched.
Recovery recover_coefficients(const Eigen::MatrixXcd& A, const CVector& v, double tol = 1e-6);

/// g_lambda <g, h>: the response of the operator whose spreading function
/// is the unitary STFT of g_lambda with window h.
Signal rank_one_response(const Signal& h, const Signal& g_lambda, const Signal& g);

struct IdentificationReport {
  RieszBounds spreading;
  RieszBounds response;
  double condition = 0.0;  // sigma_max(A) / sigma_min(A); inf when rank deficient
  double recovery_error = 0.0;  // NaN when recovery was refused
  bool identifiable = false;
  std::optional<double> density_2;
  std::optional<double> density_tilde;
  std::size_t num_points = 0;
  double seconds = 0.0;
};

struct ReportOptions {
  int trials = 4;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  bool compute_spreading = true;
};

IdentificationReport identify_report(const IdentificationProblem& problem,
                                     const ReportOptions& options = {});

}  // namespace tfid
