#include "tfid/identify.hpp"

#include "tfid/error.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace tfid {

namespace {

// Jacobi keeps relative accuracy in the smallest singular values; BDCSVD
// deflates them to exact zeros.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

Eigen::MatrixXcd as_columns(const std::vector<Signal>& vectors) {
  if (vectors.empty()) throw EmptyFamily("Riesz bounds of an empty family");
  const auto n = static_cast<Eigen::Index>(vectors.front().len());
  Eigen::MatrixXcd m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].data().size() != n) throw LengthMismatch("family vectors differ in length");
    m.col(static_cast<Eigen::Index>(j)) = vectors[j].data();
  }
  return m;
}

CVector random_coefficients(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVector c(n);
  for (Eigen::Index j = 0; j < n; ++j) c(j) = cplx(normal(rng), normal(rng));
  return c;
}

}  // namespace

std::vector<Signal> GaborSystem::atoms() const {
  std::vector<Signal> out;
  out.reserve(indices.size());
  for (const auto& idx : indices) out.push_back(tf_shift(window, idx));
  return out;
}

GaborSystem box_basis(std::size_t L, std::int64_t a) {
  const auto n = static_cast<std::int64_t>(L);
  GaborSystem sys{make_window(WindowKind::char_box, L, {.a = a}), {}};
  const std::int64_t b = n / a;
  sys.indices.reserve(L);
  for (std::int64_t q = 0; q < b; ++q) {
    for (std::int64_t p = 0; p < a; ++p) sys.indices.push_back({a * q, b * p});
  }
  return sys;
}

GaborSystem default_analysis(std::size_t L) {
  std::int64_t best = 1;
  for (const auto d : divisors(static_cast<std::int64_t>(L))) {
    if (d * d <= static_cast<std::int64_t>(L)) best = d;
  }
  return box_basis(L, best);
}

RieszBounds riesz_bounds(const Eigen::MatrixXcd& vectors) {
  if (vectors.cols() == 0) throw EmptyFamily("Riesz bounds of an empty family");
  const Eigen::VectorXd s = singular_values(vectors);
  RieszBounds out;
  out.upper = s(0) * s(0);
  out.lower = vectors.cols() > vectors.rows() ? 0.0 : s(s.size() - 1) * s(s.size() - 1);
  return out;
}

RieszBounds riesz_bounds(const std::vector<Signal>& vectors) {
  return riesz_bounds(as_columns(vectors));
}

Eigen::MatrixXcd spreading_family(const HSOperator& h0, const std::vector<Lambda4>& points) {
  const auto L = static_cast<Eigen::Index>(h0.size());
  Eigen::MatrixXcd out(L * L, static_cast<Eigen::Index>(points.size()));
  const Table& eta0 = h0.spreading();
  for (std::size_t j = 0; j < points.size(); ++j) {
    const Table shifted = shift_spreading(eta0, points[j]);
    out.col(static_cast<Eigen::Index>(j)) = shifted.reshaped();
  }
  return out;
}

std::vector<Signal> response_family(const HSOperator& h0, const std::vector<Lambda4>& points,
                                    const Signal& g) {
  if (g.len() != h0.size()) throw LengthMismatch("identifier and operator sizes differ");
  std::vector<Signal> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(apply_family_member(h0, p, g));
  return out;
}

Eigen::MatrixXcd identification_matrix(const IdentificationProblem& problem) {
  const std::size_t L = problem.h0.size();
  if (problem.identifier.len() != L || problem.analysis.window.len() != L) {
    throw LengthMismatch("identification problem mixes signal lengths");
  }
  const auto responses = response_family(problem.h0, problem.lattice_points, problem.identifier);
  const auto atoms = problem.analysis.atoms();
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(atoms.size()),
                     static_cast<Eigen::Index>(responses.size()));
  for (std::size_t j = 0; j < responses.size(); ++j) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          inner(responses[j].data(), atoms[i].data());
    }
  }
  return A;
}

Recovery recover_coefficients(const Eigen::MatrixXcd& A, const CVector& v, double tol) {
  if (A.cols() == 0 || A.rows() < A.cols()) {
    throw ShapeMismatch("recovery needs at least as many equations as unknowns");
  }
  if (v.size() != A.rows()) throw ShapeMismatch("right-hand side does not match A");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smax > 0.0) || smin < tol * smax) {
    throw NotIdentifiable("identification matrix has no stable left inverse (sigma ratio " +
                          std::to_string(smax > 0.0 ? smin / smax : 0.0) + ")");
  }
  Recovery out;
  out.coefficients = svd.solve(v);
  out.residual = (A * out.coefficients - v).norm();
  out.condition = smax / smin;
  return out;
}

Signal rank_one_response(const Signal& h, const Signal& g_lambda, const Signal& g) {
  if (h.len() != g.len() || g_lambda.len() != g.len()) {
    throw LengthMismatch("rank-one response needs equal lengths");
  }
  return Signal(g_lambda.data() * inner(g.data(), h.data()));
}

IdentificationReport identify_report(const IdentificationProblem& problem,
                                     const ReportOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  IdentificationReport report;
  report.num_points = problem.lattice_points.size();

  if (options.compute_spreading) {
    report.spreading = riesz_bounds(spreading_family(problem.h0, problem.lattice_points));
  }

  const auto responses =
      response_family(problem.h0, problem.lattice_points, problem.identifier);
  const Eigen::MatrixXcd R = as_columns(responses);
  report.response = riesz_bounds(R);

  const auto atoms = problem.analysis.atoms();
  Eigen::MatrixXcd Phi(R.rows(), static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Phi.col(static_cast<Eigen::Index>(i)) = atoms[i].data();
  }
  const Eigen::MatrixXcd A = Phi.adjoint() * R;
  const Eigen::VectorXd s = singular_values(A);
  const double smax = s(0);
  const double smin = A.cols() > A.rows() ? 0.0 : s(s.size() - 1);
  report.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  report.identifiable = smax > 0.0 && smin >= options.tol * smax;

  report.recovery_error = std::numeric_limits<double>::quiet_NaN();
  if (report.identifiable) {
    std::mt19937_64 rng(options.seed);
    double total = 0.0;
    for (int trial = 0; trial < options.trials; ++trial) {
      const CVector c = random_coefficients(R.cols(), rng);
      // Observations of H g for H = sum c_lambda H_lambda.
      const CVector hg = R * c;
      const CVector v = Phi.adjoint() * hg;
      const Recovery rec = recover_coefficients(A, v, options.tol);
      total += (rec.coefficients - c).norm() / c.norm();
    }
    report.recovery_error = options.trials > 0 ? total / options.trials : 0.0;
  }

  if (problem.generator) {
    try {
      report.density_2 = two_beurling_density(*problem.generator);
    } catch (const DegenerateLattice&) {
    }
    const Lattice2 tilde = tilde_lattice(*problem.generator);
    report.density_tilde = tilde.degenerate() ? std::numeric_limits<double>::infinity()
                                              : beurling_density_2d(tilde);
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tfid
