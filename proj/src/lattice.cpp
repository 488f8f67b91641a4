#include "tfid/lattice.hpp"

#include "tfid/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace tfid {

namespace {

// Continued-fraction test for x = p/q with q <= max_den.
bool rational_approximation(double x, std::int64_t max_den, std::int64_t& p_out,
                            std::int64_t& q_out) {
  const double tol = 1e-12 * std::max(1.0, std::abs(x));
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) return false;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) return false;
    if (std::abs(static_cast<double>(p2) / static_cast<double>(q2) - x) <= tol) {
      p_out = p2;
      q_out = q2;
      return true;
    }
    const double frac = r - a;
    if (frac == 0.0) return false;
    r = 1.0 / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return false;
}

std::int64_t count_rank_one(const Lattice4& lattice, double radius,
                            const Eigen::Vector4d& center) {
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(lattice.gen, Eigen::ComputeFullU);
  const Eigen::Vector4d u = svd.matrixU().col(0);
  const double p1 = u.dot(lattice.gen.col(0));
  const double p2 = u.dot(lattice.gen.col(1));
  const double scale = std::max(std::abs(p1), std::abs(p2));

  double step = 0.0;
  if (std::abs(p1) <= kRankTolerance * scale) {
    step = std::abs(p2);
  } else if (std::abs(p2) <= kRankTolerance * scale) {
    step = std::abs(p1);
  } else {
    std::int64_t p = 0, q = 1;
    if (!rational_approximation(p1 / p2, 1'000'000, p, q)) {
      throw DegenerateLattice("rank-1 generator with incommensurable columns");
    }
    step = std::abs(p2) / static_cast<double>(q);
  }

  const double along = u.dot(center);
  const double perp2 = (center - along * u).squaredNorm();
  const double reach2 = radius * radius - perp2;
  if (reach2 <= 0.0) return 0;
  const double reach = std::sqrt(reach2);
  const auto k_lo = static_cast<std::int64_t>(std::floor((along - reach) / step)) - 1;
  const auto k_hi = static_cast<std::int64_t>(std::ceil((along + reach) / step)) + 1;
  std::int64_t count = 0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const Eigen::Vector4d pt = static_cast<double>(k) * step * u;
    if ((pt - center).squaredNorm() < radius * radius) ++count;
  }
  return count;
}

}  // namespace

Lattice4 Lattice4::from_entries(double a1, double b1, double c1, double d1, double a2,
                                double b2, double c2, double d2) {
  Eigen::Matrix<double, 4, 2> g;
  g << a1, a2, b1, b2, c1, c2, d1, d2;
  return Lattice4(g);
}

// Rank from the angle between the columns, so that columns of very different
// lengths (e.g. 1e10 and 1e-10) still count as independent.
int Lattice4::rank() const {
  const double n1 = gen.col(0).norm(), n2 = gen.col(1).norm();
  if (n1 == 0.0 && n2 == 0.0) return 0;
  if (n1 == 0.0 || n2 == 0.0) return 1;
  const double sine = std::sqrt(sum_squared_minors(*this)) / (n1 * n2);
  return sine < kRankTolerance ? 1 : 2;
}

bool Lattice2::degenerate() const {
  const double scale = gen.cwiseAbs().maxCoeff();
  return scale == 0.0 || std::abs(gen.determinant()) <= kRankTolerance * scale * scale;
}

// Kahan's 2x2 determinant: ad - bc with one rounding error, even when the
// two products nearly cancel.
double det2(double a, double b, double c, double d) {
  const double w = b * c;
  const double e = std::fma(-b, c, w);
  const double f = std::fma(a, d, -w);
  return f + e;
}

double sum_squared_minors(const Lattice4& lattice) {
  const auto& g = lattice.gen;
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double minor = det2(g(i, 0), g(i, 1), g(j, 0), g(j, 1));
      sum += minor * minor;
    }
  }
  return sum;
}

double two_beurling_density(const Lattice4& lattice) {
  if (lattice.rank() < 2) {
    throw DegenerateLattice("2-density requires a rank-2 generator");
  }
  return 1.0 / std::sqrt(sum_squared_minors(lattice));
}

double beurling_density_2d(const Lattice2& lattice) {
  if (lattice.degenerate()) {
    throw DegenerateLattice("density of a singular 2-d lattice is undefined");
  }
  return 1.0 / std::abs(lattice.gen.determinant());
}

Lattice4 lift_gamma(const Lattice2& gamma) {
  Eigen::Matrix<double, 4, 2> embed;
  embed << 1, 0, 0, 1, 0, 1, 0, 0;
  return Lattice4(embed * gamma.gen);
}

Lattice4 lift_m(const Lattice2& m) {
  Eigen::Matrix<double, 4, 2> embed;
  embed << 0, 0, 0, 0, 1, 0, 0, 1;
  return Lattice4(embed * m.gen);
}

Lattice2 tilde_lattice(const Lattice4& lattice) {
  const auto& g = lattice.gen;
  Eigen::Matrix2d t;
  t << g(0, 0) - g(3, 0), g(0, 1) - g(3, 1),  //
      g(2, 0), g(2, 1);
  return Lattice2(t);
}

bool necessary_condition_holds(const Lattice4& lattice) {
  if (lattice.rank() < 2) throw DegenerateLattice("2-density requires a rank-2 generator");
  // D_2 <= sqrt 2  <=>  sum of squared minors >= 1/2, without the square roots.
  return 2.0 * sum_squared_minors(lattice) >= 1.0;
}

std::int64_t count_points_in_ball(const Lattice4& lattice, double radius,
                                  const Eigen::Vector4d& center) {
  if (!(radius > 0.0)) throw InvalidParams("radius must be positive");
  const int rank = lattice.rank();
  if (rank == 0) throw DegenerateLattice("cannot count points of the zero lattice");
  if (rank == 1) return count_rank_one(lattice, radius, center);

  // Reduce to the lattice plane: |M(v - w)|^2 < R^2 - |z_perp|^2 with z_plane = M w.
  const auto& gen = lattice.gen;
  const Eigen::Matrix2d gram = gen.transpose() * gen;
  const Eigen::Vector2d w = gram.ldlt().solve(gen.transpose() * center);
  const double perp2 = (center - gen * w).squaredNorm();
  const double r2 = radius * radius;
  const double reach2 = r2 - perp2;
  if (reach2 <= 0.0) return 0;

  const double m_extent = std::sqrt(reach2 * gram.inverse()(0, 0));
  const auto m_lo = static_cast<std::int64_t>(std::floor(w(0) - m_extent)) - 1;
  const auto m_hi = static_cast<std::int64_t>(std::ceil(w(0) + m_extent)) + 1;

  auto inside = [&](std::int64_t m, std::int64_t n) {
    return (lattice.point(m, n) - center).squaredNorm() < r2;
  };

  std::int64_t count = 0;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    // |m c1 + n c2 - z|^2 = a n^2 + b n + c.
    const Eigen::Vector4d base = gen.col(0) * static_cast<double>(m) - center;
    const double a = gram(1, 1);
    const double b = 2.0 * base.dot(gen.col(1));
    const double c = base.squaredNorm() - r2;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    auto n_lo = static_cast<std::int64_t>(std::ceil((-b - sq) / (2.0 * a)));
    auto n_hi = static_cast<std::int64_t>(std::floor((-b + sq) / (2.0 * a)));
    // Root rounding can misplace the boundary by one index either way.
    while (inside(m, n_lo - 1)) --n_lo;
    while (n_lo <= n_hi && !inside(m, n_lo)) ++n_lo;
    while (inside(m, n_hi + 1)) ++n_hi;
    while (n_hi >= n_lo && !inside(m, n_hi)) --n_hi;
    if (n_hi >= n_lo) count += n_hi - n_lo + 1;
  }
  return count;
}

}  // namespace tfid
