#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace tfid {

/// Rank-<=2 lattice M Z^2 in R^4. Column j of `gen` is (a_j, b_j, c_j, d_j).
struct Lattice4 {
  Eigen::Matrix<double, 4, 2> gen = Eigen::Matrix<double, 4, 2>::Zero();

  Lattice4() = default;
  explicit Lattice4(const Eigen::Matrix<double, 4, 2>& g) : gen(g) {}

  /// Builds from the row-wise listing a1,b1,c1,d1,a2,b2,c2,d2.
  static Lattice4 from_entries(double a1, double b1, double c1, double d1, double a2,
                               double b2, double c2, double d2);

  Eigen::Vector4d point(std::int64_t m, std::int64_t n) const {
    return gen.col(0) * static_cast<double>(m) + gen.col(1) * static_cast<double>(n);
  }
  int rank() const;
};

/// Lattice G Z^2 in R^2. Column j of `gen` is (a_j, b_j), so that
/// gen = [[a1, a2], [b1, b2]].
struct Lattice2 {
  Eigen::Matrix2d gen = Eigen::Matrix2d::Zero();

  Lattice2() = default;
  explicit Lattice2(const Eigen::Matrix2d& g) : gen(g) {}

  bool degenerate() const;
};

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Sum of squares of the six 2x2 minors of the generator.
double sum_squared_minors(const Lattice4& lattice);

/// Points per unit 2-area of a rank-2 lattice in R^4.
/// Throws DegenerateLattice when the rank is below 2.
double two_beurling_density(const Lattice4& lattice);

/// |det G|^-1. Throws DegenerateLattice when G is singular.
double beurling_density_2d(const Lattice2& lattice);

/// Embeds Gamma into the tilted plane {(t, v, v, 0)}.
Lattice4 lift_gamma(const Lattice2& gamma);

/// Embeds M into the modulation plane {(0, 0, z, y)}.
Lattice4 lift_m(const Lattice2& m);

/// Lattice with generator [[a1 - d1, a2 - d2], [c1, c2]] used to localize
/// the time-frequency shifts acting on the identifier.
Lattice2 tilde_lattice(const Lattice4& lattice);

/// Returns true iff the 2-density does not exceed sqrt(2).
bool necessary_condition_holds(const Lattice4& lattice);

/// Number of distinct points of M Z^2 in the open ball of radius R about z.
std::int64_t count_points_in_ball(const Lattice4& lattice, double radius,
                                  const Eigen::Vector4d& center = Eigen::Vector4d::Zero());

}  // namespace tfid
