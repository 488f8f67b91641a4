#include "tfid/error.hpp"
#include "tfid/identify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tfid;

namespace {

Signal random_signal(std::int64_t L, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CVector v(L);
  for (auto& x : v) x = cplx(n(rng), n(rng));
  return Signal(v);
}

Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(n(rng), n(rng));
  return m;
}

std::vector<Lambda4> random_points(std::size_t count, std::int64_t L, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> u(0, L - 1);
  std::vector<Lambda4> out;
  while (out.size() < count) {
    const Lambda4 p{u(rng), u(rng), u(rng), u(rng)};
    bool fresh = true;
    for (const auto& q : out) fresh = fresh && !(q.s == p.s && q.omega == p.omega && q.z == p.z && q.y == p.y);
    if (fresh) out.push_back(p);
  }
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
}

}  // namespace

TEST_CASE("riesz_bounds") {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXcd q = random_matrix(12, 5, rng).householderQr().householderQ() *
                             Eigen::MatrixXcd::Identity(12, 5);
  const RieszBounds onb = riesz_bounds(q);
  CHECK(onb.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(onb.upper == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXcd repeated = random_matrix(8, 3, rng);
  repeated.col(2) = repeated.col(0);
  CHECK(riesz_bounds(repeated).lower < 1e-20);
  CHECK(riesz_bounds(random_matrix(4, 6, rng)).lower == 0.0);

  CHECK_THROWS_AS(riesz_bounds(std::vector<Signal>{}), EmptyFamily);
  CHECK_THROWS_AS(riesz_bounds(std::vector<Signal>{Signal(4), Signal(5)}), LengthMismatch);

  // Unitary invariance.
  const Eigen::MatrixXcd m = random_matrix(10, 4, rng);
  const Eigen::MatrixXcd u = random_matrix(10, 10, rng).householderQr().householderQ();
  const RieszBounds before = riesz_bounds(m), after = riesz_bounds(Eigen::MatrixXcd(u * m));
  CHECK(after.lower == doctest::Approx(before.lower).epsilon(1e-12));
  CHECK(after.upper == doctest::Approx(before.upper).epsilon(1e-12));
  CHECK(before.lower <= before.upper);
}

TEST_CASE("box bases are orthonormal") {
  for (const std::size_t L : {16u, 24u, 64u}) {
    for (const auto a : divisors(static_cast<std::int64_t>(L))) {
      const GaborSystem sys = box_basis(L, a);
      CHECK(sys.indices.size() == L);
      const RieszBounds b = riesz_bounds(sys.atoms());
      CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(default_analysis(64).indices.size() == 64);
  CHECK(default_analysis(64).indices[1].l == 8);
}

TEST_CASE("response_family") {
  std::mt19937_64 rng(2);
  const std::int64_t L = 12;
  const HSOperator h0(random_matrix(L, L, rng));
  const Signal g = random_signal(L, rng);

  const auto single = response_family(h0, {Lambda4{}}, g);
  REQUIRE(single.size() == 1);
  CHECK((single[0].data() - apply(h0, g).data()).norm() < 1e-12 * single[0].norm());

  const auto pts = random_points(10, L, rng);
  const auto resp = response_family(h0, pts, g);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    CHECK(resp[j].norm() <= h0.hs_norm() * g.norm() * (1 + 1e-12));
    const Signal direct = apply(family_member(h0, pts[j]), g);
    CHECK((resp[j].data() - direct.data()).norm() < 1e-10 * direct.norm());
  }
  CHECK_THROWS_AS(response_family(h0, pts, Signal(L + 1)), LengthMismatch);

  // Rank-one operator with g orthogonal to h answers with zeros on points
  // that only shift the output side.
  const Signal h(CVector::Unit(L, 0)), g_perp(CVector::Unit(L, 1));
  H0Params params;
  params.h = h;
  params.g0 = random_signal(L, rng);
  const HSOperator rank1 = make_h0(H0Kind::rank_one, L, params);
  std::vector<Lambda4> output_side;
  for (const auto& p : pts) output_side.push_back({p.s, p.omega, p.omega, 0});
  for (const auto& r : response_family(rank1, output_side, g_perp)) CHECK(r.norm() < 1e-12);
}

TEST_CASE("identification_matrix") {
  std::mt19937_64 rng(3);
  const std::int64_t L = 16;
  IdentificationProblem p{HSOperator(random_matrix(L, L, rng)), random_points(6, L, rng),
                          Signal(L), default_analysis(L), std::nullopt};
  CHECK(identification_matrix(p).cwiseAbs().maxCoeff() == 0.0);

  // Entry definition.
  p.identifier = random_signal(L, rng);
  const Eigen::MatrixXcd A = identification_matrix(p);
  CHECK(A.rows() == 16);
  CHECK(A.cols() == 6);
  const auto resp = response_family(p.h0, p.lattice_points, p.identifier);
  const auto atoms = p.analysis.atoms();
  for (int i : {0, 5, 15})
    for (int j : {0, 3, 5}) CHECK(std::abs(A(i, j) - inner(resp[j].data(), atoms[i].data())) < 1e-12);

  // Orthonormal analysis: sigma(A)^2 are the response Riesz bounds.
  const Eigen::VectorXd s = singular_values(A);
  const RieszBounds rb = riesz_bounds(resp);
  CHECK(s(0) * s(0) == doctest::Approx(rb.upper).epsilon(1e-10));
  CHECK(s(s.size() - 1) * s(s.size() - 1) == doctest::Approx(rb.lower).epsilon(1e-10));

  p.identifier = Signal(L + 1);
  CHECK_THROWS_AS(identification_matrix(p), LengthMismatch);
}

TEST_CASE("enlarging the point set never raises the lower bounds") {
  std::mt19937_64 rng(4);
  const std::int64_t L = 16;
  const HSOperator h0(random_matrix(L, L, rng));
  const Signal g = random_signal(L, rng);
  const auto pts = random_points(14, L, rng);
  double prev_spread = INFINITY, prev_resp = INFINITY;
  for (std::size_t k = 1; k <= pts.size(); ++k) {
    const std::vector<Lambda4> sub(pts.begin(), pts.begin() + static_cast<long>(k));
    const double spread = riesz_bounds(spreading_family(h0, sub)).lower;
    const double resp = riesz_bounds(response_family(h0, sub, g)).lower;
    CHECK(spread <= prev_spread * (1 + 1e-10));
    CHECK(resp <= prev_resp * (1 + 1e-10));
    prev_spread = spread;
    prev_resp = resp;
  }
}

TEST_CASE("recover_coefficients") {
  std::mt19937_64 rng(5);
  const CVector v = random_signal(6, rng).data();
  const Recovery id = recover_coefficients(Eigen::MatrixXcd::Identity(6, 6), v);
  CHECK((id.coefficients - v).norm() < 1e-15 * v.norm());
  CHECK(id.condition == doctest::Approx(1.0));

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd A = random_matrix(20, 8, rng);
    const CVector c = random_signal(8, rng).data();
    const Recovery r = recover_coefficients(A, A * c);
    CHECK((r.coefficients - c).norm() < 1e-8 * c.norm());
    CHECK(r.residual < 1e-10);
  }

  Eigen::MatrixXcd zero_col = random_matrix(8, 4, rng);
  zero_col.col(2).setZero();
  CHECK_THROWS_AS(recover_coefficients(zero_col, random_signal(8, rng).data()), NotIdentifiable);
  CHECK_THROWS_AS(recover_coefficients(random_matrix(3, 5, rng), random_signal(3, rng).data()),
                  ShapeMismatch);
  CHECK_THROWS_AS(recover_coefficients(random_matrix(5, 3, rng), random_signal(4, rng).data()),
                  ShapeMismatch);
}

TEST_CASE("rank_one_response") {
  std::mt19937_64 rng(6);
  const std::int64_t L = 16;
  Signal h(random_signal(L, rng).data().normalized());
  const Signal g_lambda = random_signal(L, rng);

  Signal perp = random_signal(L, rng);
  perp = Signal(perp.data() - h.data() * inner(perp.data(), h.data()));
  CHECK(rank_one_response(h, g_lambda, perp).norm() < 1e-12 * g_lambda.norm());
  CHECK((rank_one_response(h, g_lambda, h).data() - g_lambda.data()).norm() < 1e-12 * g_lambda.norm());
  CHECK_THROWS_AS(rank_one_response(h, g_lambda, Signal(L - 1)), LengthMismatch);

  for (int trial = 0; trial < 10; ++trial) {
    h = Signal(random_signal(L, rng).data().normalized());
    const Signal gl = random_signal(L, rng), g = random_signal(L, rng);
    H0Params params;
    params.h = h;
    params.g0 = gl;
    const Signal full = apply(make_h0(H0Kind::rank_one, L, params), g);
    CHECK((rank_one_response(h, gl, g).data() - full.data()).norm() < 1e-10 * full.norm());
  }
}

TEST_CASE("rank-one family with biorthogonal analysis is diagonal") {
  std::mt19937_64 rng(7);
  const std::int64_t L = 16, a = 4, b = 8;  // 8 points in the subgroup aZ x bZ
  Signal h(random_signal(L, rng).data().normalized());
  const Signal g0 = random_signal(L, rng);
  H0Params params;
  params.h = h;
  params.g0 = g0;

  std::vector<TFIndex> shifts;
  std::vector<Lambda4> points;
  for (std::int64_t k = 0; k < L; k += a)
    for (std::int64_t l = 0; l < L; l += b) {
      shifts.push_back({k, l});
      points.push_back({k, l, l, 0});  // H_lambda g = pi(k, l) g0 <g, h>
    }

  // Dual window S^+ g0 with S the frame operator of the Gabor family.
  Eigen::MatrixXcd gabor(L, static_cast<Eigen::Index>(shifts.size()));
  for (std::size_t j = 0; j < shifts.size(); ++j) gabor.col(j) = tf_shift(g0, shifts[j]).data();
  const Eigen::MatrixXcd frame_op = gabor * gabor.adjoint();
  const Eigen::MatrixXcd pinv = frame_op.completeOrthogonalDecomposition().pseudoInverse();
  const Signal dual(pinv * g0.data());

  const Signal g = random_signal(L, rng);
  const IdentificationProblem p{make_h0(H0Kind::rank_one, L, params), points, g,
                                GaborSystem{dual, shifts}, std::nullopt};
  const Eigen::MatrixXcd A = identification_matrix(p);
  const cplx scale = inner(g.data(), h.data());
  const Eigen::MatrixXcd off = A - scale * Eigen::MatrixXcd::Identity(A.rows(), A.cols());
  CHECK(off.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(scale) > 0.1);
}

TEST_CASE("identify_report") {
  std::mt19937_64 rng(8);
  const std::int64_t L = 16;
  IdentificationProblem p{HSOperator(random_matrix(L, L, rng)), random_points(5, L, rng),
                          Signal(L), default_analysis(L), std::nullopt};
  const IdentificationReport zero = identify_report(p);
  CHECK(zero.response.lower == 0.0);
  CHECK_FALSE(zero.identifiable);
  CHECK(std::isnan(zero.recovery_error));
  CHECK(zero.spreading.lower > 0.0);
  CHECK(zero.num_points == 5);

  p.identifier = random_signal(L, rng);
  p.generator = Lattice4::from_entries(1, 0, 0, 0, 0, 1, 1, 0);
  const IdentificationReport r = identify_report(p, {.trials = 3, .seed = 1});
  CHECK(r.identifiable);
  CHECK(r.recovery_error < 1e-10);
  CHECK(r.response.lower <= r.response.upper);
  CHECK(r.condition >= 1.0);
  REQUIRE(r.density_2.has_value());
  CHECK(*r.density_2 == doctest::Approx(1.0 / std::sqrt(2.0)));
  REQUIRE(r.density_tilde.has_value());
  CHECK(*r.density_tilde == doctest::Approx(1.0));
}
