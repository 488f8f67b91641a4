#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace tfid {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
/// L x L complex table; the meaning of the two axes depends on context.
using Table = Eigen::MatrixXcd;

/// Least nonnegative residue of x modulo L.
inline std::int64_t wrap(std::int64_t x, std::int64_t L) {
  const std::int64_t r = x % L;
  return r < 0 ? r + L : r;
}

/// Symmetric representative of x mod L in [-L/2, L/2).
inline std::int64_t symmetric(std::int64_t x, std::int64_t L) {
  const std::int64_t r = wrap(x, L);
  return 2 * r < L ? r : r - L;
}

/// e^{2 pi i n / L}, with n reduced before the float conversion.
cplx unit_root(std::int64_t n, std::int64_t L);

/// Complex signal on the cyclic group Z_L.
class Signal {
 public:
  Signal() = default;
  explicit Signal(std::size_t len) : data_(CVector::Zero(static_cast<Eigen::Index>(len))) {}
  explicit Signal(CVector data) : data_(std::move(data)) {}

  std::size_t len() const { return static_cast<std::size_t>(data_.size()); }
  const CVector& data() const { return data_; }
  cplx operator[](std::int64_t x) const {
    return data_(wrap(x, static_cast<std::int64_t>(len())));
  }
  double norm() const { return data_.norm(); }

 private:
  CVector data_;
};

/// Time-frequency index (k, l): time shift k, frequency shift l.
struct TFIndex {
  std::int64_t k = 0;
  std::int64_t l = 0;

  TFIndex reduced(std::int64_t L) const { return {wrap(k, L), wrap(l, L)}; }
  friend bool operator==(const TFIndex&, const TFIndex&) = default;
};

/// <f, g> = sum f(x) conj(g(x)); linear in the first argument.
cplx inner(const CVector& f, const CVector& g);

/// T_k M_l f(x) = e^{2 pi i l (x-k)/L} f(x-k).
Signal tf_shift(const Signal& f, TFIndex lambda);

/// Unitary DFT, F(xi) = L^{-1/2} sum_x f(x) e^{-2 pi i x xi / L}.
Signal dft(const Signal& f);
Signal idft(const Signal& f);

/// V(k, l) = <f, T_k M_l window>. Rows index time k, columns frequency l.
Table stft(const Signal& f, const Signal& window);

/// Z(q, j) = b^{-1/2} sum_r f(q + r a) e^{-2 pi i r j / b}, b = L / a.
Table zak(const Signal& f, std::int64_t a);

enum class WindowKind { char_box, gauss, delta_train, chirp, random_unit };

WindowKind parse_window_kind(const std::string& name);
std::string to_string(WindowKind kind);

/// Parameters for make_window. `a` is the box length or train period,
/// `chirp_rate` the chirp constant c, `seed` drives random_unit.
struct WindowParams {
  std::int64_t a = 1;
  double chirp_rate = 1.0;
  std::uint64_t seed = 0;
};

/// Catalog windows: char_box(a) = a^{-1/2} chi_[0,a); gauss = unit-norm
/// periodized e^{-pi x^2 / L}; delta_train(a) = sum_n delta_{na};
/// chirp(c) = e^{pi i c x^2 / L}; random_unit(seed).
Signal make_window(WindowKind kind, std::size_t L, const WindowParams& params = {});

struct ModNorms {
  double m_inf = 0.0;
  double m_1s = 0.0;
};

/// Discrete weighted M^inf and M^1_s norms of f with respect to the window,
/// using v_s(z) = (1 + |z|/sqrt(L))^s on symmetric representatives.
ModNorms mod_norms(const Signal& f, const Signal& window, double s);

/// sum_j |c_j| (1 + |p_j|)^s, where p_j is column j of `points`.
double seq_norm_l1s(const CVector& coefficients, const Eigen::MatrixXd& points, double s);

/// Divisors of L in increasing order.
std::vector<std::int64_t> divisors(std::int64_t L);

}  // namespace tfid
