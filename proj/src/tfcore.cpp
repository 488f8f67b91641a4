#include "tfid/tfcore.hpp"

#include "fft.hpp"
#include "tfid/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace tfid {

namespace {

std::int64_t ssize(const Signal& f) { return static_cast<std::int64_t>(f.len()); }

void require_same_length(const Signal& f, const Signal& g) {
  if (f.len() != g.len()) {
    throw LengthMismatch("signal lengths differ: " + std::to_string(f.len()) + " vs " +
                         std::to_string(g.len()));
  }
}

void require_divisor(std::int64_t a, std::int64_t L) {
  if (a <= 0 || L % a != 0) {
    throw NotADivisor(std::to_string(a) + " does not divide " + std::to_string(L));
  }
}

}  // namespace

cplx unit_root(std::int64_t n, std::int64_t L) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(wrap(n, L)) /
                             static_cast<double>(L));
}

cplx inner(const CVector& f, const CVector& g) {
  // Eigen's dot() conjugates its first argument.
  return g.dot(f);
}

Signal tf_shift(const Signal& f, TFIndex lambda) {
  const std::int64_t L = ssize(f);
  const TFIndex r = lambda.reduced(L);
  CVector out(L);
  for (std::int64_t x = 0; x < L; ++x) {
    const std::int64_t u = wrap(x - r.k, L);
    out(x) = unit_root(r.l * u, L) * f.data()(u);
  }
  return Signal(std::move(out));
}

Signal dft(const Signal& f) {
  CVector out = f.data();
  detail::fft_inplace(out.data(), f.len(), detail::FftSign::forward);
  out /= std::sqrt(static_cast<double>(f.len()));
  return Signal(std::move(out));
}

Signal idft(const Signal& f) {
  CVector out = f.data();
  detail::fft_inplace(out.data(), f.len(), detail::FftSign::backward);
  out /= std::sqrt(static_cast<double>(f.len()));
  return Signal(std::move(out));
}

Table stft(const Signal& f, const Signal& window) {
  require_same_length(f, window);
  const std::int64_t L = ssize(f);
  Table V(L, L);
  CVector w(L);
  for (std::int64_t k = 0; k < L; ++k) {
    for (std::int64_t x = 0; x < L; ++x) {
      w(x) = f.data()(x) * std::conj(window.data()(wrap(x - k, L)));
    }
    detail::fft_inplace(w.data(), f.len(), detail::FftSign::forward);
    for (std::int64_t l = 0; l < L; ++l) V(k, l) = unit_root(l * k, L) * w(l);
  }
  return V;
}

Table zak(const Signal& f, std::int64_t a) {
  const std::int64_t L = ssize(f);
  require_divisor(a, L);
  const std::int64_t b = L / a;
  const double scale = 1.0 / std::sqrt(static_cast<double>(b));
  Table Z(a, b);
  CVector seq(b);
  for (std::int64_t q = 0; q < a; ++q) {
    for (std::int64_t r = 0; r < b; ++r) seq(r) = f.data()(q + r * a);
    detail::fft_inplace(seq.data(), static_cast<std::size_t>(b), detail::FftSign::forward);
    Z.row(q) = seq.transpose() * scale;
  }
  return Z;
}

WindowKind parse_window_kind(const std::string& name) {
  if (name == "char_box") return WindowKind::char_box;
  if (name == "gauss") return WindowKind::gauss;
  if (name == "delta_train") return WindowKind::delta_train;
  if (name == "chirp") return WindowKind::chirp;
  if (name == "random_unit") return WindowKind::random_unit;
  throw UnknownKind("unknown window kind '" + name + "'");
}

std::string to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::char_box: return "char_box";
    case WindowKind::gauss: return "gauss";
    case WindowKind::delta_train: return "delta_train";
    case WindowKind::chirp: return "chirp";
    case WindowKind::random_unit: return "random_unit";
  }
  return "unknown";
}

Signal make_window(WindowKind kind, std::size_t len, const WindowParams& params) {
  if (len == 0) throw InvalidParams("window length must be positive");
  const auto L = static_cast<std::int64_t>(len);
  CVector out = CVector::Zero(L);
  switch (kind) {
    case WindowKind::char_box: {
      require_divisor(params.a, L);
      out.head(params.a).setConstant(1.0 / std::sqrt(static_cast<double>(params.a)));
      break;
    }
    case WindowKind::gauss: {
      for (std::int64_t x = 0; x < L; ++x) {
        const auto xs = static_cast<double>(symmetric(x, L));
        out(x) = std::exp(-std::numbers::pi * xs * xs / static_cast<double>(L));
      }
      out.normalize();
      break;
    }
    case WindowKind::delta_train: {
      require_divisor(params.a, L);
      for (std::int64_t x = 0; x < L; x += params.a) out(x) = 1.0;
      break;
    }
    case WindowKind::chirp: {
      for (std::int64_t x = 0; x < L; ++x) {
        const auto xd = static_cast<double>(x);
        out(x) = std::polar(1.0, std::numbers::pi * params.chirp_rate * xd * xd /
                                     static_cast<double>(L));
      }
      break;
    }
    case WindowKind::random_unit: {
      std::mt19937_64 rng(params.seed);
      std::normal_distribution<double> normal;
      for (std::int64_t x = 0; x < L; ++x) out(x) = cplx(normal(rng), normal(rng));
      out.normalize();
      break;
    }
  }
  return Signal(std::move(out));
}

ModNorms mod_norms(const Signal& f, const Signal& window, double s) {
  require_same_length(f, window);
  const std::int64_t L = ssize(f);
  const Table V = stft(f, window);
  const double root_l = std::sqrt(static_cast<double>(L));
  ModNorms out;
  for (std::int64_t k = 0; k < L; ++k) {
    for (std::int64_t l = 0; l < L; ++l) {
      const auto zk = static_cast<double>(symmetric(k, L));
      const auto zl = static_cast<double>(symmetric(l, L));
      const double weight = std::pow(1.0 + std::hypot(zk, zl) / root_l, s);
      const double value = std::abs(V(k, l)) * weight;
      out.m_inf = std::max(out.m_inf, value);
      out.m_1s += value;
    }
  }
  return out;
}

double seq_norm_l1s(const CVector& coefficients, const Eigen::MatrixXd& points, double s) {
  if (points.cols() != coefficients.size()) {
    throw LengthMismatch("one lattice point per coefficient is required");
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < coefficients.size(); ++j) {
    sum += std::abs(coefficients(j)) * std::pow(1.0 + points.col(j).norm(), s);
  }
  return sum;
}

std::vector<std::int64_t> divisors(std::int64_t L) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= L; ++d) {
    if (L % d == 0) out.push_back(d);
  }
  return out;
}

}  // namespace tfid
