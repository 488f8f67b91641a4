#include "tfid/opcalc.hpp"

#include "fft.hpp"
#include "tfid/error.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace tfid {

namespace {

std::int64_t dim(const Table& t) { return static_cast<std::int64_t>(t.rows()); }

void require_square(const Table& t) {
  if (t.rows() != t.cols() || t.rows() == 0) {
    throw ShapeMismatch("operator tables must be non-empty and square");
  }
}

Table impulse_from_kernel(const Table& kernel) {
  const std::int64_t L = dim(kernel);
  Table h(L, L);
  for (std::int64_t t = 0; t < L; ++t) {
    for (std::int64_t x = 0; x < L; ++x) h(t, x) = kernel(x, wrap(x - t, L));
  }
  return h;
}

Table kernel_from_impulse(const Table& h) {
  const std::int64_t L = dim(h);
  Table kernel(L, L);
  for (std::int64_t x = 0; x < L; ++x) {
    for (std::int64_t y = 0; y < L; ++y) kernel(x, y) = h(wrap(x - y, L), x);
  }
  return kernel;
}

Table spreading_from_impulse(const Table& h) {
  const std::int64_t L = dim(h);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  Table eta(L, L);
  CVector row(L);
  for (std::int64_t t = 0; t < L; ++t) {
    row = h.row(t).transpose();
    detail::fft_inplace(row.data(), static_cast<std::size_t>(L), detail::FftSign::forward);
    for (std::int64_t v = 0; v < L; ++v) eta(t, v) = scale * unit_root(v * t, L) * row(v);
  }
  return eta;
}

Table impulse_from_spreading(const Table& eta) {
  const std::int64_t L = dim(eta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  Table h(L, L);
  CVector row(L);
  for (std::int64_t t = 0; t < L; ++t) {
    for (std::int64_t v = 0; v < L; ++v) row(v) = unit_root(-v * t, L) * eta(t, v);
    detail::fft_inplace(row.data(), static_cast<std::size_t>(L), detail::FftSign::backward);
    h.row(t) = scale * row.transpose();
  }
  return h;
}

Table symbol_from_impulse(const Table& h) {
  const std::int64_t L = dim(h);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  Table sigma(L, L);
  CVector col(L);
  for (std::int64_t x = 0; x < L; ++x) {
    col = h.col(x);
    detail::fft_inplace(col.data(), static_cast<std::size_t>(L), detail::FftSign::forward);
    sigma.row(x) = scale * col.transpose();
  }
  return sigma;
}

Table impulse_from_symbol(const Table& sigma) {
  const std::int64_t L = dim(sigma);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  Table h(L, L);
  CVector row(L);
  for (std::int64_t x = 0; x < L; ++x) {
    row = sigma.row(x).transpose();
    detail::fft_inplace(row.data(), static_cast<std::size_t>(L), detail::FftSign::backward);
    h.col(x) = scale * row;
  }
  return h;
}

// Kernel-level composition with T_a f(x) = f(x - a) and M_b f(x) = e^{2 pi i b x/L} f(x).
Table left_translate(const Table& k, std::int64_t a) {
  const std::int64_t L = dim(k);
  Table out(L, L);
  for (std::int64_t x = 0; x < L; ++x) out.row(x) = k.row(wrap(x - a, L));
  return out;
}

Table left_modulate(Table k, std::int64_t b) {
  const std::int64_t L = dim(k);
  for (std::int64_t x = 0; x < L; ++x) k.row(x) *= unit_root(b * x, L);
  return k;
}

Table right_translate(const Table& k, std::int64_t a) {
  const std::int64_t L = dim(k);
  Table out(L, L);
  for (std::int64_t y = 0; y < L; ++y) out.col(y) = k.col(wrap(y + a, L));
  return out;
}

Table right_modulate(Table k, std::int64_t b) {
  const std::int64_t L = dim(k);
  for (std::int64_t y = 0; y < L; ++y) k.col(y) *= unit_root(b * y, L);
  return k;
}

Signal translate(const Signal& f, std::int64_t a) { return tf_shift(f, {a, 0}); }
Signal modulate(const Signal& f, std::int64_t b) { return tf_shift(f, {0, b}); }

}  // namespace

Representation parse_representation(const std::string& name) {
  if (name == "kernel") return Representation::kernel;
  if (name == "impulse") return Representation::impulse;
  if (name == "spreading") return Representation::spreading;
  if (name == "kn_symbol") return Representation::kn_symbol;
  throw UnknownKind("unknown representation '" + name + "'");
}

struct HSOperator::Cache {
  std::once_flag impulse_once, spreading_once, symbol_once;
  Table impulse, spreading, symbol;
};

HSOperator::HSOperator(Table kernel)
    : kernel_(std::make_shared<const Table>(std::move(kernel))),
      cache_(std::make_shared<Cache>()) {
  require_square(*kernel_);
}

HSOperator HSOperator::from(const Table& table, Representation rep) {
  return HSOperator(to_kernel(table, rep));
}

const Table& HSOperator::impulse() const {
  std::call_once(cache_->impulse_once,
                 [this] { cache_->impulse = impulse_from_kernel(*kernel_); });
  return cache_->impulse;
}

const Table& HSOperator::spreading() const {
  std::call_once(cache_->spreading_once,
                 [this] { cache_->spreading = spreading_from_impulse(impulse()); });
  return cache_->spreading;
}

const Table& HSOperator::kn_symbol() const {
  std::call_once(cache_->symbol_once,
                 [this] { cache_->symbol = symbol_from_impulse(impulse()); });
  return cache_->symbol;
}

const Table& HSOperator::table(Representation rep) const {
  switch (rep) {
    case Representation::kernel: return kernel();
    case Representation::impulse: return impulse();
    case Representation::spreading: return spreading();
    case Representation::kn_symbol: return kn_symbol();
  }
  return kernel();
}

Table convert(const HSOperator& op, Representation target) { return op.table(target); }

Table to_kernel(const Table& table, Representation source) {
  require_square(table);
  switch (source) {
    case Representation::kernel: return table;
    case Representation::impulse: return kernel_from_impulse(table);
    case Representation::spreading:
      return kernel_from_impulse(impulse_from_spreading(table));
    case Representation::kn_symbol: return kernel_from_impulse(impulse_from_symbol(table));
  }
  return table;
}

cplx hs_inner(const HSOperator& h, const HSOperator& k) {
  if (h.size() != k.size()) throw LengthMismatch("operators act on different spaces");
  return (k.kernel().conjugate().cwiseProduct(h.kernel())).sum();
}

Signal apply(const HSOperator& op, const Signal& f) {
  if (op.size() != f.len()) throw LengthMismatch("operator and signal sizes differ");
  return Signal(op.kernel() * f.data());
}

Signal apply_spreading(const Table& eta, const Signal& f) {
  require_square(eta);
  const std::int64_t L = dim(eta);
  if (static_cast<std::size_t>(L) != f.len()) {
    throw LengthMismatch("spreading table and signal sizes differ");
  }
  CVector out = CVector::Zero(L);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  CVector row(L);
  for (std::int64_t t = 0; t < L; ++t) {
    // sum_v eta(t, v) e^{2 pi i v u / L} for u = x - t, as a backward DFT in v.
    row = eta.row(t).transpose();
    detail::fft_inplace(row.data(), static_cast<std::size_t>(L), detail::FftSign::backward);
    for (std::int64_t x = 0; x < L; ++x) {
      const std::int64_t u = wrap(x - t, L);
      out(x) += scale * row(u) * f.data()(u);
    }
  }
  return Signal(std::move(out));
}

Table shift_spreading(const Table& eta, Lambda4 lambda) {
  require_square(eta);
  const std::int64_t L = dim(eta);
  const Lambda4 r = lambda.reduced(L);
  Table out(L, L);
  for (std::int64_t t = 0; t < L; ++t) {
    const std::int64_t ts = wrap(t - r.s, L);
    for (std::int64_t v = 0; v < L; ++v) {
      const std::int64_t vs = wrap(v - r.omega, L);
      out(t, v) = unit_root(r.z * ts + r.y * vs, L) * eta(ts, vs);
    }
  }
  return out;
}

HSOperator family_member(const HSOperator& h0, Lambda4 lambda) {
  return HSOperator::from(shift_spreading(h0.spreading(), lambda), Representation::spreading);
}

HSOperator family_member_factored(const HSOperator& h0, Lambda4 lambda) {
  const std::int64_t L = static_cast<std::int64_t>(h0.size());
  const Lambda4 r = lambda.reduced(L);
  Table k = right_translate(h0.kernel(), r.y);
  k = right_modulate(std::move(k), r.omega - r.z);
  k = left_translate(k, -r.y);
  k = left_modulate(std::move(k), r.z);
  k = left_translate(k, r.s);
  return HSOperator(std::move(k));
}

Signal apply_family_member(const HSOperator& h0, Lambda4 lambda, const Signal& f) {
  const std::int64_t L = static_cast<std::int64_t>(h0.size());
  if (f.len() != h0.size()) throw LengthMismatch("operator and signal sizes differ");
  const Lambda4 r = lambda.reduced(L);
  Signal v = translate(modulate(f, r.omega - r.z), r.y);
  v = apply(h0, v);
  return translate(modulate(translate(v, -r.y), r.z), r.s);
}

H0Kind parse_h0_kind(const std::string& name) {
  if (name == "gauss_kernel") return H0Kind::gauss_kernel;
  if (name == "opw_box") return H0Kind::opw_box;
  if (name == "prod_conv") return H0Kind::prod_conv;
  if (name == "rank_one") return H0Kind::rank_one;
  throw UnknownKind("unknown H0 kind '" + name + "'");
}

HSOperator make_h0(H0Kind kind, std::size_t len, const H0Params& params) {
  if (len == 0) throw InvalidParams("operator size must be positive");
  const auto L = static_cast<std::int64_t>(len);
  switch (kind) {
    case H0Kind::gauss_kernel: {
      CVector u(L);
      for (std::int64_t x = 0; x < L; ++x) {
        const auto xs = static_cast<double>(symmetric(x, L));
        u(x) = std::exp(-std::numbers::pi * xs * xs / static_cast<double>(L));
      }
      return HSOperator(u * u.transpose());
    }
    case H0Kind::opw_box: {
      if (params.box_time < 1 || params.box_time > L || params.box_freq < 1 ||
          params.box_freq > L) {
        throw InvalidParams("box sides must lie in [1, L]");
      }
      Table eta = Table::Zero(L, L);
      eta.topLeftCorner(params.box_time, params.box_freq).setOnes();
      return HSOperator::from(eta, Representation::spreading);
    }
    case H0Kind::prod_conv: {
      if (params.rho.len() != len || params.r.len() != len) {
        throw InvalidParams("prod_conv needs rho and r of length L");
      }
      Table k(L, L);
      for (std::int64_t x = 0; x < L; ++x) {
        for (std::int64_t y = 0; y < L; ++y) k(x, y) = params.rho[x] * params.r[x - y];
      }
      return HSOperator(std::move(k));
    }
    case H0Kind::rank_one: {
      if (params.h.len() != len || params.g0.len() != len) {
        throw InvalidParams("rank_one needs h and g0 of length L");
      }
      Table eta = stft(params.g0, params.h) / std::sqrt(static_cast<double>(L));
      return HSOperator::from(eta, Representation::spreading);
    }
  }
  throw UnknownKind("unhandled H0 kind");
}

}  // namespace tfid
