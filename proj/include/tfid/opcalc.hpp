#pragma once

#include "tfid/tfcore.hpp"

#include <memory>
#include <string>

namespace tfid {

/// The four equivalent descriptions of an operator on C^L.
///   kernel     k(x, y):   Hf(x) = sum_y k(x, y) f(y)
///   impulse    h(t, x) = k(x, x - t)
///   spreading  eta(t, v): Hf(x) = L^{-1/2} sum_{t,v} eta(t, v) e^{2 pi i v (x-t)/L} f(x-t)
///   kn_symbol  sigma(x, xi) = L^{-1/2} sum_t h(t, x) e^{-2 pi i xi t / L}
/// All transforms are unitary, so every table has Frobenius norm ||H||_HS.
enum class Representation { kernel, impulse, spreading, kn_symbol };

Representation parse_representation(const std::string& name);

/// Hilbert-Schmidt operator stored by its kernel. The other tables are
/// derived on first access and shared between copies.
class HSOperator {
 public:
  explicit HSOperator(Table kernel);

  static HSOperator from(const Table& table, Representation rep);

  std::size_t size() const { return static_cast<std::size_t>(kernel_->rows()); }
  const Table& kernel() const { return *kernel_; }
  const Table& impulse() const;
  const Table& spreading() const;
  const Table& kn_symbol() const;
  const Table& table(Representation rep) const;

  double hs_norm() const { return kernel_->norm(); }

 private:
  struct Cache;
  std::shared_ptr<const Table> kernel_;
  std::shared_ptr<Cache> cache_;
};

/// Copy of the operator's table in the requested representation.
Table convert(const HSOperator& op, Representation target);

/// Kernel from any one of the four tables.
Table to_kernel(const Table& table, Representation source);

/// <H, K>_HS computed from the kernels.
cplx hs_inner(const HSOperator& h, const HSOperator& k);

Signal apply(const HSOperator& op, const Signal& f);

/// Evaluates H f directly from the spreading table (no kernel).
Signal apply_spreading(const Table& eta, const Signal& f);

/// Four-parameter shift lambda = (s, omega, z, y) acting on spreading
/// functions by translation (s, omega) and modulation (z, y).
struct Lambda4 {
  std::int64_t s = 0;
  std::int64_t omega = 0;
  std::int64_t z = 0;
  std::int64_t y = 0;

  Lambda4 reduced(std::int64_t L) const {
    return {wrap(s, L), wrap(omega, L), wrap(z, L), wrap(y, L)};
  }
  Lambda4 operator+(const Lambda4& o) const {
    return {s + o.s, omega + o.omega, z + o.z, y + o.y};
  }
  friend bool operator==(const Lambda4&, const Lambda4&) = default;
};

/// out(t, v) = e^{2 pi i (z (t-s) + y (v-omega)) / L} eta(t-s, v-omega).
Table shift_spreading(const Table& eta, Lambda4 lambda);

/// Operator with spreading function shift_spreading(eta_0, lambda).
HSOperator family_member(const HSOperator& h0, Lambda4 lambda);

/// T_s M_z T_{-y} H0 T_y M_{omega-z}, assembled from shift operators.
HSOperator family_member_factored(const HSOperator& h0, Lambda4 lambda);

/// family_member(h0, lambda) applied to f in O(L^2), through the factored form.
Signal apply_family_member(const HSOperator& h0, Lambda4 lambda, const Signal& f);

enum class H0Kind { gauss_kernel, opw_box, prod_conv, rank_one };

H0Kind parse_h0_kind(const std::string& name);

/// Parameters for make_h0; which fields are read depends on the kind.
///   opw_box:   box_time, box_freq
///   prod_conv: rho, r
///   rank_one:  h, g0
struct H0Params {
  std::int64_t box_time = 1;
  std::int64_t box_freq = 1;
  Signal rho;
  Signal r;
  Signal h;
  Signal g0;
};

/// Catalog operators:
///   gauss_kernel  k(x, y) = e^{-pi (x^2 + y^2) / L} on symmetric representatives
///   opw_box       eta = indicator of [0, box_time) x [0, box_freq)
///   prod_conv     H f = rho . (f * r)
///   rank_one      eta = L^{-1/2} V_h g0, so that H f = <f, h> g0 when |h| = 1
HSOperator make_h0(H0Kind kind, std::size_t L, const H0Params& params = {});

}  // namespace tfid
