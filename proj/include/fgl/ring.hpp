#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "fgl/error.hpp"

namespace fgl {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Parameters of E = W(F_{p^m})[[u_1..u_{n-1}]] / (p^N, u-degree > M).
struct RingDescriptor {
  u64 p = 2;
  int m = 1;
  // Monic, lowest coefficient first, length m + 1.
  std::vector<i64> witt_poly{0, 1};
  int n = 1;
  int prec_p = 1;
  int trunc_u = 0;

  bool operator==(const RingDescriptor&) const = default;
};

// Lifts of a fixed irreducible polynomial of degree m over F_p: a Conway
// polynomial when known, else the first irreducible in lexicographic order.
std::vector<i64> default_witt_poly(u64 p, int m);

RingDescriptor make_descriptor(u64 p, int m, int n, int prec_p, int trunc_u);

constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

// Immutable per-descriptor tables: monomials, products, the Witt Frobenius.
// Elements are flat arrays of stride() words: for each u-monomial (graded-lex
// order) m residues mod p^N, the coefficients of 1, w, ..., w^{m-1}.
class RingContext {
 public:
  static std::shared_ptr<const RingContext> create(const RingDescriptor& desc);

  const RingDescriptor& desc() const { return desc_; }
  u64 p() const { return desc_.p; }
  int m() const { return desc_.m; }
  int n() const { return desc_.n; }
  int nvars() const { return desc_.n - 1; }
  int prec_p() const { return desc_.prec_p; }
  int trunc_u() const { return desc_.trunc_u; }
  u64 modulus() const { return q_; }

  int num_monomials() const { return static_cast<int>(mon_deg_.size()); }
  int stride() const { return stride_; }
  int monomial_degree(int idx) const { return mon_deg_[idx]; }
  const int* monomial_exponents(int idx) const { return &mon_exp_[static_cast<size_t>(idx) * nvars()]; }
  // -1 when the exponent vector exceeds the u-truncation.
  int monomial_index(const std::vector<int>& exps) const;
  // Index of u^a * u^b or -1 if truncated.
  int monomial_product(int a, int b) const { return mon_prod_[static_cast<size_t>(a) * num_monomials() + b]; }

  u64 addm(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  u64 subm(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }
  u64 mulm(u64 a, u64 b) const { return (a * b) % q_; }
  u64 negm(u64 a) const { return a == 0 ? 0 : q_ - a; }
  u64 reduce_signed(i64 v) const;
  // p-adic valuation of a residue mod p^N (N for zero).
  int valuation(u64 a) const;

  void add_into(u64* out, const u64* a) const;
  void sub_into(u64* out, const u64* a) const;
  void neg_inplace(u64* a) const;
  void scale_into(u64* out, const u64* a, u64 c) const;  // out += c*a
  // out += a*b for full elements.
  void mul_acc(const u64* a, const u64* b, u64* out) const;
  void mul(const u64* a, const u64* b, u64* out) const;
  // out += s*a where s is a Witt scalar (m words).
  void witt_scale_acc(const u64* s, const u64* a, u64* out) const;
  bool is_zero(const u64* a) const;
  bool is_unit(const u64* a) const;
  int order(const u64* a) const;

  // Witt scalar helpers, m words each.
  void witt_mul(const u64* a, const u64* b, u64* out) const;
  bool witt_inverse(const u64* a, u64* out) const;
  // sigma^j(w^i) for 0 <= j < m, 0 <= i < m.
  const u64* frobenius_power_of_w(int j, int i) const {
    return &frob_[(static_cast<size_t>(j) * m() + i) * m()];
  }
  void witt_frobenius(const u64* a, int j, u64* out) const;

  // Residue field F_{p^m} = F_p[w]/(witt_poly mod p).
  void residue_mul(const u64* a, const u64* b, u64* out) const;
  bool residue_inverse(const u64* a, u64* out) const;

 private:
  explicit RingContext(const RingDescriptor& desc);
  void build_monomials();
  void build_frobenius();
  void witt_reduce(u64* acc) const;  // acc has 2m-1 words, result in first m

  RingDescriptor desc_;
  u64 q_ = 1;
  int stride_ = 1;
  std::vector<int> mon_exp_;
  std::vector<int> mon_deg_;
  std::vector<int> mon_prod_;
  // For each left monomial: list of (right monomial, product monomial).
  std::vector<std::vector<std::pair<int, int>>> mul_rows_;
  std::vector<u64> witt_mod_;  // witt_poly reduced mod p^N
  std::vector<u64> frob_;
};

using Ctx = std::shared_ptr<const RingContext>;

bool same_ring(const Ctx& a, const Ctx& b);
void require_same_ring(const Ctx& a, const Ctx& b, const char* where);

// Element of the residue field, coefficients of 1, w, ..., w^{m-1} mod p.
struct ResidueElem {
  std::vector<u64> c;
  bool operator==(const ResidueElem&) const = default;
  bool is_zero() const;
};

class RingElem {
 public:
  RingElem() = default;
  explicit RingElem(Ctx ctx);

  static RingElem zero(const Ctx& ctx) { return RingElem(ctx); }
  static RingElem one(const Ctx& ctx) { return from_int(ctx, 1); }
  static RingElem from_int(const Ctx& ctx, i64 v);
  static RingElem u(const Ctx& ctx, int var);
  static RingElem w(const Ctx& ctx);
  static RingElem from_raw(const Ctx& ctx, const u64* data);

  const Ctx& ctx() const { return ctx_; }
  const u64* data() const { return v_.data(); }
  u64* data() { return v_.data(); }
  const std::vector<u64>& words() const { return v_; }
  // Witt scalar (m words) at a monomial index.
  const u64* scalar(int mon) const { return v_.data() + static_cast<size_t>(mon) * ctx_->m(); }
  u64* scalar(int mon) { return v_.data() + static_cast<size_t>(mon) * ctx_->m(); }

  bool is_zero() const { return ctx_->is_zero(v_.data()); }
  bool is_unit() const { return ctx_->is_unit(v_.data()); }
  int order() const { return ctx_->order(v_.data()); }
  RingElem inverse() const;
  RingElem pow(u64 e) const;

  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  RingElem operator-() const;
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Ctx ctx_;
  std::vector<u64> v_;
};

enum class RingOp { Add, Sub, Mul };
RingElem ring_arithmetic(const RingElem& a, const RingElem& b, RingOp op);
RingElem witt_frobenius(const RingElem& a, int j);
ResidueElem residue_reduce(const RingElem& a);

// A local homomorphism between descriptors sharing p, m and witt_poly:
// sigma^frobenius_power on Witt scalars, u_i -> u_images[i] (in the target).
// When source and target coincide this is an endomorphism of E.
struct RingEndo {
  Ctx source;
  Ctx target;
  int frobenius_power = 0;
  std::vector<RingElem> u_images;

  static RingEndo identity(const Ctx& ctx);
  bool operator==(const RingEndo& o) const;
};

// Precomputed images of every u-monomial, for repeated application.
class EndoAction {
 public:
  explicit EndoAction(const RingEndo& phi);
  RingElem apply(const RingElem& a) const;
  void apply_raw(const u64* in, u64* out) const;  // out must be zeroed
  const Ctx& target() const { return phi_.target; }
  const Ctx& source() const { return phi_.source; }

 private:
  RingEndo phi_;
  std::vector<RingElem> mon_images_;
  bool trivial_u_ = false;
};

RingElem apply_endo(const RingEndo& phi, const RingElem& a);
RingEndo invert_endo(const RingEndo& phi);
RingEndo compose_endo(const RingEndo& outer, const RingEndo& inner);  // outer o inner

}  // namespace fgl
