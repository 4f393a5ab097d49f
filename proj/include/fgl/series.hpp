#pragma once

#include <vector>

#include "fgl/ring.hpp"

namespace fgl {

// c_0 + c_1 t + ... + c_D t^D over E.
class PowerSeries1 {
 public:
  PowerSeries1() = default;
  PowerSeries1(Ctx ctx, int trunc_t);

  static PowerSeries1 variable(const Ctx& ctx, int trunc_t);  // t
  static PowerSeries1 constant(const RingElem& c, int trunc_t);
  static PowerSeries1 monomial(const RingElem& c, int deg, int trunc_t);
  static PowerSeries1 from_coeffs(const Ctx& ctx, int trunc_t, const std::vector<RingElem>& cs);
  static PowerSeries1 from_ints(const Ctx& ctx, int trunc_t, const std::vector<i64>& cs);

  const Ctx& ctx() const { return ctx_; }
  int trunc() const { return d_; }
  RingElem coeff(int i) const;
  void set_coeff(int i, const RingElem& c);
  const u64* raw(int i) const { return v_.data() + static_cast<size_t>(i) * ctx_->stride(); }
  u64* raw(int i) { return v_.data() + static_cast<size_t>(i) * ctx_->stride(); }
  bool coeff_is_zero(int i) const { return ctx_->is_zero(raw(i)); }

  bool is_zero() const;
  // Least i with c_i != 0, or trunc()+1.
  int t_order() const;
  // Largest r with every coefficient in (p, u)^r.
  int order() const;
  PowerSeries1 truncated(int new_trunc) const;  // also extends with zeros

  PowerSeries1& operator+=(const PowerSeries1& o);
  PowerSeries1& operator-=(const PowerSeries1& o);
  friend PowerSeries1 operator+(PowerSeries1 a, const PowerSeries1& b) { return a += b; }
  friend PowerSeries1 operator-(PowerSeries1 a, const PowerSeries1& b) { return a -= b; }
  friend PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b);
  PowerSeries1 operator-() const;
  PowerSeries1 scaled(const RingElem& c) const;
  bool operator==(const PowerSeries1& o) const;
  bool operator!=(const PowerSeries1& o) const { return !(*this == o); }

  PowerSeries1 derivative() const;
  PowerSeries1 inverse() const;  // requires a unit constant term
  PowerSeries1 pow(u64 e) const;

  std::string to_string() const;

 private:
  Ctx ctx_;
  int d_ = 0;
  std::vector<u64> v_;
};

// Triangular table c_{ij}, i + j <= D.
class PowerSeries2 {
 public:
  PowerSeries2() = default;
  PowerSeries2(Ctx ctx, int trunc_t);

  static PowerSeries2 x(const Ctx& ctx, int trunc_t);
  static PowerSeries2 y(const Ctx& ctx, int trunc_t);
  static PowerSeries2 constant(const RingElem& c, int trunc_t);
  // f(x) and f(y).
  static PowerSeries2 in_x(const PowerSeries1& f);
  static PowerSeries2 in_y(const PowerSeries1& f);

  const Ctx& ctx() const { return ctx_; }
  int trunc() const { return d_; }
  static size_t index(int d, int i, int j) {
    return static_cast<size_t>(i) * (d + 1) - static_cast<size_t>(i) * (i - 1) / 2 + j;
  }
  size_t num_terms() const { return index(d_, d_, 0) + 1; }
  RingElem coeff(int i, int j) const;
  void set_coeff(int i, int j, const RingElem& c);
  const u64* raw(int i, int j) const { return v_.data() + index(d_, i, j) * ctx_->stride(); }
  u64* raw(int i, int j) { return v_.data() + index(d_, i, j) * ctx_->stride(); }
  bool coeff_is_zero(int i, int j) const { return ctx_->is_zero(raw(i, j)); }

  bool is_zero() const;
  int order() const;
  // Least total degree with a nonzero coefficient, or trunc()+1.
  int t_order() const;
  PowerSeries2 truncated(int new_trunc) const;
  PowerSeries2 swapped() const;  // F(y, x)
  // F(x, 0) and F(0, y) as series in one variable.
  PowerSeries1 restrict_x() const;

  PowerSeries2& operator+=(const PowerSeries2& o);
  PowerSeries2& operator-=(const PowerSeries2& o);
  friend PowerSeries2 operator+(PowerSeries2 a, const PowerSeries2& b) { return a += b; }
  friend PowerSeries2 operator-(PowerSeries2 a, const PowerSeries2& b) { return a -= b; }
  friend PowerSeries2 operator*(const PowerSeries2& a, const PowerSeries2& b);
  PowerSeries2 operator-() const;
  PowerSeries2 scaled(const RingElem& c) const;
  bool operator==(const PowerSeries2& o) const;
  bool operator!=(const PowerSeries2& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Ctx ctx_;
  int d_ = 0;
  std::vector<u64> v_;
};

// Monic g of degree d with lower coefficients in the maximal ideal.
struct DistinguishedPoly {
  Ctx ctx;
  std::vector<RingElem> coeffs;  // lowest first, coeffs[d] == 1

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_distinguished() const;
  PowerSeries1 as_series(int trunc_t) const;
};

struct WeierstrassFactors {
  DistinguishedPoly g;
  PowerSeries1 unit;
};

PowerSeries1 compose1(const PowerSeries1& f, const PowerSeries1& g);
PowerSeries1 reversion(const PowerSeries1& f);
WeierstrassFactors weierstrass_prepare(const PowerSeries1& f);
PowerSeries1 companion_norm(const DistinguishedPoly& g, const PowerSeries2& h);
// prod over roots r of g of s(F(x, r)); agrees with companion_norm(g, s(F))
// except that y-powers past the truncation are reduced rather than dropped.
PowerSeries1 composite_norm(const DistinguishedPoly& g, const PowerSeries1& s, const PowerSeries2& F);
PowerSeries1 twist_coeffs(const PowerSeries1& f, const RingEndo& phi);
PowerSeries2 twist_coeffs(const PowerSeries2& f, const RingEndo& phi);

// Substitutions. Inner series must have zero constant term.
// F(a(t), b(t)).
PowerSeries1 substitute(const PowerSeries2& F, const PowerSeries1& a, const PowerSeries1& b);
// F(a(x), a(y)).
PowerSeries2 substitute_diag(const PowerSeries2& F, const PowerSeries1& a);
// h(G(x, y)).
PowerSeries2 compose_outer(const PowerSeries1& h, const PowerSeries2& G);
// F(A(x,y), B(x,y)).
PowerSeries2 substitute2(const PowerSeries2& F, const PowerSeries2& A, const PowerSeries2& B);

// l with l(f(t)) = q(t), for f whose residue is c t^d with c a unit. Only the
// equations in degrees d, 2d, .. are imposed; they are unitriangular modulo
// the maximal ideal. Returns l at truncation floor(D / d).
PowerSeries1 composition_divide(const PowerSeries1& q, const PowerSeries1& f);

// Determinant of a square matrix of series (Berkowitz, division free).
PowerSeries1 series_determinant(const std::vector<std::vector<PowerSeries1>>& m);

}  // namespace fgl
