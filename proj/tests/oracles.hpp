#pragma once
// Independent reference computations shared by the unit and acceptance tests.

#include <random>
#include <vector>

#include "fgl/series.hpp"

namespace oracle {

using fgl::Ctx;
using fgl::i64;
using fgl::u64;

inline u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline i64 binom(int n, int k) {
  i64 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// (1 + t)^{p^s} - 1: the divisor of the p^s-torsion of x + y + xy.
inline fgl::DistinguishedPoly mult_torsion_divisor(const Ctx& c, int s) {
  const int d = static_cast<int>(ipow(c->p(), s));
  fgl::DistinguishedPoly g;
  g.ctx = c;
  for (int k = 0; k <= d; ++k) g.coeffs.push_back(fgl::RingElem::from_int(c, k == 0 ? 0 : binom(d, k)));
  return g;
}

// Polynomials h(x, y) with integer coefficients, so that h(x, r) needs no
// truncation in y.
inline std::vector<fgl::PowerSeries2> norm_fixtures(const Ctx& c, int D) {
  auto poly = [&](std::vector<std::tuple<int, int, i64>> terms) {
    fgl::PowerSeries2 h(c, D);
    for (auto [i, j, v] : terms) h.set_coeff(i, j, fgl::RingElem::from_int(c, v));
    return h;
  };
  return {poly({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}}), poly({{1, 0, 1}, {0, 1, 1}}),
          poly({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {2, 2, 3}, {1, 3, 1}}), poly({{1, 0, 2}, {0, 1, 1}, {0, 2, 5}})};
}

// Z/p^N[zeta] / Phi_{p^s}(zeta), elements as coefficient vectors.
class Cyclotomic {
 public:
  Cyclotomic(u64 p, int s, i64 q) : p_(p), s_(s), q_(q) {
    step_ = static_cast<int>(ipow(p, s - 1));
    deg_ = static_cast<int>(p - 1) * step_;
  }
  int degree() const { return deg_; }
  std::vector<i64> zero() const { return std::vector<i64>(deg_, 0); }
  std::vector<i64> scalar(i64 v) const {
    auto r = zero();
    r[0] = mod(v);
    return r;
  }
  std::vector<i64> zeta_pow(int k) const {
    std::vector<i64> r = scalar(1);
    std::vector<i64> z = zero();
    if (deg_ == 1) z[0] = mod(-1);  // p = 2, s = 1: zeta = -1
    else z[1] = 1;
    for (int i = 0; i < k; ++i) r = mul(r, z);
    return r;
  }
  std::vector<i64> add(const std::vector<i64>& a, const std::vector<i64>& b) const {
    auto r = zero();
    for (int i = 0; i < deg_; ++i) r[i] = mod(a[i] + b[i]);
    return r;
  }
  std::vector<i64> mul(const std::vector<i64>& a, const std::vector<i64>& b) const {
    std::vector<i64> r(2 * deg_, 0);
    for (int i = 0; i < deg_; ++i)
      for (int j = 0; j < deg_; ++j) r[i + j] = mod(r[i + j] + static_cast<i64>((static_cast<__int128>(a[i]) * b[j]) % q_));
    // zeta^{deg} = -sum_{k < p - 1} zeta^{k step}
    for (int top = 2 * deg_ - 1; top >= deg_; --top) {
      const i64 v = r[top];
      if (!v) continue;
      r[top] = 0;
      const int base = top - deg_;
      for (int k = 0; k + 1 < static_cast<int>(p_); ++k) r[base + k * step_] = mod(r[base + k * step_] - v);
    }
    r.resize(deg_);
    return r;
  }
  i64 mod(i64 v) const { return ((v % q_) + q_) % q_; }

 private:
  u64 p_;
  int s_;
  i64 q_;
  int step_ = 1, deg_ = 1;
};

// prod over k < p^s of h(x, zeta^k - 1), mod x^{D+1}, read back as integers.
inline fgl::PowerSeries1 cyclotomic_norm(const Ctx& c, u64 p, int s, const fgl::PowerSeries2& h, int D) {
  const i64 q = static_cast<i64>(c->modulus());
  const Cyclotomic Z(p, s, q);
  using Elt = std::vector<i64>;
  using Poly = std::vector<Elt>;  // in x, length D + 1
  auto coeff_int = [&](int i, int j) { return static_cast<i64>(h.raw(i, j)[0]); };
  Poly prod(D + 1, Z.zero());
  prod[0] = Z.scalar(1);
  const int n = static_cast<int>(ipow(p, s));
  for (int k = 0; k < n; ++k) {
    Elt r = Z.add(Z.zeta_pow(k), Z.scalar(-1));
    std::vector<Elt> rp{Z.scalar(1)};
    for (int j = 1; j <= D; ++j) rp.push_back(Z.mul(rp.back(), r));
    Poly hv(D + 1, Z.zero());
    for (int i = 0; i <= D; ++i)
      for (int j = 0; i + j <= D; ++j) {
        const i64 v = coeff_int(i, j);
        if (v) hv[i] = Z.add(hv[i], Z.mul(Z.scalar(v), rp[j]));
      }
    Poly next(D + 1, Z.zero());
    for (int a = 0; a <= D; ++a)
      for (int b = 0; a + b <= D; ++b) next[a + b] = Z.add(next[a + b], Z.mul(prod[a], hv[b]));
    prod = std::move(next);
  }
  fgl::PowerSeries1 out(c, D);
  for (int i = 0; i <= D; ++i) {
    for (int k = 1; k < Z.degree(); ++k)
      if (prod[i][k] != 0) return fgl::PowerSeries1(c, 0);  // not rational: never equal
    out.set_coeff(i, fgl::RingElem::from_int(c, prod[i][0]));
  }
  return out;
}

// Series with a unit coefficient at a seeded degree d <= 6 and everything
// below it in the maximal ideal.
inline fgl::PowerSeries1 random_weierstrass_input(const Ctx& c, int D, u64 seed) {
  std::mt19937_64 rng(seed);
  const int d = 1 + static_cast<int>(rng() % 6);
  fgl::PowerSeries1 f(c, D);
  for (int i = 0; i <= D; ++i) {
    fgl::RingElem a(c);
    for (int mon = 0; mon < c->num_monomials(); ++mon)
      for (int w = 0; w < c->m(); ++w) a.scalar(mon)[w] = rng() % c->modulus();
    if (i < d) {
      // push the constant monomial into pZ
      for (int w = 0; w < c->m(); ++w) a.scalar(0)[w] = (a.scalar(0)[w] * c->p()) % c->modulus();
    } else if (i == d) {
      a.scalar(0)[0] = (a.scalar(0)[0] * c->p() + 1) % c->modulus();
    }
    f.set_coeff(i, a);
  }
  return f;
}

}  // namespace oracle
