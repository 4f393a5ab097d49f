#include "fgl/fgl_core.hpp"

#include <random>
#include <string>

#include "fgl_internal.hpp"
#include "rational.hpp"

namespace fgl {

using detail::QSeries1;
using detail::QSeries2;

namespace {

[[noreturn]] void axiom_failure(const char* what, int degree) {
  fail(ErrorCode::AxiomFailure, std::string(what) + " fails in total degree " + std::to_string(degree));
}

// dF/dy
PowerSeries2 partial_y(const PowerSeries2& F) {
  const Ctx& ctx = F.ctx();
  const int D = F.trunc();
  PowerSeries2 r(ctx, D);
  for (int i = 0; i <= D; ++i)
    for (int j = 1; i + j <= D; ++j)
      ctx->scale_into(r.raw(i, j - 1), F.raw(i, j), static_cast<u64>(j) % ctx->modulus());
  return r;
}

// Exact polynomial in u over Z[1/p]: numerators plus a denominator exponent.
struct QPoly {
  std::vector<mpz_class> c;
  int e = 0;
};

}  // namespace

FormalGroupLaw validate_fgl(const PowerSeries2& F) {
  const Ctx& ctx = F.ctx();
  const int D = F.trunc();
  const RingElem one = RingElem::one(ctx);

  // F(x, 0) = x and F(0, y) = y
  for (int s = 0; s <= D; ++s) {
    const bool want_one = (s == 1);
    const RingElem a = F.coeff(s, 0), b = F.coeff(0, s);
    if (want_one ? (a != one || b != one) : (!a.is_zero() || !b.is_zero())) axiom_failure("unit", s);
  }
  for (int s = 2; s <= D; ++s)
    for (int i = 0; i < s - i; ++i)
      if (F.coeff(i, s - i) != F.coeff(s - i, i)) axiom_failure("symmetry", s);

  // F(F(x,y),z) = F(x,F(y,z)) through the powers P_k = F^k:
  // [x^a y^b z^c] of the left side is sum_k F_{k,c} [x^a y^b] P_k, and of the
  // right side sum_k F_{a,k} [y^b z^c] P_k.
  std::vector<PowerSeries2> P(D + 1);
  P[0] = PowerSeries2::constant(one, D);
  for (int k = 1; k <= D; ++k) P[k] = P[k - 1] * F;
  std::vector<u64> lhs(ctx->stride()), rhs(ctx->stride());
  for (int s = 3; s <= D; ++s)
    for (int a = 1; a <= s - 2; ++a)
      for (int b = 1; a + b <= s - 1; ++b) {
        const int c = s - a - b;
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (int k = 1; k <= a + b && k + c <= D; ++k)
          if (!F.coeff_is_zero(k, c) && !P[k].coeff_is_zero(a, b)) ctx->mul_acc(F.raw(k, c), P[k].raw(a, b), lhs.data());
        for (int k = 1; k <= b + c && a + k <= D; ++k)
          if (!F.coeff_is_zero(a, k) && !P[k].coeff_is_zero(b, c)) ctx->mul_acc(F.raw(a, k), P[k].raw(b, c), rhs.data());
        if (lhs != rhs) axiom_failure("associativity", s);
      }
  return FormalGroupLaw{F};
}

FormalGroupLaw additive_law(const Ctx& ctx, int trunc_t) {
  return validate_fgl(PowerSeries2::x(ctx, trunc_t) + PowerSeries2::y(ctx, trunc_t));
}

FormalGroupLaw multiplicative_law(const Ctx& ctx, int trunc_t) {
  PowerSeries2 x = PowerSeries2::x(ctx, trunc_t), y = PowerSeries2::y(ctx, trunc_t);
  return validate_fgl(x + y + x * y);
}

FormalGroupLaw signed_multiplicative_law(const Ctx& ctx, int trunc_t) {
  PowerSeries2 x = PowerSeries2::x(ctx, trunc_t), y = PowerSeries2::y(ctx, trunc_t);
  return validate_fgl(x + y - x * y);
}

PowerSeries1 formal_add(const FormalGroupLaw& F, const PowerSeries1& a, const PowerSeries1& b) {
  return substitute(F.law, a, b);
}

PowerSeries1 formal_neg(const FormalGroupLaw& F) {
  const Ctx& ctx = F.ctx();
  const int D = F.trunc();
  PowerSeries1 t = PowerSeries1::variable(ctx, D);
  PowerSeries1 iota = -t;
  if (D < 2) return iota;
  PowerSeries2 Fy = partial_y(F.law);
  // Newton on y -> F(t, y); dF/dy(0,0) = 1.
  for (int prec = 2; prec <= 2 * D; prec *= 2) {
    PowerSeries1 val = substitute(F.law, t, iota);
    if (val.is_zero()) break;
    iota -= val * substitute(Fy, t, iota).inverse();
  }
  if (!substitute(F.law, t, iota).is_zero()) throw std::logic_error("formal_neg did not converge");
  return iota;
}

PowerSeries1 n_series(const FormalGroupLaw& F, i64 n) {
  const Ctx& ctx = F.ctx();
  const int D = F.trunc();
  PowerSeries1 t = PowerSeries1::variable(ctx, D);
  if (n == 0) return PowerSeries1(ctx, D);
  const u64 an = static_cast<u64>(n < 0 ? -n : n);
  // Left-to-right double and add.
  int top = 63;
  while (!((an >> top) & 1)) --top;
  PowerSeries1 r = t;
  for (int b = top - 1; b >= 0; --b) {
    r = substitute(F.law, r, r);
    if ((an >> b) & 1) r = substitute(F.law, t, r);
  }
  if (n < 0) r = compose1(formal_neg(F), r);
  return r;
}

namespace {

struct LogData {
  std::vector<QPoly> ell;   // l_{p^s}
  std::vector<u64> degs;    // p^s
  int emax = 0;
};

// Logarithm coefficients l_{p^s}, s = 0.. while p^s <= D:
// l_{p^s} = sum_{i=1}^{min(n,s)} (v_i / p) * sigma^i(l_{p^{s-i}}),
// sigma^i(u_j) = u_j^{p^i}.
LogData log_coefficients(const RingContext& ctx, int D) {
  const u64 p = ctx.p();
  const int n = ctx.n();
  const int nm = ctx.num_monomials();
  const int nv = ctx.nvars();
  LogData L;
  {
    QPoly one;
    one.c.assign(nm, 0);
    one.c[0] = 1;
    L.ell.push_back(one);
    L.degs.push_back(1);
  }
  while (L.degs.back() * p <= static_cast<u64>(D)) {
    const int s = static_cast<int>(L.ell.size());
    QPoly acc;
    acc.c.assign(nm, 0);
    for (int i = 1; i <= std::min(n, s); ++i) {
      const QPoly& src = L.ell[s - i];
      u64 pi = 1;
      for (int k = 0; k < i; ++k) pi *= p;
      QPoly term;
      term.c.assign(nm, 0);
      term.e = src.e + 1;
      for (int x = 0; x < nm; ++x) {
        if (src.c[x] == 0) continue;
        std::vector<int> ex(ctx.monomial_exponents(x), ctx.monomial_exponents(x) + nv);
        for (auto& v : ex) v = static_cast<int>(v * pi);
        if (i < n) ex[i - 1] += 1;  // times u_i
        const int y = ctx.monomial_index(ex);
        if (y >= 0) term.c[y] += src.c[x];
      }
      const int e = std::max(acc.e, term.e);
      mpz_class fa, ft;
      mpz_ui_pow_ui(fa.get_mpz_t(), p, e - acc.e);
      mpz_ui_pow_ui(ft.get_mpz_t(), p, e - term.e);
      for (int x = 0; x < nm; ++x) acc.c[x] = acc.c[x] * fa + term.c[x] * ft;
      acc.e = e;
    }
    L.ell.push_back(acc);
    L.degs.push_back(L.degs.back() * p);
  }
  for (const auto& l : L.ell) L.emax = std::max(L.emax, l.e);
  return L;
}

void check_trunc(const RingDescriptor& desc, int D) {
  u64 pn = 1;
  for (int i = 0; i < desc.n; ++i) pn *= desc.p;
  if (static_cast<u64>(D) < pn) fail(ErrorCode::TruncationTooSmall, "need trunc_t >= p^n = " + std::to_string(pn));
}

// Unit and symmetry only; for laws that are associative by construction.
FormalGroupLaw trusted_law(const PowerSeries2& F) {
  const RingElem one = RingElem::one(F.ctx());
  for (int s = 0; s <= F.trunc(); ++s) {
    const bool want_one = (s == 1);
    const RingElem a = F.coeff(s, 0), b = F.coeff(0, s);
    if (want_one ? (a != one || b != one) : (!a.is_zero() || !b.is_zero())) axiom_failure("unit", s);
    for (int i = 0; i < s - i; ++i)
      if (F.coeff(i, s - i) != F.coeff(s - i, i)) axiom_failure("symmetry", s);
  }
  return FormalGroupLaw{F};
}

}  // namespace

namespace detail {

FormalGroupLaw universal_deformation_rational(const RingDescriptor& desc, int trunc_t) {
  check_trunc(desc, trunc_t);
  const Ctx ctx = RingContext::create(desc);
  const int nm = ctx->num_monomials();
  const LogData L = log_coefficients(*ctx, trunc_t);
  QSeries1 f(ctx.get(), trunc_t);
  for (size_t s = 0; s < L.ell.size(); ++s) {
    mpz_class fac;
    mpz_ui_pow_ui(fac.get_mpz_t(), desc.p, L.emax - L.ell[s].e);
    for (int x = 0; x < nm; ++x) f.at(static_cast<int>(L.degs[s]), x) = L.ell[s].c[x] * fac;
  }
  f.set_exponent(L.emax);
  f.normalize();
  QSeries1 g = q_reversion(f);
  QSeries2 F = q_compose_outer(g, QSeries2::diagonal_sum(f));
  return validate_fgl(F.to_ring(ctx));
}

}  // namespace detail

FormalGroupLaw universal_deformation(const RingDescriptor& desc, int trunc_t) {
  check_trunc(desc, trunc_t);
  const Ctx ctx = RingContext::create(desc);
  const int D = trunc_t;
  const u64 p = desc.p;
  const LogData L = log_coefficients(*ctx, D);
  const int E = L.emax;

  // Solve p^E F = sum_s p^E l_{p^s} (x^{p^s} + y^{p^s}) - sum_{s>=1} p^E l_{p^s} F^{p^s}
  // one total degree at a time modulo p^{N+E}. F is only known mod p^N, but
  // a ≡ b mod p^N gives a^{p^s} ≡ b^{p^s} mod p^{N+s}, which is what the
  // coefficient p^{E-s} l_{p^s} needs.
  RingDescriptor wd = desc;
  wd.prec_p = desc.prec_p + E;
  const Ctx cw = RingContext::create(wd);
  const int nm = cw->num_monomials();
  const int m = cw->m();
  const int st = cw->stride();
  std::vector<std::vector<u64>> Ls(L.ell.size(), std::vector<u64>(st, 0));
  for (size_t s = 0; s < L.ell.size(); ++s) {
    mpz_class fac;
    mpz_ui_pow_ui(fac.get_mpz_t(), p, E - L.ell[s].e);
    const mpz_class q = static_cast<unsigned long>(cw->modulus());
    for (int x = 0; x < nm; ++x) {
      mpz_class v = L.ell[s].c[x] * fac;
      mpz_class r;
      mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
      Ls[s][static_cast<size_t>(x) * m] = r.get_ui();
    }
  }

  // Power chain: pw[0] = F, each later entry the product of two earlier ones.
  struct Prod {
    int a, b;
    u64 e;
  };
  std::vector<PowerSeries2> pw{PowerSeries2(cw, D)};
  std::vector<Prod> prods{{-1, -1, 1}};
  std::vector<int> at_level{0};  // index of F^{p^s}
  for (size_t s = 1; s < L.degs.size(); ++s) {
    const int base = at_level.back();
    int cur = base;
    for (u64 j = 2; j <= p; ++j) {
      prods.push_back({cur, base, prods[cur].e + prods[base].e});
      pw.emplace_back(cw, D);
      cur = static_cast<int>(pw.size()) - 1;
    }
    at_level.push_back(cur);
  }

  PowerSeries2& F = pw[0];
  const RingElem one = RingElem::one(cw);
  std::copy(one.data(), one.data() + st, F.raw(1, 0));
  std::copy(one.data(), one.data() + st, F.raw(0, 1));
  const u64 pe = [&] {
    u64 r = 1;
    for (int i = 0; i < E; ++i) r *= p;
    return r;
  }();
  std::vector<u64> acc(st);
  for (int k = 2; k <= D; ++k) {
    for (size_t t = 1; t < pw.size(); ++t) {
      const Prod& pr = prods[t];
      if (pr.e > static_cast<u64>(k)) continue;
      const PowerSeries2& A = pw[pr.a];
      const PowerSeries2& B = pw[pr.b];
      const int oa = static_cast<int>(prods[pr.a].e), ob = static_cast<int>(prods[pr.b].e);
      for (int i1 = oa; i1 <= k - ob; ++i1) {
        const int i2 = k - i1;
        for (int a = 0; a <= i1; ++a) {
          const u64* av = A.raw(a, i1 - a);
          if (cw->is_zero(av)) continue;
          for (int b = 0; b <= i2; ++b) {
            const u64* bv = B.raw(b, i2 - b);
            if (!cw->is_zero(bv)) cw->mul_acc(av, bv, pw[t].raw(a + b, k - a - b));
          }
        }
      }
    }
    for (int i = 0; i <= k; ++i) {
      const int j = k - i;
      std::fill(acc.begin(), acc.end(), 0);
      for (size_t s = 0; s < L.degs.size(); ++s) {
        if (L.degs[s] == static_cast<u64>(k) && (i == 0 || j == 0)) cw->add_into(acc.data(), Ls[s].data());
        if (s == 0 || L.degs[s] > static_cast<u64>(k)) continue;
        std::vector<u64> t(st, 0);
        cw->mul_acc(Ls[s].data(), pw[at_level[s]].raw(i, j), t.data());
        cw->sub_into(acc.data(), t.data());
      }
      u64* out = F.raw(i, j);
      for (int w = 0; w < st; ++w) {
        if (acc[w] % pe != 0)
          fail(ErrorCode::IntegralityFailure,
               "coefficient of x^" + std::to_string(i) + " y^" + std::to_string(j) + " is not integral");
        out[w] = acc[w] / pe;
      }
    }
  }
  PowerSeries2 R(ctx, D);
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j) std::copy(F.raw(i, j), F.raw(i, j) + st, R.raw(i, j));
  return trusted_law(R);
}

FormalGroupLaw honda_fgl(u64 p, int n, int m, int trunc_t) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "height must be at least 1");
  return universal_deformation(make_descriptor(p, m, n, 1, 0), trunc_t);
}

FormalGroupLaw conjugate_law(const FormalGroupLaw& F, const PowerSeries1& s) {
  PowerSeries1 sinv = reversion(s);
  return trusted_law(compose_outer(s, substitute_diag(F.law, sinv)));
}

PowerSeries1 random_star_iso(const Ctx& ctx, int trunc_t, u64 seed) {
  std::mt19937_64 rng(seed);
  PowerSeries1 s(ctx, trunc_t);
  const u64 q = ctx->modulus();
  for (int k = 1; k <= trunc_t; ++k) {
    RingElem c(ctx);
    for (int mon = 0; mon < ctx->num_monomials(); ++mon)
      for (int d = 0; d < ctx->m(); ++d) c.scalar(mon)[d] = rng() % q;
    // Constant Witt part into pZ.
    for (int d = 0; d < ctx->m(); ++d) c.scalar(0)[d] -= c.scalar(0)[d] % ctx->p();
    if (k == 1) c += RingElem::one(ctx);
    s.set_coeff(k, c);
  }
  return s;
}

FormalGroupLaw base_change(const FormalGroupLaw& F, const RingEndo& phi) {
  return trusted_law(twist_coeffs(F.law, phi));
}

}  // namespace fgl
