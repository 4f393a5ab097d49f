#include "fgl/isogeny.hpp"

#include <algorithm>
#include <string>

#include "fgl/linalg.hpp"

namespace fgl {

namespace {

int log_p_exact(u64 p, u64 d) {
  int r = 0;
  while (d > 1) {
    if (d % p != 0) return -1;
    d /= p;
    ++r;
  }
  return d == 1 ? r : -1;
}

}  // namespace

bool residue_is_frobenius(const PowerSeries1& h, int degree_log) {
  const Ctx& ctx = h.ctx();
  u64 deg = 1;
  for (int i = 0; i < degree_log; ++i) deg *= ctx->p();
  for (int i = 0; i <= h.trunc(); ++i) {
    ResidueElem r = residue_reduce(h.coeff(i));
    if (static_cast<u64>(i) == deg) {
      if (r.c[0] != 1) return false;
      for (size_t k = 1; k < r.c.size(); ++k)
        if (r.c[k] != 0) return false;
    } else if (!r.is_zero()) {
      return false;
    }
  }
  return true;
}

KernelPolynomial make_kernel(const FormalGroupLaw& F, const DistinguishedPoly& g) {
  require_same_ring(F.ctx(), g.ctx, "make_kernel");
  if (!g.is_distinguished()) fail(ErrorCode::InvalidArgument, "kernel polynomial is not distinguished");
  if (g.degree() >= 1 && !g.coeffs[0].is_zero()) fail(ErrorCode::InvalidArgument, "kernel polynomial must vanish at 0");
  const int r = log_p_exact(F.ctx()->p(), static_cast<u64>(g.degree()));
  if (r < 0) fail(ErrorCode::InvalidArgument, "kernel degree is not a power of p");
  return KernelPolynomial{g, r, F};
}

KernelPolynomial trivial_kernel(const FormalGroupLaw& F) {
  DistinguishedPoly g{F.ctx(), {RingElem::zero(F.ctx()), RingElem::one(F.ctx())}};
  return KernelPolynomial{g, 0, F};
}

KernelPolynomial kernel_polynomial(const FormalGroupLaw& F, int r) {
  const Ctx& ctx = F.ctx();
  if (r < 0) fail(ErrorCode::InvalidArgument, "negative torsion level");
  u64 pr = 1, deg = 1;
  for (int i = 0; i < r; ++i) pr *= ctx->p();
  for (int i = 0; i < r * ctx->n(); ++i) deg *= ctx->p();
  if (static_cast<u64>(F.trunc()) < deg)
    fail(ErrorCode::TruncationTooSmall, "need trunc_t >= " + std::to_string(deg) + " for this torsion level");
  PowerSeries1 ps = n_series(F, static_cast<i64>(pr));
  WeierstrassFactors wf = weierstrass_prepare(ps);
  if (static_cast<u64>(wf.g.degree()) != deg)
    fail(ErrorCode::NotADeformation, "Weierstrass degree " + std::to_string(wf.g.degree()) + " of the p^r-series, expected " +
                                         std::to_string(deg));
  KernelPolynomial k = make_kernel(F, wf.g);
  k.torsion_level = r;
  return k;
}

Isogeny lubin_isogeny(const FormalGroupLaw& F, const KernelPolynomial& g) {
  require_same_ring(F.ctx(), g.g.ctx, "lubin_isogeny");
  Isogeny iso;
  iso.source = F;
  iso.series = companion_norm(g.g, F.law);
  iso.degree_log = g.r;
  iso.frobenius_power = g.r;
  if (!iso.series.coeff_is_zero(0) || !residue_is_frobenius(iso.series, g.r))
    fail(ErrorCode::ResidueMismatch, "norm series does not reduce to x^(p^" + std::to_string(g.r) + ")");
  return iso;
}

FormalGroupLaw quotient_fgl(const FormalGroupLaw& F, const PowerSeries1& h, int out_trunc) {
  const Ctx& ctx = F.ctx();
  const int Dw = F.trunc();
  require_same_ring(ctx, h.ctx(), "quotient_fgl");
  if (h.trunc() < Dw) fail(ErrorCode::TruncationTooSmall, "isogeny series is shorter than the law");
  int deg = Dw + 1;
  for (int i = 0; i <= Dw; ++i)
    if (ctx->is_unit(h.raw(i))) {
      deg = i;
      break;
    }
  if (deg > Dw) fail(ErrorCode::NoUnitCoefficient, "isogeny series has no unit coefficient");
  // A norm series built from F at truncation Dw is exact only through Dr: a
  // root r of a degree deg divisor has r^{1 + (N+M)(deg-1)} = 0. Unknowns of
  // degree <= Dr are all visible in rows of degree <= Dr. Phi at degree k is
  // read at degree deg k and spread by the same margin, so it is pinned
  // through (Dr - (N+M)(deg-1)) / deg (p = 2 height one: measured through
  // one or two degrees more).
  const int margin = (ctx->prec_p() + ctx->desc().trunc_u) * (deg - 1);
  const int Dr = Dw - margin;
  const int K = (Dr - margin) / deg;
  if (K < 2) fail(ErrorCode::TruncationTooSmall, "quotient_fgl needs trunc_t >= 2 deg + 2 (N+M)(deg-1)");
  const int D = out_trunc < 0 ? K : std::min(out_trunc, K);
  const PowerSeries1 hh = h.truncated(Dr);
  const PowerSeries2 FD = F.law.truncated(Dr);

  // T = h(F(x,y)) - h(x) - h(y), matched by sum_{a<=b} phi_ab (H_a(x) H_b(y) + sym).
  PowerSeries2 T = compose_outer(hh, FD) - PowerSeries2::in_x(hh) - PowerSeries2::in_y(hh);
  std::vector<PowerSeries1> H(Dr + 1);
  H[0] = PowerSeries1::constant(RingElem::one(ctx), Dr);
  for (int a = 1; a <= Dr; ++a) H[a] = H[a - 1] * hh;

  const int s = ctx->stride();
  // Rows: (i, j) with 1 <= i <= j, i + j <= Dr, times the Z/p^N basis of E.
  std::vector<std::pair<int, int>> row_pos;
  for (int t = 2; t <= Dr; ++t)
    for (int i = 1; i <= t - i; ++i) row_pos.emplace_back(i, t - i);
  // Unknowns phi_ab, a <= b, ordered by total degree.
  std::vector<std::pair<int, int>> unk = row_pos;
  const int nrows = static_cast<int>(row_pos.size()) * s;
  const int ncols = static_cast<int>(unk.size()) * s;
  std::vector<u64> mat(static_cast<size_t>(nrows) * ncols, 0);
  std::vector<u64> basis(s), prod(s), cell(s);
  for (size_t u = 0; u < unk.size(); ++u) {
    const auto [a, b] = unk[u];
    for (size_t r = 0; r < row_pos.size(); ++r) {
      const auto [i, j] = row_pos[r];
      std::fill(cell.begin(), cell.end(), 0);
      ctx->mul_acc(H[a].raw(i), H[b].raw(j), cell.data());
      if (a != b) ctx->mul_acc(H[b].raw(i), H[a].raw(j), cell.data());
      if (ctx->is_zero(cell.data())) continue;
      for (int beta = 0; beta < s; ++beta) {
        std::fill(basis.begin(), basis.end(), 0);
        basis[beta] = 1;
        ctx->mul(cell.data(), basis.data(), prod.data());
        const size_t col = u * s + beta;
        for (int k = 0; k < s; ++k) mat[(r * s + k) * ncols + col] = prod[k];
      }
    }
  }
  std::vector<u64> rhs(nrows);
  for (size_t r = 0; r < row_pos.size(); ++r)
    for (int k = 0; k < s; ++k) rhs[r * s + k] = T.raw(row_pos[r].first, row_pos[r].second)[k];
  ModSolver solver(ctx->p(), ctx->prec_p(), nrows, ncols, std::move(mat));
  auto sol = solver.solve(rhs);
  if (!sol) fail(ErrorCode::NotInvariant, "no law Phi satisfies Phi(h(x),h(y)) = h(F(x,y)); divisor is not a subgroup");
  PowerSeries2 Phi = PowerSeries2::x(ctx, Dr) + PowerSeries2::y(ctx, Dr);
  for (size_t u = 0; u < unk.size(); ++u) {
    const auto [a, b] = unk[u];
    std::copy(sol->begin() + u * s, sol->begin() + (u + 1) * s, Phi.raw(a, b));
    std::copy(sol->begin() + u * s, sol->begin() + (u + 1) * s, Phi.raw(b, a));
  }
  return validate_fgl(Phi.truncated(D));
}

Isogeny quotient_isogeny(const FormalGroupLaw& F, const KernelPolynomial& g, int out_trunc) {
  Isogeny iso = lubin_isogeny(F, g);
  const u64 deg = static_cast<u64>(g.g.degree());
  int K = static_cast<int>(F.trunc() / deg);
  if (out_trunc >= 0) K = std::min(K, out_trunc);
  if (g.torsion_level < 0) {
    iso.target = quotient_fgl(F, iso.series, K);
    return iso;
  }
  u64 ps = 1;
  for (int i = 0; i < g.torsion_level; ++i) ps *= F.ctx()->p();
  PowerSeries1 l = composition_divide(n_series(F, static_cast<i64>(ps)), iso.series).truncated(K);
  if (!l.coeff(1).is_unit()) fail(ErrorCode::NotInvariant, "[p^s] does not factor through the norm series");
  iso.target = conjugate_law(FormalGroupLaw{F.law.truncated(K)}, reversion(l));
  return iso;
}

bool isogeny_certificate(const Isogeny& iso) {
  if (!iso.target) return false;
  const int K = iso.target->trunc();
  const PowerSeries1 h = iso.series.truncated(K);
  return compose_outer(h, iso.source.law.truncated(K)) == substitute_diag(iso.target->law, h);
}

}  // namespace fgl
