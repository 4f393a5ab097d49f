#include "fgl/deformation.hpp"

#include <algorithm>
#include <string>

#include "fgl/linalg.hpp"

namespace fgl {

namespace {

Ctx residue_context(const Ctx& ctx) {
  RingDescriptor d = ctx->desc();
  d.n = 1;
  d.prec_p = 1;
  d.trunc_u = 0;
  return RingContext::create(d);
}

// Constant-monomial residue of each coefficient, as a series over k.
PowerSeries2 residue_series(const PowerSeries2& F, const Ctx& k, int D) {
  PowerSeries2 r(k, D);
  const u64 p = k->p();
  const int m = k->m();
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j)
      for (int c = 0; c < m; ++c) r.raw(i, j)[c] = F.raw(i, j)[c] % p;
  return r;
}

// u_i-linear part of each coefficient, reduced to k.
PowerSeries2 u_direction(const PowerSeries2& F, const Ctx& k, int var, int D) {
  const Ctx& ctx = F.ctx();
  std::vector<int> e(ctx->nvars(), 0);
  e[var] = 1;
  const int mon = ctx->monomial_index(e);
  PowerSeries2 r(k, D);
  if (mon < 0) return r;
  const int m = k->m();
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j)
      for (int c = 0; c < m; ++c) r.raw(i, j)[c] = F.raw(i, j)[mon * m + c] % k->p();
  return r;
}

PowerSeries2 twist_residue(const PowerSeries2& G, int j) {
  const Ctx& k = G.ctx();
  PowerSeries2 r(k, G.trunc());
  for (int a = 0; a <= G.trunc(); ++a)
    for (int b = 0; a + b <= G.trunc(); ++b) k->witt_frobenius(G.raw(a, b), j, r.raw(a, b));
  return r;
}

PowerSeries2 partial_x(const PowerSeries2& G) {
  const Ctx& k = G.ctx();
  const int D = G.trunc();
  PowerSeries2 r(k, D);
  for (int i = 1; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j) k->scale_into(r.raw(i - 1, j), G.raw(i, j), static_cast<u64>(i) % k->modulus());
  return r;
}

u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// u_i-derivative of every coefficient, as polynomials in the u's.
PowerSeries2 u_derivative(const PowerSeries2& F, int var) {
  const Ctx& ctx = F.ctx();
  const int D = F.trunc();
  const int m = ctx->m();
  const int nv = ctx->nvars();
  PowerSeries2 r(ctx, D);
  for (int mon = 0; mon < ctx->num_monomials(); ++mon) {
    const int* ex = ctx->monomial_exponents(mon);
    if (ex[var] == 0) continue;
    std::vector<int> e(ex, ex + nv);
    e[var] -= 1;
    const int tgt = ctx->monomial_index(e);
    const u64 f = static_cast<u64>(ex[var]) % ctx->modulus();
    for (int i = 0; i <= D; ++i)
      for (int j = 0; i + j <= D; ++j)
        for (int d = 0; d < m; ++d) {
          const u64 v = F.raw(i, j)[mon * m + d];
          if (v) r.raw(i, j)[tgt * m + d] = ctx->addm(r.raw(i, j)[tgt * m + d], ctx->mulm(v, f));
        }
  }
  return r;
}

PowerSeries2 partial_x_ring(const PowerSeries2& G) {
  const Ctx& ctx = G.ctx();
  const int D = G.trunc();
  PowerSeries2 r(ctx, D);
  for (int i = 1; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j) ctx->scale_into(r.raw(i - 1, j), G.raw(i, j), static_cast<u64>(i) % ctx->modulus());
  return r;
}

// Columns of the graded operator gamma -> L(gamma) and the deformation
// directions, for one basis monomial of m^s / m^{s+1}. Row (i, j), digit d
// sits at ((row index) * m + d).
struct BaseBlock {
  std::vector<std::pair<int, int>> rows;
  int m = 1;
  int D = 0;
  int neps = 0;
  std::vector<std::vector<u64>> cols;  // (D + neps) * m columns of rows.size() * m entries

  int nrows() const { return static_cast<int>(rows.size()) * m; }
  int ngamma() const { return D * m; }
  int nepscols() const { return neps * m; }
};

BaseBlock build_block(const PowerSeries2& Gbar, const std::vector<PowerSeries2>& dirs) {
  const Ctx& k = Gbar.ctx();
  BaseBlock B;
  B.D = Gbar.trunc();
  B.m = k->m();
  B.neps = static_cast<int>(dirs.size());
  const int D = B.D, m = B.m;
  for (int t = 2; t <= D; ++t)
    for (int i = 1; i <= t - i; ++i) B.rows.emplace_back(i, t - i);
  auto column = [&](const PowerSeries2& v) {
    std::vector<u64> c(B.rows.size() * m);
    for (size_t r = 0; r < B.rows.size(); ++r) {
      const u64* x = v.raw(B.rows[r].first, B.rows[r].second);
      for (int d = 0; d < m; ++d) c[r * m + d] = x[d];
    }
    return c;
  };
  const PowerSeries2 Gx = partial_x(Gbar);
  const PowerSeries2 Gy = Gx.swapped();
  PowerSeries2 Gpow = PowerSeries2::constant(RingElem::one(k), D);
  std::vector<u64> basis(m), tmp(m);
  for (int deg = 1; deg <= D; ++deg) {
    Gpow = Gpow * Gbar;
    for (int beta = 0; beta < m; ++beta) {
      std::fill(basis.begin(), basis.end(), 0);
      basis[beta] = 1;
      PowerSeries2 v(k, D);
      for (int i = 0; i + deg <= D; ++i)
        for (int j = 0; i + j + deg <= D; ++j) {
          k->mul_acc(Gx.raw(i, j), basis.data(), v.raw(i + deg, j));
          k->mul_acc(Gy.raw(i, j), basis.data(), v.raw(i, j + deg));
        }
      for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) {
          std::fill(tmp.begin(), tmp.end(), 0);
          k->mul_acc(Gpow.raw(i, j), basis.data(), tmp.data());
          k->sub_into(v.raw(i, j), tmp.data());
        }
      B.cols.push_back(column(v));
    }
  }
  for (int e = 0; e < B.neps; ++e)
    for (int beta = 0; beta < m; ++beta) {
      std::fill(basis.begin(), basis.end(), 0);
      basis[beta] = 1;
      PowerSeries2 v(k, D);
      for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) k->mul_acc(dirs[e].raw(i, j), basis.data(), v.raw(i, j));
      B.cols.push_back(column(v));
    }
  return B;
}

bool eps_determined(const BaseBlock& B, u64 p) {
  if (B.neps == 0) return true;
  const int nr = B.nrows(), nc = static_cast<int>(B.cols.size());
  std::vector<u64> mat(static_cast<size_t>(nr) * nc);
  for (int c = 0; c < nc; ++c)
    for (int r = 0; r < nr; ++r) mat[static_cast<size_t>(r) * nc + c] = B.cols[c][r];
  ModSolver S(p, 1, nr, nc, std::move(mat));
  for (int c = B.ngamma(); c < nc; ++c)
    if (!S.column_is_pivot(c)) return false;
  return true;
}

// An undetermined direction (g, a) that later stages may pin down.
struct Param {
  PowerSeries1 g;
  std::vector<RingElem> a;
  int order = 0;
};

struct StageResult {
  PowerSeries1 g;
  std::vector<RingElem> u_images;
  bool alpha_unique = true;
};

// Solves g(F) = G(g(x), g(y)) with G = alpha^* U (alpha = sigma^twist on
// Witt scalars and u -> u_images) stage by stage over the (p, u)-filtration.
// Unknowns left free by a stage are kept as parameters whose first order
// effect enters later stages. A parameter not pinned by the time its square
// reaches the current stage is branched on (its p values), since the linear
// model no longer holds. Branches that run into an inconsistent stage are
// discarded; alpha is unique when every surviving branch agrees on it.
StageResult run_stages(const PowerSeries2& F, const PowerSeries2& U, int twist, bool vary_alpha,
                       const BaseBlock& block, bool first_leaf_only) {
  const Ctx& ctx = F.ctx();
  const int D = block.D;
  const int m = ctx->m();
  const u64 p = ctx->p();
  const int N = ctx->prec_p(), M = ctx->trunc_u();
  const int nv = vary_alpha ? ctx->nvars() : 0;
  const int nrb = block.nrows();

  std::vector<PowerSeries2> Fpow(D + 1);
  Fpow[1] = F;
  for (int k = 2; k <= D; ++k) Fpow[k] = Fpow[k - 1] * F;
  auto compose_F = [&](const PowerSeries1& h) {
    PowerSeries2 r(ctx, D);
    for (int k = 1; k <= D; ++k)
      if (!h.coeff_is_zero(k)) r += Fpow[k].scaled(h.coeff(k));
    return r;
  };
  std::vector<PowerSeries2> dU;
  for (int i = 0; i < nv; ++i) dU.push_back(u_derivative(U, i));

  struct Branch {
    PowerSeries1 g;
    RingEndo alpha;
    std::vector<Param> pending;
    int stage = 1;
    // Unexpanded choice point: values for due are enumerated from next_code.
    std::vector<Param> due;
    u64 next_code = 0, combos = 0;
  };
  struct Leaf {
    PowerSeries1 g;
    std::vector<RingElem> u_images;
    bool open_alpha = false;  // an unresolved parameter still moves alpha
  };
  constexpr int kMaxBranches = 1 << 12;
  int branches = 0;
  std::vector<Leaf> leaves;
  std::string last_failure = "no branch survives";
  bool disagree = false;

  Branch root;
  root.alpha = witt_twist_endo(ctx, twist);
  if (vary_alpha)
    for (auto& im : root.alpha.u_images) im = RingElem::zero(ctx);
  root.g = PowerSeries1::variable(ctx, D);
  std::vector<Branch> stack{std::move(root)};
  const int last = N - 1 + M;

  while (!stack.empty() && !disagree) {
    if (!stack.back().due.empty()) {
      // Next child of a choice point; the all-zero choice comes first.
      Branch& cp = stack.back();
      if (++branches > kMaxBranches)
        fail(ErrorCode::NonUniqueSolution, "too many unresolved free directions at trunc_t " + std::to_string(D) +
                                               "; raise trunc_t");
      Branch child{cp.g, cp.alpha, cp.pending, cp.stage, {}, 0, 0};
      u64 x = cp.next_code++;
      for (const Param& P : cp.due) {
        const u64 c = x % p;
        x /= p;
        if (!c) continue;
        const RingElem ce = RingElem::from_int(ctx, static_cast<i64>(c));
        child.g += P.g.scaled(ce);
        for (int e = 0; e < nv; ++e) child.alpha.u_images[e] += P.a[e] * ce;
      }
      if (cp.next_code >= cp.combos) stack.pop_back();
      stack.push_back(std::move(child));
    }
    Branch br = std::move(stack.back());
    stack.pop_back();
    PowerSeries1& g = br.g;
    RingEndo& alpha = br.alpha;
    std::vector<Param>& pending = br.pending;
    auto target_law = [&]() { return vary_alpha ? base_change(FormalGroupLaw{U}, alpha).law : U; };
    bool dead = false;
    bool split = false;
  for (int s = br.stage; s <= last && !dead && !split; ++s) {
    // Second order terms of a parameter reach stage 2 * order.
    std::vector<Param> keep, due;
    for (auto& P : pending) (2 * P.order > s ? keep : due).push_back(std::move(P));
    pending = std::move(keep);
    if (!due.empty()) {
      u64 combos = 1;
      for (size_t i = 0; i < due.size(); ++i) {
        combos *= p;
        if (combos > static_cast<u64>(kMaxBranches)) {
          if (!first_leaf_only)
            fail(ErrorCode::NonUniqueSolution, "too many unresolved free directions at trunc_t " +
                                                   std::to_string(D) + "; raise trunc_t");
          combos = static_cast<u64>(kMaxBranches) + 1;
          break;
        }
      }
      stack.push_back(Branch{g, alpha, pending, s, std::move(due), 0, combos});
      split = true;
      break;
    }

    const PowerSeries2 G = target_law();
    const PowerSeries2 R = compose_F(g) - substitute_diag(G, g);
    if (R.is_zero() && pending.empty()) break;
    std::vector<PowerSeries2> J;
    if (!pending.empty()) {
      const PowerSeries2 G1 = substitute_diag(partial_x_ring(G), g);
      const PowerSeries2 G2 = G1.swapped();
      std::vector<PowerSeries2> dG;
      for (int i = 0; i < nv; ++i) dG.push_back(substitute_diag(twist_coeffs(dU[i], alpha), g));
      for (const auto& P : pending) {
        PowerSeries2 j = compose_F(P.g) - G1 * PowerSeries2::in_x(P.g) - G2 * PowerSeries2::in_y(P.g);
        for (int i = 0; i < nv; ++i)
          if (!P.a[i].is_zero()) j -= dG[i].scaled(P.a[i]);
        J.push_back(std::move(j));
      }
    }
    if (R.order() < s) {
      last_failure = "residual left the filtration at stage " + std::to_string(s);
      dead = true;
      break;
    }
    bool left = false;
    for (const auto& j : J) left = left || j.order() < s;
    if (left) {
      last_failure = "parameter left the filtration at stage " + std::to_string(s);
      dead = true;
      break;
    }

    struct Mu {
      int mon, a;
    };
    std::vector<Mu> mus;
    for (int mon = 0; mon < ctx->num_monomials(); ++mon) {
      const int a = s - ctx->monomial_degree(mon);
      if (a >= 0 && a < N) mus.push_back({mon, a});
    }
    const int B = static_cast<int>(mus.size());
    const int q = static_cast<int>(pending.size());
    const int ng = block.ngamma(), ne = nv * m;
    const int nrows = B * nrb;
    const int ncols = q + B * ng + B * ne;
    // Pending parameters first: when one is interchangeable with a new
    // unknown it is pinned here and the new, higher order unknown stays free.
    auto graded = [&](const PowerSeries2& X, int b, std::vector<u64>& out_col, int row0, bool negate) {
      const u64 pa = ipow(p, mus[b].a);
      for (size_t r = 0; r < block.rows.size(); ++r) {
        const u64* c = X.raw(block.rows[r].first, block.rows[r].second) + static_cast<size_t>(mus[b].mon) * m;
        for (int d = 0; d < m; ++d) {
          u64 v = (c[d] / pa) % p;
          if (negate && v) v = p - v;
          out_col[row0 + r * m + d] = v;
        }
      }
    };
    std::vector<u64> rhs(nrows);
    bool any = false;
    for (int b = 0; b < B; ++b) graded(R, b, rhs, b * nrb, false);
    for (u64 v : rhs) any = any || v;
    std::vector<std::vector<u64>> pcols(q, std::vector<u64>(nrows));
    for (int P = 0; P < q; ++P) {
      for (int b = 0; b < B; ++b) graded(J[P], b, pcols[P], b * nrb, true);
      for (u64 v : pcols[P]) any = any || v;
    }
    if (!any) continue;

    std::vector<u64> mat(static_cast<size_t>(nrows) * ncols, 0);
    auto colptr = [&](int c, int r) -> u64& { return mat[static_cast<size_t>(r) * ncols + c]; };
    for (int b = 0; b < B; ++b) {
      for (int c = 0; c < ng; ++c)
        for (int r = 0; r < nrb; ++r) colptr(q + b * ng + c, b * nrb + r) = block.cols[c][r];
      for (int c = 0; c < ne; ++c)
        for (int r = 0; r < nrb; ++r) colptr(q + B * ng + b * ne + c, b * nrb + r) = block.cols[ng + c][r];
    }
    for (int P = 0; P < q; ++P)
      for (int r = 0; r < nrows; ++r) colptr(P, r) = pcols[P][r];
    std::vector<u64> A = mat;
    ModSolver solver(p, 1, nrows, ncols, std::move(mat));
    auto sol = solver.solve(rhs);
    if (!sol) {
      last_failure = "stage " + std::to_string(s) + " system is inconsistent (law axioms or precision)";
      dead = true;
      break;
    }

    // Ring-level direction of a solution vector x.
    auto direction = [&](const std::vector<u64>& x) {
      Param d;
      d.g = PowerSeries1(ctx, D);
      d.a.assign(nv, RingElem::zero(ctx));
      for (int b = 0; b < B; ++b) {
        const u64 pa = ipow(p, mus[b].a);
        const int off = mus[b].mon * m;
        for (int deg = 1; deg <= D; ++deg)
          for (int dd = 0; dd < m; ++dd) {
            const u64 v = x[q + b * ng + (deg - 1) * m + dd];
            if (v) d.g.raw(deg)[off + dd] = ctx->addm(d.g.raw(deg)[off + dd], ctx->mulm(v, pa));
          }
        for (int e = 0; e < nv; ++e)
          for (int dd = 0; dd < m; ++dd) {
            const u64 v = x[q + B * ng + b * ne + e * m + dd];
            if (v) d.a[e].scalar(mus[b].mon)[dd] = ctx->addm(d.a[e].scalar(mus[b].mon)[dd], ctx->mulm(v, pa));
          }
      }
      for (int P = 0; P < q; ++P) {
        const u64 v = x[P];
        if (!v) continue;
        const RingElem c = RingElem::from_int(ctx, static_cast<i64>(v));
        d.g += pending[P].g.scaled(c);
        for (int e = 0; e < nv; ++e) d.a[e] += pending[P].a[e] * c;
      }
      return d;
    };
    const Param step = direction(*sol);
    std::vector<Param> next;
    for (int c = 0; c < ncols; ++c) {
      if (solver.column_is_pivot(c)) continue;
      std::vector<u64> col(nrows);
      bool nz = false;
      for (int r = 0; r < nrows; ++r) {
        const u64 v = A[static_cast<size_t>(r) * ncols + c];
        col[r] = v ? p - v : 0;
        nz = nz || v;
      }
      std::vector<u64> kv(ncols, 0);
      if (nz) kv = *solver.solve(col);
      kv[c] = (kv[c] + 1) % p;
      Param d = direction(kv);
      if (d.g.is_zero() && std::all_of(d.a.begin(), d.a.end(), [](const RingElem& x) { return x.is_zero(); })) continue;
      d.order = d.g.order();
      for (const auto& x : d.a) d.order = std::min(d.order, x.order());
      next.push_back(std::move(d));
    }
    g += step.g;
    for (int e = 0; e < nv; ++e) alpha.u_images[e] += step.a[e];
    pending = std::move(next);
  }
    if (dead || split) continue;
    if (compose_F(g) != substitute_diag(target_law(), g)) {
      last_failure = "residual survives the last stage";
      continue;
    }
    Leaf leaf{g, alpha.u_images, false};
    for (const auto& P : pending)
      for (const auto& a : P.a) leaf.open_alpha = leaf.open_alpha || !a.is_zero();
    if (!leaves.empty() && (leaf.open_alpha || leaf.u_images != leaves.front().u_images)) disagree = true;
    if (leaves.empty() && leaf.open_alpha) disagree = true;
    leaves.push_back(std::move(leaf));
    if (first_leaf_only) break;
  }
  if (leaves.empty()) fail(ErrorCode::ObstructionUnsolvable, last_failure);
  StageResult out;
  out.g = leaves.front().g;
  out.u_images = leaves.front().u_images;
  out.alpha_unique = !disagree;
  return out;
}

ClassifiedDeformation classify_impl(const FormalGroupLaw& F, const FormalGroupLaw& F_univ, int twist,
                                    bool require_unique) {
  require_same_ring(F.ctx(), F_univ.ctx(), "classify");
  const Ctx& ctx = F.ctx();
  const int D = std::min(F.trunc(), F_univ.trunc());
  const PowerSeries2 Fd = F.law.truncated(D);
  const PowerSeries2 Ud = F_univ.law.truncated(D);
  const Ctx k = residue_context(ctx);
  const PowerSeries2 Gbar = twist_residue(residue_series(Ud, k, D), twist);
  if (residue_series(Fd, k, D) != Gbar)
    fail(ErrorCode::NotADeformation, "residue law differs from the sigma^" + std::to_string(twist) +
                                         " twist of the universal special fibre");
  std::vector<PowerSeries2> dirs;
  for (int i = 0; i < ctx->nvars(); ++i) dirs.push_back(twist_residue(u_direction(Ud, k, i, D), twist));
  const BaseBlock block = build_block(Gbar, dirs);
  if (!eps_determined(block, ctx->p()))
    fail(ErrorCode::NonUniqueSolution, "deformation directions are coboundaries at trunc_t " + std::to_string(D) +
                                           "; raise trunc_t");
  StageResult r = run_stages(Fd, Ud, twist, true, block, !require_unique);
  if (require_unique && !r.alpha_unique)
    fail(ErrorCode::NonUniqueSolution, "classifying map is not determined at trunc_t " + std::to_string(D) +
                                           "; raise trunc_t");
  ClassifiedDeformation out;
  out.alpha = witt_twist_endo(ctx, twist);
  out.alpha.u_images = r.u_images;
  out.star_iso = r.g;
  out.target_twist = twist;
  return out;
}

}  // namespace

RingEndo witt_twist_endo(const Ctx& ctx, int j) {
  RingEndo e = RingEndo::identity(ctx);
  const int m = ctx->m();
  e.frobenius_power = ((j % m) + m) % m;
  return e;
}

ClassifiedDeformation classify(const FormalGroupLaw& F, const FormalGroupLaw& F_univ, int twist) {
  return classify_impl(F, F_univ, twist, true);
}

PowerSeries1 solve_star_iso(const FormalGroupLaw& F, const FormalGroupLaw& G) {
  require_same_ring(F.ctx(), G.ctx(), "solve_star_iso");
  const Ctx& ctx = F.ctx();
  const int D = std::min(F.trunc(), G.trunc());
  const PowerSeries2 Fd = F.law.truncated(D);
  const PowerSeries2 Gd = G.law.truncated(D);
  const Ctx k = residue_context(ctx);
  const PowerSeries2 Gbar = residue_series(Gd, k, D);
  if (residue_series(Fd, k, D) != Gbar) fail(ErrorCode::NotADeformation, "residue laws differ");
  if (Fd == Gd) return PowerSeries1::variable(ctx, D);
  return run_stages(Fd, Gd, 0, false, build_block(Gbar, {}), true).g;
}

DeformationTag pushforward_tag(const DeformationTag& tag, const Isogeny& iso) {
  if (!(tag.law == iso.source)) fail(ErrorCode::InvalidArgument, "isogeny source differs from the tagged law");
  if (!iso.target) fail(ErrorCode::InvalidArgument, "isogeny has no target law");
  DeformationTag out = tag;
  out.law = *iso.target;
  const int m = tag.law.ctx()->m();
  out.base_twist = (tag.base_twist + iso.degree_log) % m;
  return out;
}

RingEndo frobenius_assoc(const FormalGroupLaw& F_univ, int r) {
  const Ctx& ctx = F_univ.ctx();
  if (r < 0) fail(ErrorCode::InvalidArgument, "negative level");
  const KernelPolynomial k = kernel_polynomial(F_univ, r);
  const Isogeny iso = quotient_isogeny(F_univ, k);
  const FormalGroupLaw& Q = *iso.target;
  const int K = Q.trunc();

  // l o f = [p^r] gives a star-isomorphism Q -> F_univ. If the candidate
  // (sigma^{rn}, u -> u) fixes F_univ, then l is a star-isomorphism from Q to
  // its pullback, and classifying maps are unique.
  RingEndo cand = witt_twist_endo(ctx, r * ctx->n());
  u64 pr = 1;
  for (int i = 0; i < r; ++i) pr *= ctx->p();
  const PowerSeries1 l =
      composition_divide(n_series(F_univ, static_cast<i64>(pr)), iso.series).truncated(K);
  const PowerSeries2 FK = F_univ.law.truncated(K);
  bool star = true;
  for (int i = 0; i <= K && star; ++i) {
    const ResidueElem e = residue_reduce(l.coeff(i));
    for (size_t c = 0; c < e.c.size(); ++c)
      if (e.c[c] != ((i == 1 && c == 0) ? 1u : 0u)) star = false;
  }
  if (star && twist_coeffs(FK, cand) == FK && compose_outer(l, Q.law) == substitute_diag(FK, l)) return cand;

  // Otherwise classify the quotient; where the truncation leaves the map
  // undetermined the free directions are set to zero.
  const ClassifiedDeformation c = classify_impl(Q, F_univ, r * ctx->n(), false);
  invert_endo(c.alpha);  // NonUnitJacobian when the linear part degenerates
  return c.alpha;
}

}  // namespace fgl
