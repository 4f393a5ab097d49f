#include "fgl/norm_coherence.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace fgl {

namespace {

u64 ipow(u64 b, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

CoherenceDefect make_defect(PowerSeries1 a) {
  CoherenceDefect d;
  d.filtration_order = a.order();
  d.a = std::move(a);
  return d;
}

PowerSeries1 identity_series(const Ctx& ctx, int D) { return PowerSeries1::variable(ctx, D); }

// Star-isomorphism F -> beta^* F, or t when beta fixes F.
PowerSeries1 twist_iso(const FormalGroupLaw& F, const RingEndo& beta) {
  const PowerSeries2 tw = twist_coeffs(F.law, beta);
  if (tw == F.law) return identity_series(F.ctx(), F.trunc());
  return solve_star_iso(F, FormalGroupLaw{tw});
}

// The law s^* F0 with the data of F0 that does not change under s.
struct PairState {
  FormalGroupLaw F0;
  RingEndo phi;
  PowerSeries1 p0;          // [p]_{F0}
  DistinguishedPoly g0;     // divisor of F0[p]
  PowerSeries1 psi0;        // F0 -> phi^* F0
};

PairState make_state(const FormalGroupLaw& F0, const RingEndo& phi) {
  const Ctx& ctx = F0.ctx();
  require_same_ring(ctx, phi.source, "normalize");
  require_same_ring(ctx, phi.target, "normalize");
  const u64 deg = ipow(ctx->p(), ctx->n());
  if (static_cast<u64>(F0.trunc()) < 2 * deg)
    fail(ErrorCode::TruncationTooSmall, "need trunc_t >= 2 p^n = " + std::to_string(2 * deg));
  PairState st{F0, phi, n_series(F0, static_cast<i64>(ctx->p())), {}, {}};
  st.g0 = weierstrass_prepare(st.p0).g;
  if (static_cast<u64>(st.g0.degree()) != deg)
    fail(ErrorCode::NotADeformation, "[p] has Weierstrass degree " + std::to_string(st.g0.degree()) + ", expected " +
                                         std::to_string(deg));
  st.psi0 = twist_iso(F0, phi);
  return st;
}

// For F = s^* F0: f_p = N o s^{-1} with N = prod_r s(F0(x, r)), and
// [p]_F = s o p0 o s^{-1}, so l o N = s o p0.
CoherenceDefect pair_defect(const PairState& st, const PowerSeries1& s) {
  const PowerSeries1 N = composite_norm(st.g0, s, st.F0.law);
  const PowerSeries1 l = composition_divide(compose1(s, st.p0), N);
  const int K = l.trunc();
  const PowerSeries1 sk = s.truncated(K);
  const PowerSeries1 psi = compose1(compose1(twist_coeffs(sk, st.phi), st.psi0.truncated(K)), reversion(sk));
  CoherenceDefect d = make_defect(compose1(psi, l) - identity_series(s.ctx(), K));
  const int D = std::min(st.F0.trunc(), s.trunc());
  d.certified_trunc = std::min(K, certified_out_trunc(s.ctx()->desc(), D));
  return d;
}

int default_max_iter(const Ctx& ctx) {
  if (const char* env = std::getenv("FGF_MAX_ITER")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v < 1000000) return static_cast<int>(v);
    fail(ErrorCode::InvalidArgument, std::string("FGF_MAX_ITER is not a nonnegative integer: ") + env);
  }
  return ctx->prec_p() + ctx->trunc_u();
}

RingEndo power_endo(const RingEndo& phi, int s) {
  RingEndo r = RingEndo::identity(phi.source);
  for (int i = 0; i < s; ++i) r = compose_endo(phi, r);
  return r;
}

}  // namespace

CoherenceDefect defect(const FormalGroupLaw& F, const RingEndo& phi) {
  const PairState st = make_state(F, phi);
  return pair_defect(st, identity_series(F.ctx(), F.trunc()));
}

CoherenceDefect defect(const FormalGroupLaw& F, const FormalGroupLaw& F_univ) {
  return defect(F, frobenius_assoc(F_univ, 1));
}

NormalizationResult normalize_presented(const FormalGroupLaw& F0, const PowerSeries1& s0, const RingEndo& phi,
                                        NormalizeOptions opt) {
  const Ctx& ctx = F0.ctx();
  require_same_ring(ctx, s0.ctx(), "normalize");
  const int D = std::min(F0.trunc(), s0.trunc());
  const int out = opt.out_trunc < 0 ? D : opt.out_trunc;
  if (out > D) fail(ErrorCode::TruncationTooSmall, "output truncation exceeds the input law");
  if (!s0.coeff_is_zero(0) || !s0.coeff(1).is_unit()) fail(ErrorCode::NonUnitLinear, "coordinate is not invertible");
  const int max_iter = opt.max_iter < 0 ? default_max_iter(ctx) : opt.max_iter;
  const FormalGroupLaw FD{F0.law.truncated(D)};
  const PairState st = make_state(FD, phi);
  const RingEndo phi_inv = invert_endo(phi);

  NormalizationResult res;
  PowerSeries1 s = s0.truncated(D);
  CoherenceDefect a = pair_defect(st, s);
  int last_order = 0;
  PowerSeries1 last;
  while (!a.is_zero()) {
    if (a.filtration_order <= last_order)
      fail(ErrorCode::NoProgress, "defect filtration order " + std::to_string(a.filtration_order) + " after order " +
                                      std::to_string(last_order) + "; previous defect " + last.to_string() +
                                      ", current defect " + a.a.to_string());
    if (res.iterations >= max_iter)
      fail(ErrorCode::NoProgress, "iteration cap " + std::to_string(max_iter) + " reached at filtration order " +
                                      std::to_string(a.filtration_order));
    res.orders.push_back(a.filtration_order);
    last_order = a.filtration_order;
    last = a.a;
    const PowerSeries1 delta = identity_series(ctx, D) - twist_coeffs(a.a, phi_inv).truncated(D);
    s = compose1(delta, s);
    ++res.iterations;
    a = pair_defect(st, s);
  }
  res.certified_trunc = a.certified_trunc;
  res.unique_trunc = std::min(out, unique_bound(ctx->desc(), D));
  res.certificate = std::move(a);
  res.law = conjugate_law(FormalGroupLaw{FD.law.truncated(out)}, s.truncated(out));
  const bool trivial_start = s0.truncated(D) == identity_series(ctx, D);
  res.coordinate_change = trivial_start ? std::move(s) : compose1(s, reversion(s0.truncated(D)));
  return res;
}

int unique_bound(const RingDescriptor& d, int work_trunc) {
  i64 w = work_trunc;
  const int e = d.n * (d.prec_p + d.trunc_u - 1);
  for (int i = 0; i < e && w > 0; ++i) w /= static_cast<i64>(d.p);
  return static_cast<int>(w);
}

NormalizationResult normalize(const FormalGroupLaw& F, const RingEndo& phi, NormalizeOptions opt) {
  return normalize_presented(F, identity_series(F.ctx(), F.trunc()), phi, opt);
}

NormalizationResult normalize(const FormalGroupLaw& F, const FormalGroupLaw& F_univ, NormalizeOptions opt) {
  return normalize(F, frobenius_assoc(F_univ, 1), opt);
}

int recommended_work_trunc(const RingDescriptor& desc, int D) {
  const int q = static_cast<int>(ipow(desc.p, desc.n));
  return q * D + (desc.prec_p + desc.trunc_u) * (q - 1);
}

int certified_out_trunc(const RingDescriptor& desc, int work_trunc) {
  const int q = static_cast<int>(ipow(desc.p, desc.n));
  return std::max(0, (work_trunc - (desc.prec_p + desc.trunc_u) * (q - 1)) / q);
}

NormalizationResult normalize_universal(const RingDescriptor& desc, int D, int work_trunc) {
  const int Dw = work_trunc < 0 ? recommended_work_trunc(desc, D) : work_trunc;
  if (Dw < D) fail(ErrorCode::TruncationTooSmall, "working truncation below the output truncation");
  const FormalGroupLaw Fu = universal_deformation(desc, Dw);
  const int q = static_cast<int>(ipow(desc.p, desc.n));
  // The classifying map of the quotient does not need the full working
  // truncation.
  const int Dphi = std::min(Dw, std::max(2 * q, 10 * q));
  const RingEndo phi = frobenius_assoc(FormalGroupLaw{Fu.law.truncated(Dphi)}, 1);
  NormalizeOptions opt;
  opt.out_trunc = D;
  return normalize(Fu, phi, opt);
}

namespace {

bool item_pass(const CoherenceDefect& d) {
  if (d.certified_trunc < 1)
    fail(ErrorCode::TruncationTooSmall, "defect is not determined in any degree at this truncation");
  return d.certified_zero();
}

}  // namespace

CoherenceReport check_coherence(const FormalGroupLaw& F, const FormalGroupLaw& F_univ,
                                const std::vector<KernelPolynomial>& kernels) {
  const Ctx& ctx = F.ctx();
  CoherenceReport rep;
  std::optional<RingEndo> phi;
  std::optional<RingEndo> alpha_inv;
  for (const KernelPolynomial& k : kernels) {
    CoherenceItem it;
    it.degree_log = k.r;
    if (k.g.degree() == 1) {
      it.g = identity_series(ctx, F.trunc());
      it.defect = make_defect(PowerSeries1(ctx, F.trunc()));
      it.defect.certified_trunc = F.trunc();
      it.pass = true;
      rep.items.push_back(std::move(it));
      continue;
    }
    // A divisor of F[p^s] is recognized even when supplied by hand.
    int level = k.torsion_level;
    if (level < 0 && k.r % ctx->n() == 0) {
      const KernelPolynomial full = kernel_polynomial(F, k.r / ctx->n());
      if (full.g.coeffs == k.g.coeffs) level = full.torsion_level;
    }
    it.torsion_level = level;
    PowerSeries1 g;
    if (level >= 1) {
      if (!phi) phi = frobenius_assoc(F_univ, 1);
      const PowerSeries1 f = companion_norm(k.g, F.law);
      const PowerSeries1 l = composition_divide(n_series(F, static_cast<i64>(ipow(ctx->p(), level))), f);
      const PowerSeries1 psi = twist_iso(F, power_endo(*phi, level));
      g = compose1(psi.truncated(l.trunc()), l);
    } else {
      const Isogeny iso = quotient_isogeny(F, k);
      if (!alpha_inv) alpha_inv = invert_endo(classify(F, F_univ, 0).alpha);
      const RingEndo alpha_h = classify(*iso.target, F_univ, k.r).alpha;
      const RingEndo beta = compose_endo(alpha_h, *alpha_inv);
      const int K = iso.target->trunc();
      g = solve_star_iso(*iso.target, FormalGroupLaw{twist_coeffs(F.law.truncated(K), beta)});
    }
    it.defect = make_defect(g - identity_series(ctx, g.trunc()));
    // same pollution margin as the p-defect, with q = deg g
    const int q = k.g.degree();
    const int margin = (ctx->prec_p() + ctx->desc().trunc_u) * (q - 1);
    it.defect.certified_trunc = std::min(g.trunc(), std::max(0, (F.trunc() - margin) / q));
    it.pass = item_pass(it.defect);
    it.g = std::move(g);
    rep.pass = rep.pass && it.pass;
    rep.items.push_back(std::move(it));
  }
  return rep;
}

FormalGroupLaw galois_twist(const FormalGroupLaw& F, int j) { return base_change(F, witt_twist_endo(F.ctx(), j)); }

FunctorialityReport functoriality_check(const FormalGroupLaw& input, const NormalizationResult& nc,
                                        const FormalGroupLaw& F_univ,
                                        const std::vector<std::vector<i64>>& specializations,
                                        bool with_quotient) {
  require_same_ring(input.ctx(), nc.law.ctx(), "functoriality_check");
  const Ctx& ctx = nc.law.ctx();
  const RingEndo phi = frobenius_assoc(F_univ, 1);
  FunctorialityReport rep;
  if (!specializations.empty()) {
    RingDescriptor td = ctx->desc();
    td.trunc_u = 0;
    const Ctx tctx = RingContext::create(td);
    // With no u-variables left the Frobenius of the target is its Witt part.
    RingEndo tphi = RingEndo::identity(tctx);
    tphi.frobenius_power = phi.frobenius_power;
    for (const std::vector<i64>& vals : specializations) {
      if (static_cast<int>(vals.size()) != ctx->nvars())
        fail(ErrorCode::InvalidArgument, "specialization needs " + std::to_string(ctx->nvars()) + " values");
      RingEndo beta;
      beta.source = ctx;
      beta.target = tctx;
      std::string name = "specialize";
      for (size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] % static_cast<i64>(ctx->p()) != 0)
          fail(ErrorCode::InvalidArgument, "specialization value " + std::to_string(vals[i]) + " is not in pZ");
        beta.u_images.push_back(RingElem::from_int(tctx, vals[i]));
        // u^{M+1} = 0 in the source, so the image must vanish mod p^N too.
        int v = 0;
        for (i64 x = vals[i]; x != 0 && x % static_cast<i64>(ctx->p()) == 0 && v < td.prec_p; x /= static_cast<i64>(ctx->p())) ++v;
        if (vals[i] != 0 && v * (ctx->desc().trunc_u + 1) < td.prec_p)
          fail(ErrorCode::InvalidArgument, "specialization value " + std::to_string(vals[i]) +
                                               " does not define a map: its power M+1 is nonzero mod p^N");
        name += (i ? "," : " u") + std::to_string(i + 1) + "=" + std::to_string(vals[i]);
      }
      FunctorialityItem it;
      it.name = name;
      it.defect = defect(base_change(nc.law, beta), tphi);
      it.pass = item_pass(it.defect);
      rep.pass = rep.pass && it.pass;
      rep.items.push_back(std::move(it));
    }
  }
  if (with_quotient) {
    // F = s^* input and l o f_p = [p]_F, so F / F[p] = l^{-1} F(l, l) is the
    // conjugate of input by l^{-1} o s.
    const int Dw = std::min(input.trunc(), nc.coordinate_change.trunc());
    const FormalGroupLaw F0{input.law.truncated(Dw)};
    const PowerSeries1 s = nc.coordinate_change.truncated(Dw);
    const PowerSeries1 p0 = n_series(F0, static_cast<i64>(ctx->p()));
    const DistinguishedPoly g0 = weierstrass_prepare(p0).g;
    const PowerSeries1 l = composition_divide(compose1(s, p0), composite_norm(g0, s, F0.law));
    const int T = std::min(l.trunc(), certified_out_trunc(ctx->desc(), Dw));
    const PowerSeries1 r = compose1(reversion(l.truncated(T)), s.truncated(T));
    DeformationTag tag{conjugate_law(FormalGroupLaw{F0.law.truncated(T)}, r), 0, true};
    tag.base_twist = ctx->n() % ctx->m();
    FunctorialityItem it;
    it.name = "quotient F[p]";
    it.defect = defect(tag.law, phi);
    it.pass = item_pass(it.defect);
    rep.pass = rep.pass && it.pass;
    rep.items.push_back(std::move(it));
  }
  return rep;
}

}  // namespace fgl
