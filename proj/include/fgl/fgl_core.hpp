#pragma once

#include "fgl/series.hpp"

namespace fgl {

// A bivariate series certified to satisfy the group law axioms at its
// truncation. Construct through validate_fgl or the named constructors.
struct FormalGroupLaw {
  PowerSeries2 law;

  const Ctx& ctx() const { return law.ctx(); }
  int trunc() const { return law.trunc(); }
  bool operator==(const FormalGroupLaw& o) const { return law == o.law; }
};

// Deformation data (i, eta) with eta = id; i is sigma^base_twist.
struct DeformationTag {
  FormalGroupLaw law;
  int base_twist = 0;
  bool eta_normalized = true;
};

// Checks unit, symmetry, then associativity; throws AxiomFailure naming the
// first failing identity and its total degree.
FormalGroupLaw validate_fgl(const PowerSeries2& F);

FormalGroupLaw additive_law(const Ctx& ctx, int trunc_t);
FormalGroupLaw multiplicative_law(const Ctx& ctx, int trunc_t);           // x + y + xy
FormalGroupLaw signed_multiplicative_law(const Ctx& ctx, int trunc_t);    // x + y - xy

// F(a(t), b(t)).
PowerSeries1 formal_add(const FormalGroupLaw& F, const PowerSeries1& a, const PowerSeries1& b);
PowerSeries1 formal_neg(const FormalGroupLaw& F);
PowerSeries1 n_series(const FormalGroupLaw& F, i64 n);

// Honda law of height n over F_{p^m}, on descriptor (p, m, n, N=1, M=0).
FormalGroupLaw honda_fgl(u64 p, int n, int m, int trunc_t);

// Universal deformation over the ring of desc, from the functional-equation
// logarithm with v_i = u_i (i < n), v_n = 1 and lift u_j -> u_j^p.
FormalGroupLaw universal_deformation(const RingDescriptor& desc, int trunc_t);

// s(F(s^{-1}(x), s^{-1}(y))): the law in the coordinate s(x).
FormalGroupLaw conjugate_law(const FormalGroupLaw& F, const PowerSeries1& s);

// t + (terms in m) with coefficients drawn from mt19937_64(seed): the linear
// coefficient in 1 + m, the others in m.
PowerSeries1 random_star_iso(const Ctx& ctx, int trunc_t, u64 seed);

// Coefficientwise image along a ring map (base change, Galois twist).
FormalGroupLaw base_change(const FormalGroupLaw& F, const RingEndo& phi);

}  // namespace fgl
