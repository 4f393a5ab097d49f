#pragma once

#include <optional>

#include "fgl/fgl_core.hpp"

namespace fgl {

// Divisor of a finite subgroup: g monic distinguished with g(0) = 0 and
// deg g = p^r.
struct KernelPolynomial {
  DistinguishedPoly g;
  int r = 0;  // log_p deg g
  FormalGroupLaw source;
  int torsion_level = -1;  // s when g is the divisor of F[p^s]
};

struct Isogeny {
  FormalGroupLaw source;
  std::optional<FormalGroupLaw> target;  // filled by quotient_fgl
  PowerSeries1 series;
  int degree_log = 0;
  int frobenius_power = 0;
};

// Weierstrass polynomial of [p^r]_F, of degree p^{r n}.
KernelPolynomial kernel_polynomial(const FormalGroupLaw& F, int r);
// Wraps a user supplied divisor after shape checks (InvalidArgument).
KernelPolynomial make_kernel(const FormalGroupLaw& F, const DistinguishedPoly& g);
// The kernel g = t.
KernelPolynomial trivial_kernel(const FormalGroupLaw& F);

// Norm of x along F restricted to the roots of g. Target left empty.
Isogeny lubin_isogeny(const FormalGroupLaw& F, const KernelPolynomial& g);

// Phi with Phi(h(x), h(y)) = h(F(x, y)) by undetermined coefficients. With
// deg the least degree where h has a unit coefficient and c = (N+M)(deg-1),
// h is read through trunc(F) - c and Phi is returned at
// (trunc(F) - 2c) / deg, or out_trunc if smaller.
FormalGroupLaw quotient_fgl(const FormalGroupLaw& F, const PowerSeries1& h, int out_trunc = -1);

// lubin_isogeny, then the target law. For g the divisor of F[p^s] the target
// is l^{-1}(F(l(u), l(v))) where l(h(x)) = [p^s](x); otherwise quotient_fgl.
// Phi(u, v) at degree k needs F up to degree about p^{r} k, so the target is
// returned at truncation out_trunc, by default trunc(F) / p^r.
Isogeny quotient_isogeny(const FormalGroupLaw& F, const KernelPolynomial& g, int out_trunc = -1);

// h(F(x,y)) == Phi(h(x), h(y)) coefficientwise at the target's truncation.
bool isogeny_certificate(const Isogeny& iso);

// Residue reduction of h equals x^{p^degree_log}.
bool residue_is_frobenius(const PowerSeries1& h, int degree_log);

}  // namespace fgl
