#pragma once

#include "fgl/isogeny.hpp"

namespace fgl {

struct ClassifiedDeformation {
  RingEndo alpha;
  PowerSeries1 star_iso;  // g with g(F(x,y)) = (alpha^* F_univ)(g(x), g(y))
  int target_twist = 0;
};

// Successive approximation over the (p, u)-adic filtration. Stage s solves
// one linear system over F_p per basis monomial of m^s / m^{s+1}; the system
// matrix depends only on the residue law and is factored once.
// Free coboundary unknowns (truncated automorphisms of the residue law) are
// set to zero, so g is canonical but alpha is the unique part of the answer.
ClassifiedDeformation classify(const FormalGroupLaw& F, const FormalGroupLaw& F_univ, int twist);

// The star-isomorphism g: F -> G with g = t mod m, G held fixed.
// ObstructionUnsolvable when F and G are not star-isomorphic at truncation.
PowerSeries1 solve_star_iso(const FormalGroupLaw& F, const FormalGroupLaw& G);

DeformationTag pushforward_tag(const DeformationTag& tag, const Isogeny& iso);

// Classifying map of F_univ / F_univ[p^r] with residue twist r n.
// The target is computed at truncation trunc(F_univ) / p^{rn}.
RingEndo frobenius_assoc(const FormalGroupLaw& F_univ, int r);

// sigma^j on Witt scalars, u_i fixed.
RingEndo witt_twist_endo(const Ctx& ctx, int j);

}  // namespace fgl
