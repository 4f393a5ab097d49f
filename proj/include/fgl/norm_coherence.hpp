#pragma once

#include <string>
#include <vector>

#include "fgl/deformation.hpp"

namespace fgl {

// g_p(t) = t + a(t).
struct CoherenceDefect {
  PowerSeries1 a;
  int filtration_order = kInfiniteOrder;  // kInfiniteOrder when a == 0
  // Coefficients of a above this degree also depend on terms of the law
  // beyond its truncation.
  int certified_trunc = 0;

  bool is_zero() const { return a.is_zero(); }
  bool certified_zero() const { return a.truncated(certified_trunc).is_zero(); }
};

struct NormalizationResult {
  FormalGroupLaw law;               // coordinate_change-conjugate of the input
  PowerSeries1 coordinate_change;   // at the working truncation
  int iterations = 0;               // corrective steps taken
  CoherenceDefect certificate;      // zero at certified_trunc
  int certified_trunc = 0;
  // Degree through which the output does not depend on which certified
  // solution was reached (empirical: Dw / p^{n(N+M-1)}). Coefficients above it
  // can differ between star-isomorphic inputs.
  int unique_trunc = 0;
  std::vector<int> orders;          // filtration order of each nonzero defect
};

struct NormalizeOptions {
  int out_trunc = -1;  // default: truncation of the input law
  int max_iter = -1;   // default: FGF_MAX_ITER or N + M
};

// Defect of l_p against f_p: g_p = psi o l, where l o f_p = [p]_F and psi is
// the star-isomorphism F -> phi^* F (t when the two agree). The result has
// truncation trunc(F) / p^n.
CoherenceDefect defect(const FormalGroupLaw& F, const RingEndo& phi);
// Same, with phi = frobenius_assoc(F_univ, 1).
CoherenceDefect defect(const FormalGroupLaw& F, const FormalGroupLaw& F_univ);

// Iterates delta = t - a^{phi^{-1}}, conjugating by delta until the defect
// vanishes. The law is carried as s^* F where F is the input, so each step
// only needs one-variable series at the input truncation.
NormalizationResult normalize(const FormalGroupLaw& F, const FormalGroupLaw& F_univ, NormalizeOptions opt = {});
NormalizationResult normalize(const FormalGroupLaw& F, const RingEndo& phi, NormalizeOptions opt = {});
// Normalizes s0^* F0 without forming it at the working truncation; the
// coordinate change is relative to s0^* F0.
NormalizationResult normalize_presented(const FormalGroupLaw& F0, const PowerSeries1& s0, const RingEndo& phi,
                                        NormalizeOptions opt = {});

// Working truncation for a certificate at D in the normalizer.
int recommended_work_trunc(const RingDescriptor& desc, int D);
// Largest D whose recommended working truncation is at most work_trunc.
int certified_out_trunc(const RingDescriptor& desc, int work_trunc);  // 0 when none
// Degree pinned by the truncated input at working truncation work_trunc.
int unique_bound(const RingDescriptor& desc, int work_trunc);

// Normalizes the universal deformation built at the working truncation and
// returns the law at D.
NormalizationResult normalize_universal(const RingDescriptor& desc, int D, int work_trunc = -1);

struct CoherenceItem {
  int degree_log = 0;
  int torsion_level = -1;
  PowerSeries1 g;  // star-isomorphism F / H -> beta^* F
  CoherenceDefect defect;
  bool pass = false;
};

struct CoherenceReport {
  bool pass = true;
  std::vector<CoherenceItem> items;
};

// One item per kernel. Divisors of F[p^s] go through l o f_H = [p^s]; other
// subgroups are compared through the classifying maps of F and F / H. An
// item passes when g - t vanishes through (trunc(F) - (N+M)(q-1)) / q,
// q = deg g; TruncationTooSmall when that is below 1.
CoherenceReport check_coherence(const FormalGroupLaw& F, const FormalGroupLaw& F_univ,
                                const std::vector<KernelPolynomial>& kernels);

// sigma^j on every coefficient.
FormalGroupLaw galois_twist(const FormalGroupLaw& F, int j);

struct FunctorialityItem {
  std::string name;
  CoherenceDefect defect;
  bool pass = false;
};

struct FunctorialityReport {
  bool pass = true;
  std::vector<FunctorialityItem> items;
};

// input is the law that nc normalized (at its working truncation).
// (i) For each value list, u_i -> values[i] (integers in pZ) into the
// descriptor (p, m, n, N, M = 0), then the defect there. (ii) When
// with_quotient, F / F[p] with the pushed tag, then its defect. The quotient
// is formed from input and the coordinate change, so it keeps the working
// precision. Items pass when the defect vanishes through certified_trunc.
FunctorialityReport functoriality_check(const FormalGroupLaw& input, const NormalizationResult& nc,
                                        const FormalGroupLaw& F_univ,
                                        const std::vector<std::vector<i64>>& specializations,
                                        bool with_quotient);

}  // namespace fgl
