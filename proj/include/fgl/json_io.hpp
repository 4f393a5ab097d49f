#pragma once

#include "fgl/norm_coherence.hpp"
#include "json.hpp"

namespace fgl {

// Key order is kept as written so artifacts diff cleanly.
using Json = nlohmann::ordered_json;

// Scalars are decimal strings of residues mod p^N; series coefficients are in
// graded-lex order and zero terms are omitted. Parsers throw ParseError.
Json to_json(const RingDescriptor& d);
RingDescriptor descriptor_from_json(const Json& j);

Json to_json(const RingElem& a);
RingElem ring_elem_from_json(const Ctx& ctx, const Json& j);

Json to_json(const PowerSeries1& f);
PowerSeries1 series1_from_json(const Ctx& ctx, const Json& j);

Json to_json(const PowerSeries2& f);
PowerSeries2 series2_from_json(const Ctx& ctx, const Json& j);

// {"descriptor", "law", "tags": {"base_twist"}}.
Json to_json(const FormalGroupLaw& F, int base_twist = 0);
Json to_json(const DeformationTag& tag);
// Validates the group law axioms.
DeformationTag law_from_json(const Json& j);

Json to_json(const DistinguishedPoly& g);
DistinguishedPoly poly_from_json(const Ctx& ctx, const Json& j);

Json to_json(const KernelPolynomial& k);
// Shape checks through make_kernel; torsion_level is restored when present.
KernelPolynomial kernel_from_json(const FormalGroupLaw& F, const Json& j);

Json to_json(const Isogeny& iso);
Json to_json(const RingEndo& phi);
RingEndo endo_from_json(const Json& j);
Json to_json(const ClassifiedDeformation& c);
Json to_json(const CoherenceDefect& d);
Json to_json(const NormalizationResult& r);
Json to_json(const CoherenceReport& r);
Json to_json(const FunctorialityReport& r);

// Two-space indentation and a trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

}  // namespace fgl
