#include "doctest.h"
#include "fgl/json_io.hpp"

using namespace fgl;

TEST_CASE("law round trip through JSON") {
  for (auto d : {make_descriptor(2, 2, 2, 3, 2), make_descriptor(5, 1, 1, 2, 0)}) {
    const FormalGroupLaw U = universal_deformation(d, 8);
    const FormalGroupLaw G = conjugate_law(U, random_star_iso(U.ctx(), 8, 3));
    const std::string text = dump(to_json(G, 1));
    const DeformationTag back = law_from_json(parse_json(text));
    CHECK(back.law == G);
    CHECK(back.base_twist == 1);
    CHECK(dump(to_json(back)) == text);
  }
}

TEST_CASE("series, kernels and endomorphisms round trip") {
  const FormalGroupLaw U = universal_deformation(make_descriptor(2, 1, 2, 3, 2), 12);
  const Ctx& c = U.ctx();
  const PowerSeries1 s = random_star_iso(c, 12, 5);
  CHECK(series1_from_json(c, parse_json(dump(to_json(s)))) == s);
  CHECK(series2_from_json(c, to_json(U.law)) == U.law);
  const KernelPolynomial k = kernel_polynomial(U, 1);
  const KernelPolynomial k2 = kernel_from_json(U, to_json(k));
  CHECK(k2.g.coeffs == k.g.coeffs);
  CHECK(k2.torsion_level == 1);
  RingEndo a = RingEndo::identity(c);
  a.u_images[0] = RingElem::u(c, 0) * RingElem::u(c, 0) + RingElem::from_int(c, 6);
  CHECK(endo_from_json(to_json(a)) == a);
  const RingElem x = RingElem::u(c, 0).pow(2) * RingElem::from_int(c, 5) + RingElem::from_int(c, 3);
  CHECK(ring_elem_from_json(c, to_json(x)) == x);
}

TEST_CASE("malformed input is a ParseError") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { parse_json("{not json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { descriptor_from_json(parse_json(R"({"p": 2})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { law_from_json(parse_json(R"({"law": []})")); }) == ErrorCode::ParseError);
}

TEST_CASE("a parsed law must satisfy the axioms") {
  const Ctx c = RingContext::create(make_descriptor(3, 1, 1, 2, 0));
  Json j = to_json(multiplicative_law(c, 5));
  PowerSeries2 bad = multiplicative_law(c, 5).law;
  bad.set_coeff(1, 2, RingElem::from_int(c, 1));
  j["law"] = to_json(bad);
  try {
    law_from_json(j);
    FAIL("accepted a non-law");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AxiomFailure);
  }
}
