#include <random>

#include "doctest.h"
#include "fgl/fgl_core.hpp"
#include "fgl_internal.hpp"

using namespace fgl;

namespace {

struct Frozen {
  int i, j;
  i64 c;
  std::vector<int> u;  // exponent of u_1
};

// Values from the rational construction (fgl::detail), which shares no code
// with the modular one.
void check_frozen(const FormalGroupLaw& F, const std::vector<Frozen>& vals) {
  const Ctx& c = F.ctx();
  for (const Frozen& v : vals) {
    RingElem want = RingElem::from_int(c, v.c);
    if (!v.u.empty()) want = want * RingElem::u(c, 0).pow(static_cast<u64>(v.u[0]));
    CHECK_MESSAGE(F.law.coeff(v.i, v.j) == want, "coefficient x^" << v.i << " y^" << v.j);
  }
}

}  // namespace

TEST_CASE("universal deformation matches the rational oracle") {
  for (auto d : {make_descriptor(2, 1, 2, 4, 2), make_descriptor(3, 1, 1, 3, 0), make_descriptor(2, 2, 1, 3, 0),
                 make_descriptor(3, 1, 2, 2, 2), make_descriptor(2, 1, 3, 2, 2), make_descriptor(5, 1, 1, 3, 0)}) {
    const int D = 14;
    CHECK(universal_deformation(d, D) == detail::universal_deformation_rational(d, D));
  }
}

TEST_CASE("universal deformation frozen coefficients") {
  check_frozen(universal_deformation(make_descriptor(2, 1, 2, 4, 2), 8),
               {{1, 1, 15, {1}}, {1, 2, 1, {2}}, {1, 3, 14, {}}, {2, 2, 13, {}}, {2, 3, 11, {1}}, {3, 3, 5, {2}},
                {1, 6, 4, {}}, {2, 6, 7, {1}}, {4, 4, 2, {1}}});
  check_frozen(universal_deformation(make_descriptor(3, 1, 1, 3, 0), 9),
               {{1, 1, 0, {}}, {1, 2, 26, {}}, {1, 4, 1, {}}, {2, 3, 3, {}}, {2, 5, 21, {}}, {3, 4, 14, {}},
                {4, 5, 25, {}}});
}

TEST_CASE("named laws pass validation and their n-series are known") {
  const Ctx c = RingContext::create(make_descriptor(3, 1, 1, 4, 0));
  const int D = 12;
  const FormalGroupLaw A = additive_law(c, D), G = multiplicative_law(c, D);
  CHECK_NOTHROW(validate_fgl(A.law));
  CHECK_NOTHROW(validate_fgl(G.law));
  CHECK(n_series(A, 5) == PowerSeries1::variable(c, D).scaled(RingElem::from_int(c, 5)));
  // [3](t) = (1 + t)^3 - 1
  CHECK(n_series(G, 3) == PowerSeries1::from_ints(c, D, {0, 3, 3, 1}));
  // [-1](t) = -t + t^2 - t^3 + ...
  std::vector<i64> neg(D + 1);
  for (int i = 1; i <= D; ++i) neg[i] = i % 2 ? -1 : 1;
  CHECK(formal_neg(G) == PowerSeries1::from_ints(c, D, neg));
  CHECK(n_series(G, -1) == formal_neg(G));
}

TEST_CASE("n-series is additive in n") {
  const FormalGroupLaw F = universal_deformation(make_descriptor(2, 1, 2, 3, 2), 16);
  for (auto [a, b] : {std::pair<i64, i64>{1, 1}, {2, 3}, {4, -1}, {-2, 5}})
    CHECK(formal_add(F, n_series(F, a), n_series(F, b)) == n_series(F, a + b));
}

TEST_CASE("Honda law has [p] = t^{p^n} over the residue field") {
  for (auto [p, n] : {std::pair<u64, int>{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}, {2, 3}}) {
    const int q = static_cast<int>(n == 1 ? p : (n == 2 ? p * p : p * p * p));
    const FormalGroupLaw H = honda_fgl(p, n, 1, 2 * q + 3);
    CHECK(n_series(H, static_cast<i64>(p)) == PowerSeries1::monomial(RingElem::one(H.ctx()), q, 2 * q + 3));
  }
}

TEST_CASE("validation names the failing axiom") {
  const Ctx c = RingContext::create(make_descriptor(2, 1, 1, 3, 0));
  PowerSeries2 bad = multiplicative_law(c, 6).law;
  bad.set_coeff(2, 1, RingElem::from_int(c, 1));
  try {
    validate_fgl(bad);
    FAIL("accepted a non-symmetric series");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AxiomFailure);
  }
  PowerSeries2 bad2 = multiplicative_law(c, 6).law;
  bad2.set_coeff(2, 2, RingElem::from_int(c, 1));
  CHECK_THROWS_AS(validate_fgl(bad2), Error);
  PowerSeries2 bad3 = multiplicative_law(c, 6).law;
  bad3.set_coeff(1, 0, RingElem::from_int(c, 3));
  CHECK_THROWS_AS(validate_fgl(bad3), Error);
}

TEST_CASE("conjugation is an action and preserves the axioms") {
  const FormalGroupLaw F = universal_deformation(make_descriptor(2, 2, 2, 3, 2), 12);
  const PowerSeries1 s = random_star_iso(F.ctx(), 12, 3), r = random_star_iso(F.ctx(), 12, 4);
  const FormalGroupLaw G = conjugate_law(F, s);
  CHECK_NOTHROW(validate_fgl(G.law));
  CHECK(conjugate_law(G, reversion(s)) == F);
  CHECK(conjugate_law(G, r) == conjugate_law(F, compose1(r, s)));
  // s is a homomorphism F -> G
  CHECK(compose_outer(s, F.law) == substitute_diag(G.law, s));
}

TEST_CASE("random star isomorphisms are seeded and reduce to t") {
  const Ctx c = RingContext::create(make_descriptor(3, 2, 2, 2, 2));
  CHECK(random_star_iso(c, 10, 42) == random_star_iso(c, 10, 42));
  CHECK(random_star_iso(c, 10, 42) != random_star_iso(c, 10, 43));
  const PowerSeries1 s = random_star_iso(c, 10, 42);
  CHECK(s.coeff_is_zero(0));
  CHECK(s.coeff(1).is_unit());
  CHECK((s.coeff(1) - RingElem::one(c)).order() >= 1);
  for (int i = 2; i <= 10; ++i) CHECK(s.coeff(i).order() >= 1);
}

TEST_CASE("base change along the Galois twist") {
  const FormalGroupLaw F = universal_deformation(make_descriptor(2, 3, 1, 3, 0), 10);
  RingEndo sig = RingEndo::identity(F.ctx());
  sig.frobenius_power = 1;
  // defined over Z_p, so fixed
  CHECK(base_change(F, sig) == F);
  const FormalGroupLaw G = conjugate_law(F, random_star_iso(F.ctx(), 10, 8));
  FormalGroupLaw T = G;
  for (int i = 0; i < 3; ++i) T = base_change(T, sig);
  CHECK(T == G);
  CHECK(base_change(G, sig) != G);
}
