#include "doctest.h"
#include "fgl/fgl_core.hpp"
#include "fgl/isogeny.hpp"
#include "oracles.hpp"

using namespace fgl;

TEST_CASE("kernel polynomial of [p^r]") {
  struct Fx {
    RingDescriptor d;
    int r, D;
  };
  for (const Fx& f : {Fx{make_descriptor(2, 1, 1, 4, 0), 1, 12}, Fx{make_descriptor(2, 1, 1, 4, 0), 2, 20},
                      Fx{make_descriptor(3, 1, 1, 3, 0), 1, 12}, Fx{make_descriptor(2, 1, 2, 3, 2), 1, 16},
                      Fx{make_descriptor(2, 2, 1, 3, 0), 1, 10}}) {
    const FormalGroupLaw F = universal_deformation(f.d, f.D);
    const KernelPolynomial k = kernel_polynomial(F, f.r);
    CHECK(k.g.degree() == static_cast<int>(oracle::ipow(f.d.p, f.r * f.d.n)));
    CHECK(k.g.is_distinguished());
    CHECK(k.torsion_level == f.r);
    const WeierstrassFactors w = weierstrass_prepare(n_series(F, static_cast<i64>(oracle::ipow(f.d.p, f.r))));
    CHECK(w.g.coeffs == k.g.coeffs);
  }
}

TEST_CASE("multiplicative torsion divisor is (1 + t)^{p^s} - 1") {
  for (u64 p : {2, 3})
    for (int s : {1, 2}) {
      const Ctx c = RingContext::create(make_descriptor(p, 1, 1, 4, 0));
      const FormalGroupLaw G = multiplicative_law(c, 3 * static_cast<int>(oracle::ipow(p, s)));
      CHECK(kernel_polynomial(G, s).g.coeffs == oracle::mult_torsion_divisor(c, s).coeffs);
    }
}

TEST_CASE("Lubin isogeny reduces to Frobenius and certifies") {
  for (auto d : {make_descriptor(2, 1, 1, 4, 0), make_descriptor(3, 1, 1, 3, 0), make_descriptor(2, 1, 2, 3, 2),
                 make_descriptor(2, 2, 1, 3, 0)}) {
    const FormalGroupLaw F0 = universal_deformation(d, 24);
    const FormalGroupLaw F = conjugate_law(F0, random_star_iso(F0.ctx(), 24, 5));
    const KernelPolynomial k = kernel_polynomial(F, 1);
    const Isogeny h = lubin_isogeny(F, k);
    CHECK(residue_is_frobenius(h.series, k.r));
    const Isogeny q = quotient_isogeny(F, k);
    REQUIRE(q.target.has_value());
    CHECK(isogeny_certificate(q));
    CHECK_NOTHROW(validate_fgl(q.target->law));
  }
}

TEST_CASE("general quotient solver agrees with the torsion route") {
  const FormalGroupLaw F0 = universal_deformation(make_descriptor(3, 1, 1, 3, 0), 27);
  const FormalGroupLaw F = conjugate_law(F0, random_star_iso(F0.ctx(), 27, 2));
  const Isogeny q = quotient_isogeny(F, kernel_polynomial(F, 1));
  const FormalGroupLaw Phi = quotient_fgl(F, q.series);
  // (27 - 2 * 3 * 2) / 3
  CHECK(Phi.trunc() == 5);
  CHECK(Phi.law == q.target->law.truncated(5));
}

TEST_CASE("quotient of the multiplicative law by its p-torsion") {
  // For odd p the norm is (1 + x)^p - 1 and the quotient is x + y + xy again.
  const Ctx c = RingContext::create(make_descriptor(3, 1, 1, 4, 0));
  const FormalGroupLaw G = multiplicative_law(c, 18);
  const Isogeny q = quotient_isogeny(G, kernel_polynomial(G, 1));
  CHECK(q.series == n_series(G, 3));
  CHECK(*q.target == multiplicative_law(c, q.target->trunc()));
}

TEST_CASE("trivial kernel gives the identity isogeny") {
  const FormalGroupLaw F = universal_deformation(make_descriptor(2, 1, 2, 2, 1), 10);
  const Isogeny q = quotient_isogeny(F, trivial_kernel(F));
  CHECK(q.series == PowerSeries1::variable(F.ctx(), 10));
  CHECK(q.degree_log == 0);
  CHECK(*q.target == F);
}

TEST_CASE("malformed kernels are rejected") {
  const FormalGroupLaw F = universal_deformation(make_descriptor(2, 1, 1, 3, 0), 10);
  const Ctx& c = F.ctx();
  DistinguishedPoly g;
  g.ctx = c;
  // t^2 + t: the linear coefficient is a unit
  g.coeffs = {RingElem::zero(c), RingElem::one(c), RingElem::one(c)};
  CHECK_THROWS_AS(make_kernel(F, g), Error);
  // degree 3 is not a power of 2
  g.coeffs = {RingElem::zero(c), RingElem::from_int(c, 2), RingElem::zero(c), RingElem::one(c)};
  CHECK_THROWS_AS(make_kernel(F, g), Error);
  // nonzero constant term
  g.coeffs = {RingElem::from_int(c, 2), RingElem::zero(c), RingElem::one(c)};
  CHECK_THROWS_AS(make_kernel(F, g), Error);
}
