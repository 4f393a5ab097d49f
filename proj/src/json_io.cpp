#include "fgl/json_io.hpp"

#include <string>

namespace fgl {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

i64 get_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("'") + key + "' is not an integer");
  return v.get<i64>();
}

int get_small(const Json& j, const char* key) {
  const i64 v = get_int(j, key);
  if (v < -1000000000 || v > 1000000000) bad(std::string("'") + key + "' is out of range");
  return static_cast<int>(v);
}

// Decimal string (or integer) reduced mod p^N.
u64 parse_scalar(const RingContext& ctx, const Json& v) {
  i64 x = 0;
  if (v.is_number_integer()) {
    x = v.get<i64>();
  } else if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    size_t pos = 0;
    try {
      x = std::stoll(s, &pos, 10);
    } catch (const std::exception&) {
      bad("scalar '" + s + "' is not a decimal integer");
    }
    if (pos != s.size()) bad("scalar '" + s + "' is not a decimal integer");
  } else {
    bad("scalar must be a decimal string");
  }
  return ctx.reduce_signed(x);
}

}  // namespace

Json to_json(const RingDescriptor& d) {
  Json j;
  j["p"] = d.p;
  j["m"] = d.m;
  j["witt_poly"] = d.witt_poly;
  j["n"] = d.n;
  j["prec_p"] = d.prec_p;
  j["trunc_u"] = d.trunc_u;
  return j;
}

RingDescriptor descriptor_from_json(const Json& j) {
  RingDescriptor d;
  const i64 p = get_int(j, "p");
  if (p < 2) bad("p must be a prime >= 2");
  d.p = static_cast<u64>(p);
  d.m = get_small(j, "m");
  d.n = get_small(j, "n");
  d.prec_p = get_small(j, "prec_p");
  d.trunc_u = get_small(j, "trunc_u");
  if (j.contains("witt_poly")) {
    const Json& w = j["witt_poly"];
    if (!w.is_array()) bad("witt_poly must be an array");
    d.witt_poly.clear();
    for (const Json& c : w) {
      if (!c.is_number_integer()) bad("witt_poly entries must be integers");
      d.witt_poly.push_back(c.get<i64>());
    }
  } else if (d.m >= 1) {
    d.witt_poly = default_witt_poly(d.p, d.m);
  }
  return d;
}

Json to_json(const RingElem& a) {
  const RingContext& ctx = *a.ctx();
  Json mons = Json::array();
  for (int mon = 0; mon < ctx.num_monomials(); ++mon) {
    const u64* s = a.scalar(mon);
    bool nz = false;
    for (int d = 0; d < ctx.m(); ++d) nz = nz || s[d] != 0;
    if (!nz) continue;
    Json e = Json::array();
    for (int v = 0; v < ctx.nvars(); ++v) e.push_back(ctx.monomial_exponents(mon)[v]);
    Json sc = Json::array();
    for (int d = 0; d < ctx.m(); ++d) sc.push_back(std::to_string(s[d]));
    Json m;
    m["u"] = std::move(e);
    m["scalar"] = std::move(sc);
    mons.push_back(std::move(m));
  }
  Json j;
  j["monomials"] = std::move(mons);
  return j;
}

RingElem ring_elem_from_json(const Ctx& ctx, const Json& j) {
  RingElem a(ctx);
  const Json& mons = field(j, "monomials");
  if (!mons.is_array()) bad("'monomials' must be an array");
  for (const Json& m : mons) {
    const Json& e = field(m, "u");
    const Json& sc = field(m, "scalar");
    if (!e.is_array() || static_cast<int>(e.size()) != ctx->nvars())
      bad("monomial exponent list must have " + std::to_string(ctx->nvars()) + " entries");
    if (!sc.is_array() || static_cast<int>(sc.size()) != ctx->m())
      bad("scalar must have " + std::to_string(ctx->m()) + " entries");
    std::vector<int> exps;
    for (const Json& x : e) {
      if (!x.is_number_integer() || x.get<i64>() < 0) bad("exponents must be nonnegative integers");
      exps.push_back(static_cast<int>(x.get<i64>()));
    }
    const int idx = ctx->monomial_index(exps);
    if (idx < 0) bad("monomial exceeds the u-truncation");
    for (int d = 0; d < ctx->m(); ++d) a.scalar(idx)[d] = ctx->addm(a.scalar(idx)[d], parse_scalar(*ctx, sc[d]));
  }
  return a;
}

Json to_json(const PowerSeries1& f) {
  Json j;
  j["trunc_t"] = f.trunc();
  Json cs = Json::array();
  for (int i = 0; i <= f.trunc(); ++i) cs.push_back(to_json(f.coeff(i)));
  j["coeffs"] = std::move(cs);
  return j;
}

PowerSeries1 series1_from_json(const Ctx& ctx, const Json& j) {
  const int D = get_small(j, "trunc_t");
  if (D < 0) bad("trunc_t must be nonnegative");
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array() || static_cast<int>(cs.size()) > D + 1) bad("coeffs must be an array of at most trunc_t + 1 entries");
  PowerSeries1 f(ctx, D);
  for (size_t i = 0; i < cs.size(); ++i) f.set_coeff(static_cast<int>(i), ring_elem_from_json(ctx, cs[i]));
  return f;
}

Json to_json(const PowerSeries2& f) {
  Json j;
  j["trunc_t"] = f.trunc();
  Json cs = Json::array();
  // Total degree, then descending x-degree.
  for (int t = 0; t <= f.trunc(); ++t)
    for (int i = t; i >= 0; --i) {
      if (f.coeff_is_zero(i, t - i)) continue;
      Json c;
      c["i"] = i;
      c["j"] = t - i;
      c["c"] = to_json(f.coeff(i, t - i));
      cs.push_back(std::move(c));
    }
  j["coeffs"] = std::move(cs);
  return j;
}

PowerSeries2 series2_from_json(const Ctx& ctx, const Json& j) {
  const int D = get_small(j, "trunc_t");
  if (D < 0) bad("trunc_t must be nonnegative");
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array()) bad("coeffs must be an array");
  PowerSeries2 f(ctx, D);
  for (const Json& c : cs) {
    const int i = get_small(c, "i"), jj = get_small(c, "j");
    if (i < 0 || jj < 0 || i + jj > D) bad("term x^" + std::to_string(i) + " y^" + std::to_string(jj) + " is out of range");
    f.set_coeff(i, jj, f.coeff(i, jj) + ring_elem_from_json(ctx, field(c, "c")));
  }
  return f;
}

Json to_json(const FormalGroupLaw& F, int base_twist) {
  Json j;
  j["descriptor"] = to_json(F.ctx()->desc());
  j["law"] = to_json(F.law);
  j["tags"] = Json{{"base_twist", base_twist}};
  return j;
}

Json to_json(const DeformationTag& tag) { return to_json(tag.law, tag.base_twist); }

DeformationTag law_from_json(const Json& j) {
  const Ctx ctx = RingContext::create(descriptor_from_json(field(j, "descriptor")));
  DeformationTag tag;
  tag.law = validate_fgl(series2_from_json(ctx, field(j, "law")));
  if (j.contains("tags") && j["tags"].contains("base_twist")) tag.base_twist = get_small(j["tags"], "base_twist");
  return tag;
}

Json to_json(const DistinguishedPoly& g) {
  Json cs = Json::array();
  for (const RingElem& c : g.coeffs) cs.push_back(to_json(c));
  return Json{{"coeffs", std::move(cs)}};
}

DistinguishedPoly poly_from_json(const Ctx& ctx, const Json& j) {
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array() || cs.empty()) bad("polynomial coeffs must be a nonempty array");
  DistinguishedPoly g{ctx, {}};
  for (const Json& c : cs) g.coeffs.push_back(ring_elem_from_json(ctx, c));
  return g;
}

Json to_json(const KernelPolynomial& k) {
  Json j;
  j["descriptor"] = to_json(k.g.ctx->desc());
  j["coeffs"] = to_json(k.g)["coeffs"];
  j["degree_log"] = k.r;
  if (k.torsion_level >= 0) j["torsion_level"] = k.torsion_level;
  return j;
}

KernelPolynomial kernel_from_json(const FormalGroupLaw& F, const Json& j) {
  if (j.contains("descriptor") && !(descriptor_from_json(j["descriptor"]) == F.ctx()->desc()))
    fail(ErrorCode::DescriptorMismatch, "kernel descriptor differs from the law's");
  KernelPolynomial k = make_kernel(F, poly_from_json(F.ctx(), j));
  if (j.contains("torsion_level")) k.torsion_level = get_small(j, "torsion_level");
  return k;
}

Json to_json(const Isogeny& iso) {
  Json j;
  j["series"] = to_json(iso.series);
  j["degree_log"] = iso.degree_log;
  j["frobenius_power"] = iso.frobenius_power;
  if (iso.target) j["target"] = to_json(*iso.target);
  return j;
}

Json to_json(const RingEndo& phi) {
  Json j;
  j["source"] = to_json(phi.source->desc());
  j["target"] = to_json(phi.target->desc());
  j["frobenius_power"] = phi.frobenius_power;
  Json im = Json::array();
  for (const RingElem& a : phi.u_images) im.push_back(to_json(a));
  j["u_images"] = std::move(im);
  return j;
}

RingEndo endo_from_json(const Json& j) {
  RingEndo phi;
  phi.source = RingContext::create(descriptor_from_json(field(j, "source")));
  const RingDescriptor td = descriptor_from_json(field(j, "target"));
  phi.target = td == phi.source->desc() ? phi.source : RingContext::create(td);
  phi.frobenius_power = get_small(j, "frobenius_power");
  const Json& im = field(j, "u_images");
  if (!im.is_array() || static_cast<int>(im.size()) != phi.source->nvars()) bad("u_images must list one image per u");
  for (const Json& a : im) phi.u_images.push_back(ring_elem_from_json(phi.target, a));
  return phi;
}

Json to_json(const ClassifiedDeformation& c) {
  Json j;
  j["alpha"] = to_json(c.alpha);
  j["star_iso"] = to_json(c.star_iso);
  j["target_twist"] = c.target_twist;
  return j;
}

namespace {

Json order_json(int r) { return r == kInfiniteOrder ? Json(nullptr) : Json(r); }

}  // namespace

Json to_json(const CoherenceDefect& d) {
  Json j;
  j["pass"] = d.is_zero();
  j["defect"] = to_json(d.a);
  j["filtration_order"] = order_json(d.filtration_order);
  j["certified_trunc"] = d.certified_trunc;
  return j;
}

Json to_json(const NormalizationResult& r) {
  Json j;
  j["law"] = to_json(r.law);
  j["coordinate_change"] = to_json(r.coordinate_change);
  j["iterations"] = r.iterations;
  j["filtration_orders"] = r.orders;
  j["certified_trunc"] = r.certified_trunc;
  j["unique_trunc"] = r.unique_trunc;
  Json c = to_json(r.certificate);
  c["iterations"] = r.iterations;
  j["certificate"] = std::move(c);
  return j;
}

Json to_json(const CoherenceReport& r) {
  Json items = Json::array();
  for (const CoherenceItem& it : r.items) {
    Json e;
    e["pass"] = it.pass;
    e["defect"] = to_json(it.defect.a);
    e["filtration_order"] = order_json(it.defect.filtration_order);
    e["certified_trunc"] = it.defect.certified_trunc;
    e["iterations"] = 0;
    e["degree_log"] = it.degree_log;
    e["torsion_level"] = it.torsion_level;
    e["star_iso"] = to_json(it.g);
    items.push_back(std::move(e));
  }
  Json j;
  j["pass"] = r.pass;
  j["items"] = std::move(items);
  return j;
}

Json to_json(const FunctorialityReport& r) {
  Json items = Json::array();
  for (const FunctorialityItem& it : r.items) {
    Json e;
    e["name"] = it.name;
    e["pass"] = it.pass;
    e["defect"] = to_json(it.defect.a);
    e["filtration_order"] = order_json(it.defect.filtration_order);
    e["certified_trunc"] = it.defect.certified_trunc;
    e["iterations"] = 0;
    items.push_back(std::move(e));
  }
  Json j;
  j["pass"] = r.pass;
  j["items"] = std::move(items);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace fgl
