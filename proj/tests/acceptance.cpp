// Acceptance run: one PASS/FAIL line per criterion.
//   fgl_acceptance [--cli PATH] [criterion ...]
// With no criteria all ten run. Exit status is nonzero if any selected
// criterion fails.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fgl/norm_coherence.hpp"
#include "oracles.hpp"

using namespace fgl;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    else detail += "; " + why;
    pass = false;
  }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : ", ") + s;
  }
};

std::string cli_path;

std::string orders_str(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "[" + s + "]";
}

// Runtime bounds are part of the criteria; limit 0 only reports.
void time_limit(Outcome& o, double secs, double limit, const std::string& what) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %.1fs", what.c_str(), secs);
  if (limit > 0 && secs >= limit) {
    char lim[64];
    std::snprintf(lim, sizeof lim, " (limit %.0fs)", limit);
    o.fail(std::string(buf) + lim);
  } else {
    o.note(buf);
  }
}

// 1. f_p of the normalized height one law is its [p]-series.
Outcome honda_identity() {
  Outcome o;
  for (u64 p : {2, 3, 5}) {
    const auto t0 = Clock::now();
    const RingDescriptor d = make_descriptor(p, 1, 1, 6, 0);
    const int D = 30;
    // A root r of the kernel has r^{N(p-1)} = 0, so f_p through t^D reads
    // the law through total degree D + N(p-1) - 1. The defect only has to be
    // certified through D.
    const int De = D + d.prec_p * static_cast<int>(p - 1);
    const NormalizationResult r = normalize_universal(d, De, recommended_work_trunc(d, D));
    const FormalGroupLaw& G = r.law;
    const PowerSeries1 f = companion_norm(kernel_polynomial(G, 1).g, G.law).truncated(D);
    const PowerSeries1 ps = n_series(G, static_cast<i64>(p)).truncated(D);
    if (f != ps)
      o.fail("p=" + std::to_string(p) + " first mismatch at t^" + std::to_string((f - ps).t_order()));
    time_limit(o, since(t0), 5, "p=" + std::to_string(p));
  }
  return o;
}

// 2. x + y + xy: p = 2 goes to x + y - xy, odd p is a fixed point.
Outcome multiplicative() {
  Outcome o;
  const auto t0 = Clock::now();
  int runs = 0;
  for (int N = 1; N <= 8; ++N) {
    const Ctx c = RingContext::create(make_descriptor(2, 1, 1, N, 0));
    const RingEndo phi = frobenius_assoc(universal_deformation(c->desc(), 8), 1);
    for (int D : {4, 5, 8, 16, 24, 32, 40}) {
      const NormalizationResult r = normalize(multiplicative_law(c, D), phi);
      ++runs;
      if (!(r.law == signed_multiplicative_law(c, D)))
        o.fail("p=2 N=" + std::to_string(N) + " D=" + std::to_string(D) + " is not x+y-xy");
    }
  }
  for (u64 p : {3, 5, 7})
    for (int N : {1, 4, 8}) {
      if (oracle::ipow(p, N) >= (u64{1} << 31)) continue;
      const Ctx c = RingContext::create(make_descriptor(p, 1, 1, N, 0));
      const RingEndo phi = frobenius_assoc(universal_deformation(c->desc(), 2 * static_cast<int>(p)), 1);
      for (int D : {2 * static_cast<int>(p), 40}) {
        const FormalGroupLaw G = multiplicative_law(c, D);
        const NormalizationResult r = normalize(G, phi);
        ++runs;
        if (r.iterations != 0 || !(r.law == G))
          o.fail("p=" + std::to_string(p) + " N=" + std::to_string(N) + " D=" + std::to_string(D) + " took " +
                 std::to_string(r.iterations) + " iterations");
      }
    }
  o.note(std::to_string(runs) + " runs");
  time_limit(o, since(t0), 1, "total");
  return o;
}

// 3. Filtration order rises every step; at most N + M steps.
Outcome convergence() {
  Outcome o;
  const auto t0 = Clock::now();
  const RingDescriptor d = make_descriptor(2, 1, 2, 4, 5);
  const int D = 12;
  const FormalGroupLaw U = universal_deformation(d, D);
  const RingEndo phi = frobenius_assoc(U, 1);
  for (u64 seed = 0; seed <= 3; ++seed) {
    const FormalGroupLaw F = seed ? conjugate_law(U, random_star_iso(U.ctx(), D, seed)) : U;
    const std::string tag = seed ? "seed " + std::to_string(seed) : "F_univ";
    try {
      const NormalizationResult r = normalize(F, phi);
      for (size_t i = 1; i < r.orders.size(); ++i)
        if (r.orders[i] <= r.orders[i - 1]) o.fail(tag + " orders not increasing " + orders_str(r.orders));
      if (r.iterations > d.prec_p + d.trunc_u) o.fail(tag + " took " + std::to_string(r.iterations) + " iterations");
      if (!r.certificate.is_zero()) o.fail(tag + " certificate nonzero");
      o.note(tag + " " + std::to_string(r.iterations) + " it " + orders_str(r.orders));
    } catch (const Error& e) {
      o.fail(tag + " " + e.what());
    }
  }
  time_limit(o, since(t0), 600, "total");
  return o;
}

// 4. Five star-conjugates normalize to one law, at the degree the working
// truncation pins (see README: uniqueness at finite truncation).
Outcome uniqueness() {
  Outcome o;
  const auto t0 = Clock::now();
  struct Fx {
    RingDescriptor d;
    int Dw, out;
  };
  for (const Fx& f : {Fx{make_descriptor(2, 1, 1, 6, 0), 256, 8}, Fx{make_descriptor(2, 1, 2, 2, 1), 96, 6}}) {
    const std::string tag = "height " + std::to_string(f.d.n);
    const FormalGroupLaw U = universal_deformation(f.d, f.Dw);
    const RingEndo phi = frobenius_assoc(FormalGroupLaw{U.law.truncated(std::min(f.Dw, 40))}, 1);
    NormalizeOptions opt;
    opt.out_trunc = f.out;
    const NormalizationResult base = normalize(U, phi, opt);
    if (base.unique_trunc < f.out) o.fail(tag + " out_trunc above unique_trunc");
    int agree = 0;
    for (u64 seed = 1; seed <= 5; ++seed) {
      const NormalizationResult r = normalize_presented(U, random_star_iso(U.ctx(), f.Dw, seed), phi, opt);
      if (r.law == base.law) ++agree;
      else
        o.fail(tag + " seed " + std::to_string(seed) + " differs at t-degree " +
               std::to_string((r.law.law - base.law.law).t_order()));
    }
    o.note(tag + " " + std::to_string(agree) + "/5 at D=" + std::to_string(f.out) + " (Dw=" + std::to_string(f.Dw) +
           ")");
  }
  time_limit(o, since(t0), 900, "total");
  return o;
}

// 5. Specializations and the quotient by F[2] of the normalized law.
Outcome functoriality() {
  Outcome o;
  const auto t0 = Clock::now();
  const RingDescriptor d = make_descriptor(2, 1, 2, 4, 5);
  const int D = 48;
  const FormalGroupLaw Fu = universal_deformation(d, recommended_work_trunc(d, D));
  const NormalizationResult nc = normalize_universal(d, D);
  const FunctorialityReport rep = functoriality_check(Fu, nc, Fu, {{2}, {6}}, true);
  for (const FunctorialityItem& it : rep.items) {
    const int first = it.defect.a.t_order();
    if (!it.pass) o.fail(it.name + " defect at t^" + std::to_string(first));
    else
      o.note(it.name + " zero through " +
             std::to_string(first > it.defect.a.trunc() ? it.defect.a.trunc() : first - 1));
  }
  if (rep.items.size() != 3) o.fail("expected three items");
  o.note("D=48");
  time_limit(o, since(t0), 0, "total");
  return o;
}

// 6. normalize o sigma = sigma o normalize over F_4.
Outcome galois_descent() {
  Outcome o;
  const auto t0 = Clock::now();
  const RingDescriptor d = make_descriptor(2, 2, 1, 4, 0);
  const int D = 16, Dw = recommended_work_trunc(d, D);
  const FormalGroupLaw U = universal_deformation(d, Dw);
  const RingEndo phi = frobenius_assoc(U, 1);
  NormalizeOptions opt;
  opt.out_trunc = D;
  int agree = 0;
  for (u64 seed = 1; seed <= 5; ++seed) {
    const FormalGroupLaw F = conjugate_law(U, random_star_iso(U.ctx(), Dw, seed));
    const NormalizationResult a = normalize(galois_twist(F, 1), phi, opt);
    const NormalizationResult b = normalize(F, phi, opt);
    if (a.law == galois_twist(b.law, 1)) ++agree;
    else o.fail("seed " + std::to_string(seed) + " differs");
  }
  o.note(std::to_string(agree) + "/5 seeds at D=16 (Dw=" + std::to_string(Dw) + ")");
  time_limit(o, since(t0), 0, "total");
  return o;
}

struct IsoFixture {
  std::string name;
  FormalGroupLaw F;
  int r;
};

std::vector<IsoFixture> isogeny_fixtures() {
  std::vector<IsoFixture> v;
  auto univ = [&](const RingDescriptor& d, int D, u64 seed, int r) {
    const FormalGroupLaw U = universal_deformation(d, D);
    std::ostringstream s;
    s << "univ(p=" << d.p << ",m=" << d.m << ",n=" << d.n << ",N=" << d.prec_p << ",M=" << d.trunc_u << ")";
    if (seed) s << "^s" << seed;
    s << " r=" << r;
    v.push_back({s.str(), seed ? conjugate_law(U, random_star_iso(U.ctx(), D, seed)) : U, r});
  };
  for (u64 p : {2, 3}) {
    const Ctx c = RingContext::create(make_descriptor(p, 1, 1, 4, 0));
    v.push_back({"mult p=" + std::to_string(p) + " r=1", multiplicative_law(c, 6 * static_cast<int>(p)), 1});
    v.push_back({"mult p=" + std::to_string(p) + " r=2", multiplicative_law(c, 3 * static_cast<int>(p * p)), 2});
  }
  univ(make_descriptor(2, 1, 1, 4, 0), 24, 0, 1);
  univ(make_descriptor(2, 1, 1, 4, 0), 24, 5, 1);
  univ(make_descriptor(3, 1, 1, 3, 0), 27, 6, 1);
  univ(make_descriptor(5, 1, 1, 2, 0), 25, 7, 1);
  univ(make_descriptor(2, 2, 1, 3, 0), 16, 8, 1);
  univ(make_descriptor(2, 1, 2, 3, 2), 16, 0, 1);
  univ(make_descriptor(2, 1, 2, 3, 2), 16, 9, 1);
  univ(make_descriptor(3, 1, 2, 2, 1), 27, 10, 1);
  univ(make_descriptor(2, 1, 3, 2, 1), 24, 11, 1);
  univ(make_descriptor(2, 1, 2, 2, 1), 48, 12, 1);
  for (auto [p, n] : {std::pair<u64, int>{2, 2}, {3, 1}, {2, 3}}) {
    const int q = static_cast<int>(oracle::ipow(p, n));
    v.push_back({"honda p=" + std::to_string(p) + " n=" + std::to_string(n), honda_fgl(p, n, 1, 3 * q), 1});
  }
  return v;
}

// 7. Norms, Weierstrass, quotient certificates.
Outcome quotient_oracles() {
  Outcome o;
  const auto t0 = Clock::now();
  int norms = 0;
  for (u64 p : {2, 3})
    for (int s : {1, 2}) {
      const int D = 3 * static_cast<int>(oracle::ipow(p, s)) + 2;
      const Ctx c = RingContext::create(make_descriptor(p, 1, 1, 4, 0));
      const DistinguishedPoly g = oracle::mult_torsion_divisor(c, s);
      for (const auto& h : oracle::norm_fixtures(c, D)) {
        ++norms;
        if (companion_norm(g, h) != oracle::cyclotomic_norm(c, p, s, h, D))
          o.fail("norm p=" + std::to_string(p) + " s=" + std::to_string(s) + " fixture " + std::to_string(norms));
      }
    }
  o.note(std::to_string(norms) + " cyclotomic norms");

  const Ctx wc = RingContext::create(make_descriptor(2, 1, 2, 4, 3));
  int wok = 0;
  for (u64 seed = 1; seed <= 100; ++seed) {
    const PowerSeries1 f = oracle::random_weierstrass_input(wc, 24, seed);
    const WeierstrassFactors w = weierstrass_prepare(f);
    if (w.g.is_distinguished() && w.g.as_series(24) * w.unit == f) ++wok;
    else o.fail("Weierstrass seed " + std::to_string(seed));
  }
  o.note(std::to_string(wok) + "/100 Weierstrass");

  int certs = 0;
  for (const IsoFixture& fx : isogeny_fixtures()) {
    const KernelPolynomial k = kernel_polynomial(fx.F, fx.r);
    const Isogeny q = quotient_isogeny(fx.F, k);
    ++certs;
    if (!isogeny_certificate(q)) o.fail("certificate " + fx.name);
    // the general solver on the same kernel, where the truncation allows it
    Isogeny g = q;
    try {
      g.target = quotient_fgl(fx.F, q.series);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TruncationTooSmall) throw;
      continue;
    }
    ++certs;
    if (!isogeny_certificate(g)) o.fail("certificate (solver) " + fx.name);
    if (!(g.target->law == q.target->law.truncated(g.target->trunc()))) o.fail("solver differs " + fx.name);
  }
  o.note(std::to_string(certs) + " isogeny certificates");
  time_limit(o, since(t0), 0, "total");
  return o;
}

// 8. classify recovers a seeded alpha.
Outcome classifier_round_trip() {
  Outcome o;
  const auto t0 = Clock::now();
  const RingDescriptor d = make_descriptor(2, 1, 2, 3, 4);
  const int D = 10;
  const FormalGroupLaw U = universal_deformation(d, D);
  const Ctx& c = U.ctx();
  int ok = 0;
  for (u64 seed = 1; seed <= 3; ++seed) {
    std::mt19937_64 rng(seed);
    RingEndo a = RingEndo::identity(c);
    RingElem img(c);
    for (int mon = 0; mon < c->num_monomials(); ++mon) img.scalar(mon)[0] = rng() % c->modulus();
    img.scalar(0)[0] = (img.scalar(0)[0] * c->p()) % c->modulus();  // in m
    a.u_images[0] = img;
    const FormalGroupLaw G = conjugate_law(base_change(U, a), random_star_iso(c, D, seed + 100));
    try {
      const ClassifiedDeformation cl = classify(G, U, 0);
      if (cl.alpha == a) ++ok;
      else o.fail("seed " + std::to_string(seed) + " recovered a different alpha");
    } catch (const Error& e) {
      o.fail("seed " + std::to_string(seed) + " " + e.what());
    }
  }
  o.note(std::to_string(ok) + "/3 recovered");
  time_limit(o, since(t0), 300, "total");
  return o;
}

// 9. Every Lubin isogeny is x^{p^r} on the special fibre.
Outcome residue_frobenius() {
  Outcome o;
  int n = 0;
  for (const IsoFixture& fx : isogeny_fixtures()) {
    const KernelPolynomial k = kernel_polynomial(fx.F, fx.r);
    const Isogeny h = lubin_isogeny(fx.F, k);
    ++n;
    if (!residue_is_frobenius(h.series, k.r)) o.fail(fx.name);
  }
  o.note(std::to_string(n) + " isogenies");
  return o;
}

// 10. Every subcommand twice, outputs compared byte for byte.
Outcome cli_determinism() {
  Outcome o;
  if (cli_path.empty()) {
    o.fail("no --cli given");
    return o;
  }
  const fs::path dir = fs::temp_directory_path() / ("fgl_acceptance_" + std::to_string(getpid()));
  fs::create_directories(dir);
  const std::string k = (dir / "kernel.json").string(), n = (dir / "norm.json").string();
  const std::vector<std::pair<std::string, std::string>> suite = {
      {"honda", "honda --p 2 --n 2 --trunc-t 12"},
      {"univ-def", "univ-def --p 2 --n 2 --prec-p 3 --trunc-u 2 --trunc-t 10 --seed 3"},
      {"p-series", "p-series --law builtin:universal --p 3 --prec-p 3 --trunc-t 12"},
      {"p-series-mult", "p-series --law builtin:multiplicative --p 2 --prec-p 4 --trunc-t 12 --mult -1"},
      {"kernel", "kernel --law builtin:multiplicative --p 3 --prec-p 3 --trunc-t 12 --r 1"},
      {"quotient", "quotient --p 2 --n 2 --prec-p 3 --trunc-u 2 --trunc-t 16 --seed 2"},
      {"classify", "classify --p 2 --n 2 --prec-p 2 --trunc-u 1 --trunc-t 16 --seed 4"},
      {"defect", "defect --law builtin:multiplicative --p 2 --prec-p 5 --trunc-t 16"},
      {"normalize", "normalize --law builtin:multiplicative --p 2 --prec-p 5 --trunc-t 28 --out-trunc 12"},
      {"normalize-univ", "normalize --p 3 --prec-p 3 --trunc-t 10"},
      {"check", "check --law builtin:multiplicative --p 3 --prec-p 3 --trunc-t 12 --kernels " + k},
      {"check-normalized", "check --law " + n + " --kernels " + k},
      {"galois-check", "galois-check --p 2 --m 2 --prec-p 4 --trunc-t 36 --seed 1"},
      {"functoriality-check", "functoriality-check --law builtin:multiplicative --p 2 --prec-p 5 --trunc-t 28 --quotient"},
      {"functoriality-specialize",
       "functoriality-check --p 2 --n 2 --prec-p 4 --trunc-u 1 --trunc-t 40 --specialize 4"},
      {"error", "check --law " + (dir / "missing.json").string()},
  };
  // inputs the suite reads
  if (std::system((cli_path + " kernel --law builtin:multiplicative --p 3 --prec-p 3 --trunc-t 12 --r 1 --out " + k)
                      .c_str()) != 0 ||
      std::system((cli_path + " normalize --law builtin:multiplicative --p 3 --prec-p 3 --trunc-t 12 --out " + n)
                      .c_str()) != 0) {
    fs::remove_all(dir);
    o.fail("setup commands failed");
    return o;
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  int same = 0;
  for (const auto& [name, args] : suite) {
    std::string out[2];
    int rc[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path f = dir / (name + "." + std::to_string(run));
      rc[run] = std::system((cli_path + " " + args + " > " + f.string() + " 2>&1").c_str());
      out[run] = slurp(f);
    }
    if (out[0].empty()) o.fail(name + " produced no output");
    else if (out[0] != out[1] || rc[0] != rc[1]) o.fail(name + " differs between runs");
    else ++same;
  }
  fs::remove_all(dir);
  o.note(std::to_string(same) + "/" + std::to_string(suite.size()) + " commands identical");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> want;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) cli_path = argv[++i];
    else want.insert(std::atoi(a.c_str()));
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Honda identity f_p = [p]", honda_identity},
      {"multiplicative fixtures", multiplicative},
      {"convergence discipline", convergence},
      {"uniqueness under star-conjugation", uniqueness},
      {"functoriality", functoriality},
      {"Galois descent", galois_descent},
      {"quotient and norm oracles", quotient_oracles},
      {"classifier round trip", classifier_round_trip},
      {"residue Frobenius", residue_frobenius},
      {"CLI determinism", cli_determinism},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!want.empty() && !want.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
