#include "fgl.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "fgl/json_io.hpp"

struct fgl_law {
  fgl::DeformationTag tag;
};

namespace {

thread_local std::string g_last_error;

fgl_status to_status(fgl::ErrorCode c) { return static_cast<fgl_status>(static_cast<int>(c)); }

template <class Fn>
fgl_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return FGL_OK;
  } catch (const fgl::Error& e) {
    g_last_error = e.detail();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FGL_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FGL_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* r = static_cast<char*>(std::malloc(s.size() + 1));
  if (!r) throw std::bad_alloc();
  std::memcpy(r, s.c_str(), s.size() + 1);
  return r;
}

void emit(const fgl::Json& j, char** out) {
  if (out) *out = copy_out(fgl::dump(j));
}

void need(const void* p, const char* what) {
  if (!p) fgl::fail(fgl::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

fgl::RingDescriptor descriptor(const fgl_descriptor* d) {
  need(d, "descriptor");
  if (d->p < 2 || d->m < 1 || d->n < 1 || d->prec_p < 1 || d->trunc_u < 0)
    fgl::fail(fgl::ErrorCode::InvalidArgument, "descriptor parameters must be positive");
  return fgl::make_descriptor(d->p, d->m, d->n, d->prec_p, d->trunc_u);
}

fgl_law* wrap(fgl::DeformationTag tag) { return new fgl_law{std::move(tag)}; }

fgl::FormalGroupLaw universal_for(const fgl::FormalGroupLaw& F) {
  return fgl::universal_deformation(F.ctx()->desc(), F.trunc());
}

}  // namespace

extern "C" {

const char* fgl_status_name(int status) {
  if (status == FGL_OK) return "Ok";
  if (status == FGL_INTERNAL) return "Internal";
  if (status < 1 || status > FGL_PARSE_ERROR) return "Unknown";
  return fgl::error_name(static_cast<fgl::ErrorCode>(status));
}

const char* fgl_last_error(void) { return g_last_error.c_str(); }

void fgl_string_free(char* s) { std::free(s); }

void fgl_law_free(fgl_law* law) { delete law; }

fgl_status fgl_law_new(const char* kind, const fgl_descriptor* desc, int trunc_t, fgl_law** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    const std::string k = kind;
    if (trunc_t < 1) fgl::fail(fgl::ErrorCode::InvalidArgument, "trunc_t must be positive");
    fgl::FormalGroupLaw F;
    if (k == "honda") {
      need(desc, "descriptor");
      F = fgl::honda_fgl(desc->p, desc->n, desc->m, trunc_t);
    } else {
      const fgl::RingDescriptor d = descriptor(desc);
      if (k == "universal") {
        F = fgl::universal_deformation(d, trunc_t);
      } else {
        const fgl::Ctx ctx = fgl::RingContext::create(d);
        if (k == "additive")
          F = fgl::additive_law(ctx, trunc_t);
        else if (k == "multiplicative")
          F = fgl::multiplicative_law(ctx, trunc_t);
        else if (k == "signed-multiplicative")
          F = fgl::signed_multiplicative_law(ctx, trunc_t);
        else
          fgl::fail(fgl::ErrorCode::InvalidArgument, "unknown law kind '" + k + "'");
      }
    }
    *out = wrap(fgl::DeformationTag{F, 0, true});
  });
}

fgl_status fgl_law_from_json(const char* json, fgl_law** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = wrap(fgl::law_from_json(fgl::parse_json(json)));
  });
}

fgl_status fgl_law_to_json(const fgl_law* law, char** out) {
  return guarded([&] {
    need(law, "law");
    emit(fgl::to_json(law->tag), out);
  });
}

fgl_status fgl_law_random_conjugate(const fgl_law* law, uint64_t seed, fgl_law** out) {
  return guarded([&] {
    need(law, "law");
    need(out, "out");
    const fgl::FormalGroupLaw& F = law->tag.law;
    const fgl::PowerSeries1 s = fgl::random_star_iso(F.ctx(), F.trunc(), seed);
    fgl::DeformationTag tag = law->tag;
    tag.law = fgl::conjugate_law(F, s);
    *out = wrap(std::move(tag));
  });
}

fgl_status fgl_n_series(const fgl_law* law, int64_t n, char** out) {
  return guarded([&] {
    need(law, "law");
    emit(fgl::to_json(fgl::n_series(law->tag.law, n)), out);
  });
}

fgl_status fgl_kernel(const fgl_law* law, int r, char** out) {
  return guarded([&] {
    need(law, "law");
    emit(fgl::to_json(fgl::kernel_polynomial(law->tag.law, r)), out);
  });
}

fgl_status fgl_quotient(const fgl_law* law, const char* kernel_json, char** out, fgl_law** out_law) {
  return guarded([&] {
    need(law, "law");
    need(kernel_json, "kernel");
    const fgl::FormalGroupLaw& F = law->tag.law;
    const fgl::KernelPolynomial k = fgl::kernel_from_json(F, fgl::parse_json(kernel_json));
    const fgl::Isogeny iso = fgl::quotient_isogeny(F, k);
    const fgl::DeformationTag tag = fgl::pushforward_tag(law->tag, iso);
    fgl::Json j;
    j["isogeny"] = fgl::to_json(iso);
    j["certificate"] = fgl::isogeny_certificate(iso);
    j["residue_frobenius"] = fgl::residue_is_frobenius(iso.series, iso.degree_log);
    j["quotient"] = fgl::to_json(tag);
    emit(j, out);
    if (out_law) *out_law = wrap(tag);
  });
}

fgl_status fgl_classify(const fgl_law* law, int twist, char** out) {
  return guarded([&] {
    need(law, "law");
    const fgl::FormalGroupLaw& F = law->tag.law;
    emit(fgl::to_json(fgl::classify(F, universal_for(F), twist)), out);
  });
}

fgl_status fgl_defect(const fgl_law* law, char** out) {
  return guarded([&] {
    need(law, "law");
    const fgl::FormalGroupLaw& F = law->tag.law;
    emit(fgl::to_json(fgl::defect(F, universal_for(F))), out);
  });
}

fgl_status fgl_normalize(const fgl_law* law, int out_trunc, char** out, fgl_law** out_law) {
  return guarded([&] {
    need(law, "law");
    const fgl::FormalGroupLaw& F = law->tag.law;
    fgl::NormalizeOptions opt;
    opt.out_trunc = out_trunc;
    const fgl::NormalizationResult r = fgl::normalize(F, universal_for(F), opt);
    emit(fgl::to_json(r), out);
    if (out_law) *out_law = wrap(fgl::DeformationTag{r.law, law->tag.base_twist, true});
  });
}

fgl_status fgl_normalize_universal(const fgl_descriptor* desc, int trunc_t, int work_trunc, char** out,
                                   fgl_law** out_law) {
  return guarded([&] {
    const fgl::NormalizationResult r = fgl::normalize_universal(descriptor(desc), trunc_t, work_trunc);
    emit(fgl::to_json(r), out);
    if (out_law) *out_law = wrap(fgl::DeformationTag{r.law, 0, true});
  });
}

fgl_status fgl_check(const fgl_law* law, const char* kernels_json, char** out, int* pass) {
  return guarded([&] {
    need(law, "law");
    need(kernels_json, "kernels");
    const fgl::FormalGroupLaw& F = law->tag.law;
    const fgl::Json kj = fgl::parse_json(kernels_json);
    if (!kj.is_array()) fgl::fail(fgl::ErrorCode::ParseError, "kernels must be a JSON array");
    std::vector<fgl::KernelPolynomial> ks;
    for (const fgl::Json& k : kj) ks.push_back(fgl::kernel_from_json(F, k));
    const fgl::CoherenceReport rep = fgl::check_coherence(F, universal_for(F), ks);
    emit(fgl::to_json(rep), out);
    if (pass) *pass = rep.pass ? 1 : 0;
  });
}

fgl_status fgl_galois_check(const fgl_law* law, int j, int out_trunc, char** out, int* pass) {
  return guarded([&] {
    need(law, "law");
    const fgl::FormalGroupLaw& F = law->tag.law;
    const fgl::FormalGroupLaw U = universal_for(F);
    fgl::NormalizeOptions opt;
    opt.out_trunc = out_trunc < 0 ? std::max(1, fgl::certified_out_trunc(F.ctx()->desc(), F.trunc())) : out_trunc;
    const fgl::NormalizationResult a = fgl::normalize(fgl::galois_twist(F, j), U, opt);
    const fgl::NormalizationResult b = fgl::normalize(F, U, opt);
    const fgl::FormalGroupLaw tb = fgl::galois_twist(b.law, j);
    const bool ok = a.law == tb;
    fgl::Json r;
    r["pass"] = ok;
    r["j"] = j;
    r["out_trunc"] = opt.out_trunc;
    r["normalize_of_twist"] = fgl::to_json(a.law);
    r["twist_of_normalize"] = fgl::to_json(tb);
    r["iterations"] = a.iterations;
    emit(r, out);
    if (pass) *pass = ok ? 1 : 0;
  });
}

fgl_status fgl_functoriality_check(const fgl_law* law, const char* spec_json, char** out, int* pass) {
  return guarded([&] {
    need(law, "law");
    need(spec_json, "spec");
    const fgl::FormalGroupLaw& F = law->tag.law;
    const fgl::Json spec = fgl::parse_json(spec_json);
    std::vector<std::vector<fgl::i64>> specs;
    if (spec.contains("specializations")) {
      const fgl::Json& sj = spec["specializations"];
      if (!sj.is_array()) fgl::fail(fgl::ErrorCode::ParseError, "specializations must be an array");
      for (const fgl::Json& v : sj) {
        if (!v.is_array()) fgl::fail(fgl::ErrorCode::ParseError, "each specialization is an array of integers");
        std::vector<fgl::i64> vals;
        for (const fgl::Json& x : v) {
          if (!x.is_number_integer()) fgl::fail(fgl::ErrorCode::ParseError, "specialization values must be integers");
          vals.push_back(x.get<fgl::i64>());
        }
        specs.push_back(std::move(vals));
      }
    }
    const bool quotient = spec.value("quotient", false);
    const fgl::FormalGroupLaw U = universal_for(F);
    const fgl::NormalizationResult nc = fgl::normalize(F, U);
    const fgl::FunctorialityReport rep = fgl::functoriality_check(F, nc, U, specs, quotient);
    fgl::Json r = fgl::to_json(rep);
    r["iterations"] = nc.iterations;
    emit(r, out);
    if (pass) *pass = rep.pass ? 1 : 0;
  });
}

}  // extern "C"
