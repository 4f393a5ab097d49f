// Command line front end. Links only against the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fgl.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

// Exit codes: 0 pass, 2 mathematical check failure, 1 usage or validation.
constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;

struct LawDeleter {
  void operator()(fgl_law* l) const { fgl_law_free(l); }
};
using Law = std::unique_ptr<fgl_law, LawDeleter>;

struct Failure {
  int exit_code;
  std::string message;
};

struct Config {
  std::string command;
  uint64_t p = 2;
  int n = 1;
  int m = 1;
  int prec_p = 4;
  int trunc_u = 0;
  int trunc_t = 16;
  int work_trunc = -1;
  int out_trunc = -1;
  std::string law;
  std::string kernels;
  std::string spec;
  std::string out;
  uint64_t seed = 0;
  bool seeded = false;
  int level = 1;
  int twist = 0;
  int j = 1;
  long long nmul = 0;
  bool nmul_set = false;
  std::vector<std::string> specialize;
  bool quotient = false;
};

std::string take(char* s) {
  std::string r = s ? s : "";
  fgl_string_free(s);
  return r;
}

void check(fgl_status st, const char* what) {
  if (st == FGL_OK) return;
  // Validation failures from the library are usage errors; everything else
  // is a mathematical failure of the requested computation.
  const int code = (st == FGL_INVALID_ARGUMENT || st == FGL_PARSE_ERROR || st == FGL_DESCRIPTOR_MISMATCH)
                       ? kUsage
                       : kCheckFailed;
  throw Failure{code, std::string(what) + ": " + fgl_status_name(st) + ": " + fgl_last_error()};
}

std::string read_file(const std::string& path, const char* flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, std::string(flag) + ": cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Failure{kUsage, std::string(what) + ": malformed JSON: " + e.what()};
  }
}

// Files may be this tool's own output: take the result, and the law inside a
// normalize result.
Json read_artifact(const std::string& path, const char* flag) {
  Json j = parse(read_file(path, flag), flag);
  if (j.is_object() && j.contains("command") && j.contains("result")) j = j["result"];
  if (j.is_object() && j.contains("law") && j["law"].is_object() && j["law"].contains("descriptor")) j = j["law"];
  return j;
}

fgl_descriptor descriptor(const Config& c) { return fgl_descriptor{c.p, c.m, c.n, c.prec_p, c.trunc_u}; }

// --law is a file path or builtin:KIND.
Law load_law(const Config& c, const char* default_kind) {
  fgl_law* out = nullptr;
  if (c.law.empty() || c.law.rfind("builtin:", 0) == 0) {
    const std::string kind = c.law.empty() ? default_kind : c.law.substr(8);
    const fgl_descriptor d = descriptor(c);
    check(fgl_law_new(kind.c_str(), &d, c.trunc_t, &out), "--law");
  } else {
    const std::string text = read_artifact(c.law, "--law").dump();
    check(fgl_law_from_json(text.c_str(), &out), "--law");
  }
  Law l(out);
  if (c.seeded) {
    fgl_law* conj = nullptr;
    check(fgl_law_random_conjugate(l.get(), c.seed, &conj), "--seed");
    l.reset(conj);
  }
  return l;
}

Json law_json(const fgl_law* l) {
  char* s = nullptr;
  check(fgl_law_to_json(l, &s), "law");
  return parse(take(s), "law");
}

Json config_json(const Config& c) {
  Json j;
  j["p"] = c.p;
  j["n"] = c.n;
  j["m"] = c.m;
  j["prec_p"] = c.prec_p;
  j["trunc_u"] = c.trunc_u;
  j["trunc_t"] = c.trunc_t;
  if (c.work_trunc >= 0) j["work_trunc"] = c.work_trunc;
  if (c.out_trunc >= 0) j["out_trunc"] = c.out_trunc;
  if (!c.law.empty()) j["law"] = c.law;
  if (!c.kernels.empty()) j["kernels"] = c.kernels;
  if (c.seeded) j["seed"] = c.seed;
  return j;
}

int run_command(const Config& c, Json& result) {
  const std::string& cmd = c.command;
  bool pass = true;
  if (cmd == "honda") {
    Law l = load_law(c, "honda");
    result = law_json(l.get());
  } else if (cmd == "univ-def") {
    Law l = load_law(c, "universal");
    result = law_json(l.get());
  } else if (cmd == "p-series") {
    Law l = load_law(c, "honda");
    char* s = nullptr;
    const long long mult = c.nmul_set ? c.nmul : static_cast<long long>(law_json(l.get())["descriptor"]["p"]);
    check(fgl_n_series(l.get(), mult, &s), "p-series");
    result = parse(take(s), "p-series");
  } else if (cmd == "kernel") {
    Law l = load_law(c, "universal");
    char* s = nullptr;
    check(fgl_kernel(l.get(), c.level, &s), "kernel");
    result = parse(take(s), "kernel");
  } else if (cmd == "quotient") {
    Law l = load_law(c, "universal");
    std::string kernel;
    if (c.kernels.empty()) {
      char* s = nullptr;
      check(fgl_kernel(l.get(), c.level, &s), "kernel");
      kernel = take(s);
    } else {
      Json kj = read_artifact(c.kernels, "--kernels");
      if (kj.is_array()) {
        if (kj.empty()) throw Failure{kUsage, "--kernels: empty list"};
        kj = kj[0];
      }
      kernel = kj.dump();
    }
    char* s = nullptr;
    check(fgl_quotient(l.get(), kernel.c_str(), &s, nullptr), "quotient");
    result = parse(take(s), "quotient");
    pass = result["certificate"].get<bool>() && result["residue_frobenius"].get<bool>();
  } else if (cmd == "classify") {
    Law l = load_law(c, "universal");
    char* s = nullptr;
    check(fgl_classify(l.get(), c.twist, &s), "classify");
    result = parse(take(s), "classify");
  } else if (cmd == "defect") {
    Law l = load_law(c, "universal");
    char* s = nullptr;
    check(fgl_defect(l.get(), &s), "defect");
    result = parse(take(s), "defect");
    pass = result["pass"].get<bool>();
  } else if (cmd == "normalize") {
    char* s = nullptr;
    if (c.law.empty()) {
      const fgl_descriptor d = descriptor(c);
      check(fgl_normalize_universal(&d, c.trunc_t, c.work_trunc, &s, nullptr), "normalize");
    } else {
      Law l = load_law(c, "universal");
      check(fgl_normalize(l.get(), c.out_trunc, &s, nullptr), "normalize");
    }
    result = parse(take(s), "normalize");
  } else if (cmd == "check") {
    Law l = load_law(c, "universal");
    std::string ks;
    if (c.kernels.empty()) {
      char* s = nullptr;
      check(fgl_kernel(l.get(), 1, &s), "kernel");
      ks = "[" + take(s) + "]";
    } else {
      Json kj = read_artifact(c.kernels, "--kernels");
      if (!kj.is_array()) kj = Json::array({kj});
      ks = kj.dump();
    }
    char* s = nullptr;
    int ok = 0;
    check(fgl_check(l.get(), ks.c_str(), &s, &ok), "check");
    result = parse(take(s), "check");
    pass = ok != 0;
  } else if (cmd == "galois-check") {
    Law l = load_law(c, "universal");
    char* s = nullptr;
    int ok = 0;
    check(fgl_galois_check(l.get(), c.j, c.out_trunc, &s, &ok), "galois-check");
    result = parse(take(s), "galois-check");
    pass = ok != 0;
  } else if (cmd == "functoriality-check") {
    Law l = load_law(c, "universal");
    Json spec;
    if (!c.spec.empty()) {
      spec = parse(read_file(c.spec, "--spec"), "--spec");
    } else {
      spec["specializations"] = Json::array();
      for (const std::string& v : c.specialize) {
        Json vals = Json::array();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            size_t pos = 0;
            const long long x = std::stoll(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            vals.push_back(x);
          } catch (const std::exception&) {
            throw Failure{kUsage, "--specialize: '" + v + "' is not a comma separated integer list"};
          }
        }
        spec["specializations"].push_back(std::move(vals));
      }
      spec["quotient"] = c.quotient;
    }
    const std::string st = spec.dump();
    char* s = nullptr;
    int ok = 0;
    check(fgl_functoriality_check(l.get(), st.c_str(), &s, &ok), "functoriality-check");
    result = parse(take(s), "functoriality-check");
    pass = ok != 0;
  }
  return pass ? kPass : kCheckFailed;
}

void write_output(const Config& c, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (c.out.empty() || c.out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Failure{kUsage, "--out: cannot write '" + c.out + "'"};
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Formal group laws: universal deformations, quotients and norm coherence"};
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", c.p, "prime")->check(CLI::PositiveNumber);
    sub->add_option("--n", c.n, "height")->check(CLI::PositiveNumber);
    sub->add_option("--m", c.m, "residue field degree over F_p")->check(CLI::PositiveNumber);
    sub->add_option("--prec-p", c.prec_p, "p-adic precision N")->check(CLI::PositiveNumber);
    sub->add_option("--trunc-u", c.trunc_u, "total u-degree truncation M")->check(CLI::NonNegativeNumber);
    sub->add_option("--trunc-t", c.trunc_t, "formal variable truncation D")->check(CLI::PositiveNumber);
    sub->add_option("--work-trunc", c.work_trunc, "working truncation of the normalizer")
        ->check(CLI::PositiveNumber);
    sub->add_option("--law", c.law, "law JSON file, or builtin:honda|universal|additive|multiplicative|"
                                    "signed-multiplicative");
    sub->add_option("--kernels", c.kernels, "kernel JSON file (object or array)");
    auto* seed = sub->add_option("--seed", c.seed, "seed for the random star-isomorphism");
    seed->each([&](const std::string&) { c.seeded = true; });
    sub->add_option("--out", c.out, "output file (default stdout)");
  };

  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs = {
      {"honda", "Honda law of height n over F_{p^m}"},
      {"univ-def", "universal deformation (optionally star-conjugated with --seed)"},
      {"p-series", "[p]-series of a law (--mult for [k])"},
      {"kernel", "divisor of F[p^r]"},
      {"quotient", "Lubin isogeny and quotient law"},
      {"classify", "classifying map and star-isomorphism"},
      {"defect", "norm coherence defect"},
      {"normalize", "norm coherent star-isomorphic law"},
      {"check", "norm coherence for the given kernels"},
      {"galois-check", "normalize commutes with the Galois twist"},
      {"functoriality-check", "defect after specialization and after the quotient by F[p]"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    sub->callback([&c, name = std::string(s.name)] { c.command = name; });
    const std::string nm = s.name;
    if (nm == "p-series") {
      auto* o = sub->add_option("--mult", c.nmul, "series [k] instead of [p]");
      o->each([&](const std::string&) { c.nmul_set = true; });
    }
    if (nm == "kernel" || nm == "quotient") sub->add_option("--r", c.level, "torsion level")->check(CLI::NonNegativeNumber);
    if (nm == "classify") sub->add_option("--twist", c.twist, "residue twist")->check(CLI::NonNegativeNumber);
    if (nm == "galois-check") sub->add_option("--j", c.j, "Frobenius power")->check(CLI::NonNegativeNumber);
    if (nm == "normalize")
      sub->add_option("--out-trunc", c.out_trunc, "truncation of the returned law (default: the input's)")
          ->check(CLI::PositiveNumber);
    if (nm == "galois-check")
      sub->add_option("--out-trunc", c.out_trunc,
                      "truncation of the compared laws (default: the degree certified at --trunc-t)")
          ->check(CLI::PositiveNumber);
    if (nm == "functoriality-check") {
      sub->add_option("--spec", c.spec, "JSON {\"specializations\": [[..]], \"quotient\": bool}");
      sub->add_option("--specialize", c.specialize, "comma separated values of u_1..u_{n-1}, in pZ");
      sub->add_flag("--quotient", c.quotient, "also check the quotient by F[p]");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    Json result;
    const int rc = run_command(c, result);
    Json doc;
    doc["command"] = c.command;
    doc["config"] = config_json(c);
    doc["pass"] = rc == kPass;
    doc["result"] = std::move(result);
    write_output(c, doc);
    return rc;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
}
