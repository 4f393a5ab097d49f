#include "fgl/ring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace fgl {

namespace {

bool is_prime(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, lowest coefficient first.
using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod_prime(u64 a, u64 p) {
  // a^{p-2} mod p
  u64 r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& f, u64 p) {
  trim(a);
  const size_t df = f.size() - 1;
  const u64 lead_inv = inv_mod_prime(f.back(), p);
  while (a.size() >= f.size()) {
    u64 c = (a.back() * lead_inv) % p;
    size_t shift = a.size() - f.size();
    for (size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + p - (c * f[i]) % p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), f, p);
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or irreducibility test.
bool irreducible_mod_p(const Poly& f_in, u64 p) {
  Poly f = f_in;
  trim(f);
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  Poly x{0, 1};
  Poly xp = poly_mod(x, f, p);
  for (int i = 1; i <= d / 2; ++i) {
    // xp <- xp^p mod f
    Poly base = xp, acc{1};
    u64 e = p;
    while (e) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1;
    }
    xp = acc;
    Poly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

std::vector<i64> default_witt_poly(u64 p, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  if (m == 1) return {0, 1};
  static const std::map<std::pair<u64, int>, std::vector<i64>> conway = {
      {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},    {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},    {{7, 2}, {3, 6, 1}},
  };
  auto it = conway.find({p, m});
  if (it != conway.end()) return it->second;
  // First irreducible in lexicographic order of (c_0, ..., c_{m-1}).
  std::vector<u64> digits(m, 0);
  for (;;) {
    Poly f(digits.begin(), digits.end());
    f.push_back(1);
    if (digits[0] != 0 && irreducible_mod_p(f, p)) {
      return std::vector<i64>(f.begin(), f.end());
    }
    int k = 0;
    while (k < m && ++digits[k] == p) digits[k++] = 0;
    if (k == m) fail(ErrorCode::InvalidArgument, "no irreducible polynomial found");
  }
}

RingDescriptor make_descriptor(u64 p, int m, int n, int prec_p, int trunc_u) {
  RingDescriptor d;
  d.p = p;
  d.m = m;
  d.witt_poly = default_witt_poly(p, m);
  d.n = n;
  d.prec_p = prec_p;
  d.trunc_u = trunc_u;
  return d;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const RingContext> RingContext::create(const RingDescriptor& desc) {
  return std::shared_ptr<const RingContext>(new RingContext(desc));
}

RingContext::RingContext(const RingDescriptor& desc) : desc_(desc) {
  if (!is_prime(desc.p)) fail(ErrorCode::InvalidArgument, "p must be prime");
  if (desc.m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  if (desc.n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (desc.prec_p < 1) fail(ErrorCode::InvalidArgument, "prec_p must be >= 1");
  if (desc.trunc_u < 0) fail(ErrorCode::InvalidArgument, "trunc_u must be >= 0");
  if (static_cast<int>(desc.witt_poly.size()) != desc.m + 1 || desc.witt_poly.back() != 1)
    fail(ErrorCode::InvalidArgument, "witt_poly must be monic of degree m");
  q_ = 1;
  for (int i = 0; i < desc.prec_p; ++i) {
    if (q_ > (u64{1} << 31) / desc.p) fail(ErrorCode::InvalidArgument, "p^prec_p must be below 2^31");
    q_ *= desc.p;
  }
  const i64 pp = static_cast<i64>(desc.p);
  Poly red;
  for (i64 c : desc.witt_poly) red.push_back(static_cast<u64>(((c % pp) + pp) % pp));
  if (!irreducible_mod_p(red, desc.p))
    fail(ErrorCode::InvalidArgument, "witt_poly is not irreducible mod p");
  witt_mod_.clear();
  for (i64 c : desc.witt_poly) witt_mod_.push_back(reduce_signed(c));
  build_monomials();
  stride_ = num_monomials() * desc.m;
  build_frobenius();
}

u64 RingContext::reduce_signed(i64 v) const {
  i64 q = static_cast<i64>(q_);
  i64 r = v % q;
  if (r < 0) r += q;
  return static_cast<u64>(r);
}

int RingContext::valuation(u64 a) const {
  if (a == 0) return desc_.prec_p;
  int v = 0;
  while (a % desc_.p == 0) {
    a /= desc_.p;
    ++v;
  }
  return v;
}

void RingContext::build_monomials() {
  const int nv = nvars();
  const int M = desc_.trunc_u;
  mon_exp_.clear();
  mon_deg_.clear();
  std::vector<int> e(nv, 0);
  // Graded lexicographic: by total degree, then lexicographically descending.
  for (int d = 0; d <= (nv == 0 ? 0 : M); ++d) {
    std::vector<std::vector<int>> level;
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == nv - 1) {
        e[var] = left;
        level.push_back(e);
        return;
      }
      for (int a = left; a >= 0; --a) {
        e[var] = a;
        rec(var + 1, left - a);
      }
    };
    if (nv == 0) {
      level.push_back({});
    } else {
      rec(0, d);
    }
    for (auto& x : level) {
      mon_exp_.insert(mon_exp_.end(), x.begin(), x.end());
      mon_deg_.push_back(d);
    }
  }
  const int nm = num_monomials();
  mon_prod_.assign(static_cast<size_t>(nm) * nm, -1);
  mul_rows_.assign(nm, {});
  std::vector<int> sum(nv);
  for (int a = 0; a < nm; ++a) {
    for (int b = 0; b < nm; ++b) {
      if (mon_deg_[a] + mon_deg_[b] > M && nv > 0) continue;
      for (int v = 0; v < nv; ++v) sum[v] = monomial_exponents(a)[v] + monomial_exponents(b)[v];
      int k = monomial_index(sum);
      mon_prod_[static_cast<size_t>(a) * nm + b] = k;
      if (k >= 0) mul_rows_[a].push_back({b, k});
    }
  }
}

int RingContext::monomial_index(const std::vector<int>& exps) const {
  const int nv = nvars();
  if (static_cast<int>(exps.size()) != nv) fail(ErrorCode::InvalidArgument, "monomial arity mismatch");
  int deg = 0;
  for (int x : exps) {
    if (x < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
    deg += x;
  }
  if (nv == 0) return 0;
  if (deg > desc_.trunc_u) return -1;
  // Offset of degree block: number of monomials of degree < deg in nv vars.
  auto binom = [](int a, int b) {
    if (b < 0 || b > a) return 0LL;
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  long long idx = binom(deg - 1 + nv, nv);  // monomials of degree <= deg-1
  // Rank within degree block in lex-descending order.
  int left = deg;
  for (int v = 0; v < nv - 1; ++v) {
    // Monomials whose exponent at v is larger than exps[v] come first.
    for (int a = left; a > exps[v]; --a) idx += binom(left - a + (nv - v - 2), nv - v - 2);
    left -= exps[v];
  }
  return static_cast<int>(idx);
}

void RingContext::witt_reduce(u64* acc) const {
  const int m = desc_.m;
  for (int deg = 2 * m - 2; deg >= m; --deg) {
    u64 c = acc[deg];
    if (c == 0) continue;
    for (int l = 0; l < m; ++l) acc[deg - m + l] = subm(acc[deg - m + l], mulm(c, witt_mod_[l]));
    acc[deg] = 0;
  }
}

void RingContext::witt_mul(const u64* a, const u64* b, u64* out) const {
  const int m = desc_.m;
  if (m == 1) {
    out[0] = mulm(a[0], b[0]);
    return;
  }
  u64 acc[2 * 16];
  std::vector<u64> big;
  u64* t = acc;
  if (2 * m - 1 > 32) {
    big.assign(2 * m - 1, 0);
    t = big.data();
  } else {
    std::fill(acc, acc + 2 * m - 1, 0);
  }
  for (int i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m; ++j) t[i + j] = addm(t[i + j], mulm(a[i], b[j]));
  }
  witt_reduce(t);
  std::copy(t, t + m, out);
}

void RingContext::residue_mul(const u64* a, const u64* b, u64* out) const {
  const int m = desc_.m;
  const u64 p = desc_.p;
  std::vector<u64> t(2 * m - 1, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i + j] = (t[i + j] + (a[i] % p) * (b[j] % p)) % p;
  for (int deg = 2 * m - 2; deg >= m; --deg) {
    u64 c = t[deg];
    if (c == 0) continue;
    for (int l = 0; l < m; ++l) t[deg - m + l] = (t[deg - m + l] + p - (c * (witt_mod_[l] % p)) % p) % p;
    t[deg] = 0;
  }
  std::copy(t.begin(), t.begin() + m, out);
}

bool RingContext::residue_inverse(const u64* a, u64* out) const {
  // Solve a*x = 1 over F_p: columns are a*w^i.
  const int m = desc_.m;
  const u64 p = desc_.p;
  std::vector<std::vector<u64>> mat(m, std::vector<u64>(m + 1, 0));
  std::vector<u64> wi(m, 0), col(m);
  for (int i = 0; i < m; ++i) {
    std::fill(wi.begin(), wi.end(), 0);
    wi[i] = 1;
    residue_mul(a, wi.data(), col.data());
    for (int r = 0; r < m; ++r) mat[r][i] = col[r];
  }
  mat[0][m] = 1;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (mat[r][c] % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(mat[piv], mat[c]);
    u64 inv = inv_mod_prime(mat[c][c], p);
    for (int k = 0; k <= m; ++k) mat[c][k] = (mat[c][k] * inv) % p;
    for (int r = 0; r < m; ++r) {
      if (r == c || mat[r][c] == 0) continue;
      u64 f = mat[r][c];
      for (int k = 0; k <= m; ++k) mat[r][k] = (mat[r][k] + p - (f * mat[c][k]) % p) % p;
    }
  }
  for (int i = 0; i < m; ++i) out[i] = mat[i][m];
  return true;
}

bool RingContext::witt_inverse(const u64* a, u64* out) const {
  const int m = desc_.m;
  std::vector<u64> x(m), ax(m), two_minus(m);
  if (!residue_inverse(a, x.data())) return false;
  // Newton: x <- x (2 - a x); precision doubles each pass.
  for (int prec = 1; prec < desc_.prec_p; prec *= 2) {
    witt_mul(a, x.data(), ax.data());
    for (int i = 0; i < m; ++i) two_minus[i] = negm(ax[i]);
    two_minus[0] = addm(two_minus[0], 2 % q_);
    std::vector<u64> nx(m);
    witt_mul(x.data(), two_minus.data(), nx.data());
    x = nx;
  }
  std::copy(x.begin(), x.end(), out);
  return true;
}

void RingContext::build_frobenius() {
  const int m = desc_.m;
  frob_.assign(static_cast<size_t>(m) * m * m, 0);
  auto set_powers = [&](int j, const std::vector<u64>& root) {
    std::vector<u64> pw(m, 0);
    pw[0] = 1 % q_;
    for (int i = 0; i < m; ++i) {
      std::copy(pw.begin(), pw.end(), &frob_[(static_cast<size_t>(j) * m + i) * m]);
      std::vector<u64> nx(m);
      witt_mul(pw.data(), root.data(), nx.data());
      pw = nx;
    }
  };
  if (m == 1) {
    frob_[0] = 1 % q_;
    return;
  }
  std::vector<u64> w(m, 0);
  w[1] = 1;
  set_powers(0, w);
  // Root of witt_poly congruent to w^p, by Newton iteration.
  std::vector<u64> r(m, 0), base = w, tmp(m);
  r[0] = 1;
  for (u64 e = desc_.p; e; e >>= 1) {
    if (e & 1) {
      witt_mul(r.data(), base.data(), tmp.data());
      r = tmp;
    }
    witt_mul(base.data(), base.data(), tmp.data());
    base = tmp;
  }
  for (int iter = 0; iter < 2 * desc_.prec_p + 4; ++iter) {
    std::vector<u64> val(m, 0), der(m, 0), pw(m, 0), pwm1(m, 0);
    pw[0] = 1 % q_;
    for (int l = 0; l <= m; ++l) {
      // val += witt_poly[l] * r^l ; der += l * witt_poly[l] * r^{l-1}
      for (int i = 0; i < m; ++i) val[i] = addm(val[i], mulm(witt_mod_[l], pw[i]));
      if (l >= 1) {
        u64 c = mulm(witt_mod_[l], static_cast<u64>(l) % q_);
        for (int i = 0; i < m; ++i) der[i] = addm(der[i], mulm(c, pwm1[i]));
      }
      pwm1 = pw;
      witt_mul(pw.data(), r.data(), tmp.data());
      pw = tmp;
    }
    std::vector<u64> dinv(m);
    if (!witt_inverse(der.data(), dinv.data()))
      fail(ErrorCode::InvalidArgument, "witt_poly is not separable mod p");
    witt_mul(val.data(), dinv.data(), tmp.data());
    bool zero = std::all_of(val.begin(), val.end(), [](u64 v) { return v == 0; });
    if (zero) break;
    for (int i = 0; i < m; ++i) r[i] = subm(r[i], tmp[i]);
  }
  // sigma^j(w) = sigma(sigma^{j-1}(w)).
  std::vector<u64> sj = w;
  for (int j = 1; j < m; ++j) {
    std::vector<u64> next(m, 0), pw(m, 0);
    pw[0] = 1 % q_;
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) next[k] = addm(next[k], mulm(sj[i], pw[k]));
      witt_mul(pw.data(), r.data(), tmp.data());
      pw = tmp;
    }
    sj = next;
    set_powers(j, sj);
  }
}

void RingContext::witt_frobenius(const u64* a, int j, u64* out) const {
  const int m = desc_.m;
  j %= m;
  if (j < 0) j += m;
  if (j == 0) {
    std::copy(a, a + m, out);
    return;
  }
  std::fill(out, out + m, 0);
  for (int i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    const u64* s = frobenius_power_of_w(j, i);
    for (int k = 0; k < m; ++k) out[k] = addm(out[k], mulm(a[i], s[k]));
  }
}

void RingContext::add_into(u64* out, const u64* a) const {
  for (int i = 0; i < stride_; ++i) out[i] = addm(out[i], a[i]);
}

void RingContext::sub_into(u64* out, const u64* a) const {
  for (int i = 0; i < stride_; ++i) out[i] = subm(out[i], a[i]);
}

void RingContext::neg_inplace(u64* a) const {
  for (int i = 0; i < stride_; ++i) a[i] = negm(a[i]);
}

void RingContext::scale_into(u64* out, const u64* a, u64 c) const {
  if (c == 0) return;
  for (int i = 0; i < stride_; ++i)
    if (a[i]) out[i] = (out[i] + a[i] * c) % q_;
}

void RingContext::mul_acc(const u64* a, const u64* b, u64* out) const {
  const int m = desc_.m;
  const int nm = num_monomials();
  if (m == 1) {
    if (nm == 1) {
      out[0] = (out[0] + a[0] * b[0]) % q_;
      return;
    }
    for (int i = 0; i < nm; ++i) {
      const u64 ai = a[i];
      if (ai == 0) continue;
      for (const auto& [j, k] : mul_rows_[i]) {
        const u64 bj = b[j];
        if (bj) out[k] = (out[k] + ai * bj) % q_;
      }
    }
    return;
  }
  thread_local std::vector<u64> acc;
  const int w2 = 2 * m - 1;
  acc.assign(static_cast<size_t>(nm) * w2, 0);
  bool any = false;
  for (int i = 0; i < nm; ++i) {
    const u64* ai = a + static_cast<size_t>(i) * m;
    bool nz = false;
    for (int s = 0; s < m; ++s) nz |= ai[s] != 0;
    if (!nz) continue;
    for (const auto& [j, k] : mul_rows_[i]) {
      const u64* bj = b + static_cast<size_t>(j) * m;
      u64* t = &acc[static_cast<size_t>(k) * w2];
      for (int s = 0; s < m; ++s) {
        if (ai[s] == 0) continue;
        for (int r = 0; r < m; ++r)
          if (bj[r]) t[s + r] = (t[s + r] + ai[s] * bj[r]) % q_;
      }
      any = true;
    }
  }
  if (!any) return;
  for (int k = 0; k < nm; ++k) {
    u64* t = &acc[static_cast<size_t>(k) * w2];
    witt_reduce(t);
    u64* o = out + static_cast<size_t>(k) * m;
    for (int s = 0; s < m; ++s) o[s] = addm(o[s], t[s]);
  }
}

void RingContext::mul(const u64* a, const u64* b, u64* out) const {
  std::fill(out, out + stride_, 0);
  mul_acc(a, b, out);
}

void RingContext::witt_scale_acc(const u64* s, const u64* a, u64* out) const {
  const int m = desc_.m;
  const int nm = num_monomials();
  if (m == 1) {
    scale_into(out, a, s[0]);
    return;
  }
  std::vector<u64> t(m);
  for (int k = 0; k < nm; ++k) {
    const u64* ak = a + static_cast<size_t>(k) * m;
    bool nz = false;
    for (int i = 0; i < m; ++i) nz |= ak[i] != 0;
    if (!nz) continue;
    witt_mul(s, ak, t.data());
    u64* o = out + static_cast<size_t>(k) * m;
    for (int i = 0; i < m; ++i) o[i] = addm(o[i], t[i]);
  }
}

bool RingContext::is_zero(const u64* a) const {
  for (int i = 0; i < stride_; ++i)
    if (a[i]) return false;
  return true;
}

bool RingContext::is_unit(const u64* a) const {
  for (int i = 0; i < desc_.m; ++i)
    if (a[i] % desc_.p != 0) return true;
  return false;
}

int RingContext::order(const u64* a) const {
  int best = kInfiniteOrder;
  const int m = desc_.m;
  for (int k = 0; k < num_monomials(); ++k) {
    int v = desc_.prec_p;
    for (int i = 0; i < m; ++i) v = std::min(v, valuation(a[static_cast<size_t>(k) * m + i]));
    if (v >= desc_.prec_p) continue;
    best = std::min(best, v + mon_deg_[k]);
  }
  return best;
}

// ---------------------------------------------------------------------------

bool same_ring(const Ctx& a, const Ctx& b) {
  if (!a || !b) return false;
  return a == b || a->desc() == b->desc();
}

void require_same_ring(const Ctx& a, const Ctx& b, const char* where) {
  if (!same_ring(a, b)) fail(ErrorCode::DescriptorMismatch, where);
}

bool ResidueElem::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](u64 v) { return v == 0; });
}

RingElem::RingElem(Ctx ctx) : ctx_(std::move(ctx)), v_(ctx_->stride(), 0) {}

RingElem RingElem::from_int(const Ctx& ctx, i64 v) {
  RingElem r(ctx);
  r.v_[0] = ctx->reduce_signed(v);
  return r;
}

RingElem RingElem::u(const Ctx& ctx, int var) {
  if (var < 0 || var >= ctx->nvars()) fail(ErrorCode::InvalidArgument, "u index out of range");
  RingElem r(ctx);
  std::vector<int> e(ctx->nvars(), 0);
  e[var] = 1;
  int idx = ctx->monomial_index(e);
  if (idx >= 0) r.scalar(idx)[0] = 1 % ctx->modulus();
  return r;
}

RingElem RingElem::w(const Ctx& ctx) {
  RingElem r(ctx);
  if (ctx->m() == 1) {
    r.v_[0] = ctx->reduce_signed(-ctx->desc().witt_poly[0]);
  } else {
    r.v_[1] = 1;
  }
  return r;
}

RingElem RingElem::from_raw(const Ctx& ctx, const u64* data) {
  RingElem r(ctx);
  std::copy(data, data + ctx->stride(), r.v_.begin());
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  require_same_ring(ctx_, o.ctx_, "ring add");
  ctx_->add_into(v_.data(), o.v_.data());
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) {
  require_same_ring(ctx_, o.ctx_, "ring sub");
  ctx_->sub_into(v_.data(), o.v_.data());
  return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  require_same_ring(a.ctx_, b.ctx_, "ring mul");
  RingElem r(a.ctx_);
  a.ctx_->mul_acc(a.v_.data(), b.v_.data(), r.v_.data());
  return r;
}

RingElem& RingElem::operator*=(const RingElem& o) {
  *this = *this * o;
  return *this;
}

RingElem RingElem::operator-() const {
  RingElem r(*this);
  ctx_->neg_inplace(r.v_.data());
  return r;
}

bool RingElem::operator==(const RingElem& o) const {
  return same_ring(ctx_, o.ctx_) && v_ == o.v_;
}

RingElem RingElem::pow(u64 e) const {
  RingElem r = one(ctx_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

RingElem RingElem::inverse() const {
  if (!is_unit()) fail(ErrorCode::InvalidArgument, "inverse of a non-unit");
  // Invert the constant Witt scalar, then Newton-lift through the u-adic part.
  const int m = ctx_->m();
  RingElem x(ctx_);
  if (!ctx_->witt_inverse(scalar(0), x.scalar(0))) fail(ErrorCode::InvalidArgument, "inverse of a non-unit");
  const RingElem two = from_int(ctx_, 2);
  const int passes = ctx_->prec_p() + ctx_->trunc_u() + 1;
  for (int prec = 1; prec < 2 * passes; prec *= 2) {
    RingElem nx = x * (two - (*this) * x);
    if (nx == x) break;
    x = nx;
  }
  (void)m;
  return x;
}

std::string RingElem::to_string() const {
  std::ostringstream os;
  const int m = ctx_->m();
  bool first = true;
  for (int k = 0; k < ctx_->num_monomials(); ++k) {
    const u64* s = scalar(k);
    bool nz = false;
    for (int i = 0; i < m; ++i) nz |= s[i] != 0;
    if (!nz) continue;
    if (!first) os << " + ";
    first = false;
    os << "(";
    bool f2 = true;
    for (int i = 0; i < m; ++i) {
      if (!s[i]) continue;
      if (!f2) os << "+";
      f2 = false;
      os << s[i];
      if (i == 1) os << "w";
      if (i > 1) os << "w^" << i;
    }
    os << ")";
    const int* e = ctx_->monomial_exponents(k);
    for (int v = 0; v < ctx_->nvars(); ++v) {
      if (e[v] == 0) continue;
      os << "u" << (v + 1);
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  if (first) os << "0";
  return os.str();
}

RingElem ring_arithmetic(const RingElem& a, const RingElem& b, RingOp op) {
  switch (op) {
    case RingOp::Add: return a + b;
    case RingOp::Sub: return a - b;
    case RingOp::Mul: return a * b;
  }
  fail(ErrorCode::InvalidArgument, "unknown ring op");
}

RingElem witt_frobenius(const RingElem& a, int j) {
  const Ctx& ctx = a.ctx();
  RingElem r(ctx);
  for (int k = 0; k < ctx->num_monomials(); ++k) ctx->witt_frobenius(a.scalar(k), j, r.scalar(k));
  return r;
}

ResidueElem residue_reduce(const RingElem& a) {
  ResidueElem r;
  const u64 p = a.ctx()->p();
  for (int i = 0; i < a.ctx()->m(); ++i) r.c.push_back(a.scalar(0)[i] % p);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void require_compatible(const Ctx& s, const Ctx& t) {
  if (!s || !t) fail(ErrorCode::InvalidArgument, "endomorphism without descriptor");
  const auto& a = s->desc();
  const auto& b = t->desc();
  if (a.p != b.p || a.m != b.m || a.witt_poly != b.witt_poly)
    fail(ErrorCode::DescriptorMismatch, "ring map between incompatible Witt rings");
  if (b.prec_p > a.prec_p) fail(ErrorCode::DescriptorMismatch, "ring map cannot raise p-precision");
}

}  // namespace

RingEndo RingEndo::identity(const Ctx& ctx) {
  RingEndo e;
  e.source = ctx;
  e.target = ctx;
  for (int i = 0; i < ctx->nvars(); ++i) e.u_images.push_back(RingElem::u(ctx, i));
  return e;
}

bool RingEndo::operator==(const RingEndo& o) const {
  if (!same_ring(source, o.source) || !same_ring(target, o.target)) return false;
  const int m = source->m();
  if (((frobenius_power - o.frobenius_power) % m + m) % m != 0) return false;
  return u_images == o.u_images;
}

EndoAction::EndoAction(const RingEndo& phi) : phi_(phi) {
  require_compatible(phi.source, phi.target);
  const Ctx& s = phi.source;
  const Ctx& t = phi.target;
  if (static_cast<int>(phi.u_images.size()) != s->nvars())
    fail(ErrorCode::InvalidArgument, "u_images arity differs from source variables");
  for (const auto& im : phi.u_images) {
    require_same_ring(im.ctx(), t, "u_image descriptor");
    if (im.is_unit()) fail(ErrorCode::InvalidArgument, "u_image outside the maximal ideal");
  }
  trivial_u_ = same_ring(s, t);
  if (trivial_u_) {
    for (int i = 0; i < s->nvars(); ++i)
      if (!(phi.u_images[i] == RingElem::u(t, i))) trivial_u_ = false;
  }
  if (trivial_u_) return;
  const int nm = s->num_monomials();
  const int nv = s->nvars();
  mon_images_.assign(nm, RingElem(t));
  mon_images_[0] = RingElem::one(t);
  std::vector<int> e(nv);
  for (int k = 1; k < nm; ++k) {
    const int* ex = s->monomial_exponents(k);
    e.assign(ex, ex + nv);
    int var = 0;
    while (e[var] == 0) ++var;
    e[var] -= 1;
    int prev = s->monomial_index(e);
    mon_images_[k] = mon_images_[prev] * phi.u_images[var];
  }
}

void EndoAction::apply_raw(const u64* in, u64* out) const {
  const Ctx& s = phi_.source;
  const Ctx& t = phi_.target;
  const int m = s->m();
  const u64 tq = t->modulus();
  std::vector<u64> sc(m);
  for (int k = 0; k < s->num_monomials(); ++k) {
    const u64* a = in + static_cast<size_t>(k) * m;
    bool nz = false;
    for (int i = 0; i < m; ++i) nz |= a[i] != 0;
    if (!nz) continue;
    s->witt_frobenius(a, phi_.frobenius_power, sc.data());
    for (int i = 0; i < m; ++i) sc[i] %= tq;
    if (trivial_u_) {
      u64* o = out + static_cast<size_t>(k) * m;
      for (int i = 0; i < m; ++i) o[i] = t->addm(o[i], sc[i]);
    } else {
      t->witt_scale_acc(sc.data(), mon_images_[k].data(), out);
    }
  }
}

RingElem EndoAction::apply(const RingElem& a) const {
  require_same_ring(a.ctx(), phi_.source, "apply_endo");
  RingElem r(phi_.target);
  apply_raw(a.data(), r.data());
  return r;
}

RingElem apply_endo(const RingEndo& phi, const RingElem& a) { return EndoAction(phi).apply(a); }

RingEndo compose_endo(const RingEndo& outer, const RingEndo& inner) {
  require_same_ring(inner.target, outer.source, "compose_endo");
  EndoAction act(outer);
  RingEndo r;
  r.source = inner.source;
  r.target = outer.target;
  r.frobenius_power = (outer.frobenius_power + inner.frobenius_power) % outer.source->m();
  for (const auto& im : inner.u_images) r.u_images.push_back(act.apply(im));
  return r;
}

RingEndo invert_endo(const RingEndo& phi) {
  require_same_ring(phi.source, phi.target, "invert_endo");
  const Ctx& ctx = phi.source;
  const int nv = ctx->nvars();
  const int m = ctx->m();
  RingEndo psi = RingEndo::identity(ctx);
  psi.frobenius_power = ((-phi.frobenius_power) % m + m) % m;
  if (nv == 0) return psi;
  // Linear part of sigma^{-j}(phi(u_i)) in the u_k, as Witt scalars.
  std::vector<RingElem> twisted;
  for (const auto& im : phi.u_images) {
    if (im.is_unit()) fail(ErrorCode::NonUnitJacobian, "u_image is a unit");
    twisted.push_back(witt_frobenius(im, psi.frobenius_power));
  }
  std::vector<int> lin_idx(nv);
  for (int k = 0; k < nv; ++k) {
    std::vector<int> e(nv, 0);
    e[k] = 1;
    lin_idx[k] = ctx->monomial_index(e);
  }
  if (ctx->trunc_u() == 0) return psi;  // every u is already zero
  // J[i][k] as RingElem constants; invert by Gauss-Jordan with unit pivots.
  std::vector<std::vector<RingElem>> J(nv, std::vector<RingElem>(nv, RingElem(ctx)));
  std::vector<std::vector<RingElem>> Jinv(nv, std::vector<RingElem>(nv, RingElem(ctx)));
  for (int i = 0; i < nv; ++i) {
    for (int k = 0; k < nv; ++k) {
      RingElem c(ctx);
      std::copy(twisted[i].scalar(lin_idx[k]), twisted[i].scalar(lin_idx[k]) + m, c.scalar(0));
      J[i][k] = c;
    }
    Jinv[i][i] = RingElem::one(ctx);
  }
  for (int c = 0; c < nv; ++c) {
    int piv = -1;
    for (int r = c; r < nv; ++r)
      if (J[r][c].is_unit()) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrorCode::NonUnitJacobian, "linearization of the endomorphism is singular mod (p, u)");
    std::swap(J[piv], J[c]);
    std::swap(Jinv[piv], Jinv[c]);
    RingElem inv = J[c][c].inverse();
    for (int k = 0; k < nv; ++k) {
      J[c][k] = J[c][k] * inv;
      Jinv[c][k] = Jinv[c][k] * inv;
    }
    for (int r = 0; r < nv; ++r) {
      if (r == c || J[r][c].is_zero()) continue;
      RingElem f = J[r][c];
      for (int k = 0; k < nv; ++k) {
        J[r][k] -= f * J[c][k];
        Jinv[r][k] -= f * Jinv[c][k];
      }
    }
  }
  // Successive approximation: v <- v + J^{-1}(u - Q(v)), Q(v) = psi_v(phi(u)).
  std::vector<RingElem> v(nv, RingElem(ctx));
  const int max_stages = ctx->prec_p() + ctx->trunc_u() + 2;
  for (int stage = 0; stage <= max_stages; ++stage) {
    RingEndo trial;
    trial.source = ctx;
    trial.target = ctx;
    trial.frobenius_power = psi.frobenius_power;
    trial.u_images = v;
    EndoAction act(trial);
    std::vector<RingElem> err(nv, RingElem(ctx));
    bool done = true;
    for (int i = 0; i < nv; ++i) {
      err[i] = RingElem::u(ctx, i) - act.apply(phi.u_images[i]);
      if (!err[i].is_zero()) done = false;
    }
    if (done) {
      psi.u_images = v;
      return psi;
    }
    for (int k = 0; k < nv; ++k)
      for (int i = 0; i < nv; ++i) v[k] += Jinv[k][i] * err[i];
  }
  fail(ErrorCode::NonUnitJacobian, "successive approximation did not converge");
}

}  // namespace fgl
