#include "fgl/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fgl {

namespace {

int nilpotency_bound(const Ctx& ctx) {
  // Every product of this many elements of (p, u) vanishes.
  return ctx->prec_p() + (ctx->nvars() > 0 ? ctx->trunc_u() : 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// PowerSeries1

PowerSeries1::PowerSeries1(Ctx ctx, int trunc_t) : ctx_(std::move(ctx)), d_(trunc_t) {
  if (trunc_t < 0) fail(ErrorCode::InvalidArgument, "negative truncation");
  v_.assign(static_cast<size_t>(d_ + 1) * ctx_->stride(), 0);
}

PowerSeries1 PowerSeries1::variable(const Ctx& ctx, int trunc_t) {
  PowerSeries1 r(ctx, trunc_t);
  if (trunc_t >= 1) r.raw(1)[0] = 1 % ctx->modulus();
  return r;
}

PowerSeries1 PowerSeries1::constant(const RingElem& c, int trunc_t) {
  PowerSeries1 r(c.ctx(), trunc_t);
  r.set_coeff(0, c);
  return r;
}

PowerSeries1 PowerSeries1::monomial(const RingElem& c, int deg, int trunc_t) {
  PowerSeries1 r(c.ctx(), trunc_t);
  if (deg <= trunc_t) r.set_coeff(deg, c);
  return r;
}

PowerSeries1 PowerSeries1::from_coeffs(const Ctx& ctx, int trunc_t, const std::vector<RingElem>& cs) {
  PowerSeries1 r(ctx, trunc_t);
  for (size_t i = 0; i < cs.size() && static_cast<int>(i) <= trunc_t; ++i) r.set_coeff(static_cast<int>(i), cs[i]);
  return r;
}

PowerSeries1 PowerSeries1::from_ints(const Ctx& ctx, int trunc_t, const std::vector<i64>& cs) {
  PowerSeries1 r(ctx, trunc_t);
  for (size_t i = 0; i < cs.size() && static_cast<int>(i) <= trunc_t; ++i)
    r.raw(static_cast<int>(i))[0] = ctx->reduce_signed(cs[i]);
  return r;
}

RingElem PowerSeries1::coeff(int i) const {
  if (i < 0 || i > d_) return RingElem(ctx_);
  return RingElem::from_raw(ctx_, raw(i));
}

void PowerSeries1::set_coeff(int i, const RingElem& c) {
  require_same_ring(ctx_, c.ctx(), "series coefficient");
  if (i < 0 || i > d_) fail(ErrorCode::InvalidArgument, "coefficient index beyond truncation");
  std::copy(c.data(), c.data() + ctx_->stride(), raw(i));
}

bool PowerSeries1::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](u64 x) { return x == 0; });
}

int PowerSeries1::t_order() const {
  for (int i = 0; i <= d_; ++i)
    if (!coeff_is_zero(i)) return i;
  return d_ + 1;
}

int PowerSeries1::order() const {
  int best = kInfiniteOrder;
  for (int i = 0; i <= d_; ++i) best = std::min(best, ctx_->order(raw(i)));
  return best;
}

PowerSeries1 PowerSeries1::truncated(int new_trunc) const {
  PowerSeries1 r(ctx_, new_trunc);
  const int k = std::min(d_, new_trunc);
  std::copy(v_.begin(), v_.begin() + static_cast<size_t>(k + 1) * ctx_->stride(), r.v_.begin());
  return r;
}

PowerSeries1& PowerSeries1::operator+=(const PowerSeries1& o) {
  require_same_ring(ctx_, o.ctx_, "series add");
  if (o.d_ < d_) *this = truncated(o.d_);
  for (int i = 0; i <= d_; ++i) ctx_->add_into(raw(i), o.raw(i));
  return *this;
}

PowerSeries1& PowerSeries1::operator-=(const PowerSeries1& o) {
  require_same_ring(ctx_, o.ctx_, "series sub");
  if (o.d_ < d_) *this = truncated(o.d_);
  for (int i = 0; i <= d_; ++i) ctx_->sub_into(raw(i), o.raw(i));
  return *this;
}

PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b) {
  require_same_ring(a.ctx_, b.ctx_, "series mul");
  const int D = std::min(a.d_, b.d_);
  PowerSeries1 r(a.ctx_, D);
  const RingContext& ctx = *a.ctx_;
  std::vector<char> nzb(D + 1);
  for (int j = 0; j <= D; ++j) nzb[j] = !b.coeff_is_zero(j);
  for (int i = 0; i <= D; ++i) {
    if (a.coeff_is_zero(i)) continue;
    const u64* ai = a.raw(i);
    for (int j = 0; i + j <= D; ++j)
      if (nzb[j]) ctx.mul_acc(ai, b.raw(j), r.raw(i + j));
  }
  return r;
}

PowerSeries1 PowerSeries1::operator-() const {
  PowerSeries1 r(*this);
  for (auto& x : r.v_) x = ctx_->negm(x);
  return r;
}

PowerSeries1 PowerSeries1::scaled(const RingElem& c) const {
  require_same_ring(ctx_, c.ctx(), "series scale");
  PowerSeries1 r(ctx_, d_);
  for (int i = 0; i <= d_; ++i)
    if (!coeff_is_zero(i)) ctx_->mul_acc(c.data(), raw(i), r.raw(i));
  return r;
}

bool PowerSeries1::operator==(const PowerSeries1& o) const {
  return same_ring(ctx_, o.ctx_) && d_ == o.d_ && v_ == o.v_;
}

PowerSeries1 PowerSeries1::derivative() const {
  PowerSeries1 r(ctx_, d_);
  for (int i = 1; i <= d_; ++i) ctx_->scale_into(r.raw(i - 1), raw(i), static_cast<u64>(i) % ctx_->modulus());
  return r;
}

PowerSeries1 PowerSeries1::inverse() const {
  RingElem c0 = coeff(0);
  if (!c0.is_unit()) fail(ErrorCode::InvalidArgument, "series inverse needs a unit constant term");
  RingElem inv0 = c0.inverse();
  PowerSeries1 r(ctx_, d_);
  r.set_coeff(0, inv0);
  std::vector<u64> acc(ctx_->stride());
  for (int k = 1; k <= d_; ++k) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int i = 1; i <= k; ++i)
      if (!coeff_is_zero(i)) ctx_->mul_acc(raw(i), r.raw(k - i), acc.data());
    ctx_->neg_inplace(acc.data());
    ctx_->mul_acc(inv0.data(), acc.data(), r.raw(k));
  }
  return r;
}

PowerSeries1 PowerSeries1::pow(u64 e) const {
  PowerSeries1 r = constant(RingElem::one(ctx_), d_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string PowerSeries1::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= d_; ++i) {
    if (coeff_is_zero(i)) continue;
    if (!first) os << " + ";
    first = false;
    os << "[" << coeff(i).to_string() << "]t^" << i;
  }
  if (first) os << "0";
  os << " + O(t^" << d_ + 1 << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// PowerSeries2

PowerSeries2::PowerSeries2(Ctx ctx, int trunc_t) : ctx_(std::move(ctx)), d_(trunc_t) {
  if (trunc_t < 0) fail(ErrorCode::InvalidArgument, "negative truncation");
  v_.assign(num_terms() * ctx_->stride(), 0);
}

PowerSeries2 PowerSeries2::x(const Ctx& ctx, int trunc_t) {
  PowerSeries2 r(ctx, trunc_t);
  if (trunc_t >= 1) r.raw(1, 0)[0] = 1 % ctx->modulus();
  return r;
}

PowerSeries2 PowerSeries2::y(const Ctx& ctx, int trunc_t) {
  PowerSeries2 r(ctx, trunc_t);
  if (trunc_t >= 1) r.raw(0, 1)[0] = 1 % ctx->modulus();
  return r;
}

PowerSeries2 PowerSeries2::constant(const RingElem& c, int trunc_t) {
  PowerSeries2 r(c.ctx(), trunc_t);
  r.set_coeff(0, 0, c);
  return r;
}

PowerSeries2 PowerSeries2::in_x(const PowerSeries1& f) {
  PowerSeries2 r(f.ctx(), f.trunc());
  const int s = f.ctx()->stride();
  for (int i = 0; i <= f.trunc(); ++i) std::copy(f.raw(i), f.raw(i) + s, r.raw(i, 0));
  return r;
}

PowerSeries2 PowerSeries2::in_y(const PowerSeries1& f) {
  PowerSeries2 r(f.ctx(), f.trunc());
  const int s = f.ctx()->stride();
  for (int j = 0; j <= f.trunc(); ++j) std::copy(f.raw(j), f.raw(j) + s, r.raw(0, j));
  return r;
}

RingElem PowerSeries2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > d_) return RingElem(ctx_);
  return RingElem::from_raw(ctx_, raw(i, j));
}

void PowerSeries2::set_coeff(int i, int j, const RingElem& c) {
  require_same_ring(ctx_, c.ctx(), "series coefficient");
  if (i < 0 || j < 0 || i + j > d_) fail(ErrorCode::InvalidArgument, "coefficient index beyond truncation");
  std::copy(c.data(), c.data() + ctx_->stride(), raw(i, j));
}

bool PowerSeries2::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](u64 x) { return x == 0; });
}

int PowerSeries2::order() const {
  int best = kInfiniteOrder;
  for (int i = 0; i <= d_; ++i)
    for (int j = 0; i + j <= d_; ++j) best = std::min(best, ctx_->order(raw(i, j)));
  return best;
}

int PowerSeries2::t_order() const {
  for (int s = 0; s <= d_; ++s)
    for (int i = 0; i <= s; ++i)
      if (!coeff_is_zero(i, s - i)) return s;
  return d_ + 1;
}

PowerSeries2 PowerSeries2::truncated(int new_trunc) const {
  PowerSeries2 r(ctx_, new_trunc);
  const int k = std::min(d_, new_trunc);
  const int s = ctx_->stride();
  for (int i = 0; i <= k; ++i) std::copy(raw(i, 0), raw(i, 0) + static_cast<size_t>(k - i + 1) * s, r.raw(i, 0));
  return r;
}

PowerSeries2 PowerSeries2::swapped() const {
  PowerSeries2 r(ctx_, d_);
  const int s = ctx_->stride();
  for (int i = 0; i <= d_; ++i)
    for (int j = 0; i + j <= d_; ++j) std::copy(raw(i, j), raw(i, j) + s, r.raw(j, i));
  return r;
}

PowerSeries1 PowerSeries2::restrict_x() const {
  PowerSeries1 r(ctx_, d_);
  const int s = ctx_->stride();
  for (int i = 0; i <= d_; ++i) std::copy(raw(i, 0), raw(i, 0) + s, r.raw(i));
  return r;
}

PowerSeries2& PowerSeries2::operator+=(const PowerSeries2& o) {
  require_same_ring(ctx_, o.ctx_, "series add");
  if (o.d_ != d_) {
    const int D = std::min(d_, o.d_);
    *this = truncated(D);
    PowerSeries2 ot = o.truncated(D);
    for (size_t k = 0; k < v_.size(); ++k) v_[k] = ctx_->addm(v_[k], ot.v_[k]);
    return *this;
  }
  for (size_t k = 0; k < v_.size(); ++k) v_[k] = ctx_->addm(v_[k], o.v_[k]);
  return *this;
}

PowerSeries2& PowerSeries2::operator-=(const PowerSeries2& o) {
  require_same_ring(ctx_, o.ctx_, "series sub");
  if (o.d_ != d_) {
    const int D = std::min(d_, o.d_);
    *this = truncated(D);
    PowerSeries2 ot = o.truncated(D);
    for (size_t k = 0; k < v_.size(); ++k) v_[k] = ctx_->subm(v_[k], ot.v_[k]);
    return *this;
  }
  for (size_t k = 0; k < v_.size(); ++k) v_[k] = ctx_->subm(v_[k], o.v_[k]);
  return *this;
}

PowerSeries2 operator*(const PowerSeries2& a, const PowerSeries2& b) {
  require_same_ring(a.ctx_, b.ctx_, "series mul");
  const int D = std::min(a.d_, b.d_);
  PowerSeries2 r(a.ctx_, D);
  const RingContext& ctx = *a.ctx_;
  const int s = ctx.stride();
  // Nonzero pattern of b in its own layout.
  std::vector<char> nzb(PowerSeries2::index(b.d_, b.d_, 0) + 1);
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j) nzb[PowerSeries2::index(b.d_, i, j)] = !b.coeff_is_zero(i, j);
  for (int i1 = 0; i1 <= D; ++i1) {
    for (int j1 = 0; i1 + j1 <= D; ++j1) {
      if (a.coeff_is_zero(i1, j1)) continue;
      const u64* av = a.raw(i1, j1);
      const int rest = D - i1 - j1;
      for (int i2 = 0; i2 <= rest; ++i2) {
        const size_t bbase = PowerSeries2::index(b.d_, i2, 0);
        const u64* bv = b.v_.data() + bbase * s;
        u64* rv = r.raw(i1 + i2, j1);
        for (int j2 = 0; i2 + j2 <= rest; ++j2)
          if (nzb[bbase + j2]) ctx.mul_acc(av, bv + static_cast<size_t>(j2) * s, rv + static_cast<size_t>(j2) * s);
      }
    }
  }
  return r;
}

PowerSeries2 PowerSeries2::operator-() const {
  PowerSeries2 r(*this);
  for (auto& x : r.v_) x = ctx_->negm(x);
  return r;
}

PowerSeries2 PowerSeries2::scaled(const RingElem& c) const {
  PowerSeries2 r(ctx_, d_);
  for (int i = 0; i <= d_; ++i)
    for (int j = 0; i + j <= d_; ++j)
      if (!coeff_is_zero(i, j)) ctx_->mul_acc(c.data(), raw(i, j), r.raw(i, j));
  return r;
}

bool PowerSeries2::operator==(const PowerSeries2& o) const {
  return same_ring(ctx_, o.ctx_) && d_ == o.d_ && v_ == o.v_;
}

std::string PowerSeries2::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int s = 0; s <= d_; ++s)
    for (int i = s; i >= 0; --i) {
      if (coeff_is_zero(i, s - i)) continue;
      if (!first) os << " + ";
      first = false;
      os << "[" << coeff(i, s - i).to_string() << "]x^" << i << "y^" << (s - i);
    }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------

bool DistinguishedPoly::is_distinguished() const {
  if (coeffs.empty()) return false;
  if (!(coeffs.back() == RingElem::one(ctx))) return false;
  for (int i = 0; i + 1 < static_cast<int>(coeffs.size()); ++i)
    if (coeffs[i].is_unit()) return false;
  return true;
}

PowerSeries1 DistinguishedPoly::as_series(int trunc_t) const {
  return PowerSeries1::from_coeffs(ctx, trunc_t, coeffs);
}

PowerSeries1 compose1(const PowerSeries1& f, const PowerSeries1& g) {
  require_same_ring(f.ctx(), g.ctx(), "compose1");
  if (!g.coeff_is_zero(0)) fail(ErrorCode::NonzeroConstant, "inner series has a nonzero constant term");
  const int D = std::min(f.trunc(), g.trunc());
  PowerSeries1 gg = g.truncated(D);
  PowerSeries1 r(f.ctx(), D);
  for (int k = D; k >= 0; --k) {
    if (k < D) r = r * gg;
    f.ctx()->add_into(r.raw(0), f.raw(k));
  }
  return r;
}

PowerSeries1 reversion(const PowerSeries1& f) {
  if (!f.coeff_is_zero(0)) fail(ErrorCode::NonzeroConstant, "reversion needs f(0) = 0");
  if (f.trunc() < 1) return f;
  RingElem c1 = f.coeff(1);
  if (!c1.is_unit()) fail(ErrorCode::NonUnitLinear, "linear coefficient is not a unit");
  const Ctx& ctx = f.ctx();
  const int D = f.trunc();
  PowerSeries1 t = PowerSeries1::variable(ctx, D);
  PowerSeries1 g = PowerSeries1::monomial(c1.inverse(), 1, D);
  PowerSeries1 fp = f.derivative();
  // Newton: g <- g - (f(g) - t) / f'(g), doubling the correct degree.
  for (int prec = 2; prec <= D; prec *= 2) {
    PowerSeries1 err = compose1(f, g) - t;
    g -= err * compose1(fp, g).inverse();
  }
  PowerSeries1 err = compose1(f, g) - t;
  if (!err.is_zero()) g -= err * compose1(fp, g).inverse();
  return g;
}

WeierstrassFactors weierstrass_prepare(const PowerSeries1& f) {
  const Ctx& ctx = f.ctx();
  const int D = f.trunc();
  int d = -1;
  for (int i = 0; i <= D; ++i)
    if (ctx->is_unit(f.raw(i))) {
      d = i;
      break;
    }
  if (d < 0) fail(ErrorCode::NoUnitCoefficient, "no unit coefficient up to the truncation degree");
  WeierstrassFactors out;
  out.g.ctx = ctx;
  if (d == 0) {
    out.g.coeffs = {RingElem::one(ctx)};
    out.unit = f;
    return out;
  }
  // f is read as a polynomial of degree D; work far enough out that the
  // discarded tail is killed by the nilpotent lower part.
  const int K = nilpotency_bound(ctx);
  const int W = D + (K + 1) * d;
  PowerSeries1 fe = f.truncated(W);
  PowerSeries1 B = fe.truncated(d - 1).truncated(W);
  PowerSeries1 A(ctx, W - d);
  const int s = ctx->stride();
  for (int i = d; i <= W; ++i) std::copy(fe.raw(i), fe.raw(i) + s, A.raw(i - d));
  PowerSeries1 Ainv = A.inverse();
  PowerSeries1 q = Ainv;
  PowerSeries1 Bt = B.truncated(W);
  for (int iter = 0; iter <= K + 2; ++iter) {
    PowerSeries1 qB = q.truncated(W) * Bt;
    PowerSeries1 hi(ctx, W - d);
    for (int i = d; i <= W; ++i) std::copy(qB.raw(i), qB.raw(i) + s, hi.raw(i - d));
    PowerSeries1 one_minus = -hi;
    ctx->add_into(one_minus.raw(0), RingElem::one(ctx).data());
    PowerSeries1 nq = Ainv * one_minus;
    if (nq == q) break;
    q = nq;
  }
  PowerSeries1 qB = q.truncated(W) * Bt;
  out.g.coeffs.assign(d + 1, RingElem(ctx));
  for (int i = 0; i < d; ++i) out.g.coeffs[i] = qB.coeff(i);
  out.g.coeffs[d] = RingElem::one(ctx);
  out.unit = q.inverse().truncated(D);
  if (out.g.as_series(D) * out.unit != f)
    throw std::logic_error("weierstrass_prepare: factorization check failed");
  return out;
}

PowerSeries1 composition_divide(const PowerSeries1& q, const PowerSeries1& f) {
  require_same_ring(q.ctx(), f.ctx(), "composition_divide");
  const Ctx& ctx = f.ctx();
  if (!f.coeff_is_zero(0)) fail(ErrorCode::NonzeroConstant, "divisor series needs f(0) = 0");
  const int D = std::min(q.trunc(), f.trunc());
  int d = -1;
  for (int i = 1; i <= D; ++i) {
    if (residue_reduce(f.coeff(i)).is_zero()) continue;
    if (d >= 0 || !ctx->is_unit(f.raw(i)))
      fail(ErrorCode::InvalidArgument, "divisor residue is not a single monomial c t^d");
    d = i;
  }
  if (d < 0) fail(ErrorCode::NoUnitCoefficient, "divisor has no unit coefficient up to the truncation degree");
  const int K = D / d;
  PowerSeries1 fd = f.truncated(D);
  // Pivot coefficients [f^k]_{dk}.
  std::vector<RingElem> piv_inv(K + 1);
  {
    PowerSeries1 pw = PowerSeries1::constant(RingElem::one(ctx), D);
    for (int k = 1; k <= K; ++k) {
      pw = pw * fd;
      piv_inv[k] = pw.coeff(d * k).inverse();
    }
  }
  PowerSeries1 l(ctx, K);
  const int passes = nilpotency_bound(ctx) + 2;
  for (int it = 0; it <= passes; ++it) {
    PowerSeries1 r = q.truncated(D) - compose1(l.truncated(D), fd);
    bool done = true;
    for (int k = 1; k <= K; ++k) {
      if (r.coeff_is_zero(d * k)) continue;
      done = false;
      l.set_coeff(k, l.coeff(k) + r.coeff(d * k) * piv_inv[k]);
    }
    if (done) return l;
  }
  throw std::logic_error("composition_divide did not converge");
}

PowerSeries1 series_determinant(const std::vector<std::vector<PowerSeries1>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty determinant");
  const Ctx& ctx = m[0][0].ctx();
  const int D = m[0][0].trunc();
  const RingElem one = RingElem::one(ctx);
  if (n == 1) return m[0][0];
  // Berkowitz: characteristic polynomial coefficients via Toeplitz products,
  // starting from the trailing 1x1 block.
  std::vector<PowerSeries1> vec = {PowerSeries1::constant(one, D), -m[n - 1][n - 1]};
  for (int k = n - 2; k >= 0; --k) {
    const int sz = n - 1 - k;  // size of trailing block A1
    std::vector<PowerSeries1> tcol;
    tcol.push_back(PowerSeries1::constant(one, D));
    tcol.push_back(-m[k][k]);
    std::vector<PowerSeries1> v(sz);
    for (int i = 0; i < sz; ++i) v[i] = m[k + 1 + i][k];
    for (int j = 0; j < sz; ++j) {
      PowerSeries1 acc(ctx, D);
      for (int i = 0; i < sz; ++i) acc += m[k][k + 1 + i] * v[i];
      tcol.push_back(-acc);
      if (j + 1 < sz) {
        std::vector<PowerSeries1> nv(sz, PowerSeries1(ctx, D));
        for (int r = 0; r < sz; ++r)
          for (int c = 0; c < sz; ++c) nv[r] += m[k + 1 + r][k + 1 + c] * v[c];
        v = std::move(nv);
      }
    }
    std::vector<PowerSeries1> nvec(sz + 2, PowerSeries1(ctx, D));
    for (int i = 0; i < sz + 2; ++i)
      for (int j = 0; j <= std::min(i, sz); ++j) nvec[i] += tcol[i - j] * vec[j];
    vec = std::move(nvec);
  }
  PowerSeries1 det = vec[n];
  if (n % 2 == 1) det = -det;
  return det;
}

namespace {

// E[[x]][y] / (g(y)) with elements stored as d series in x.
struct NormAlgebra {
  Ctx ctx;
  int D = 0;
  int d = 0;
  std::vector<std::vector<RingElem>> rem;  // rem[k] = y^k mod g

  NormAlgebra(const DistinguishedPoly& g, int trunc, int top) : ctx(g.ctx), D(trunc), d(g.degree()) {
    rem.assign(top + 1, std::vector<RingElem>(d, RingElem(ctx)));
    for (int k = 0; k < d && k <= top; ++k) rem[k][k] = RingElem::one(ctx);
    for (int k = d; k <= top; ++k) {
      const RingElem lead = rem[k - 1][d - 1];
      rem[k][0] = -(lead * g.coeffs[0]);
      for (int i = 1; i < d; ++i) rem[k][i] = rem[k - 1][i - 1] - lead * g.coeffs[i];
    }
  }

  // h(x, y) mod g(y).
  std::vector<PowerSeries1> reduce(const PowerSeries2& h) const {
    std::vector<PowerSeries1> H(d, PowerSeries1(ctx, D));
    for (int i = 0; i <= D; ++i)
      for (int j = 0; i + j <= D; ++j) {
        if (h.coeff_is_zero(i, j)) continue;
        for (int k = 0; k < d; ++k)
          if (!rem[j][k].is_zero()) ctx->mul_acc(h.raw(i, j), rem[j][k].data(), H[k].raw(i));
      }
    return H;
  }

  std::vector<PowerSeries1> mul(const std::vector<PowerSeries1>& a, const std::vector<PowerSeries1>& b) const {
    std::vector<PowerSeries1> full(2 * d - 1, PowerSeries1(ctx, D));
    for (int i = 0; i < d; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; j < d; ++j)
        if (!b[j].is_zero()) full[i + j] += a[i] * b[j];
    }
    std::vector<PowerSeries1> r(full.begin(), full.begin() + d);
    for (int k = d; k < 2 * d - 1; ++k) {
      if (full[k].is_zero()) continue;
      for (int i = 0; i < d; ++i)
        if (!rem[k][i].is_zero()) r[i] += full[k].scaled(rem[k][i]);
    }
    return r;
  }

  // Determinant of multiplication by H.
  PowerSeries1 norm(const std::vector<PowerSeries1>& H) const {
    std::vector<std::vector<PowerSeries1>> mat(d, std::vector<PowerSeries1>(d, PowerSeries1(ctx, D)));
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k) {
        if (H[k].is_zero()) continue;
        for (int row = 0; row < d; ++row) {
          const RingElem& c = rem[k + l][row];
          if (!c.is_zero()) mat[row][l] += H[k].scaled(c);
        }
      }
    return series_determinant(mat);
  }
};

}  // namespace

PowerSeries1 companion_norm(const DistinguishedPoly& g, const PowerSeries2& h) {
  require_same_ring(g.ctx, h.ctx(), "companion_norm");
  const Ctx& ctx = h.ctx();
  const int D = h.trunc();
  const int d = g.degree();
  if (d < 1) return PowerSeries1::constant(RingElem::one(ctx), D);
  NormAlgebra alg(g, D, D + d);
  return alg.norm(alg.reduce(h));
}

PowerSeries1 composite_norm(const DistinguishedPoly& g, const PowerSeries1& s, const PowerSeries2& F) {
  require_same_ring(g.ctx, F.ctx(), "composite_norm");
  require_same_ring(s.ctx(), F.ctx(), "composite_norm");
  const Ctx& ctx = F.ctx();
  const int D = std::min(F.trunc(), s.trunc());
  const int d = g.degree();
  if (d < 1) return PowerSeries1::constant(RingElem::one(ctx), D);
  NormAlgebra alg(g, D, std::max(D, 2 * d - 2));
  const std::vector<PowerSeries1> Y = alg.reduce(F.truncated(D));
  std::vector<PowerSeries1> S(d, PowerSeries1(ctx, D));
  for (int k = D; k >= 0; --k) {
    if (k < D) S = alg.mul(S, Y);
    ctx->add_into(S[0].raw(0), s.raw(k));
  }
  return alg.norm(S);
}

PowerSeries1 twist_coeffs(const PowerSeries1& f, const RingEndo& phi) {
  require_same_ring(f.ctx(), phi.source, "twist_coeffs");
  EndoAction act(phi);
  PowerSeries1 r(phi.target, f.trunc());
  for (int i = 0; i <= f.trunc(); ++i) act.apply_raw(f.raw(i), r.raw(i));
  return r;
}

PowerSeries2 twist_coeffs(const PowerSeries2& f, const RingEndo& phi) {
  require_same_ring(f.ctx(), phi.source, "twist_coeffs");
  EndoAction act(phi);
  PowerSeries2 r(phi.target, f.trunc());
  for (int i = 0; i <= f.trunc(); ++i)
    for (int j = 0; i + j <= f.trunc(); ++j) act.apply_raw(f.raw(i, j), r.raw(i, j));
  return r;
}

PowerSeries1 substitute(const PowerSeries2& F, const PowerSeries1& a, const PowerSeries1& b) {
  require_same_ring(F.ctx(), a.ctx(), "substitute");
  require_same_ring(F.ctx(), b.ctx(), "substitute");
  if (!a.coeff_is_zero(0) || !b.coeff_is_zero(0))
    fail(ErrorCode::NonzeroConstant, "substituted series need zero constant terms");
  const Ctx& ctx = F.ctx();
  const int D = std::min({F.trunc(), a.trunc(), b.trunc()});
  PowerSeries1 at = a.truncated(D), bt = b.truncated(D);
  std::vector<PowerSeries1> bp(D + 1);
  bp[0] = PowerSeries1::constant(RingElem::one(ctx), D);
  for (int j = 1; j <= D; ++j) bp[j] = bp[j - 1] * bt;
  PowerSeries1 r(ctx, D);
  for (int i = D; i >= 0; --i) {
    if (i < D) r = r * at;
    for (int j = 0; i + j <= D; ++j) {
      if (F.coeff_is_zero(i, j)) continue;
      const u64* c = F.raw(i, j);
      for (int k = j; k <= D; ++k)
        if (!bp[j].coeff_is_zero(k)) ctx->mul_acc(c, bp[j].raw(k), r.raw(k));
    }
  }
  return r;
}

PowerSeries2 substitute_diag(const PowerSeries2& F, const PowerSeries1& a) {
  require_same_ring(F.ctx(), a.ctx(), "substitute_diag");
  if (!a.coeff_is_zero(0)) fail(ErrorCode::NonzeroConstant, "substituted series needs a zero constant term");
  const Ctx& ctx = F.ctx();
  const int D = std::min(F.trunc(), a.trunc());
  PowerSeries1 at = a.truncated(D);
  std::vector<PowerSeries1> P(D + 1);
  P[0] = PowerSeries1::constant(RingElem::one(ctx), D);
  for (int i = 1; i <= D; ++i) P[i] = P[i - 1] * at;
  // T_j(x) = sum_i F_ij a(x)^i
  std::vector<PowerSeries1> T(D + 1, PowerSeries1(ctx, D));
  for (int j = 0; j <= D; ++j)
    for (int i = 0; i + j <= D; ++i) {
      if (F.coeff_is_zero(i, j)) continue;
      const u64* c = F.raw(i, j);
      for (int k = i; k + j <= D; ++k)
        if (!P[i].coeff_is_zero(k)) ctx->mul_acc(c, P[i].raw(k), T[j].raw(k));
    }
  PowerSeries2 r(ctx, D);
  for (int j = 0; j <= D; ++j)
    for (int k = 0; k + j <= D; ++k) {
      if (T[j].coeff_is_zero(k)) continue;
      const u64* tv = T[j].raw(k);
      for (int l = j; k + l <= D; ++l)
        if (!P[j].coeff_is_zero(l)) ctx->mul_acc(tv, P[j].raw(l), r.raw(k, l));
    }
  return r;
}

PowerSeries2 compose_outer(const PowerSeries1& h, const PowerSeries2& G) {
  require_same_ring(h.ctx(), G.ctx(), "compose_outer");
  if (!G.coeff_is_zero(0, 0)) fail(ErrorCode::NonzeroConstant, "inner series has a nonzero constant term");
  const Ctx& ctx = G.ctx();
  const int D = std::min(h.trunc(), G.trunc());
  PowerSeries2 Gt = G.truncated(D);
  PowerSeries2 r(ctx, D);
  for (int k = D; k >= 0; --k) {
    if (k < D) r = r * Gt;
    ctx->add_into(r.raw(0, 0), h.raw(k));
  }
  return r;
}

PowerSeries2 substitute2(const PowerSeries2& F, const PowerSeries2& A, const PowerSeries2& B) {
  require_same_ring(F.ctx(), A.ctx(), "substitute2");
  require_same_ring(F.ctx(), B.ctx(), "substitute2");
  if (!A.coeff_is_zero(0, 0) || !B.coeff_is_zero(0, 0))
    fail(ErrorCode::NonzeroConstant, "substituted series need zero constant terms");
  const Ctx& ctx = F.ctx();
  const int D = std::min({F.trunc(), A.trunc(), B.trunc()});
  PowerSeries2 At = A.truncated(D), Bt = B.truncated(D);
  std::vector<PowerSeries2> bp(D + 1);
  bp[0] = PowerSeries2::constant(RingElem::one(ctx), D);
  for (int j = 1; j <= D; ++j) bp[j] = bp[j - 1] * Bt;
  PowerSeries2 r(ctx, D);
  for (int i = D; i >= 0; --i) {
    if (i < D) r = r * At;
    for (int j = 0; i + j <= D; ++j) {
      if (F.coeff_is_zero(i, j)) continue;
      r += bp[j].scaled(F.coeff(i, j));
    }
  }
  return r;
}

}  // namespace fgl
