#include "rational.hpp"

#include <algorithm>

namespace fgl::detail {

namespace {

mpz_class p_power(u64 p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

// Largest k <= cap with p^k dividing every entry.
int common_valuation(const std::vector<mpz_class>& c, u64 p, int cap) {
  int k = 0;
  mpz_class pk = 1;
  while (k < cap) {
    mpz_class next = pk * static_cast<unsigned long>(p);
    bool all = true;
    for (const auto& x : c)
      if (x != 0 && !mpz_divisible_p(x.get_mpz_t(), next.get_mpz_t())) {
        all = false;
        break;
      }
    if (!all) break;
    pk = next;
    ++k;
  }
  return k;
}

// out[i..] += a * b over u-monomials.
void poly_mul_acc(const RingContext* mons, const mpz_class* a, const mpz_class* b, mpz_class* out) {
  const int nm = mons->num_monomials();
  for (int x = 0; x < nm; ++x) {
    if (a[x] == 0) continue;
    for (int y = 0; y < nm; ++y) {
      if (b[y] == 0) continue;
      const int z = mons->monomial_product(x, y);
      if (z < 0) continue;
      mpz_addmul(out[z].get_mpz_t(), a[x].get_mpz_t(), b[y].get_mpz_t());
    }
  }
}

}  // namespace

QSeries1::QSeries1(const RingContext* mons, int trunc_t)
    : mons_(mons), d_(trunc_t), nmon_(mons->num_monomials()), c_(static_cast<size_t>(trunc_t + 1) * nmon_) {}

void QSeries1::rescale(int new_e) {
  if (new_e == e_) return;
  mpz_class f = p_power(mons_->p(), new_e - e_);
  for (auto& x : c_)
    if (x != 0) x *= f;
  e_ = new_e;
}

void QSeries1::normalize() {
  const int k = common_valuation(c_, mons_->p(), e_);
  if (k == 0) return;
  mpz_class f = p_power(mons_->p(), k);
  for (auto& x : c_)
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), f.get_mpz_t());
  e_ -= k;
}

QSeries1 QSeries1::operator+(const QSeries1& o) const {
  QSeries1 a = *this, b = o;
  const int e = std::max(a.e_, b.e_);
  a.rescale(e);
  b.rescale(e);
  for (size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
  a.normalize();
  return a;
}

QSeries1 QSeries1::operator-(const QSeries1& o) const {
  QSeries1 a = *this, b = o;
  const int e = std::max(a.e_, b.e_);
  a.rescale(e);
  b.rescale(e);
  for (size_t k = 0; k < a.c_.size(); ++k) a.c_[k] -= b.c_[k];
  a.normalize();
  return a;
}

QSeries1 QSeries1::operator*(const QSeries1& o) const {
  const int D = std::min(d_, o.d_);
  QSeries1 r(mons_, D);
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j) poly_mul_acc(mons_, &at(i, 0), &o.at(j, 0), &r.at(i + j, 0));
  r.e_ = e_ + o.e_;
  r.normalize();
  return r;
}

QSeries1 QSeries1::derivative() const {
  QSeries1 r(mons_, d_);
  for (int i = 1; i <= d_; ++i)
    for (int x = 0; x < nmon_; ++x) r.at(i - 1, x) = at(i, x) * i;
  r.e_ = e_;
  r.normalize();
  return r;
}

QSeries1 QSeries1::inverse() const {
  // Write this = (1 + p^{-e} c') and solve b_k = -sum_{i>=1} a_i b_{k-i}
  // keeping b with denominator p^{k e}.
  for (int x = 0; x < nmon_; ++x) {
    const mpz_class want = (x == 0) ? p_power(mons_->p(), e_) : mpz_class(0);
    if (at(0, x) != want) throw std::logic_error("QSeries1::inverse: constant term is not 1");
  }
  // Work with a rescaled copy so that b_k numerators share exponent D*e.
  const int E = d_ * e_;
  QSeries1 r(mons_, d_);
  std::vector<mpz_class> pe(d_ + 1);
  for (int k = 0; k <= d_; ++k) pe[k] = p_power(mons_->p(), k * e_);
  // b_k stored as numerator over p^{k e}.
  std::vector<std::vector<mpz_class>> b(d_ + 1, std::vector<mpz_class>(nmon_));
  b[0][0] = 1;
  for (int k = 1; k <= d_; ++k) {
    std::vector<mpz_class> acc(nmon_);
    for (int i = 1; i <= k; ++i) {
      // a_i / p^e * b_{k-i} / p^{(k-i)e}, scaled to p^{k e}: multiply by p^{(i-1)e}
      std::vector<mpz_class> t(nmon_);
      poly_mul_acc(mons_, &at(i, 0), b[k - i].data(), t.data());
      for (int x = 0; x < nmon_; ++x)
        if (t[x] != 0) acc[x] += t[x] * pe[i - 1];
    }
    for (int x = 0; x < nmon_; ++x) b[k][x] = -acc[x];
  }
  for (int k = 0; k <= d_; ++k)
    for (int x = 0; x < nmon_; ++x) r.at(k, x) = b[k][x] * pe[d_ - k];
  r.e_ = E;
  r.normalize();
  return r;
}

QSeries1 q_compose(const QSeries1& f, const QSeries1& g) {
  const int D = std::min(f.d_, g.d_);
  QSeries1 r(f.mons_, D);
  for (int k = D; k >= 0; --k) {
    if (k < D) r = r * g;
    QSeries1 c(f.mons_, D);
    for (int x = 0; x < f.nmon_; ++x) c.at(0, x) = f.at(k, x);
    c.e_ = f.e_;
    r = r + c;
  }
  return r;
}

QSeries1 q_reversion(const QSeries1& f) {
  const int D = f.trunc();
  QSeries1 t(f.mons_, D);
  if (D >= 1) t.at(1, 0) = 1;
  QSeries1 g = t;
  QSeries1 fp = f.derivative();
  for (int prec = 2; prec <= 2 * D; prec *= 2) {
    QSeries1 err = q_compose(f, g) - t;
    g = g - err * q_compose(fp, g).inverse();
  }
  return g;
}

QSeries2::QSeries2(const RingContext* mons, int trunc_t)
    : mons_(mons), d_(trunc_t), nmon_(mons->num_monomials()),
      c_((PowerSeries2::index(trunc_t, trunc_t, 0) + 1) * nmon_) {}

QSeries2 QSeries2::diagonal_sum(const QSeries1& f) {
  QSeries2 r(f.mons_, f.d_);
  for (int i = 1; i <= f.d_; ++i)
    for (int x = 0; x < f.nmon_; ++x) {
      r.at(i, 0, x) = f.at(i, x);
      r.at(0, i, x) = f.at(i, x);
    }
  r.e_ = f.e_;
  return r;
}

void QSeries2::rescale(int new_e) {
  if (new_e == e_) return;
  mpz_class f = p_power(mons_->p(), new_e - e_);
  for (auto& x : c_)
    if (x != 0) x *= f;
  e_ = new_e;
}

void QSeries2::normalize() {
  const int k = common_valuation(c_, mons_->p(), e_);
  if (k == 0) return;
  mpz_class f = p_power(mons_->p(), k);
  for (auto& x : c_)
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), f.get_mpz_t());
  e_ -= k;
}

QSeries2 QSeries2::operator*(const QSeries2& o) const {
  const int D = std::min(d_, o.d_);
  QSeries2 r(mons_, D);
  std::vector<char> nz(PowerSeries2::index(o.d_, o.d_, 0) + 1, 0);
  for (int i = 0; i <= o.d_; ++i)
    for (int j = 0; i + j <= o.d_; ++j)
      for (int x = 0; x < nmon_; ++x)
        if (o.at(i, j, x) != 0) {
          nz[PowerSeries2::index(o.d_, i, j)] = 1;
          break;
        }
  for (int i1 = 0; i1 <= D; ++i1)
    for (int j1 = 0; i1 + j1 <= D; ++j1) {
      const mpz_class* a = &at(i1, j1, 0);
      bool any = false;
      for (int x = 0; x < nmon_; ++x)
        if (a[x] != 0) {
          any = true;
          break;
        }
      if (!any) continue;
      for (int i2 = 0; i1 + j1 + i2 <= D; ++i2)
        for (int j2 = 0; i1 + j1 + i2 + j2 <= D; ++j2)
          if (nz[PowerSeries2::index(o.d_, i2, j2)])
            poly_mul_acc(mons_, a, &o.at(i2, j2, 0), &r.at(i1 + i2, j1 + j2, 0));
    }
  r.e_ = e_ + o.e_;
  r.normalize();
  return r;
}

void QSeries2::add_constant(const QSeries1& src, int deg) {
  const int e = std::max(e_, src.exponent());
  rescale(e);
  mpz_class f = p_power(mons_->p(), e - src.exponent());
  for (int x = 0; x < nmon_; ++x) at(0, 0, x) += src.at(deg, x) * f;
  normalize();
}

PowerSeries2 QSeries2::to_ring(const Ctx& ctx) const {
  if (e_ > 0) {
    // normalize() already removed every common factor, so a denominator remains.
    for (int i = 0; i <= d_; ++i)
      for (int j = 0; i + j <= d_; ++j)
        for (int x = 0; x < nmon_; ++x) {
          mpz_class pe = p_power(mons_->p(), e_);
          if (!mpz_divisible_p(at(i, j, x).get_mpz_t(), pe.get_mpz_t()))
            fail(ErrorCode::IntegralityFailure,
                 "coefficient of x^" + std::to_string(i) + " y^" + std::to_string(j) + " is not integral");
        }
  }
  if (ctx->num_monomials() != nmon_) throw std::logic_error("to_ring: monomial tables differ");
  PowerSeries2 r(ctx, d_);
  const mpz_class q = static_cast<unsigned long>(ctx->modulus());
  const mpz_class pe = p_power(mons_->p(), e_);
  const int m = ctx->m();
  for (int i = 0; i <= d_; ++i)
    for (int j = 0; i + j <= d_; ++j)
      for (int x = 0; x < nmon_; ++x) {
        if (at(i, j, x) == 0) continue;
        mpz_class v = at(i, j, x) / pe;
        mpz_class red;
        mpz_mod(red.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
        r.raw(i, j)[static_cast<size_t>(x) * m] = red.get_ui();
      }
  return r;
}

QSeries2 q_compose_outer(const QSeries1& h, const QSeries2& s) {
  const int D = std::min(h.trunc(), s.trunc());
  QSeries2 r(s.mons_, D);
  for (int k = D; k >= 0; --k) {
    if (k < D) r = r * s;
    r.add_constant(h, k);
  }
  return r;
}

}  // namespace fgl::detail
