#pragma once

// Exact series over Z[1/p][u_1..u_{n-1}] (u-degree <= M), used only to build
// laws from logarithms. Each series carries one denominator p^e for all of
// its coefficients.

#include <gmpxx.h>

#include <vector>

#include "fgl/series.hpp"

namespace fgl::detail {

class QSeries1 {
 public:
  QSeries1(const RingContext* mons, int trunc_t);

  int trunc() const { return d_; }
  int nmon() const { return nmon_; }
  mpz_class& at(int i, int mon) { return c_[static_cast<size_t>(i) * nmon_ + mon]; }
  const mpz_class& at(int i, int mon) const { return c_[static_cast<size_t>(i) * nmon_ + mon]; }
  int exponent() const { return e_; }
  void set_exponent(int e) { e_ = e; }

  QSeries1 operator+(const QSeries1& o) const;
  QSeries1 operator-(const QSeries1& o) const;
  QSeries1 operator*(const QSeries1& o) const;
  QSeries1 derivative() const;
  QSeries1 inverse() const;  // constant term must be exactly 1
  void normalize();

  friend class QSeries2;
  friend QSeries1 q_compose(const QSeries1& f, const QSeries1& g);
  friend QSeries1 q_reversion(const QSeries1& f);

 private:
  void rescale(int new_e);
  const RingContext* mons_;
  int d_;
  int nmon_;
  int e_ = 0;
  std::vector<mpz_class> c_;
};

class QSeries2 {
 public:
  QSeries2(const RingContext* mons, int trunc_t);
  // f(x) + f(y)
  static QSeries2 diagonal_sum(const QSeries1& f);

  int trunc() const { return d_; }
  mpz_class& at(int i, int j, int mon) { return c_[PowerSeries2::index(d_, i, j) * nmon_ + mon]; }
  const mpz_class& at(int i, int j, int mon) const { return c_[PowerSeries2::index(d_, i, j) * nmon_ + mon]; }

  QSeries2 operator*(const QSeries2& o) const;
  // Adds the constant (polynomial in u) c/p^ce.
  void add_constant(const QSeries1& src, int deg);
  void normalize();
  // Integral reduction into ctx (Witt component 0); IntegralityFailure if a
  // denominator survives.
  PowerSeries2 to_ring(const Ctx& ctx) const;
  friend QSeries2 q_compose_outer(const QSeries1& h, const QSeries2& s);

 private:
  void rescale(int new_e);
  const RingContext* mons_;
  int d_;
  int nmon_;
  int e_ = 0;
  std::vector<mpz_class> c_;
};

QSeries1 q_compose(const QSeries1& f, const QSeries1& g);
QSeries1 q_reversion(const QSeries1& f);
// h(S) by Horner.
QSeries2 q_compose_outer(const QSeries1& h, const QSeries2& s);

}  // namespace fgl::detail
