#include "fgl/linalg.hpp"

namespace fgl {

ModSolver::ModSolver(u64 p, int e, int rows, int cols, std::vector<u64> entries)
    : p_(p), e_(e), rows_(rows), cols_(cols), a_(std::move(entries)) {
  q_ = 1;
  for (int i = 0; i < e; ++i) q_ *= p;
  for (auto& x : a_) x %= q_;
  step_of_col_.assign(cols_, -1);
  std::vector<char> row_used(rows_, 0), col_used(cols_, 0);
  for (;;) {
    int best_v = e_, best_r = -1, best_c = -1;
    for (int c = 0; c < cols_ && best_v > 0; ++c) {
      if (col_used[c]) continue;
      for (int r = 0; r < rows_; ++r) {
        if (row_used[r]) continue;
        u64 x = at(r, c);
        if (x == 0) continue;
        int v = valuation(x);
        if (v < best_v) {
          best_v = v;
          best_r = r;
          best_c = c;
          if (v == 0) break;
        }
      }
    }
    if (best_r < 0) break;
    const int k = rank_++;
    row_used[best_r] = 1;
    col_used[best_c] = 1;
    row_of_step_.push_back(best_r);
    col_of_step_.push_back(best_c);
    val_of_step_.push_back(best_v);
    step_of_col_[best_c] = k;
    u64 pv = 1;
    for (int i = 0; i < best_v; ++i) pv *= p_;
    const u64 unit_inv = inv_unit(at(best_r, best_c) / pv);
    u64* prow = &a_[static_cast<size_t>(best_r) * cols_];
    for (int r = 0; r < rows_; ++r) {
      if (row_used[r]) continue;
      u64* row = &a_[static_cast<size_t>(r) * cols_];
      u64 x = row[best_c];
      if (x == 0) continue;
      u64 f = ((x / pv) % q_) * unit_inv % q_;
      for (int c = 0; c < cols_; ++c) {
        if (prow[c] == 0) continue;
        row[c] = (row[c] + q_ - (f * prow[c]) % q_) % q_;
      }
      ops_.push_back({k, r, f});
    }
  }
  for (int r = 0; r < rows_; ++r)
    if (!row_used[r]) other_rows_.push_back(r);
}

int ModSolver::valuation(u64 x) const {
  if (x == 0) return e_;
  int v = 0;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

u64 ModSolver::inv_unit(u64 x) const {
  // Extended Euclid modulo q.
  long long a = static_cast<long long>(x % q_), m = static_cast<long long>(q_);
  long long g = m, x0 = 0, x1 = 1, b = a;
  while (b) {
    long long t = g / b;
    long long r = g - t * b;
    g = b;
    b = r;
    long long nx = x0 - t * x1;
    x0 = x1;
    x1 = nx;
  }
  long long inv = x0 % m;
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

bool ModSolver::column_is_pivot(int col) const { return step_of_col_[col] >= 0; }

bool ModSolver::column_has_unit_pivot(int col) const {
  int k = step_of_col_[col];
  return k >= 0 && val_of_step_[k] == 0;
}

std::optional<std::vector<u64>> ModSolver::solve(const std::vector<u64>& rhs_in) const {
  std::vector<u64> b(rows_);
  for (int r = 0; r < rows_; ++r) b[r] = rhs_in[r] % q_;
  for (const Op& op : ops_) {
    const int pr = row_of_step_[op.step];
    b[op.row] = (b[op.row] + q_ - (op.f * b[pr]) % q_) % q_;
  }
  for (int r : other_rows_)
    if (b[r] != 0) return std::nullopt;
  std::vector<u64> x(cols_, 0);
  for (int k = rank_ - 1; k >= 0; --k) {
    const int r = row_of_step_[k];
    const int c = col_of_step_[k];
    const u64* row = &a_[static_cast<size_t>(r) * cols_];
    u64 s = b[r];
    for (int j = 0; j < cols_; ++j) {
      if (j == c || row[j] == 0 || x[j] == 0) continue;
      s = (s + q_ - (row[j] * x[j]) % q_) % q_;
    }
    const int v = val_of_step_[k];
    u64 pv = 1;
    for (int i = 0; i < v; ++i) pv *= p_;
    if (s % pv != 0) return std::nullopt;
    const u64 unit_inv = inv_unit(row[c] / pv);
    const u64 mod_sol = q_ / pv;
    x[c] = ((s / pv) % mod_sol) * (unit_inv % mod_sol) % mod_sol;
  }
  return x;
}

}  // namespace fgl
