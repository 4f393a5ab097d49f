#pragma once

#include <optional>
#include <vector>

#include "fgl/ring.hpp"

namespace fgl {

// Linear systems over the chain ring Z/p^e by full pivoting on p-adic
// valuation. Ties go to the lowest original column, so columns listed first
// receive pivots first and late columns are the ones left free. Free unknowns
// are set to zero and pivot unknowns take their least residue.
class ModSolver {
 public:
  ModSolver(u64 p, int e, int rows, int cols, std::vector<u64> entries);

  // Nullopt when inconsistent.
  std::optional<std::vector<u64>> solve(const std::vector<u64>& rhs) const;

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int rank() const { return rank_; }
  u64 modulus() const { return q_; }
  // Columns that received a unit pivot; the rest are free or torsion.
  bool column_has_unit_pivot(int col) const;
  bool column_is_pivot(int col) const;

 private:
  u64 at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
  int valuation(u64 x) const;
  u64 inv_unit(u64 x) const;

  u64 p_;
  int e_;
  u64 q_;
  int rows_, cols_;
  int rank_ = 0;
  std::vector<u64> a_;           // reduced matrix, row-major, physical rows
  std::vector<int> row_of_step_;  // physical row used as pivot at step k
  std::vector<int> col_of_step_;  // original column pivoted at step k
  std::vector<int> val_of_step_;
  std::vector<int> step_of_col_;  // -1 if free
  // Elimination log: (step, target physical row, multiplier).
  struct Op {
    int step;
    int row;
    u64 f;
  };
  std::vector<Op> ops_;
  std::vector<int> other_rows_;  // physical rows never used as pivots
};

}  // namespace fgl
