#pragma once

#include <optional>
#include <vector>

#include "scarfmatch/rational.hpp"

namespace scarfmatch {

/// Dense exact-rational tableau. Row operations only; callers own the basis
/// bookkeeping.
class DenseTableau {
 public:
  DenseTableau(int rows, int cols);

  int rows() const { return static_cast<int>(data_.size()); }
  int cols() const { return cols_; }

  Rational& at(int r, int c) { return data_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  const Rational& at(int r, int c) const {
    return data_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }

  /// Scales the pivot row to make the pivot entry 1 and eliminates the pivot
  /// column from every other row. The pivot entry must be nonzero.
  void pivot(int row, int col);

 private:
  int cols_;
  std::vector<std::vector<Rational>> data_;
};

struct LpSolution {
  Rational objective;
  std::vector<Rational> x;
};

/// Maximizes objective . x subject to columns . x = rhs, x >= 0, with
/// rhs >= 0 componentwise. Two-phase primal simplex under Bland's rule.
/// Returns nullopt when infeasible; throws InternalError on unboundedness.
std::optional<LpSolution> lp_maximize(const std::vector<std::vector<Rational>>& columns,
                                      const std::vector<Rational>& rhs,
                                      const std::vector<Rational>& objective);

}  // namespace scarfmatch
