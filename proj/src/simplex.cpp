#include "scarfmatch/simplex.hpp"

#include <stdexcept>

#include "scarfmatch/errors.hpp"

namespace scarfmatch {

DenseTableau::DenseTableau(int rows, int cols)
    : cols_(cols),
      data_(static_cast<std::size_t>(rows),
            std::vector<Rational>(static_cast<std::size_t>(cols), Rational(0))) {}

void DenseTableau::pivot(int row, int col) {
  auto& prow = data_[static_cast<std::size_t>(row)];
  const Rational p = prow[static_cast<std::size_t>(col)];
  if (p == 0) throw InternalError("pivot on a zero entry");
  for (auto& v : prow) v /= p;
  for (int r = 0; r < rows(); ++r) {
    if (r == row) continue;
    auto& orow = data_[static_cast<std::size_t>(r)];
    const Rational factor = orow[static_cast<std::size_t>(col)];
    if (factor == 0) continue;
    for (int c = 0; c < cols_; ++c) {
      if (prow[static_cast<std::size_t>(c)] != 0)
        orow[static_cast<std::size_t>(c)] -= factor * prow[static_cast<std::size_t>(c)];
    }
  }
}

namespace {

// One simplex phase under Bland's rule: entering = lowest-index column with a
// positive reduced cost, leaving = minimum ratio with the lowest basis index
// on ties. `costs` spans all tableau variable columns.
bool run_phase(DenseTableau& t, std::vector<int>& basis, const std::vector<Rational>& costs,
               int usable_cols, int rhs_col) {
  for (;;) {
    int enter = -1;
    for (int j = 0; j < usable_cols && enter < 0; ++j) {
      bool basic = false;
      for (int b : basis) {
        if (b == j) {
          basic = true;
          break;
        }
      }
      if (basic) continue;
      Rational reduced = costs[static_cast<std::size_t>(j)];
      for (int r = 0; r < t.rows(); ++r)
        reduced -= costs[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] * t.at(r, j);
      if (reduced > 0) enter = j;
    }
    if (enter < 0) return true;
    int leave_row = -1;
    Rational best;
    for (int r = 0; r < t.rows(); ++r) {
      if (t.at(r, enter) <= 0) continue;
      const Rational ratio = t.at(r, rhs_col) / t.at(r, enter);
      if (leave_row < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(r)] <
                                basis[static_cast<std::size_t>(leave_row)])) {
        leave_row = r;
        best = ratio;
      }
    }
    if (leave_row < 0) return false;  // unbounded
    t.pivot(leave_row, enter);
    basis[static_cast<std::size_t>(leave_row)] = enter;
  }
}

}  // namespace

std::optional<LpSolution> lp_maximize(const std::vector<std::vector<Rational>>& columns,
                                      const std::vector<Rational>& rhs,
                                      const std::vector<Rational>& objective) {
  const int m = static_cast<int>(rhs.size());
  const int n = static_cast<int>(columns.size());
  if (static_cast<int>(objective.size()) != n)
    throw std::invalid_argument("objective length does not match column count");
  for (const auto& b : rhs) {
    if (b < 0) throw std::invalid_argument("rhs must be nonnegative");
  }
  // Layout: [structural | artificial | rhs].
  DenseTableau t(m, n + m + 1);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(columns[static_cast<std::size_t>(j)].size()) != m)
        throw std::invalid_argument("column length does not match rhs");
      t.at(r, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    }
    t.at(r, n + r) = 1;
    t.at(r, n + m) = rhs[static_cast<std::size_t>(r)];
  }
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n + r;

  std::vector<Rational> phase1(static_cast<std::size_t>(n + m), Rational(0));
  for (int j = n; j < n + m; ++j) phase1[static_cast<std::size_t>(j)] = -1;
  if (!run_phase(t, basis, phase1, n + m, n + m))
    throw InternalError("phase-1 objective unbounded");
  for (int r = 0; r < m; ++r) {
    if (basis[static_cast<std::size_t>(r)] >= n && t.at(r, n + m) != 0) return std::nullopt;
  }
  // Drive the remaining zero-valued artificials out where possible; rows that
  // stay artificial are redundant equalities.
  for (int r = 0; r < m; ++r) {
    if (basis[static_cast<std::size_t>(r)] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (t.at(r, j) != 0) {
        t.pivot(r, j);
        basis[static_cast<std::size_t>(r)] = j;
        break;
      }
    }
  }

  std::vector<Rational> phase2(static_cast<std::size_t>(n + m), Rational(0));
  for (int j = 0; j < n; ++j) phase2[static_cast<std::size_t>(j)] = objective[static_cast<std::size_t>(j)];
  for (int j = n; j < n + m; ++j) phase2[static_cast<std::size_t>(j)] = -1;
  if (!run_phase(t, basis, phase2, n, n + m)) throw InternalError("objective unbounded");

  LpSolution sol;
  sol.x.assign(static_cast<std::size_t>(n), Rational(0));
  for (int r = 0; r < m; ++r) {
    if (basis[static_cast<std::size_t>(r)] < n)
      sol.x[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] = t.at(r, n + m);
  }
  sol.objective = 0;
  for (int j = 0; j < n; ++j)
    sol.objective += objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
  return sol;
}

}  // namespace scarfmatch
