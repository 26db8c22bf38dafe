#include "scarfmatch/scarf.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "scarfmatch/errors.hpp"

namespace scarfmatch {

int column_position(const ColumnId& id, int agent_count) {
  return id.kind == ColumnId::Kind::agent ? id.index : agent_count + id.index;
}

std::string column_label(const Market& market, const ColumnId& id) {
  if (id.kind == ColumnId::Kind::agent) return market.agent_label(id.index);
  const auto columns = market.acceptable_assignments();
  return assignment_label(market, columns.at(static_cast<std::size_t>(id.index)));
}

ConstraintMatrix build_constraint_matrix(const Market& market, const PiScheme& scheme) {
  const auto violations = scheme.validate(market);
  if (!violations.empty()) throw std::invalid_argument("invalid scheme: " + violations.front());
  ConstraintMatrix a;
  a.agents = market.agent_count();
  for (int i = 0; i < a.agents; ++i) {
    std::vector<Rational> col(static_cast<std::size_t>(a.agents), Rational(0));
    col[static_cast<std::size_t>(i)] = 1;
    a.columns.push_back(std::move(col));
  }
  for (const auto& col : scheme.intensity) a.columns.push_back(col);
  a.rhs = scheme.capacity;
  return a;
}

UtilityMatrix build_utility_matrix(const Market& market, UtilityOrdering ordering) {
  const int n = market.agent_count();
  const int nf = market.firm_count();
  const auto columns = market.acceptable_assignments();
  const int k = static_cast<int>(columns.size());

  // Rank entries: firms rank their own assignments ascending (worst
  // acceptable = 1); workers rank their situations ascending (empty = 0).
  std::vector<std::vector<long long>> rank(static_cast<std::size_t>(n),
                                           std::vector<long long>(static_cast<std::size_t>(k), -1));
  long long max_rank = 0;
  for (int f = 0; f < nf; ++f) {
    const auto& list = market.firm_prefs[static_cast<std::size_t>(f)];
    for (int j = 0; j < k; ++j) {
      const auto& y = columns[static_cast<std::size_t>(j)];
      if (y.firm() != f) continue;
      const auto it = std::find(list.begin(), list.end(), y);
      const long long r = static_cast<long long>(list.size()) - (it - list.begin());
      rank[static_cast<std::size_t>(f)][static_cast<std::size_t>(j)] = r;
      max_rank = std::max(max_rank, r);
    }
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    const auto situations = market.worker_situations(w);
    for (int j = 0; j < k; ++j) {
      const auto& y = columns[static_cast<std::size_t>(j)];
      const auto ws = market.workers_of(y);
      if (!std::binary_search(ws.begin(), ws.end(), w)) continue;
      const Situation s(y, w);
      const auto it = std::find(situations.begin(), situations.end(), s);
      const long long r = it - situations.begin();
      rank[static_cast<std::size_t>(nf + w)][static_cast<std::size_t>(j)] = r;
      max_rank = std::max(max_rank, r);
    }
  }

  const long long base = max_rank + 1;
  const auto filler = [&](int position_1based, int span) {
    return ordering == UtilityOrdering::canonical ? static_cast<long long>(span - position_1based)
                                                  : static_cast<long long>(position_1based - 1);
  };

  UtilityMatrix c;
  c.agents = n;
  c.columns.assign(static_cast<std::size_t>(n + k),
                   std::vector<long long>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      c.columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          i == j ? 0 : base + k + filler(j + 1, n);
    }
  }
  for (int j = 0; j < k; ++j) {
    auto& col = c.columns[static_cast<std::size_t>(n + j)];
    for (int i = 0; i < n; ++i) {
      const long long r = rank[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      col[static_cast<std::size_t>(i)] = r >= 0 ? r : base + filler(j + 1, k);
    }
  }
  return c;
}

// --- feasible basis ------------------------------------------------------

namespace {
// Tableau layout: [all constraint columns | rhs | perturbation block].
int rhs_col(const ConstraintMatrix& m) { return m.column_count(); }
int pert_col(const ConstraintMatrix& m, int q) { return m.column_count() + 1 + q; }
}  // namespace

FeasibleBasis::FeasibleBasis(const ConstraintMatrix& matrix)
    : matrix_(&matrix), tableau_(matrix.agents, matrix.column_count() + 1 + matrix.agents) {
  for (int r = 0; r < matrix.agents; ++r) {
    for (int j = 0; j < matrix.column_count(); ++j)
      tableau_.at(r, j) = matrix.columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    tableau_.at(r, rhs_col(matrix)) = matrix.rhs[static_cast<std::size_t>(r)];
    tableau_.at(r, pert_col(matrix, r)) = 1;
    basis_.push_back(agent_column(r));
  }
}

ColumnId FeasibleBasis::pivot(const ColumnId& col_in) {
  if (contains(col_in)) throw std::invalid_argument("entering column already basic");
  const int n = matrix_->agents;
  const int j = column_position(col_in, n);
  int best_row = -1;
  bool tie = false;
  // Lexicographic ratio test over (rhs, perturbation block).
  const auto lex_less = [&](int r1, int r2) {
    const Rational a1 = tableau_.at(r1, j);
    const Rational a2 = tableau_.at(r2, j);
    for (int q = -1; q < n; ++q) {
      const int cc = q < 0 ? rhs_col(*matrix_) : pert_col(*matrix_, q);
      const Rational lhs = tableau_.at(r1, cc) * a2;
      const Rational rhs = tableau_.at(r2, cc) * a1;
      if (lhs != rhs) return lhs < rhs;
    }
    return false;
  };
  for (int r = 0; r < n; ++r) {
    if (tableau_.at(r, j) <= 0) continue;
    if (best_row < 0) {
      best_row = r;
    } else if (lex_less(r, best_row)) {
      best_row = r;
      tie = false;
    } else if (!lex_less(best_row, r)) {
      tie = true;
    }
  }
  if (best_row < 0)
    throw InternalError("entering column has no positive entry against the basis");
  if (tie) throw InternalError("lexicographic ratio test tie");
  const ColumnId out = basis_[static_cast<std::size_t>(best_row)];
  tableau_.pivot(best_row, j);
  basis_[static_cast<std::size_t>(best_row)] = col_in;
  check_invariants();
  return out;
}

bool FeasibleBasis::contains(const ColumnId& id) const {
  return std::find(basis_.begin(), basis_.end(), id) != basis_.end();
}

std::vector<ColumnId> FeasibleBasis::sorted_columns() const {
  std::vector<ColumnId> out = basis_;
  std::sort(out.begin(), out.end());
  return out;
}

Rational FeasibleBasis::value_of(const ColumnId& id) const {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    if (basis_[r] == id) return tableau_.at(static_cast<int>(r), rhs_col(*matrix_));
  }
  return Rational(0);
}

std::vector<Rational> FeasibleBasis::basic_solution() const {
  std::vector<Rational> out(static_cast<std::size_t>(matrix_->column_count()), Rational(0));
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    out[static_cast<std::size_t>(column_position(basis_[r], matrix_->agents))] =
        tableau_.at(static_cast<int>(r), rhs_col(*matrix_));
  }
  return out;
}

void FeasibleBasis::check_invariants() const {
  const int n = matrix_->agents;
  const auto b = basic_solution();
  for (int i = 0; i < n; ++i) {
    Rational acc(0);
    for (int j = 0; j < matrix_->column_count(); ++j) {
      if (b[static_cast<std::size_t>(j)] != 0)
        acc += b[static_cast<std::size_t>(j)] *
               matrix_->columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    if (acc != matrix_->rhs[static_cast<std::size_t>(i)])
      throw InternalError("basic solution violates the constraint system");
  }
  for (int r = 0; r < n; ++r) {
    // Perturbed basic value must be lexicographically positive.
    const Rational d = tableau_.at(r, rhs_col(*matrix_));
    if (d > 0) continue;
    if (d < 0) throw InternalError("negative basic value");
    bool positive = false;
    for (int q = 0; q < n; ++q) {
      const Rational e = tableau_.at(r, pert_col(*matrix_, q));
      if (e != 0) {
        positive = e > 0;
        break;
      }
    }
    if (!positive) throw InternalError("perturbed basic value not lexicographically positive");
  }
}

// --- ordinal basis -------------------------------------------------------

OrdinalBasis::OrdinalBasis(const UtilityMatrix& matrix, std::vector<ColumnId> columns)
    : matrix_(&matrix), columns_(std::move(columns)) {
  if (static_cast<int>(columns_.size()) != matrix.agents)
    throw std::invalid_argument("ordinal basis needs one column per agent");
  recompute_minima();
  check_invariants();
}

void OrdinalBasis::recompute_minima() {
  const int n = matrix_->agents;
  row_min_.assign(static_cast<std::size_t>(n), 0);
  row_argmin_.assign(static_cast<std::size_t>(n), ColumnId{});
  for (int i = 0; i < n; ++i) {
    bool first = true;
    for (const auto& col : columns_) {
      const long long v = matrix_->at(i, col);
      if (first || v < row_min_[static_cast<std::size_t>(i)]) {
        row_min_[static_cast<std::size_t>(i)] = v;
        row_argmin_[static_cast<std::size_t>(i)] = col;
        first = false;
      }
    }
  }
}

ColumnId OrdinalBasis::pivot(const ColumnId& col_out) {
  if (!contains(col_out)) throw std::invalid_argument("column to remove is not in the basis");
  const int n = matrix_->agents;
  std::vector<ColumnId> remaining;
  for (const auto& col : columns_) {
    if (!(col == col_out)) remaining.push_back(col);
  }
  if (std::all_of(remaining.begin(), remaining.end(),
                  [](const ColumnId& c) { return c.kind == ColumnId::Kind::agent; }))
    throw std::invalid_argument("ordinal pivot on an all-agent remainder");

  // The removed column held exactly one row minimizer; that row's new
  // minimizer is the column now carrying two, and the row it minimized
  // before is the scan row.
  int freed_row = -1;
  for (int i = 0; i < n; ++i) {
    if (row_argmin_[static_cast<std::size_t>(i)] == col_out) {
      freed_row = i;
      break;
    }
  }
  if (freed_row < 0) throw InternalError("removed column held no row minimizer");

  std::vector<long long> mins(static_cast<std::size_t>(n));
  std::vector<ColumnId> argmins(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bool first = true;
    for (const auto& col : remaining) {
      const long long v = matrix_->at(i, col);
      if (first || v < mins[static_cast<std::size_t>(i)]) {
        mins[static_cast<std::size_t>(i)] = v;
        argmins[static_cast<std::size_t>(i)] = col;
        first = false;
      }
    }
  }
  const ColumnId doubled = argmins[static_cast<std::size_t>(freed_row)];
  int scan_row = -1;
  for (int i = 0; i < n; ++i) {
    if (row_argmin_[static_cast<std::size_t>(i)] == doubled) {
      scan_row = i;
      break;
    }
  }
  if (scan_row < 0 || scan_row == freed_row)
    throw InternalError("ordinal pivot could not identify the scan row");

  // Candidates beat the remaining row minima on every row but the scan row;
  // the entering column maximizes the scan row among them.
  std::optional<ColumnId> entering;
  long long best = 0;
  for (int pos = 0; pos < matrix_->column_count(); ++pos) {
    const ColumnId cand = pos < n ? agent_column(pos) : assignment_column(pos - n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (i == scan_row) continue;
      if (matrix_->at(i, cand) <= mins[static_cast<std::size_t>(i)]) ok = false;
    }
    if (!ok) continue;
    const long long v = matrix_->at(scan_row, cand);
    if (!entering || v > best) {
      entering = cand;
      best = v;
    }
  }
  if (!entering) throw InternalError("ordinal pivot found no entering column");
  if (contains(*entering) || *entering == col_out)
    throw InternalError("ordinal pivot re-selected a basis column");

  remaining.push_back(*entering);
  columns_ = std::move(remaining);
  recompute_minima();
  check_invariants();
  return *entering;
}

bool OrdinalBasis::contains(const ColumnId& id) const {
  return std::find(columns_.begin(), columns_.end(), id) != columns_.end();
}

std::vector<ColumnId> OrdinalBasis::sorted_columns() const {
  std::vector<ColumnId> out = columns_;
  std::sort(out.begin(), out.end());
  return out;
}

long long OrdinalBasis::row_min(int row) const { return row_min_.at(static_cast<std::size_t>(row)); }

ColumnId OrdinalBasis::row_minimizer(int row) const {
  return row_argmin_.at(static_cast<std::size_t>(row));
}

void OrdinalBasis::check_invariants() const {
  const int n = matrix_->agents;
  for (const auto& col : columns_) {
    int minimized = 0;
    for (int i = 0; i < n; ++i) {
      if (row_argmin_[static_cast<std::size_t>(i)] == col) ++minimized;
    }
    if (minimized != 1)
      throw InternalError("ordinal basis column does not hold exactly one row minimizer");
  }
  for (int pos = 0; pos < matrix_->column_count(); ++pos) {
    const ColumnId cand = pos < n ? agent_column(pos) : assignment_column(pos - n);
    bool dominated = false;
    for (int i = 0; i < n && !dominated; ++i) {
      if (row_min_[static_cast<std::size_t>(i)] >= matrix_->at(i, cand)) dominated = true;
    }
    if (!dominated) throw InternalError("a column escapes the ordinal basis row minima");
  }
}

// --- the algorithm -------------------------------------------------------

InitialBases initial_bases(const Market& market, const ConstraintMatrix& a,
                           const UtilityMatrix& c, const ScarfOptions& options) {
  const int n = a.agents;
  const int k = a.assignment_count();
  if (k == 0) throw std::invalid_argument("no acceptable assignments");
  const auto columns = market.acceptable_assignments();

  const auto off_columns = [&](int agent_pos) {
    std::vector<int> out;
    const AgentId id = market.agent_at(agent_pos);
    for (int j = 0; j < k; ++j) {
      const auto& y = columns[static_cast<std::size_t>(j)];
      bool member;
      if (id.role == Role::firm) {
        member = y.firm() == id.index;
      } else {
        const auto ws = market.workers_of(y);
        member = std::binary_search(ws.begin(), ws.end(), id.index);
      }
      if (!member) out.push_back(j);
    }
    return out;
  };

  int row = -1;
  std::vector<int> offs;
  if (options.initial_row) {
    row = market.agent_pos(*options.initial_row);
    offs = off_columns(row);
    if (offs.empty())
      throw std::invalid_argument("requested seed row appears in every assignment column");
  } else {
    for (int i = 0; i < n; ++i) {
      offs = off_columns(i);
      if (!offs.empty()) {
        row = i;
        break;
      }
    }
    // Any assignment column excludes every firm but its own, so with two or
    // more firms some agent always admits an off-column.
    if (row < 0) throw InternalError("no agent admits an off-column seed");
  }

  int best = offs.front();
  for (int j : offs) {
    if (c.at(row, assignment_column(j)) > c.at(row, assignment_column(best))) best = j;
  }
  std::vector<ColumnId> cols;
  for (int i = 0; i < n; ++i) {
    if (i != row) cols.push_back(agent_column(i));
  }
  cols.push_back(assignment_column(best));
  return InitialBases{FeasibleBasis(a), OrdinalBasis(c, std::move(cols)),
                      assignment_column(best), row};
}

ScarfResult scarf_solve(const Market& market, const PiScheme& scheme,
                        const ScarfOptions& options) {
  ScarfResult result;
  const ConstraintMatrix a = build_constraint_matrix(market, scheme);
  const int n = a.agents;
  const int k = a.assignment_count();
  result.matching.shares.assign(static_cast<std::size_t>(k), Rational(0));
  result.basic_solution.assign(static_cast<std::size_t>(n + k), Rational(0));
  for (int i = 0; i < n; ++i)
    result.basic_solution[static_cast<std::size_t>(i)] = a.rhs[static_cast<std::size_t>(i)];
  if (k == 0) return result;  // the empty schedule matching is trivially stable

  const UtilityMatrix c = build_utility_matrix(market, options.ordering);
  InitialBases init = initial_bases(market, a, c, options);
  FeasibleBasis& feasible = init.feasible;
  OrdinalBasis& ordinal = init.ordinal;

  result.trace.initial_a = feasible.sorted_columns();
  result.trace.initial_c = ordinal.sorted_columns();
  result.trace.first_entering = init.first_entering;

  std::set<std::pair<std::vector<ColumnId>, std::vector<ColumnId>>> seen;
  seen.insert({result.trace.initial_a, result.trace.initial_c});

  ColumnId entering = init.first_entering;
  for (int s = 1;; ++s) {
    if (s > 1'000'000) throw InternalError("step budget exhausted");
    ScarfStep step;
    step.index = s;
    step.cardinal_in = entering;
    step.cardinal_out = feasible.pivot(entering);
    step.basis_a = feasible.sorted_columns();
    step.basis_c = ordinal.sorted_columns();
    if (step.basis_a == step.basis_c) {
      result.trace.steps.push_back(std::move(step));
      break;
    }
    step.ordinal_out = step.cardinal_out;
    step.ordinal_in = ordinal.pivot(step.cardinal_out);
    step.basis_c = ordinal.sorted_columns();
    const bool done = step.basis_a == step.basis_c;
    if (!done && !seen.insert({step.basis_a, step.basis_c}).second)
      throw InternalError("basis pair repeated");
    entering = *step.ordinal_in;
    result.trace.steps.push_back(std::move(step));
    if (done) break;
  }

  result.basic_solution = feasible.basic_solution();
  for (int j = 0; j < k; ++j)
    result.matching.shares[static_cast<std::size_t>(j)] =
        result.basic_solution[static_cast<std::size_t>(n + j)];
  return result;
}

std::string serialize_trace(const Market& market, const ScarfTrace& trace) {
  std::ostringstream os;
  const auto label_set = [&](const std::vector<ColumnId>& cols) {
    std::ostringstream s;
    s << '[';
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) s << ' ';
      s << column_label(market, cols[i]);
    }
    s << ']';
    return s.str();
  };
  os << "0 A=" << label_set(trace.initial_a) << " C=" << label_set(trace.initial_c) << '\n';
  for (const auto& step : trace.steps) {
    os << step.index << " pivotA in=" << column_label(market, step.cardinal_in)
       << " out=" << column_label(market, step.cardinal_out);
    if (step.ordinal_out)
      os << " pivotC out=" << column_label(market, *step.ordinal_out)
         << " in=" << column_label(market, *step.ordinal_in);
    os << " A=" << label_set(step.basis_a) << " C=" << label_set(step.basis_c) << '\n';
  }
  return os.str();
}

}  // namespace scarfmatch
