#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scarfmatch/market.hpp"
#include "scarfmatch/schedule.hpp"
#include "scarfmatch/simplex.hpp"

namespace scarfmatch {

/// A column of the paired matrices: one of the leading agent (slack) columns,
/// or an acceptable-assignment column. The default ordering matches the fixed
/// column order (agents first, then assignment columns).
struct ColumnId {
  enum class Kind { agent, assignment };
  Kind kind{Kind::agent};
  int index{0};

  friend auto operator<=>(const ColumnId&, const ColumnId&) = default;
};

inline ColumnId agent_column(int agent_pos) { return {ColumnId::Kind::agent, agent_pos}; }
inline ColumnId assignment_column(int col) { return {ColumnId::Kind::assignment, col}; }
int column_position(const ColumnId& id, int agent_count);

std::string column_label(const Market& market, const ColumnId& id);

/// Feasibility side: one indicator column per agent followed by one intensity
/// column per acceptable assignment; the right-hand side is the capacity
/// vector.
struct ConstraintMatrix {
  int agents = 0;
  std::vector<std::vector<Rational>> columns;
  std::vector<Rational> rhs;

  int column_count() const { return static_cast<int>(columns.size()); }
  int assignment_count() const { return column_count() - agents; }
};

ConstraintMatrix build_constraint_matrix(const Market& market, const PiScheme& scheme);

/// Direction of the large filler utilities: `canonical` decreases them with
/// column position, `reversed` increases them. Either satisfies the ordinal
/// construction rules; only the pivot path differs.
enum class UtilityOrdering { canonical, reversed };

/// Ordinal side: integer utilities with zero diagonal, firm rows ranking the
/// firm's own assignments, worker rows ranking her situations under the
/// externality-adjusted order, and filler entries that dominate every rank.
/// Within each row all entries are distinct, and nondiagonal agent-column
/// entries exceed every assignment-column entry.
struct UtilityMatrix {
  int agents = 0;
  std::vector<std::vector<long long>> columns;

  int column_count() const { return static_cast<int>(columns.size()); }
  long long at(int row, const ColumnId& id) const {
    return columns[static_cast<std::size_t>(column_position(id, agents))]
                  [static_cast<std::size_t>(row)];
  }
};

UtilityMatrix build_utility_matrix(const Market& market,
                                   UtilityOrdering ordering = UtilityOrdering::canonical);

/// A feasible basis of the constraint system, maintained as an exact tableau
/// with a symbolic lexicographic perturbation of the right-hand side. The
/// perturbation makes every basic solution nondegenerate, so each pivot has a
/// unique leaving column.
class FeasibleBasis {
 public:
  explicit FeasibleBasis(const ConstraintMatrix& matrix);

  /// Brings `col_in` into the basis; returns the unique leaving column.
  ColumnId pivot(const ColumnId& col_in);

  bool contains(const ColumnId& id) const;
  std::vector<ColumnId> sorted_columns() const;
  /// Unperturbed basic value of a column (zero when nonbasic).
  Rational value_of(const ColumnId& id) const;
  /// Full basic solution over all columns.
  std::vector<Rational> basic_solution() const;

  /// Checks A * b = rhs exactly and lexicographic positivity of every basic
  /// row. Throws InternalError on failure.
  void check_invariants() const;

 private:
  const ConstraintMatrix* matrix_;
  DenseTableau tableau_;  // [columns | rhs | perturbation block]
  std::vector<ColumnId> basis_;
};

/// An ordinal basis of the utility matrix: a column set whose row minima
/// dominate every column of the matrix, with exactly one row minimizer per
/// basis column.
class OrdinalBasis {
 public:
  OrdinalBasis(const UtilityMatrix& matrix, std::vector<ColumnId> columns);

  /// Removes `col_out` and brings in the unique replacement prescribed by the
  /// ordinal pivot rule; returns the entering column. The columns remaining
  /// after removal must not all be agent columns.
  ColumnId pivot(const ColumnId& col_out);

  bool contains(const ColumnId& id) const;
  std::vector<ColumnId> sorted_columns() const;
  long long row_min(int row) const;
  ColumnId row_minimizer(int row) const;

  /// Verifies both ordinal-basis invariants; throws InternalError on failure.
  void check_invariants() const;

 private:
  void recompute_minima();

  const UtilityMatrix* matrix_;
  std::vector<ColumnId> columns_;
  std::vector<long long> row_min_;
  std::vector<ColumnId> row_argmin_;
};

struct ScarfOptions {
  /// Row used to seed the initial ordinal basis. Defaults to the first agent
  /// (firms first) with an assignment column not involving it.
  std::optional<AgentId> initial_row;
  UtilityOrdering ordering = UtilityOrdering::canonical;
};

struct InitialBases {
  FeasibleBasis feasible;
  OrdinalBasis ordinal;
  ColumnId first_entering;
  int row_agent = 0;
};

/// Step-0 bases: the agent columns on the feasibility side; on the ordinal
/// side the other agent columns plus the assignment column maximizing the
/// seed row. Requires at least one assignment column.
InitialBases initial_bases(const Market& market, const ConstraintMatrix& a,
                           const UtilityMatrix& c, const ScarfOptions& options = {});

struct ScarfStep {
  int index = 0;
  ColumnId cardinal_in, cardinal_out;
  std::optional<ColumnId> ordinal_out, ordinal_in;
  std::vector<ColumnId> basis_a, basis_c;  // position-sorted
};

struct ScarfTrace {
  std::vector<ColumnId> initial_a, initial_c;
  std::optional<ColumnId> first_entering;
  std::vector<ScarfStep> steps;
};

struct ScarfResult {
  PiScheduleMatching matching;
  std::vector<Rational> basic_solution;  // over agent + assignment columns
  ScarfTrace trace;
};

/// Alternates cardinal and ordinal pivots from the step-0 bases until both
/// sides agree on a column set, then reads the stable schedule matching off
/// the basic solution (agent-column components are vacant slack). The trace
/// records every pivot; a repeated basis pair is an internal error.
ScarfResult scarf_solve(const Market& market, const PiScheme& scheme,
                        const ScarfOptions& options = {});

/// One line per step: step index, the cardinal pivot, the ordinal pivot when
/// present, then the position-sorted basis column labels.
std::string serialize_trace(const Market& market, const ScarfTrace& trace);

}  // namespace scarfmatch
