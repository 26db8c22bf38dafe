#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace scarfmatch {

enum class Role { firm, worker };

struct AgentId {
  Role role{Role::firm};
  int index{0};
  friend bool operator==(const AgentId&, const AgentId&) = default;
};

/// A bilateral contract between one firm and one worker. Indices refer to the
/// owning Market's firm/worker sequences.
struct Contract {
  std::string label;
  int firm{0};
  int worker{0};
};

/// A set of one firm's contracts with at most one contract per worker.
/// Contract ids are kept sorted; an empty id set is the firm's empty
/// assignment.
class FirmAssignment {
 public:
  FirmAssignment(int firm, std::vector<int> contract_ids);

  int firm() const { return firm_; }
  const std::vector<int>& contract_ids() const { return contract_ids_; }
  bool empty() const { return contract_ids_.empty(); }

  friend bool operator==(const FirmAssignment&, const FirmAssignment&) = default;

 private:
  int firm_;
  std::vector<int> contract_ids_;
};

/// A worker's situation: some firm's assignment holding exactly one of her
/// contracts, or the empty situation.
class Situation {
 public:
  static Situation empty(int worker) { return Situation(worker); }
  Situation(FirmAssignment assignment, int worker);

  bool is_empty() const { return !assignment_.has_value(); }
  int worker() const { return worker_; }
  const FirmAssignment& assignment() const;

  friend bool operator==(const Situation&, const Situation&) = default;

 private:
  explicit Situation(int worker) : worker_(worker) {}

  int worker_;
  std::optional<FirmAssignment> assignment_;
};

/// A many-to-one matching market: firms, workers, contracts, each firm's
/// ordered list of acceptable assignments (best first) and each worker's
/// ordered list of her contracts (best first). Every contract is acceptable
/// to its worker; the empty assignment ranks just below the last entry of a
/// firm's list.
///
/// All operations are pure over the immutable market data and may be invoked
/// concurrently without synchronization.
struct Market {
  std::vector<std::string> firm_labels;
  std::vector<std::string> worker_labels;
  std::vector<Contract> contracts;
  std::vector<std::vector<FirmAssignment>> firm_prefs;
  std::vector<std::vector<int>> worker_prefs;

  int firm_count() const { return static_cast<int>(firm_labels.size()); }
  int worker_count() const { return static_cast<int>(worker_labels.size()); }
  int agent_count() const { return firm_count() + worker_count(); }

  // Agent positions order firms first, then workers.
  int agent_pos(AgentId id) const;
  AgentId agent_at(int pos) const;
  std::string agent_label(int pos) const;

  const Contract& contract(int id) const { return contracts.at(static_cast<std::size_t>(id)); }
  std::optional<int> contract_by_label(const std::string& label) const;
  std::vector<int> contracts_of_firm(int firm) const;
  std::vector<int> contracts_of_worker(int worker) const;

  /// Sorted, distinct workers signing contracts of the assignment.
  std::vector<int> workers_of(const FirmAssignment& assignment) const;
  /// The worker's own contract inside one of her situations.
  int own_contract(int worker, const FirmAssignment& assignment) const;

  /// Empty iff all market invariants hold; each violation names the offending
  /// object.
  std::vector<std::string> validate() const;

  /// Strict firm order: greater means the first assignment is preferred.
  /// Listed assignments rank by list position, the empty assignment just
  /// below the last listed one, and unlisted assignments below empty with a
  /// lexicographic tie-break on sorted contract labels.
  std::strong_ordering firm_compare(int firm, const FirmAssignment& a,
                                    const FirmAssignment& b) const;

  /// Worker order with externalities: ranks first by the worker's own
  /// contract; between situations sharing the own contract (hence the firm),
  /// defers to the firm's order over the two assignments.
  std::strong_ordering worker_compare_ext(int worker, const Situation& a,
                                          const Situation& b) const;

  /// Firms' acceptable assignments concatenated in declaration order, each
  /// firm's list in preference order. This fixed column order is shared by
  /// every matrix built on top of the market.
  std::vector<FirmAssignment> acceptable_assignments() const;

  /// All situations of the worker drawn from the acceptable assignments plus
  /// the empty situation, sorted ascending (worst first; empty is minimal).
  std::vector<Situation> worker_situations(int worker) const;
};

/// Canonical assignment label: contract labels sorted lexicographically inside
/// braces, e.g. "{x5d,y4d}". The empty assignment prints as "empty".
std::string assignment_label(const Market& market, const FirmAssignment& assignment);

}  // namespace scarfmatch
