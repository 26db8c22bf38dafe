#pragma once

#include <optional>
#include <span>
#include <vector>

#include "scarfmatch/market.hpp"
#include "scarfmatch/rational.hpp"

namespace scarfmatch {

/// Per-agent capacities and per-assignment intensity vectors. Capacities are
/// indexed by agent position (firms first, then workers); intensity columns
/// follow Market::acceptable_assignments() order. Every capacity is positive
/// and an intensity entry is positive exactly for the agents signing the
/// assignment. Maps are dense: absent entries are rejected, never defaulted.
struct PiScheme {
  std::vector<Rational> capacity;
  std::vector<std::vector<Rational>> intensity;

  std::vector<std::string> validate(const Market& market) const;
};

/// The scheme under which schedule matchings carry unit capacities and
/// indicator intensities.
PiScheme unit_scheme(const Market& market);

/// Nonnegative exact time shares over the acceptable-assignment columns.
struct PiScheduleMatching {
  std::vector<Rational> shares;
};

/// Each agent's total input under the shares.
std::vector<Rational> agent_loads(const Market& market, const PiScheme& scheme,
                                  const PiScheduleMatching& t);

/// True iff every agent's load stays within its capacity, exactly.
bool is_feasible(const Market& market, const PiScheme& scheme, const PiScheduleMatching& t);

/// Each agent's worst situation in a schedule: full-matched agents get their
/// least preferred positive-share assignment (externality-adjusted for
/// workers), all others the empty one.
struct WorstSituationProfile {
  std::vector<std::optional<FirmAssignment>> firm_worst;
  std::vector<Situation> worker_worst;
  std::vector<bool> full_matched;  // per agent position
};

WorstSituationProfile worst_situation_profile(const Market& market, const PiScheme& scheme,
                                              const PiScheduleMatching& t);

/// Profile determined by a support/tightness summary alone: the worst
/// situation reads only the sign of each share and the tightness of each
/// agent constraint. `support` holds acceptable-assignment column indexes,
/// `tight` is a per-agent-position flag. Every tight agent must appear in
/// some supported assignment.
WorstSituationProfile worst_profile_for(const Market& market, std::span<const int> support,
                                        std::span<const char> tight);

/// A set of contracts with at most one contract per worker.
struct FullTimeMatching {
  std::vector<int> contract_ids;  // sorted

  friend bool operator==(const FullTimeMatching&, const FullTimeMatching&) = default;
};

FullTimeMatching make_matching(const Market& market, std::vector<int> contract_ids);

FirmAssignment matching_assignment_of_firm(const Market& market, const FullTimeMatching& m,
                                           int firm);
Situation matching_situation_of_worker(const Market& market, const FullTimeMatching& m,
                                       int worker);

struct FirmBlock {
  int firm;
  FirmAssignment assignment;
};

/// Searches every assignment of every firm (all subsets of the firm's
/// contracts with at most one contract per worker, visited in decreasing firm
/// preference) for one the firm strictly prefers to its current assignment
/// and every worker involved weakly prefers to her current contract. Absent
/// iff the matching is stable. Throws ResourceBoundError when some firm signs
/// more than `per_firm_contract_bound` contracts.
std::optional<FirmBlock> find_block_matching(const Market& market, const FullTimeMatching& m,
                                             int per_firm_contract_bound = 15);
bool is_stable_matching(const Market& market, const FullTimeMatching& m,
                        int per_firm_contract_bound = 15);

/// Blocking test for schedules: an acceptable assignment blocks when the firm
/// strictly prefers it to its worst situation and every worker involved
/// strictly prefers it (externality-adjusted) to hers.
std::optional<FirmBlock> find_block_pi_schedule(const Market& market, const PiScheme& scheme,
                                                const PiScheduleMatching& t);
bool is_stable_pi_schedule(const Market& market, const PiScheme& scheme,
                           const PiScheduleMatching& t);

/// True iff the matching leaves every firm weakly above its worst situation
/// in `t` and every worker weakly above hers under the externality-adjusted
/// order.
bool dominates(const Market& market, const PiScheme& scheme, const FullTimeMatching& m,
               const PiScheduleMatching& t);
bool dominates_profile(const Market& market, const FullTimeMatching& m,
                       const WorstSituationProfile& profile);

}  // namespace scarfmatch
