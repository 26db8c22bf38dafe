#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "scarfmatch/errors.hpp"
#include "scarfmatch/market.hpp"
#include "scarfmatch/scarf.hpp"
#include "scarfmatch/schedule.hpp"

namespace scarfmatch {

/// Hard desk-scale limits for the exhaustive checks. Exceeding a bound raises
/// ResourceBoundError; results are never silently truncated.
struct EnumerationBounds {
  int max_assignment_columns = 12;
  int max_agents = 10;
  long long max_matchings = 1'000'000;
};

/// Support/tightness summary of a schedule matching: which assignment columns
/// carry positive share and which agent constraints bind. The worst-situation
/// profile is a function of this summary alone.
struct Pattern {
  std::vector<int> support;       // assignment column indexes, ascending
  std::vector<int> tight_agents;  // agent positions, ascending

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct ConcavityVerdict {
  bool concave = true;
  std::optional<Pattern> counterexample;
  std::optional<PiScheduleMatching> witness;
};

/// Visits every matching (the product over workers of own contracts plus
/// none) in a fixed deterministic order; stops early when the visitor
/// returns false.
void for_each_matching(const Market& market, const EnumerationBounds& bounds,
                       const std::function<bool(const FullTimeMatching&)>& visit);

std::vector<FullTimeMatching> enumerate_matchings(const Market& market,
                                                  const EnumerationBounds& bounds = {});

/// Decides, in exact arithmetic, whether some feasible schedule matching has
/// exactly the pattern's support and tight set, by maximizing a uniform
/// margin that keeps supported shares and loose slacks strictly positive.
/// Returns a witness share vector when the margin is positive.
std::optional<PiScheduleMatching> pattern_realizable(const Market& market, const PiScheme& scheme,
                                                     const Pattern& pattern);

/// Worst-situation profile induced by a pattern.
WorstSituationProfile profile_from_pattern(const Market& market, const Pattern& pattern);

/// First matching in enumeration order that dominates the profile.
std::optional<FullTimeMatching> find_dominating_matching(const Market& market,
                                                         const WorstSituationProfile& profile,
                                                         const EnumerationBounds& bounds = {});

/// Iterates every pattern (supports by ascending column bitmask, tight sets
/// over the supported agents); the market is concave under the scheme iff
/// every realizable pattern admits a dominating matching. Reports the first
/// failing pattern in enumeration order together with a realizing witness.
ConcavityVerdict check_pi_concavity(const Market& market, const PiScheme& scheme,
                                    const EnumerationBounds& bounds = {});

/// All stable matchings by exhaustive search.
std::vector<FullTimeMatching> brute_force_stable_set(const Market& market,
                                                     const EnumerationBounds& bounds = {});

/// Runs the pivoting solver, then searches for a matching dominating its
/// stable schedule matching. A returned matching is always stable; an absent
/// return means the market is not concave under this scheme.
std::optional<FullTimeMatching> stable_matching_via_scarf(const Market& market,
                                                          const PiScheme& scheme,
                                                          const ScarfOptions& options = {},
                                                          const EnumerationBounds& bounds = {});

}  // namespace scarfmatch
