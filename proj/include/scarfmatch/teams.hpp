#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scarfmatch/market.hpp"
#include "scarfmatch/schedule.hpp"

namespace scarfmatch {

/// Partition of the workers into leaders and followers, each follower
/// following one leader.
struct LeaderFollowerStructure {
  std::vector<int> leaders;                   // worker indexes, ascending
  std::vector<std::pair<int, int>> follows;   // (follower, leader) pairs

  bool is_leader(int worker) const;
  /// Leader of a follower; nullopt for leaders and undeclared workers.
  std::optional<int> leader_of(int worker) const;
};

/// Empty iff the market is basic (at most one contract per firm-worker pair),
/// the structure partitions the workers, and every acceptable assignment's
/// worker set is a team: exactly one leader plus only her followers.
std::vector<std::string> validate_team_market(const Market& market,
                                              const LeaderFollowerStructure& structure);

/// Workers of the assignment's team paired with its leader.
std::optional<int> team_leader(const Market& market, const LeaderFollowerStructure& structure,
                               const FirmAssignment& assignment);

/// The firm's most preferred acceptable assignment whose team contains the
/// leader; nullopt when no such assignment exists.
std::optional<FirmAssignment> favorite_team(const Market& market,
                                            const LeaderFollowerStructure& structure, int firm,
                                            int leader);

/// Leader-proposing deferred acceptance: leaders propose down their firm
/// lists; a firm ranks applicants by its favorite team for each leader and
/// keeps the best qualified one. Each firm ends up matched to the favorite
/// team of the leader it holds. The output is stable.
FullTimeMatching variant_da(const Market& market, const LeaderFollowerStructure& structure);

/// Rounds a feasible unit-scheme schedule matching to a full-time matching
/// that dominates it: restricts to the positive columns, then cancels
/// fractional cycles of the firm-leader incidence structure until the point
/// is an integral vertex, and reads the matching off the unit columns.
FullTimeMatching round_schedule_to_matching(const Market& market,
                                            const LeaderFollowerStructure& structure,
                                            const PiScheduleMatching& t);

}  // namespace scarfmatch
