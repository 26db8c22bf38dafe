#include "scarfmatch/teams.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "scarfmatch/errors.hpp"

namespace scarfmatch {

bool LeaderFollowerStructure::is_leader(int worker) const {
  return std::find(leaders.begin(), leaders.end(), worker) != leaders.end();
}

std::optional<int> LeaderFollowerStructure::leader_of(int worker) const {
  for (const auto& [o, l] : follows) {
    if (o == worker) return l;
  }
  return std::nullopt;
}

std::vector<std::string> validate_team_market(const Market& market,
                                              const LeaderFollowerStructure& structure) {
  std::vector<std::string> out;

  std::map<std::pair<int, int>, int> pair_counts;
  for (const auto& c : market.contracts) ++pair_counts[{c.firm, c.worker}];
  for (const auto& [pair, count] : pair_counts) {
    if (count > 1)
      out.push_back("not basic: " + market.firm_labels[static_cast<std::size_t>(pair.first)] +
                    " and " + market.worker_labels[static_cast<std::size_t>(pair.second)] +
                    " sign " + std::to_string(count) + " contracts");
  }

  std::vector<int> declared(static_cast<std::size_t>(market.worker_count()), 0);
  for (int l : structure.leaders) {
    if (l < 0 || l >= market.worker_count()) {
      out.push_back("leaders name an unknown worker");
      continue;
    }
    ++declared[static_cast<std::size_t>(l)];
  }
  for (const auto& [o, l] : structure.follows) {
    if (o < 0 || o >= market.worker_count() || l < 0 || l >= market.worker_count()) {
      out.push_back("follows names an unknown worker");
      continue;
    }
    ++declared[static_cast<std::size_t>(o)];
    if (!structure.is_leader(l))
      out.push_back("worker " + market.worker_labels[static_cast<std::size_t>(o)] +
                    " follows a non-leader");
    if (structure.is_leader(o))
      out.push_back("leader " + market.worker_labels[static_cast<std::size_t>(o)] +
                    " cannot follow anyone");
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    if (declared[static_cast<std::size_t>(w)] != 1)
      out.push_back("worker " + market.worker_labels[static_cast<std::size_t>(w)] +
                    " must be exactly one of leader or follower");
  }
  if (!out.empty()) return out;

  for (const auto& y : market.acceptable_assignments()) {
    const std::string name = assignment_label(market, y);
    std::vector<int> leaders_in;
    for (int w : market.workers_of(y)) {
      if (structure.is_leader(w)) leaders_in.push_back(w);
    }
    if (leaders_in.size() != 1) {
      out.push_back("assignment " + name + " holds " + std::to_string(leaders_in.size()) +
                    " leaders");
      continue;
    }
    for (int w : market.workers_of(y)) {
      if (structure.is_leader(w)) continue;
      if (structure.leader_of(w) != leaders_in.front())
        out.push_back("assignment " + name + " mixes follower " +
                      market.worker_labels[static_cast<std::size_t>(w)] +
                      " with a foreign leader");
    }
  }
  return out;
}

std::optional<int> team_leader(const Market& market, const LeaderFollowerStructure& structure,
                               const FirmAssignment& assignment) {
  for (int w : market.workers_of(assignment)) {
    if (structure.is_leader(w)) return w;
  }
  return std::nullopt;
}

std::optional<FirmAssignment> favorite_team(const Market& market,
                                            const LeaderFollowerStructure& structure, int firm,
                                            int leader) {
  // Lists are best first, so the first hit wins.
  for (const auto& y : market.firm_prefs.at(static_cast<std::size_t>(firm))) {
    if (team_leader(market, structure, y) == leader) return y;
  }
  return std::nullopt;
}

FullTimeMatching variant_da(const Market& market, const LeaderFollowerStructure& structure) {
  // A leader's proposal order over firms comes from her contract list.
  std::map<int, std::vector<int>> firm_order;
  for (int l : structure.leaders) {
    for (int c : market.worker_prefs.at(static_cast<std::size_t>(l)))
      firm_order[l].push_back(market.contract(c).firm);
  }
  std::vector<int> holder(static_cast<std::size_t>(market.firm_count()), -1);
  std::map<int, std::size_t> next_choice;
  std::deque<int> free;
  for (int l : structure.leaders) free.push_back(l);

  while (!free.empty()) {
    const int l = free.front();
    free.pop_front();
    auto& next = next_choice[l];
    const auto& order = firm_order[l];
    while (next < order.size()) {
      const int f = order[next++];
      const auto mine = favorite_team(market, structure, f, l);
      if (!mine) continue;  // unqualified applicants are rejected outright
      const int held = holder[static_cast<std::size_t>(f)];
      if (held < 0) {
        holder[static_cast<std::size_t>(f)] = l;
        break;
      }
      const auto theirs = favorite_team(market, structure, f, held);
      if (*mine == *theirs)
        throw InternalError("two leaders share a favorite team");
      if (market.firm_compare(f, *mine, *theirs) == std::strong_ordering::greater) {
        holder[static_cast<std::size_t>(f)] = l;
        free.push_back(held);
        break;
      }
    }
  }

  std::vector<int> ids;
  for (int f = 0; f < market.firm_count(); ++f) {
    if (holder[static_cast<std::size_t>(f)] < 0) continue;
    const auto team = favorite_team(market, structure, f, holder[static_cast<std::size_t>(f)]);
    ids.insert(ids.end(), team->contract_ids().begin(), team->contract_ids().end());
  }
  return make_matching(market, std::move(ids));
}

FullTimeMatching round_schedule_to_matching(const Market& market,
                                            const LeaderFollowerStructure& structure,
                                            const PiScheduleMatching& t) {
  const auto violations = validate_team_market(market, structure);
  if (!violations.empty())
    throw std::invalid_argument("not a team market: " + violations.front());
  const PiScheme scheme = unit_scheme(market);
  if (!is_feasible(market, scheme, t))
    throw std::invalid_argument("not a schedule matching: some load exceeds one");

  const auto columns = market.acceptable_assignments();
  const int k = static_cast<int>(columns.size());
  const int nf = market.firm_count();
  const auto loads = agent_loads(market, scheme, t);

  // Components: the assignment columns followed by one slack column per firm
  // or leader. Each constrained vertex (firm or leader) must keep incident
  // weight exactly one; slack columns of followers carry no constraint and
  // are irrelevant to the matching.
  struct Edge {
    int a;  // vertex (agent position) or -1 for the slack phantom
    int b;
    Rational value;
    Rational cap = Rational(1);
  };
  std::vector<Edge> edges;
  for (int j = 0; j < k; ++j) {
    const int lead = *team_leader(market, structure, columns[static_cast<std::size_t>(j)]);
    edges.push_back({columns[static_cast<std::size_t>(j)].firm(), nf + lead,
                     t.shares[static_cast<std::size_t>(j)]});
  }
  std::vector<int> constrained;  // vertex agent positions
  for (int f = 0; f < nf; ++f) constrained.push_back(f);
  for (int l : structure.leaders) constrained.push_back(nf + l);
  for (int v : constrained)
    edges.push_back({v, -1, Rational(1) - loads[static_cast<std::size_t>(v)]});

  const auto fractional = [&](const Edge& e) { return !is_integral(e.value); };

  for (;;) {
    std::map<int, std::vector<int>> incident;  // vertex -> fractional edge ids
    int count = 0;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (!fractional(edges[j])) continue;
      ++count;
      incident[edges[j].a].push_back(static_cast<int>(j));
      incident[edges[j].b].push_back(static_cast<int>(j));
    }
    if (count == 0) break;
    // Each constrained vertex touches zero or at least two fractional edges,
    // so a walk starting from the phantom (or anywhere) closes into a cycle
    // or a phantom-to-phantom path; alternating +/- around it keeps all row
    // sums and kills at least one fractional edge.
    const int start = incident.count(-1) ? -1 : incident.begin()->first;
    std::vector<int> path_edges;
    std::vector<int> path_verts{start};
    std::set<int> used;
    int at = start;
    for (;;) {
      int chosen = -1;
      for (int j : incident[at]) {
        if (!used.count(j)) {
          chosen = j;
          break;
        }
      }
      if (chosen < 0) throw InternalError("fractional walk dead-ended");
      used.insert(chosen);
      path_edges.push_back(chosen);
      at = edges[static_cast<std::size_t>(chosen)].a == at
               ? edges[static_cast<std::size_t>(chosen)].b
               : edges[static_cast<std::size_t>(chosen)].a;
      path_verts.push_back(at);
      if (at == -1 && path_edges.size() >= 2) break;  // phantom-to-phantom path
      if (at != -1) {
        const auto it = std::find(path_verts.begin(), path_verts.end() - 1, at);
        if (it != path_verts.end() - 1) {
          const auto offset = it - path_verts.begin();
          path_edges.erase(path_edges.begin(), path_edges.begin() + offset);
          break;  // closed cycle
        }
      }
    }
    Rational up_room(-1), down_room(-1);
    for (std::size_t q = 0; q < path_edges.size(); ++q) {
      const auto& e = edges[static_cast<std::size_t>(path_edges[q])];
      const Rational raise = e.cap - e.value;
      const Rational lower = e.value;
      const Rational a = q % 2 == 0 ? raise : lower;
      const Rational b = q % 2 == 0 ? lower : raise;
      if (up_room < 0 || a < up_room) up_room = a;
      if (down_room < 0 || b < down_room) down_room = b;
    }
    const Rational theta = up_room >= down_room ? up_room : -down_room;
    if (theta == 0) throw InternalError("degenerate fractional adjustment");
    for (std::size_t q = 0; q < path_edges.size(); ++q) {
      auto& e = edges[static_cast<std::size_t>(path_edges[q])];
      e.value += q % 2 == 0 ? theta : -theta;
      if (e.value < 0 || e.value > e.cap) throw InternalError("adjustment left the polytope");
    }
  }

  std::vector<int> ids;
  for (int j = 0; j < k; ++j) {
    if (edges[static_cast<std::size_t>(j)].value == 1) {
      const auto& y = columns[static_cast<std::size_t>(j)];
      ids.insert(ids.end(), y.contract_ids().begin(), y.contract_ids().end());
    }
  }
  return make_matching(market, std::move(ids));
}

}  // namespace scarfmatch
