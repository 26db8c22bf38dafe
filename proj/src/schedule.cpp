#include "scarfmatch/schedule.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "scarfmatch/errors.hpp"

namespace scarfmatch {

std::vector<std::string> PiScheme::validate(const Market& market) const {
  std::vector<std::string> out;
  const int n = market.agent_count();
  const auto columns = market.acceptable_assignments();
  if (static_cast<int>(capacity.size()) != n) {
    out.push_back("capacity must name every agent exactly once");
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (capacity[static_cast<std::size_t>(i)] <= 0)
      out.push_back("capacity of " + market.agent_label(i) + " must be positive");
  }
  if (intensity.size() != columns.size()) {
    out.push_back("intensity must cover exactly the acceptable assignments");
    return out;
  }
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& col = intensity[j];
    const std::string name = assignment_label(market, columns[j]);
    if (static_cast<int>(col.size()) != n) {
      out.push_back("intensity for " + name + " must name every agent");
      continue;
    }
    std::set<int> members;
    members.insert(columns[j].firm());
    for (int w : market.workers_of(columns[j])) members.insert(market.firm_count() + w);
    for (int i = 0; i < n; ++i) {
      const bool member = members.count(i) > 0;
      const auto& v = col[static_cast<std::size_t>(i)];
      if (member && v <= 0)
        out.push_back("intensity for " + name + " must be positive at " + market.agent_label(i));
      if (!member && v != 0)
        out.push_back("intensity for " + name + " must be zero at " + market.agent_label(i));
    }
  }
  return out;
}

PiScheme unit_scheme(const Market& market) {
  PiScheme s;
  const int n = market.agent_count();
  s.capacity.assign(static_cast<std::size_t>(n), Rational(1));
  for (const auto& y : market.acceptable_assignments()) {
    std::vector<Rational> col(static_cast<std::size_t>(n), Rational(0));
    col[static_cast<std::size_t>(y.firm())] = 1;
    for (int w : market.workers_of(y)) col[static_cast<std::size_t>(market.firm_count() + w)] = 1;
    s.intensity.push_back(std::move(col));
  }
  return s;
}

std::vector<Rational> agent_loads(const Market& market, const PiScheme& scheme,
                                  const PiScheduleMatching& t) {
  if (t.shares.size() != scheme.intensity.size())
    throw std::invalid_argument("share vector does not match the assignment columns");
  const int n = market.agent_count();
  std::vector<Rational> load(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t j = 0; j < t.shares.size(); ++j) {
    if (t.shares[j] == 0) continue;
    for (int i = 0; i < n; ++i) {
      const auto& w = scheme.intensity[j][static_cast<std::size_t>(i)];
      if (w != 0) load[static_cast<std::size_t>(i)] += t.shares[j] * w;
    }
  }
  return load;
}

bool is_feasible(const Market& market, const PiScheme& scheme, const PiScheduleMatching& t) {
  for (const auto& v : t.shares) {
    if (v < 0) return false;
  }
  const auto load = agent_loads(market, scheme, t);
  for (std::size_t i = 0; i < load.size(); ++i) {
    if (load[i] > scheme.capacity[i]) return false;
  }
  return true;
}

WorstSituationProfile worst_profile_for(const Market& market, std::span<const int> support,
                                        std::span<const char> tight) {
  const auto columns = market.acceptable_assignments();
  const int nf = market.firm_count();
  WorstSituationProfile profile;
  profile.firm_worst.assign(static_cast<std::size_t>(nf), std::nullopt);
  profile.full_matched.assign(static_cast<std::size_t>(market.agent_count()), false);
  for (int i = 0; i < market.agent_count(); ++i)
    profile.full_matched[static_cast<std::size_t>(i)] = tight[static_cast<std::size_t>(i)] != 0;

  for (int f = 0; f < nf; ++f) {
    if (!tight[static_cast<std::size_t>(f)]) continue;
    std::optional<FirmAssignment> worst;
    for (int j : support) {
      const auto& y = columns[static_cast<std::size_t>(j)];
      if (y.firm() != f) continue;
      if (!worst || market.firm_compare(f, *worst, y) == std::strong_ordering::greater) worst = y;
    }
    if (!worst)
      throw std::invalid_argument("tight firm " + market.firm_labels[static_cast<std::size_t>(f)] +
                                  " has no supported assignment");
    profile.firm_worst[static_cast<std::size_t>(f)] = std::move(worst);
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    const int pos = nf + w;
    if (!tight[static_cast<std::size_t>(pos)]) {
      profile.worker_worst.push_back(Situation::empty(w));
      continue;
    }
    std::optional<Situation> worst;
    for (int j : support) {
      const auto& y = columns[static_cast<std::size_t>(j)];
      const auto ws = market.workers_of(y);
      if (!std::binary_search(ws.begin(), ws.end(), w)) continue;
      Situation cand(y, w);
      if (!worst || market.worker_compare_ext(w, *worst, cand) == std::strong_ordering::greater)
        worst = std::move(cand);
    }
    if (!worst)
      throw std::invalid_argument("tight worker " +
                                  market.worker_labels[static_cast<std::size_t>(w)] +
                                  " has no supported situation");
    profile.worker_worst.push_back(std::move(*worst));
  }
  return profile;
}

WorstSituationProfile worst_situation_profile(const Market& market, const PiScheme& scheme,
                                              const PiScheduleMatching& t) {
  if (!is_feasible(market, scheme, t)) throw std::invalid_argument("infeasible schedule matching");
  const auto load = agent_loads(market, scheme, t);
  std::vector<int> support;
  for (std::size_t j = 0; j < t.shares.size(); ++j) {
    if (t.shares[j] > 0) support.push_back(static_cast<int>(j));
  }
  std::vector<char> tight(static_cast<std::size_t>(market.agent_count()), 0);
  for (std::size_t i = 0; i < load.size(); ++i) tight[i] = load[i] == scheme.capacity[i] ? 1 : 0;
  return worst_profile_for(market, support, tight);
}

FullTimeMatching make_matching(const Market& market, std::vector<int> contract_ids) {
  std::sort(contract_ids.begin(), contract_ids.end());
  contract_ids.erase(std::unique(contract_ids.begin(), contract_ids.end()), contract_ids.end());
  std::set<int> workers;
  for (int c : contract_ids) {
    if (c < 0 || c >= static_cast<int>(market.contracts.size()))
      throw std::invalid_argument("unknown contract in matching");
    if (!workers.insert(market.contract(c).worker).second)
      throw std::invalid_argument("matching holds two contracts of worker " +
                                  market.worker_labels[static_cast<std::size_t>(
                                      market.contract(c).worker)]);
  }
  return FullTimeMatching{std::move(contract_ids)};
}

FirmAssignment matching_assignment_of_firm(const Market& market, const FullTimeMatching& m,
                                           int firm) {
  std::vector<int> ids;
  for (int c : m.contract_ids) {
    if (market.contract(c).firm == firm) ids.push_back(c);
  }
  return FirmAssignment(firm, std::move(ids));
}

Situation matching_situation_of_worker(const Market& market, const FullTimeMatching& m,
                                       int worker) {
  for (int c : m.contract_ids) {
    if (market.contract(c).worker == worker)
      return Situation(matching_assignment_of_firm(market, m, market.contract(c).firm), worker);
  }
  return Situation::empty(worker);
}

namespace {

// All assignments of the firm (subsets of its contracts with at most one per
// worker), best first.
std::vector<FirmAssignment> firm_assignments_by_preference(const Market& market, int firm,
                                                           int per_firm_contract_bound) {
  const auto own = market.contracts_of_firm(firm);
  if (static_cast<int>(own.size()) > per_firm_contract_bound)
    throw ResourceBoundError("firm " + market.firm_labels[static_cast<std::size_t>(firm)] +
                             " exceeds the per-firm contract bound of " +
                             std::to_string(per_firm_contract_bound));
  std::vector<FirmAssignment> all;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << own.size()); ++mask) {
    std::vector<int> ids;
    std::set<int> workers;
    bool ok = true;
    for (std::size_t i = 0; i < own.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      if (!workers.insert(market.contract(own[i]).worker).second) {
        ok = false;
        break;
      }
      ids.push_back(own[i]);
    }
    if (ok) all.emplace_back(firm, std::move(ids));
  }
  std::sort(all.begin(), all.end(), [&](const FirmAssignment& a, const FirmAssignment& b) {
    return market.firm_compare(firm, a, b) == std::strong_ordering::greater;
  });
  return all;
}

bool worker_weakly_prefers_contract(const Market& market, int worker, int contract,
                                    const Situation& current) {
  const auto& prefs = market.worker_prefs[static_cast<std::size_t>(worker)];
  const auto rank = [&](int c) {
    return static_cast<int>(std::find(prefs.begin(), prefs.end(), c) - prefs.begin());
  };
  const int cur =
      current.is_empty() ? static_cast<int>(prefs.size())
                         : rank(market.own_contract(worker, current.assignment()));
  return rank(contract) <= cur;
}

}  // namespace

std::optional<FirmBlock> find_block_matching(const Market& market, const FullTimeMatching& m,
                                             int per_firm_contract_bound) {
  for (int f = 0; f < market.firm_count(); ++f) {
    const FirmAssignment current = matching_assignment_of_firm(market, m, f);
    for (const auto& y : firm_assignments_by_preference(market, f, per_firm_contract_bound)) {
      if (market.firm_compare(f, y, current) != std::strong_ordering::greater) break;
      bool ok = true;
      for (int c : y.contract_ids()) {
        const int w = market.contract(c).worker;
        if (!worker_weakly_prefers_contract(market, w, c,
                                            matching_situation_of_worker(market, m, w))) {
          ok = false;
          break;
        }
      }
      if (ok) return FirmBlock{f, y};
    }
  }
  return std::nullopt;
}

bool is_stable_matching(const Market& market, const FullTimeMatching& m,
                        int per_firm_contract_bound) {
  return !find_block_matching(market, m, per_firm_contract_bound).has_value();
}

std::optional<FirmBlock> find_block_pi_schedule(const Market& market, const PiScheme& scheme,
                                                const PiScheduleMatching& t) {
  const auto profile = worst_situation_profile(market, scheme, t);
  const auto columns = market.acceptable_assignments();
  for (const auto& z : columns) {
    const int f = z.firm();
    const FirmAssignment firm_worst =
        profile.firm_worst[static_cast<std::size_t>(f)].value_or(FirmAssignment(f, {}));
    if (market.firm_compare(f, z, firm_worst) != std::strong_ordering::greater) continue;
    bool ok = true;
    for (int w : market.workers_of(z)) {
      if (market.worker_compare_ext(w, Situation(z, w),
                                    profile.worker_worst[static_cast<std::size_t>(w)]) !=
          std::strong_ordering::greater) {
        ok = false;
        break;
      }
    }
    if (ok) return FirmBlock{f, z};
  }
  return std::nullopt;
}

bool is_stable_pi_schedule(const Market& market, const PiScheme& scheme,
                           const PiScheduleMatching& t) {
  return !find_block_pi_schedule(market, scheme, t).has_value();
}

bool dominates_profile(const Market& market, const FullTimeMatching& m,
                       const WorstSituationProfile& profile) {
  for (int f = 0; f < market.firm_count(); ++f) {
    const FirmAssignment mine = matching_assignment_of_firm(market, m, f);
    const FirmAssignment worst =
        profile.firm_worst[static_cast<std::size_t>(f)].value_or(FirmAssignment(f, {}));
    if (market.firm_compare(f, mine, worst) == std::strong_ordering::less) return false;
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    const Situation mine = matching_situation_of_worker(market, m, w);
    if (market.worker_compare_ext(w, mine, profile.worker_worst[static_cast<std::size_t>(w)]) ==
        std::strong_ordering::less)
      return false;
  }
  return true;
}

bool dominates(const Market& market, const PiScheme& scheme, const FullTimeMatching& m,
               const PiScheduleMatching& t) {
  return dominates_profile(market, m, worst_situation_profile(market, scheme, t));
}

}  // namespace scarfmatch
