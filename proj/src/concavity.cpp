#include "scarfmatch/concavity.hpp"

#include <algorithm>
#include <map>

#include "scarfmatch/simplex.hpp"

namespace scarfmatch {

void for_each_matching(const Market& market, const EnumerationBounds& bounds,
                       const std::function<bool(const FullTimeMatching&)>& visit) {
  const int nw = market.worker_count();
  std::vector<std::vector<int>> options(static_cast<std::size_t>(nw));
  long long total = 1;
  for (int w = 0; w < nw; ++w) {
    auto& opts = options[static_cast<std::size_t>(w)];
    opts.push_back(-1);  // unmatched
    for (int c : market.contracts_of_worker(w)) opts.push_back(c);
    total *= static_cast<long long>(opts.size());
    if (total > bounds.max_matchings)
      throw ResourceBoundError("matching enumeration exceeds the bound of " +
                               std::to_string(bounds.max_matchings));
  }
  std::vector<std::size_t> pick(static_cast<std::size_t>(nw), 0);
  for (;;) {
    std::vector<int> ids;
    for (int w = 0; w < nw; ++w) {
      const int c = options[static_cast<std::size_t>(w)][pick[static_cast<std::size_t>(w)]];
      if (c >= 0) ids.push_back(c);
    }
    std::sort(ids.begin(), ids.end());
    if (!visit(FullTimeMatching{std::move(ids)})) return;
    int w = nw - 1;
    while (w >= 0) {
      auto& p = pick[static_cast<std::size_t>(w)];
      if (++p < options[static_cast<std::size_t>(w)].size()) break;
      p = 0;
      --w;
    }
    if (w < 0) return;
  }
}

std::vector<FullTimeMatching> enumerate_matchings(const Market& market,
                                                  const EnumerationBounds& bounds) {
  std::vector<FullTimeMatching> out;
  for_each_matching(market, bounds, [&](const FullTimeMatching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::optional<PiScheduleMatching> pattern_realizable(const Market& market, const PiScheme& scheme,
                                                     const Pattern& pattern) {
  const auto violations = scheme.validate(market);
  if (!violations.empty()) throw std::invalid_argument("invalid scheme: " + violations.front());
  const int n = market.agent_count();
  const int k = static_cast<int>(scheme.intensity.size());
  std::vector<char> in_support(static_cast<std::size_t>(k), 0);
  for (int j : pattern.support) {
    if (j < 0 || j >= k) throw std::invalid_argument("pattern names an unknown column");
    in_support[static_cast<std::size_t>(j)] = 1;
  }
  std::vector<char> tight(static_cast<std::size_t>(n), 0);
  for (int i : pattern.tight_agents) {
    if (i < 0 || i >= n) throw std::invalid_argument("pattern names an unknown agent");
    tight[static_cast<std::size_t>(i)] = 1;
  }

  // Substituted program over nonnegative variables: shares on the support are
  // margin + excess, loose agents carry slack of margin + excess, and the
  // margin is maximized. A positive optimum certifies the pattern.
  std::vector<std::vector<Rational>> cols;
  std::vector<int> share_var(static_cast<std::size_t>(k), -1);
  for (int j : pattern.support) {
    share_var[static_cast<std::size_t>(j)] = static_cast<int>(cols.size());
    cols.push_back(scheme.intensity[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < n; ++i) {
    if (tight[static_cast<std::size_t>(i)]) continue;
    std::vector<Rational> e(static_cast<std::size_t>(n), Rational(0));
    e[static_cast<std::size_t>(i)] = 1;
    cols.push_back(std::move(e));
  }
  std::vector<Rational> margin_col(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j : pattern.support)
      margin_col[static_cast<std::size_t>(i)] +=
          scheme.intensity[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    if (!tight[static_cast<std::size_t>(i)]) margin_col[static_cast<std::size_t>(i)] += 1;
  }
  cols.push_back(std::move(margin_col));
  std::vector<Rational> objective(cols.size(), Rational(0));
  objective.back() = 1;

  const auto sol = lp_maximize(cols, scheme.capacity, objective);
  if (!sol || sol->objective <= 0) return std::nullopt;
  PiScheduleMatching witness;
  witness.shares.assign(static_cast<std::size_t>(k), Rational(0));
  for (int j : pattern.support)
    witness.shares[static_cast<std::size_t>(j)] =
        sol->x[static_cast<std::size_t>(share_var[static_cast<std::size_t>(j)])] + sol->objective;
  return witness;
}

WorstSituationProfile profile_from_pattern(const Market& market, const Pattern& pattern) {
  std::vector<char> tight(static_cast<std::size_t>(market.agent_count()), 0);
  for (int i : pattern.tight_agents) tight[static_cast<std::size_t>(i)] = 1;
  return worst_profile_for(market, pattern.support, tight);
}

std::optional<FullTimeMatching> find_dominating_matching(const Market& market,
                                                         const WorstSituationProfile& profile,
                                                         const EnumerationBounds& bounds) {
  std::optional<FullTimeMatching> found;
  for_each_matching(market, bounds, [&](const FullTimeMatching& m) {
    if (dominates_profile(market, m, profile)) {
      found = m;
      return false;
    }
    return true;
  });
  return found;
}

namespace {

// Members of an assignment column as agent positions (its firm, then its
// workers).
std::vector<int> column_agents(const Market& market, const FirmAssignment& y) {
  std::vector<int> out;
  out.push_back(y.firm());
  for (int w : market.workers_of(y)) out.push_back(market.firm_count() + w);
  return out;
}

// Per-agent worst column of the profile, encoded as a column index or -1 for
// the empty situation. Distinct profiles get distinct keys because the
// column order fixes the assignment identities.
std::vector<int> profile_key(const Market& market, const std::vector<FirmAssignment>& columns,
                             const WorstSituationProfile& profile) {
  std::vector<int> key(static_cast<std::size_t>(market.agent_count()), -1);
  const auto index_of = [&](const FirmAssignment& y) {
    const auto it = std::find(columns.begin(), columns.end(), y);
    return static_cast<int>(it - columns.begin());
  };
  for (int f = 0; f < market.firm_count(); ++f) {
    if (profile.firm_worst[static_cast<std::size_t>(f)])
      key[static_cast<std::size_t>(f)] = index_of(*profile.firm_worst[static_cast<std::size_t>(f)]);
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    const auto& s = profile.worker_worst[static_cast<std::size_t>(w)];
    if (!s.is_empty())
      key[static_cast<std::size_t>(market.firm_count() + w)] = index_of(s.assignment());
  }
  return key;
}

}  // namespace

ConcavityVerdict check_pi_concavity(const Market& market, const PiScheme& scheme,
                                    const EnumerationBounds& bounds) {
  const auto violations = scheme.validate(market);
  if (!violations.empty()) throw std::invalid_argument("invalid scheme: " + violations.front());
  const auto columns = market.acceptable_assignments();
  const int k = static_cast<int>(columns.size());
  const int n = market.agent_count();
  if (k > bounds.max_assignment_columns || k > 30)
    throw ResourceBoundError("assignment column count exceeds the bound of " +
                             std::to_string(std::min(bounds.max_assignment_columns, 30)));
  if (n > bounds.max_agents || n > 30)
    throw ResourceBoundError("agent count exceeds the bound of " +
                             std::to_string(std::min(bounds.max_agents, 30)));

  std::vector<std::vector<int>> members;
  for (const auto& y : columns) members.push_back(column_agents(market, y));

  // Dominance depends on the pattern only through its profile, so cache the
  // search result per profile key.
  std::map<std::vector<int>, bool> dominated_cache;

  for (std::uint32_t smask = 0; smask < (std::uint32_t{1} << k); ++smask) {
    Pattern pattern;
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < k; ++j) {
      if (smask >> j & 1) {
        pattern.support.push_back(j);
        for (int i : members[static_cast<std::size_t>(j)]) covered[static_cast<std::size_t>(i)] = 1;
      }
    }
    std::vector<int> coverable;
    for (int i = 0; i < n; ++i) {
      if (covered[static_cast<std::size_t>(i)]) coverable.push_back(i);
    }
    // Tight agents outside the supported columns cannot reach their capacity,
    // so only subsets of the covered agents are candidates.
    const int nc = static_cast<int>(coverable.size());
    for (std::uint32_t tmask = 0; tmask < (std::uint32_t{1} << nc); ++tmask) {
      pattern.tight_agents.clear();
      for (int q = 0; q < nc; ++q) {
        if (tmask >> q & 1) pattern.tight_agents.push_back(coverable[static_cast<std::size_t>(q)]);
      }
      const auto profile = profile_from_pattern(market, pattern);
      const auto key = profile_key(market, columns, profile);
      auto it = dominated_cache.find(key);
      if (it == dominated_cache.end()) {
        const bool dominated = find_dominating_matching(market, profile, bounds).has_value();
        it = dominated_cache.emplace(key, dominated).first;
      }
      if (it->second) continue;
      auto witness = pattern_realizable(market, scheme, pattern);
      if (witness) {
        ConcavityVerdict verdict;
        verdict.concave = false;
        verdict.counterexample = pattern;
        verdict.witness = std::move(witness);
        return verdict;
      }
    }
  }
  return ConcavityVerdict{};
}

std::vector<FullTimeMatching> brute_force_stable_set(const Market& market,
                                                     const EnumerationBounds& bounds) {
  std::vector<FullTimeMatching> out;
  for_each_matching(market, bounds, [&](const FullTimeMatching& m) {
    if (is_stable_matching(market, m)) out.push_back(m);
    return true;
  });
  return out;
}

std::optional<FullTimeMatching> stable_matching_via_scarf(const Market& market,
                                                          const PiScheme& scheme,
                                                          const ScarfOptions& options,
                                                          const EnumerationBounds& bounds) {
  const ScarfResult result = scarf_solve(market, scheme, options);
  const auto profile = worst_situation_profile(market, scheme, result.matching);
  auto matching = find_dominating_matching(market, profile, bounds);
  if (matching && !is_stable_matching(market, *matching))
    throw InternalError("dominating matching failed the stability check");
  return matching;
}

}  // namespace scarfmatch
