#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "random_markets.hpp"
#include "scarfmatch/concavity.hpp"

using namespace scarfmatch;
using namespace scarfmatch::testing;

namespace {

std::set<std::vector<int>> matching_set(const std::vector<FullTimeMatching>& all) {
  std::set<std::vector<int>> out;
  for (const auto& m : all) out.insert(m.contract_ids);
  return out;
}

}  // namespace

TEST_CASE("matching enumeration is the product over workers") {
  const auto m2 = m2_fixture();
  CHECK(enumerate_matchings(m2.market).size() == 9);

  // Each worker of the multi-contract fixture has three contracts plus the
  // unmatched option: 4 * 4.
  const auto eb = eb_fixture();
  CHECK(enumerate_matchings(eb.market).size() == 16);

  Market tiny;
  tiny.firm_labels = {"f1", "f2"};
  tiny.worker_labels = {"w1", "w2"};
  tiny.contracts = {{"c0", 0, 0}};
  tiny.firm_prefs.resize(2);
  tiny.worker_prefs = {{0}, {}};
  CHECK(enumerate_matchings(tiny).size() == 2);

  EnumerationBounds bounds;
  bounds.max_matchings = 8;
  CHECK_THROWS_AS((void)enumerate_matchings(m2.market, bounds), ResourceBoundError);
}

TEST_CASE("pattern realizability solves the margin program") {
  const auto m2 = m2_fixture();
  const PiScheme unit = unit_scheme(m2.market);

  Pattern half;
  half.support = {0, 2, 3};
  half.tight_agents = {1, 2, 3};
  const auto witness = pattern_realizable(m2.market, unit, half);
  REQUIRE(witness.has_value());
  CHECK(witness->shares ==
        std::vector<Rational>{Rational(1, 2), 0, Rational(1, 2), Rational(1, 2)});

  // Tight f2 can never happen under capacities (1,3,1,1).
  const auto m4 = m4_fixture();
  Pattern f2_tight;
  f2_tight.support = {0, 1, 2};
  f2_tight.tight_agents = {1};
  CHECK(!pattern_realizable(m4.market, *m4.scheme, f2_tight).has_value());

  Pattern nothing;
  const auto zero = pattern_realizable(m2.market, unit, nothing);
  REQUIRE(zero.has_value());
  CHECK(zero->shares == std::vector<Rational>{0, 0, 0, 0});
}

TEST_CASE("realized witnesses reproduce their pattern") {
  Rng rng(59);
  int confirmed = 0;
  for (int it = 0; it < 25; ++it) {
    const Market m = random_market(rng);
    const auto columns = m.acceptable_assignments();
    if (columns.empty()) continue;
    const PiScheme s = random_scheme(m, rng);
    for (int trial = 0; trial < 6; ++trial) {
      Pattern p;
      std::set<int> covered;
      for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
        if (uniform(rng, 0, 1)) {
          p.support.push_back(j);
          covered.insert(columns[static_cast<std::size_t>(j)].firm());
          for (int w : m.workers_of(columns[static_cast<std::size_t>(j)]))
            covered.insert(m.firm_count() + w);
        }
      }
      for (int i : covered) {
        if (uniform(rng, 0, 2) == 0) p.tight_agents.push_back(i);
      }
      const auto witness = pattern_realizable(m, s, p);
      if (!witness) continue;
      ++confirmed;
      REQUIRE(is_feasible(m, s, *witness));
      const auto load = agent_loads(m, s, *witness);
      std::set<int> support;
      for (std::size_t j = 0; j < witness->shares.size(); ++j) {
        if (witness->shares[j] > 0) support.insert(static_cast<int>(j));
      }
      CHECK(support == std::set<int>(p.support.begin(), p.support.end()));
      std::set<int> tight;
      for (int i = 0; i < m.agent_count(); ++i) {
        if (load[static_cast<std::size_t>(i)] == s.capacity[static_cast<std::size_t>(i)])
          tight.insert(i);
      }
      CHECK(tight == std::set<int>(p.tight_agents.begin(), p.tight_agents.end()));
    }
  }
  CHECK(confirmed > 10);
}

TEST_CASE("dominating matching search walks the enumeration order") {
  const auto eb = eb_fixture();
  const auto profile =
      worst_situation_profile(eb.market, *eb.scheme, shares({0, 0, Rational(1, 2), 1, 0}));
  const auto dominating = find_dominating_matching(eb.market, profile);
  REQUIRE(dominating.has_value());
  CHECK(*dominating == matching(eb.market, {"z1", "z2"}));

  const auto m2 = m2_fixture();
  const auto half = worst_situation_profile(
      m2.market, unit_scheme(m2.market),
      shares({Rational(1, 2), 0, Rational(1, 2), Rational(1, 2)}));
  CHECK(!find_dominating_matching(m2.market, half).has_value());

  const auto idle = worst_situation_profile(m2.market, unit_scheme(m2.market),
                                            shares({0, 0, 0, 0}));
  const auto empty = find_dominating_matching(m2.market, idle);
  REQUIRE(empty.has_value());
  CHECK(empty->contract_ids.empty());
}

TEST_CASE("concavity verdicts on the worked markets") {
  const auto m2 = m2_fixture();
  const auto m2v = check_pi_concavity(m2.market, unit_scheme(m2.market));
  REQUIRE(!m2v.concave);
  CHECK(m2v.counterexample->support == std::vector<int>{0, 2, 3});
  CHECK(m2v.counterexample->tight_agents == std::vector<int>{1, 2, 3});
  REQUIRE(m2v.witness.has_value());
  CHECK(m2v.witness->shares ==
        std::vector<Rational>{Rational(1, 2), 0, Rational(1, 2), Rational(1, 2)});

  const auto m4 = m4_fixture();
  const auto m4unit = check_pi_concavity(m4.market, unit_scheme(m4.market));
  REQUIRE(!m4unit.concave);
  CHECK(m4unit.counterexample->support == std::vector<int>{0, 1, 2});
  CHECK(m4unit.counterexample->tight_agents == std::vector<int>{1, 2, 3});
  CHECK(check_pi_concavity(m4.market, *m4.scheme).concave);

  const auto eb = eb_fixture();
  CHECK(check_pi_concavity(eb.market, unit_scheme(eb.market)).concave);
  CHECK(check_pi_concavity(eb.market, *eb.scheme).concave);
}

TEST_CASE("concavity bounds refuse oversized inputs") {
  const auto eb = eb_fixture();
  EnumerationBounds bounds;
  bounds.max_assignment_columns = 3;
  CHECK_THROWS_AS((void)check_pi_concavity(eb.market, *eb.scheme, bounds), ResourceBoundError);
}

TEST_CASE("stable sets by brute force") {
  const auto eb = eb_fixture();
  const auto eb_set = brute_force_stable_set(eb.market);
  // Under these preferences f2 lures w2 away from both of f1's two-worker
  // assignments, leaving {z1,z2} as the unique stable matching.
  CHECK(matching_set(eb_set) ==
        std::set<std::vector<int>>{matching(eb.market, {"z1", "z2"}).contract_ids});

  const auto m2 = m2_fixture();
  CHECK(brute_force_stable_set(m2.market).empty());

  const auto m4 = m4_fixture();
  const auto m4_set = brute_force_stable_set(m4.market);
  CHECK(matching_set(m4_set).count(matching(m4.market, {"a1", "a2"}).contract_ids) == 1);
}

TEST_CASE("solver plus dominance recovers stable matchings") {
  const auto eb = eb_fixture();
  const auto eb_m = stable_matching_via_scarf(eb.market, *eb.scheme);
  REQUIRE(eb_m.has_value());
  CHECK(*eb_m == matching(eb.market, {"z1", "z2"}));

  const auto m4 = m4_fixture();
  const auto m4_m = stable_matching_via_scarf(m4.market, *m4.scheme);
  REQUIRE(m4_m.has_value());
  CHECK(*m4_m == matching(m4.market, {"a1", "a2"}));
  CHECK(is_stable_matching(m4.market, *m4_m));

  const auto m2 = m2_fixture();
  CHECK(!stable_matching_via_scarf(m2.market, unit_scheme(m2.market)).has_value());
}

TEST_CASE("concave random markets always yield a stable matching") {
  Rng rng(61);
  int concave_count = 0;
  for (int it = 0; it < 25; ++it) {
    const Market m = random_market(rng);
    if (m.acceptable_assignments().empty()) continue;
    const PiScheme s = random_scheme(m, rng);
    const auto verdict = check_pi_concavity(m, s);
    if (!verdict.concave) {
      // The counterexample pattern must be realizable and undominated.
      REQUIRE(verdict.witness.has_value());
      CHECK(is_feasible(m, s, *verdict.witness));
      const auto profile = profile_from_pattern(m, *verdict.counterexample);
      CHECK(!find_dominating_matching(m, profile).has_value());
      continue;
    }
    ++concave_count;
    const auto stable = stable_matching_via_scarf(m, s);
    REQUIRE(stable.has_value());
    CHECK(is_stable_matching(m, *stable));
  }
  CHECK(concave_count > 3);
}

TEST_CASE("scarf and deferred-acceptance outputs sit inside the brute-force set") {
  Rng rng(67);
  for (int it = 0; it < 20; ++it) {
    const Market m = random_market(rng);
    if (m.acceptable_assignments().empty()) continue;
    const PiScheme s = random_scheme(m, rng);
    const auto via = stable_matching_via_scarf(m, s);
    if (!via) continue;
    const auto all = matching_set(brute_force_stable_set(m));
    CHECK(all.count(via->contract_ids) == 1);
  }
}
