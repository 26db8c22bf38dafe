#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "random_markets.hpp"
#include "scarfmatch/concavity.hpp"
#include "scarfmatch/schedule.hpp"

using namespace scarfmatch;
using namespace scarfmatch::testing;

TEST_CASE("unit scheme carries indicator intensities") {
  const auto m2 = m2_fixture();
  const PiScheme s = unit_scheme(m2.market);
  CHECK(s.capacity == std::vector<Rational>{1, 1, 1, 1});
  CHECK(s.intensity[0] == std::vector<Rational>{1, 0, 1, 1});  // {a1,a2}

  const auto eb = eb_fixture();
  const PiScheme se = unit_scheme(eb.market);
  CHECK(se.intensity[4] == std::vector<Rational>{0, 1, 0, 1});  // {z2}
  CHECK(se.validate(eb.market).empty());

  Market bare;
  bare.firm_labels = {"f1", "f2"};
  bare.worker_labels = {"w1", "w2"};
  bare.firm_prefs.resize(2);
  bare.worker_prefs.resize(2);
  CHECK(unit_scheme(bare).intensity.empty());
}

TEST_CASE("scheme validation is dense and sign-strict") {
  const auto eb = eb_fixture();
  PiScheme s = *eb.scheme;
  CHECK(s.validate(eb.market).empty());
  s.intensity[0][1] = 1;  // f2 is not in {x5d,y4d}
  CHECK(!s.validate(eb.market).empty());
  s = *eb.scheme;
  s.intensity[0][0] = 0;  // f1 is in {x5d,y4d}
  CHECK(!s.validate(eb.market).empty());
  s = *eb.scheme;
  s.capacity[2] = 0;
  CHECK(!s.validate(eb.market).empty());
}

TEST_CASE("feasibility is exact") {
  const auto eb = eb_fixture();
  CHECK(is_feasible(eb.market, *eb.scheme, shares({0, 0, Rational(1, 2), 1, 0})));
  // f1's input would be 4 + 2 = 6 against capacity 5.
  CHECK(!is_feasible(eb.market, *eb.scheme, shares({1, 1, 0, 0, 0})));
  CHECK(is_feasible(eb.market, *eb.scheme, shares({0, 0, 0, 0, 0})));
  CHECK_THROWS_AS((void)is_feasible(eb.market, *eb.scheme, shares({1, 1})),
                  std::invalid_argument);
}

TEST_CASE("worst situations pick the least preferred positive share") {
  const auto eb = eb_fixture();
  const auto profile =
      worst_situation_profile(eb.market, *eb.scheme, shares({0, 0, Rational(1, 2), 1, 0}));
  CHECK(!profile.firm_worst[0].has_value());
  CHECK(!profile.firm_worst[1].has_value());
  CHECK(assignment_label(eb.market, profile.worker_worst[0].assignment()) == "{x5c}");
  CHECK(assignment_label(eb.market, profile.worker_worst[1].assignment()) == "{z1,z2}");
  CHECK(profile.full_matched == std::vector<bool>{false, false, true, true});
}

TEST_CASE("worst situations of the half-half schedule") {
  const auto m2 = m2_fixture();
  const auto t = shares({Rational(1, 2), 0, Rational(1, 2), Rational(1, 2)});
  const auto profile = worst_situation_profile(m2.market, unit_scheme(m2.market), t);
  CHECK(!profile.firm_worst[0].has_value());  // f1 keeps idle time
  CHECK(assignment_label(m2.market, *profile.firm_worst[1]) == "{b2}");
  CHECK(assignment_label(m2.market, profile.worker_worst[0].assignment()) == "{b1}");
  CHECK(assignment_label(m2.market, profile.worker_worst[1].assignment()) == "{a1,a2}");

  const auto zero = worst_situation_profile(m2.market, unit_scheme(m2.market),
                                            shares({0, 0, 0, 0}));
  CHECK(!zero.firm_worst[0].has_value());
  CHECK(!zero.firm_worst[1].has_value());
  CHECK(zero.worker_worst[0].is_empty());
  CHECK(zero.worker_worst[1].is_empty());
}

TEST_CASE("blocking search over full-time matchings") {
  const auto m2 = m2_fixture();
  const auto block = find_block_matching(m2.market, matching(m2.market, {"a2", "b1"}));
  REQUIRE(block.has_value());
  CHECK(block->firm == 0);
  CHECK(assignment_label(m2.market, block->assignment) == "{a1,a2}");

  const auto eb = eb_fixture();
  const auto eb_block = find_block_matching(eb.market, matching(eb.market, {"z2"}));
  REQUIRE(eb_block.has_value());
  // Firms are scanned in declaration order, so f1's {x5c} is reported first.
  CHECK(eb_block->firm == 0);
  CHECK(assignment_label(eb.market, eb_block->assignment) == "{x5c}");
  // f2 expanding {z2} to {z1,z2} also blocks: f2 and w1 gain, w2 is unmoved.
  const Market& m = eb.market;
  CHECK(m.firm_compare(1, asgr(m, 1, {"z1", "z2"}), asgr(m, 1, {"z2"})) ==
        std::strong_ordering::greater);
  CHECK(m.worker_compare_ext(0, Situation(asgr(m, 1, {"z1", "z2"}), 0), Situation::empty(0)) ==
        std::strong_ordering::greater);

  CHECK(!find_block_matching(eb.market, matching(eb.market, {"z1", "z2"})).has_value());
}

TEST_CASE("stability of full-time matchings") {
  const auto eb = eb_fixture();
  CHECK(is_stable_matching(eb.market, matching(eb.market, {"z1", "z2"})));
  // With w2 ranking z2 above both y-contracts, f2 attracts her away from any
  // matching that leaves f2 idle, so f1's assignments are blocked.
  const auto blocked = find_block_matching(eb.market, matching(eb.market, {"x5d", "y4d"}));
  REQUIRE(blocked.has_value());
  CHECK(blocked->firm == 1);
  CHECK(assignment_label(eb.market, blocked->assignment) == "{z2}");

  const auto m2 = m2_fixture();
  for (const auto& m : enumerate_matchings(m2.market)) {
    CHECK(!is_stable_matching(m2.market, m));
  }

  // An unmatched mutually acceptable singleton blocks the empty matching.
  const auto m4 = m4_fixture();
  CHECK(!is_stable_matching(m4.market, make_matching(m4.market, {})));
}

TEST_CASE("a matching giving any firm an unacceptable assignment is never stable") {
  Rng rng(37);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    const Market m = random_market(rng);
    for (const auto& cand : enumerate_matchings(m)) {
      bool unacceptable = false;
      for (int f = 0; f < m.firm_count(); ++f) {
        const auto mine = matching_assignment_of_firm(m, cand, f);
        if (!mine.empty() &&
            m.firm_compare(f, mine, FirmAssignment(f, {})) == std::strong_ordering::less)
          unacceptable = true;
      }
      if (unacceptable) {
        ++checked;
        CHECK(!is_stable_matching(m, cand));
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("blocking search honors the per-firm contract bound") {
  const auto eb = eb_fixture();
  CHECK_THROWS_AS(
      (void)find_block_matching(eb.market, make_matching(eb.market, {}), 3),
      ResourceBoundError);
}

TEST_CASE("blocking search over schedule matchings") {
  const auto eb = eb_fixture();
  const Rational third(1, 3);
  const auto even = shares({third, third, third, third, third});
  const auto block = find_block_pi_schedule(eb.market, *eb.scheme, even);
  REQUIRE(block.has_value());
  // Assignment columns are scanned in order; f1's {x5d,y5d} blocks first.
  CHECK(block->firm == 0);
  CHECK(assignment_label(eb.market, block->assignment) == "{x5d,y5d}");
  // f2's {z1,z2} blocks as well: both workers sit above their worst
  // situations {x5c} and {x5d,y4d}.
  const auto profile = worst_situation_profile(eb.market, *eb.scheme, even);
  const Market& m = eb.market;
  CHECK(assignment_label(m, profile.worker_worst[0].assignment()) == "{x5c}");
  CHECK(assignment_label(m, profile.worker_worst[1].assignment()) == "{x5d,y4d}");
  CHECK(m.worker_compare_ext(0, Situation(asgr(m, 1, {"z1", "z2"}), 0),
                             profile.worker_worst[0]) == std::strong_ordering::greater);
  CHECK(m.worker_compare_ext(1, Situation(asgr(m, 1, {"z1", "z2"}), 1),
                             profile.worker_worst[1]) == std::strong_ordering::greater);

  CHECK(is_stable_pi_schedule(eb.market, *eb.scheme, shares({0, 0, Rational(1, 2), 1, 0})));

  // Everyone idle: the best acceptable assignment blocks.
  const auto idle = find_block_pi_schedule(eb.market, *eb.scheme, shares({0, 0, 0, 0, 0}));
  REQUIRE(idle.has_value());
}

TEST_CASE("dominance conditions") {
  const auto eb = eb_fixture();
  const auto t = shares({0, 0, Rational(1, 2), 1, 0});
  CHECK(dominates(eb.market, *eb.scheme, matching(eb.market, {"z1", "z2"}), t));

  const auto m2 = m2_fixture();
  const auto half = shares({Rational(1, 2), 0, Rational(1, 2), Rational(1, 2)});
  // w2's situation {a2} at f1 falls below her worst situation {a1,a2} once
  // the firm's view is imposed.
  CHECK(!dominates(m2.market, unit_scheme(m2.market), matching(m2.market, {"a2", "b1"}), half));

  CHECK(dominates(m2.market, unit_scheme(m2.market), make_matching(m2.market, {}),
                  shares({0, 0, 0, 0})));
}

TEST_CASE("dominating a stable schedule matching implies stability") {
  Rng rng(23);
  int checked = 0;
  for (int it = 0; it < 120; ++it) {
    const Market m = random_market(rng);
    if (m.acceptable_assignments().empty()) continue;
    const PiScheme s = unit_scheme(m);
    const PiScheduleMatching t = random_schedule_vertex(m, rng);
    if (!is_stable_pi_schedule(m, s, t)) continue;
    const auto profile = worst_situation_profile(m, s, t);
    for (const auto& cand : enumerate_matchings(m)) {
      if (dominates_profile(m, cand, profile)) {
        ++checked;
        CHECK(is_stable_matching(m, cand));
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("the profile depends only on support and tight set") {
  Rng rng(29);
  for (int it = 0; it < 60; ++it) {
    const Market m = random_market(rng);
    const auto columns = m.acceptable_assignments();
    if (columns.empty()) continue;
    const PiScheme s = random_scheme(m, rng);
    // Random feasible point: scale a random vector into the polytope.
    PiScheduleMatching t;
    t.shares.assign(columns.size(), Rational(0));
    for (auto& v : t.shares) v = uniform(rng, 0, 3);
    const auto load = agent_loads(m, s, t);
    Rational scale(1);
    for (int i = 0; i < m.agent_count(); ++i) {
      if (load[static_cast<std::size_t>(i)] == 0) continue;
      const Rational fit = s.capacity[static_cast<std::size_t>(i)] /
                           load[static_cast<std::size_t>(i)];
      if (fit < scale) scale = fit;
    }
    for (auto& v : t.shares) v *= scale;
    REQUIRE(is_feasible(m, s, t));

    const auto direct = worst_situation_profile(m, s, t);
    std::vector<int> support;
    for (std::size_t j = 0; j < t.shares.size(); ++j) {
      if (t.shares[j] > 0) support.push_back(static_cast<int>(j));
    }
    const auto loads = agent_loads(m, s, t);
    std::vector<char> tight(static_cast<std::size_t>(m.agent_count()), 0);
    for (int i = 0; i < m.agent_count(); ++i)
      tight[static_cast<std::size_t>(i)] =
          loads[static_cast<std::size_t>(i)] == s.capacity[static_cast<std::size_t>(i)] ? 1 : 0;
    const auto from_pattern = worst_profile_for(m, support, tight);
    CHECK(direct.firm_worst == from_pattern.firm_worst);
    CHECK(direct.worker_worst == from_pattern.worker_worst);
    CHECK(direct.full_matched == from_pattern.full_matched);
  }
}

TEST_CASE("worker-disjoint unit shares form a matching dominating itself") {
  Rng rng(31);
  for (int it = 0; it < 80; ++it) {
    const Market m = random_market(rng);
    const auto columns = m.acceptable_assignments();
    if (columns.empty()) continue;
    const PiScheme s = unit_scheme(m);
    PiScheduleMatching t;
    t.shares.assign(columns.size(), Rational(0));
    std::set<int> used_workers;
    std::set<int> used_firms;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (uniform(rng, 0, 1) == 0) continue;
      bool clash = used_firms.count(columns[j].firm()) > 0;
      for (int w : m.workers_of(columns[j])) clash = clash || used_workers.count(w) > 0;
      if (clash) continue;
      t.shares[j] = 1;
      used_firms.insert(columns[j].firm());
      for (int w : m.workers_of(columns[j])) used_workers.insert(w);
    }
    REQUIRE(is_feasible(m, s, t));
    std::vector<int> ids;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (t.shares[j] == 1)
        ids.insert(ids.end(), columns[j].contract_ids().begin(), columns[j].contract_ids().end());
    }
    CHECK(dominates(m, s, make_matching(m, std::move(ids)), t));
  }
}
