#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "scarfmatch/market.hpp"
#include "scarfmatch/parser.hpp"
#include "scarfmatch/schedule.hpp"
#include "scarfmatch/teams.hpp"

namespace scarfmatch::testing {

inline int cid(const Market& m, const std::string& label) {
  const auto id = m.contract_by_label(label);
  if (!id) throw std::runtime_error("fixture bug: unknown contract " + label);
  return *id;
}

inline FirmAssignment asgr(const Market& m, int firm, std::initializer_list<std::string> labels) {
  std::vector<int> ids;
  for (const auto& l : labels) ids.push_back(cid(m, l));
  return FirmAssignment(firm, std::move(ids));
}

inline FirmAssignment asg(const Market& m, const std::string& firm,
                          std::initializer_list<std::string> labels) {
  for (int i = 0; i < m.firm_count(); ++i) {
    if (m.firm_labels[static_cast<std::size_t>(i)] == firm) return asgr(m, i, labels);
  }
  throw std::runtime_error("fixture bug: unknown firm " + firm);
}

inline FullTimeMatching matching(const Market& m, std::initializer_list<std::string> labels) {
  std::vector<int> ids;
  for (const auto& l : labels) ids.push_back(cid(m, l));
  return make_matching(m, std::move(ids));
}

inline PiScheduleMatching shares(std::initializer_list<Rational> values) {
  return PiScheduleMatching{std::vector<Rational>(values)};
}

/// Two firms, two workers, multi-contract pairs; complementarities on both
/// firm sides. The scheme carries capacities (5,3,2,3).
inline MarketFile eb_fixture() {
  Market m;
  m.firm_labels = {"f1", "f2"};
  m.worker_labels = {"w1", "w2"};
  m.contracts = {{"x5c", 0, 0}, {"x5d", 0, 0}, {"y4d", 0, 1},
                 {"y5d", 0, 1}, {"z1", 1, 0},  {"z2", 1, 1}};
  m.firm_prefs = {
      {asgr(m, 0, {"x5d", "y4d"}), asgr(m, 0, {"x5d", "y5d"}), asgr(m, 0, {"x5c"})},
      {asgr(m, 1, {"z1", "z2"}), asgr(m, 1, {"z2"})},
  };
  m.worker_prefs = {{cid(m, "x5d"), cid(m, "z1"), cid(m, "x5c")},
                    {cid(m, "z2"), cid(m, "y5d"), cid(m, "y4d")}};

  PiScheme s;
  s.capacity = {5, 3, 2, 3};
  s.intensity = {
      {4, 0, 2, 2}, {2, 0, 1, 1}, {4, 0, 2, 0}, {0, 2, 1, 3}, {0, 2, 0, 3},
  };
  MarketFile out;
  out.market = std::move(m);
  out.scheme = std::move(s);
  return out;
}

/// Basic market with an empty stable set.
inline MarketFile m2_fixture() {
  Market m;
  m.firm_labels = {"f1", "f2"};
  m.worker_labels = {"w1", "w2"};
  m.contracts = {{"a1", 0, 0}, {"a2", 0, 1}, {"b1", 1, 0}, {"b2", 1, 1}};
  m.firm_prefs = {
      {asgr(m, 0, {"a1", "a2"}), asgr(m, 0, {"a2"})},
      {asgr(m, 1, {"b1"}), asgr(m, 1, {"b2"})},
  };
  m.worker_prefs = {{cid(m, "a1"), cid(m, "b1")}, {cid(m, "b2"), cid(m, "a2")}};
  MarketFile out;
  out.market = std::move(m);
  return out;
}

/// Not concave under the unit scheme; concave under capacities (1,3,1,1).
inline MarketFile m4_fixture() {
  Market m;
  m.firm_labels = {"f1", "f2"};
  m.worker_labels = {"w1", "w2"};
  m.contracts = {{"a1", 0, 0}, {"a2", 0, 1}, {"b1", 1, 0}, {"b2", 1, 1}};
  m.firm_prefs = {
      {asgr(m, 0, {"a1", "a2"})},
      {asgr(m, 1, {"b1"}), asgr(m, 1, {"b2"})},
  };
  m.worker_prefs = {{cid(m, "a1"), cid(m, "b1")}, {cid(m, "a2"), cid(m, "b2")}};
  PiScheme s = unit_scheme(m);
  s.capacity = {1, 3, 1, 1};
  MarketFile out;
  out.market = std::move(m);
  out.scheme = std::move(s);
  return out;
}

/// Two leaders and three followers; both firms demand whole teams.
inline MarketFile teams_fixture() {
  Market m;
  m.firm_labels = {"f1", "f2"};
  m.worker_labels = {"l1", "l2", "o1", "o2", "o3"};
  for (int w = 0; w < 5; ++w) {
    for (int f = 0; f < 2; ++f) {
      m.contracts.push_back({m.worker_labels[static_cast<std::size_t>(w)] + "f" +
                                 std::to_string(f + 1),
                             f, w});
    }
  }
  m.firm_prefs = {
      {asgr(m, 0, {"l2f1", "o2f1", "o3f1"}), asgr(m, 0, {"l1f1", "o1f1"}), asgr(m, 0, {"l2f1"})},
      {asgr(m, 1, {"l2f2", "o2f2"}), asgr(m, 1, {"l1f2", "o1f2"}), asgr(m, 1, {"l2f2", "o3f2"})},
  };
  for (int w = 0; w < 5; ++w) {
    const std::string base = m.worker_labels[static_cast<std::size_t>(w)];
    m.worker_prefs.push_back({cid(m, base + "f1"), cid(m, base + "f2")});
  }
  LeaderFollowerStructure lf;
  lf.leaders = {0, 1};
  lf.follows = {{2, 0}, {3, 1}, {4, 1}};
  MarketFile out;
  out.market = std::move(m);
  out.teams = std::move(lf);
  return out;
}

}  // namespace scarfmatch::testing
