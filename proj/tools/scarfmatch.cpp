// Command-line front end: parses market files, dispatches to the solvers and
// verifiers, and prints matchings, schedules, verdicts, and pivot traces.
//
// Exit codes: 0 success, 1 input error, 2 no stable full-time matching found
// via dominance, 3 resource bound exceeded.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scarfmatch/concavity.hpp"
#include "scarfmatch/errors.hpp"
#include "scarfmatch/parser.hpp"
#include "scarfmatch/scarf.hpp"
#include "scarfmatch/schedule.hpp"
#include "scarfmatch/teams.hpp"

namespace {

using namespace scarfmatch;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoStable = 2;
constexpr int kExitBound = 3;

std::string matching_text(const Market& market, const FullTimeMatching& m) {
  if (m.contract_ids.empty()) return "empty";
  std::string out = "{";
  for (std::size_t i = 0; i < m.contract_ids.size(); ++i) {
    if (i) out += ',';
    out += market.contract(m.contract_ids[static_cast<std::size_t>(i)]).label;
  }
  out += '}';
  return out;
}

void print_shares(const Market& market, const PiScheduleMatching& t) {
  const auto columns = market.acceptable_assignments();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (t.shares[j] != 0)
      std::cout << "t(" << assignment_label(market, columns[j]) << ") = " << to_string(t.shares[j])
                << '\n';
  }
}

FullTimeMatching parse_matching_arg(const Market& market, const std::string& arg) {
  std::vector<int> ids;
  if (arg != "empty" && arg != "-" && !arg.empty()) {
    std::string cur;
    std::vector<std::string> labels;
    for (char ch : arg) {
      if (ch == ',') {
        labels.push_back(cur);
        cur.clear();
      } else if (ch != '{' && ch != '}') {
        cur.push_back(ch);
      }
    }
    labels.push_back(cur);
    for (const auto& label : labels) {
      const auto id = market.contract_by_label(label);
      if (!id) throw std::runtime_error("unknown contract: " + label);
      ids.push_back(*id);
    }
  }
  return make_matching(market, std::move(ids));
}

int cmd_solve(const MarketFile& file) {
  const PiScheme scheme = scheme_or_unit(file);
  const ScarfResult result = scarf_solve(file.market, scheme);
  if (!is_stable_pi_schedule(file.market, scheme, result.matching))
    throw InternalError("solver output failed its stability check");
  print_shares(file.market, result.matching);
  const auto profile = worst_situation_profile(file.market, scheme, result.matching);
  const auto matching = find_dominating_matching(file.market, profile);
  if (!matching) {
    std::cout << "matching: none\n";
    return kExitNoStable;
  }
  if (!is_stable_matching(file.market, *matching))
    throw InternalError("dominating matching failed its stability check");
  std::cout << "matching: " << matching_text(file.market, *matching) << '\n';
  std::cout << "stable: yes\n";
  return kExitOk;
}

int cmd_check_stable(const MarketFile& file, const std::string& arg) {
  const auto m = parse_matching_arg(file.market, arg);
  const auto block = find_block_matching(file.market, m);
  if (!block) {
    std::cout << "stable: yes\n";
  } else {
    std::cout << "stable: no\n";
    std::cout << "blocked by " << file.market.firm_labels[static_cast<std::size_t>(block->firm)]
              << " with " << assignment_label(file.market, block->assignment) << '\n';
  }
  return kExitOk;
}

int cmd_check_concave(const MarketFile& file, bool use_file_scheme) {
  const PiScheme scheme = use_file_scheme ? scheme_or_unit(file) : unit_scheme(file.market);
  const auto verdict = check_pi_concavity(file.market, scheme);
  if (verdict.concave) {
    std::cout << "concave: yes\n";
    return kExitOk;
  }
  std::cout << "concave: no\n";
  const auto columns = file.market.acceptable_assignments();
  std::cout << "support:";
  for (int j : verdict.counterexample->support)
    std::cout << ' ' << assignment_label(file.market, columns[static_cast<std::size_t>(j)]);
  std::cout << "\ntight:";
  for (int i : verdict.counterexample->tight_agents)
    std::cout << ' ' << file.market.agent_label(i);
  std::cout << '\n';
  print_shares(file.market, *verdict.witness);
  return kExitOk;
}

int cmd_da(const MarketFile& file) {
  if (!file.teams) throw std::runtime_error("market file has no leaders section");
  const auto violations = validate_team_market(file.market, *file.teams);
  if (!violations.empty()) throw std::runtime_error(violations.front());
  const auto m = variant_da(file.market, *file.teams);
  if (!is_stable_matching(file.market, m))
    throw InternalError("deferred acceptance output failed its stability check");
  std::cout << "matching: " << matching_text(file.market, m) << '\n';
  std::cout << "stable: yes\n";
  return kExitOk;
}

int cmd_trace(const MarketFile& file) {
  const PiScheme scheme = scheme_or_unit(file);
  const ScarfResult result = scarf_solve(file.market, scheme);
  if (!is_stable_pi_schedule(file.market, scheme, result.matching))
    throw InternalError("solver output failed its stability check");
  std::cout << serialize_trace(file.market, result.trace);
  print_shares(file.market, result.matching);
  return kExitOk;
}

int cmd_stable_set(const MarketFile& file) {
  const auto all = brute_force_stable_set(file.market);
  for (const auto& m : all) std::cout << matching_text(file.market, m) << '\n';
  std::cout << "count: " << all.size() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable matching with complementarities on exact rationals"};
  app.require_subcommand(1);

  std::string file_arg, matching_arg;
  bool use_file_scheme = false;

  auto* solve = app.add_subcommand("solve", "Stable schedule matching plus a dominating matching");
  solve->add_option("file", file_arg, "market file")->required();

  auto* check = app.add_subcommand("check-stable", "Stability verdict for a given matching");
  check->add_option("file", file_arg, "market file")->required();
  check->add_option("matching", matching_arg, "comma-separated contract labels, or 'empty'")
      ->required();

  auto* concave = app.add_subcommand("check-concave", "Concavity verdict");
  concave->add_option("file", file_arg, "market file")->required();
  concave->add_flag("--pi", use_file_scheme, "use the file's scheme instead of the unit scheme");

  auto* da = app.add_subcommand("da", "Leader-proposing deferred acceptance for team markets");
  da->add_option("file", file_arg, "market file")->required();

  auto* trace = app.add_subcommand("trace", "Full pivot trace of the solver");
  trace->add_option("file", file_arg, "market file")->required();

  auto* sset = app.add_subcommand("stable-set", "All stable matchings by exhaustive search");
  sset->add_option("file", file_arg, "market file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const MarketFile file = parse_market_file(file_arg);
    if (solve->parsed()) return cmd_solve(file);
    if (check->parsed()) return cmd_check_stable(file, matching_arg);
    if (concave->parsed()) return cmd_check_concave(file, use_file_scheme);
    if (da->parsed()) return cmd_da(file);
    if (trace->parsed()) return cmd_trace(file);
    if (sset->parsed()) return cmd_stable_set(file);
  } catch (const ResourceBoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBound;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
