#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "scarfmatch/market.hpp"
#include "scarfmatch/schedule.hpp"
#include "scarfmatch/teams.hpp"

namespace scarfmatch {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
  int line;
};

/// A parsed market file: the market itself, an optional scheme (capacity and
/// intensity sections), and an optional leader-follower section.
struct MarketFile {
  Market market;
  std::optional<PiScheme> scheme;
  std::optional<LeaderFollowerStructure> teams;
};

/// Line-oriented grammar, '#' starts a comment:
///
///   firms: f1 f2
///   workers: w1 w2
///   contract x5c f1 w1
///   pref firm f1: {x5d,y4d} > {x5c} > empty
///   pref worker w1: x5d > z1 > x5c > empty
///   capacity: f1=5 f2=3 w1=2 w2=3
///   intensity {x5d,y4d}: f1=4 w1=2 w2=2
///   leaders: l1 l2
///   follows: o1=l1 o2=l2
///
/// Every firm and worker needs a pref line (possibly "empty"); the trailing
/// "empty" is optional. Capacities name every agent; an intensity line names
/// exactly the agents signing the assignment, and intensity lines cover
/// exactly the acceptable assignments. Values are exact rationals ("5",
/// "1/2"). Throws ParseError with the offending line number.
MarketFile parse_market(const std::string& text);
MarketFile parse_market_file(const std::string& path);

/// Canonical text form; parse(serialize(x)) reproduces the model.
std::string serialize_market(const MarketFile& file);

/// The file's scheme, or the unit scheme when none was given.
PiScheme scheme_or_unit(const MarketFile& file);

}  // namespace scarfmatch
