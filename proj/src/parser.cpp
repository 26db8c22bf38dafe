#include "scarfmatch/parser.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace scarfmatch {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct RawIntensity {
  int line;
  std::vector<std::string> contract_labels;
  std::vector<std::pair<std::string, std::string>> entries;  // agent=value
};

int require_agent(const std::map<std::string, int>& index, const std::string& label, int line,
                  const char* what) {
  const auto it = index.find(label);
  if (it == index.end()) throw ParseError(line, std::string("unknown ") + what + ": " + label);
  return it->second;
}

std::vector<std::string> parse_braced_list(const std::string& item, int line) {
  if (item.size() < 2 || item.front() != '{' || item.back() != '}')
    throw ParseError(line, "expected a braced assignment, got '" + item + "'");
  const std::string inner = item.substr(1, item.size() - 2);
  std::vector<std::string> labels;
  for (const auto& piece : split_on(inner, ',')) {
    if (piece.empty()) throw ParseError(line, "empty contract label in '" + item + "'");
    labels.push_back(piece);
  }
  return labels;
}

Rational parse_value(const std::string& text, int line) {
  const auto v = parse_rational(text);
  if (!v) throw ParseError(line, "not a rational value: '" + text + "'");
  return *v;
}

}  // namespace

MarketFile parse_market(const std::string& text) {
  std::istringstream input(text);
  std::string raw_line;
  int lineno = 0;

  std::optional<int> firms_line, workers_line;
  std::vector<std::string> firm_labels, worker_labels;
  std::vector<Contract> contracts;
  std::map<std::string, int> firm_index, worker_index, contract_index;
  std::map<int, std::pair<int, std::string>> firm_pref_lines;    // firm -> (line, payload)
  std::map<int, std::pair<int, std::string>> worker_pref_lines;  // worker -> (line, payload)
  std::optional<std::pair<int, std::string>> capacity_line;
  std::vector<RawIntensity> intensity_lines;
  std::optional<std::pair<int, std::string>> leaders_line, follows_line;

  while (std::getline(input, raw_line)) {
    ++lineno;
    const auto hash = raw_line.find('#');
    std::string line = trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
    if (line.empty()) continue;

    if (line.rfind("firms:", 0) == 0) {
      if (firms_line) throw ParseError(lineno, "duplicate firms section");
      firms_line = lineno;
      for (const auto& label : split_ws(line.substr(6))) {
        if (firm_index.count(label)) throw ParseError(lineno, "duplicate firm label: " + label);
        firm_index[label] = static_cast<int>(firm_labels.size());
        firm_labels.push_back(label);
      }
    } else if (line.rfind("workers:", 0) == 0) {
      if (workers_line) throw ParseError(lineno, "duplicate workers section");
      workers_line = lineno;
      for (const auto& label : split_ws(line.substr(8))) {
        if (worker_index.count(label)) throw ParseError(lineno, "duplicate worker label: " + label);
        worker_index[label] = static_cast<int>(worker_labels.size());
        worker_labels.push_back(label);
      }
    } else if (line.rfind("contract ", 0) == 0) {
      const auto parts = split_ws(line.substr(9));
      if (parts.size() != 3)
        throw ParseError(lineno, "expected: contract <label> <firm> <worker>");
      if (contract_index.count(parts[0]))
        throw ParseError(lineno, "duplicate contract label: " + parts[0]);
      const int f = require_agent(firm_index, parts[1], lineno, "firm");
      const int w = require_agent(worker_index, parts[2], lineno, "worker");
      contract_index[parts[0]] = static_cast<int>(contracts.size());
      contracts.push_back({parts[0], f, w});
    } else if (line.rfind("pref firm ", 0) == 0) {
      const auto colon = line.find(':', 10);
      if (colon == std::string::npos) throw ParseError(lineno, "missing ':' in pref line");
      const std::string name = trim(line.substr(10, colon - 10));
      const int f = require_agent(firm_index, name, lineno, "firm");
      if (firm_pref_lines.count(f))
        throw ParseError(lineno, "duplicate pref line for firm " + name);
      firm_pref_lines[f] = {lineno, trim(line.substr(colon + 1))};
    } else if (line.rfind("pref worker ", 0) == 0) {
      const auto colon = line.find(':', 12);
      if (colon == std::string::npos) throw ParseError(lineno, "missing ':' in pref line");
      const std::string name = trim(line.substr(12, colon - 12));
      const int w = require_agent(worker_index, name, lineno, "worker");
      if (worker_pref_lines.count(w))
        throw ParseError(lineno, "duplicate pref line for worker " + name);
      worker_pref_lines[w] = {lineno, trim(line.substr(colon + 1))};
    } else if (line.rfind("capacity:", 0) == 0) {
      if (capacity_line) throw ParseError(lineno, "duplicate capacity line");
      capacity_line = {lineno, trim(line.substr(9))};
    } else if (line.rfind("intensity ", 0) == 0) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, "missing ':' in intensity line");
      RawIntensity ri;
      ri.line = lineno;
      ri.contract_labels = parse_braced_list(trim(line.substr(10, colon - 10)), lineno);
      for (const auto& tok : split_ws(line.substr(colon + 1))) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw ParseError(lineno, "expected agent=value, got '" + tok + "'");
        ri.entries.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
      }
      intensity_lines.push_back(std::move(ri));
    } else if (line.rfind("leaders:", 0) == 0) {
      if (leaders_line) throw ParseError(lineno, "duplicate leaders line");
      leaders_line = {lineno, trim(line.substr(8))};
    } else if (line.rfind("follows:", 0) == 0) {
      if (follows_line) throw ParseError(lineno, "duplicate follows line");
      follows_line = {lineno, trim(line.substr(8))};
    } else {
      throw ParseError(lineno, "unrecognized line: '" + line + "'");
    }
  }

  if (!firms_line) throw ParseError(lineno, "missing firms section");
  if (!workers_line) throw ParseError(lineno, "missing workers section");

  MarketFile out;
  Market& market = out.market;
  market.firm_labels = firm_labels;
  market.worker_labels = worker_labels;
  market.contracts = contracts;
  market.firm_prefs.resize(firm_labels.size());
  market.worker_prefs.resize(worker_labels.size());

  for (int f = 0; f < market.firm_count(); ++f) {
    const auto it = firm_pref_lines.find(f);
    if (it == firm_pref_lines.end())
      throw ParseError(lineno, "missing pref line for firm " + firm_labels[static_cast<std::size_t>(f)]);
    const auto [line, payload] = it->second;
    const auto items = split_on(payload, '>');
    for (std::size_t q = 0; q < items.size(); ++q) {
      if (items[q] == "empty") {
        if (q + 1 != items.size()) throw ParseError(line, "'empty' must end the list");
        break;
      }
      std::vector<int> ids;
      for (const auto& label : parse_braced_list(items[q], line)) {
        const auto cit = contract_index.find(label);
        if (cit == contract_index.end())
          throw ParseError(line, "unknown contract: " + label);
        ids.push_back(cit->second);
      }
      market.firm_prefs[static_cast<std::size_t>(f)].emplace_back(f, std::move(ids));
    }
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    const auto it = worker_pref_lines.find(w);
    if (it == worker_pref_lines.end())
      throw ParseError(lineno,
                       "missing pref line for worker " + worker_labels[static_cast<std::size_t>(w)]);
    const auto [line, payload] = it->second;
    const auto items = split_on(payload, '>');
    for (std::size_t q = 0; q < items.size(); ++q) {
      if (items[q] == "empty") {
        if (q + 1 != items.size()) throw ParseError(line, "'empty' must end the list");
        break;
      }
      const auto cit = contract_index.find(items[q]);
      if (cit == contract_index.end()) throw ParseError(line, "unknown contract: " + items[q]);
      market.worker_prefs[static_cast<std::size_t>(w)].push_back(cit->second);
    }
  }

  {
    const auto violations = market.validate();
    if (!violations.empty()) throw ParseError(lineno, violations.front());
  }

  if (!intensity_lines.empty() && !capacity_line)
    throw ParseError(intensity_lines.front().line, "intensity given without a capacity line");
  if (capacity_line) {
    PiScheme scheme;
    scheme.capacity.assign(static_cast<std::size_t>(market.agent_count()), Rational(0));
    std::vector<char> seen(static_cast<std::size_t>(market.agent_count()), 0);
    const auto [cap_lineno, payload] = *capacity_line;
    for (const auto& tok : split_ws(payload)) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw ParseError(cap_lineno, "expected agent=value, got '" + tok + "'");
      const std::string label = tok.substr(0, eq);
      int pos;
      if (firm_index.count(label)) {
        pos = firm_index[label];
      } else if (worker_index.count(label)) {
        pos = market.firm_count() + worker_index[label];
      } else {
        throw ParseError(cap_lineno, "unknown agent: " + label);
      }
      if (seen[static_cast<std::size_t>(pos)])
        throw ParseError(cap_lineno, "duplicate capacity for " + label);
      seen[static_cast<std::size_t>(pos)] = 1;
      scheme.capacity[static_cast<std::size_t>(pos)] = parse_value(tok.substr(eq + 1), cap_lineno);
    }
    for (int i = 0; i < market.agent_count(); ++i) {
      if (!seen[static_cast<std::size_t>(i)])
        throw ParseError(cap_lineno, "missing capacity for " + market.agent_label(i));
    }

    const auto columns = market.acceptable_assignments();
    scheme.intensity.assign(columns.size(),
                            std::vector<Rational>(static_cast<std::size_t>(market.agent_count()),
                                                  Rational(0)));
    std::vector<char> column_seen(columns.size(), 0);
    for (const auto& ri : intensity_lines) {
      std::vector<int> ids;
      for (const auto& label : ri.contract_labels) {
        const auto cit = contract_index.find(label);
        if (cit == contract_index.end()) throw ParseError(ri.line, "unknown contract: " + label);
        ids.push_back(cit->second);
      }
      if (ids.empty()) throw ParseError(ri.line, "intensity needs a nonempty assignment");
      const FirmAssignment y(contracts[static_cast<std::size_t>(ids.front())].firm, ids);
      const auto cit = std::find(columns.begin(), columns.end(), y);
      if (cit == columns.end())
        throw ParseError(ri.line, "intensity for an assignment outside the acceptable lists");
      const auto col = static_cast<std::size_t>(cit - columns.begin());
      if (column_seen[col]) throw ParseError(ri.line, "duplicate intensity line");
      column_seen[col] = 1;
      for (const auto& [label, value] : ri.entries) {
        int pos;
        if (firm_index.count(label)) {
          pos = firm_index[label];
        } else if (worker_index.count(label)) {
          pos = market.firm_count() + worker_index[label];
        } else {
          throw ParseError(ri.line, "unknown agent: " + label);
        }
        scheme.intensity[col][static_cast<std::size_t>(pos)] = parse_value(value, ri.line);
      }
      // Dense over the assignment's members: the validator below rejects
      // missing or extra entries via the positivity rules.
    }
    for (std::size_t col = 0; col < columns.size(); ++col) {
      if (!column_seen[col])
        throw ParseError(capacity_line->first, "missing intensity for " +
                                                   assignment_label(market, columns[col]));
    }
    const auto violations = scheme.validate(market);
    if (!violations.empty()) throw ParseError(capacity_line->first, violations.front());
    out.scheme = std::move(scheme);
  }

  if (follows_line && !leaders_line)
    throw ParseError(follows_line->first, "follows given without a leaders line");
  if (leaders_line) {
    LeaderFollowerStructure lf;
    for (const auto& label : split_ws(leaders_line->second))
      lf.leaders.push_back(require_agent(worker_index, label, leaders_line->first, "worker"));
    std::sort(lf.leaders.begin(), lf.leaders.end());
    if (follows_line) {
      for (const auto& tok : split_ws(follows_line->second)) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw ParseError(follows_line->first, "expected follower=leader, got '" + tok + "'");
        const int o = require_agent(worker_index, tok.substr(0, eq), follows_line->first, "worker");
        const int l = require_agent(worker_index, tok.substr(eq + 1), follows_line->first, "worker");
        lf.follows.emplace_back(o, l);
      }
      std::sort(lf.follows.begin(), lf.follows.end());
    }
    out.teams = std::move(lf);
  }
  return out;
}

MarketFile parse_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_market(buf.str());
}

std::string serialize_market(const MarketFile& file) {
  const Market& m = file.market;
  std::ostringstream os;
  os << "firms:";
  for (const auto& l : m.firm_labels) os << ' ' << l;
  os << "\nworkers:";
  for (const auto& l : m.worker_labels) os << ' ' << l;
  os << '\n';
  for (const auto& c : m.contracts)
    os << "contract " << c.label << ' ' << m.firm_labels[static_cast<std::size_t>(c.firm)] << ' '
       << m.worker_labels[static_cast<std::size_t>(c.worker)] << '\n';
  for (int f = 0; f < m.firm_count(); ++f) {
    os << "pref firm " << m.firm_labels[static_cast<std::size_t>(f)] << ':';
    for (const auto& y : m.firm_prefs[static_cast<std::size_t>(f)])
      os << ' ' << assignment_label(m, y) << " >";
    os << " empty\n";
  }
  for (int w = 0; w < m.worker_count(); ++w) {
    os << "pref worker " << m.worker_labels[static_cast<std::size_t>(w)] << ':';
    for (int c : m.worker_prefs[static_cast<std::size_t>(w)])
      os << ' ' << m.contract(c).label << " >";
    os << " empty\n";
  }
  if (file.scheme) {
    os << "capacity:";
    for (int i = 0; i < m.agent_count(); ++i)
      os << ' ' << m.agent_label(i) << '='
         << to_string(file.scheme->capacity[static_cast<std::size_t>(i)]);
    os << '\n';
    const auto columns = m.acceptable_assignments();
    for (std::size_t j = 0; j < columns.size(); ++j) {
      os << "intensity " << assignment_label(m, columns[j]) << ':';
      for (int i = 0; i < m.agent_count(); ++i) {
        const auto& v = file.scheme->intensity[j][static_cast<std::size_t>(i)];
        if (v != 0) os << ' ' << m.agent_label(i) << '=' << to_string(v);
      }
      os << '\n';
    }
  }
  if (file.teams) {
    os << "leaders:";
    for (int l : file.teams->leaders) os << ' ' << m.worker_labels[static_cast<std::size_t>(l)];
    os << '\n';
    if (!file.teams->follows.empty()) {
      os << "follows:";
      for (const auto& [o, l] : file.teams->follows)
        os << ' ' << m.worker_labels[static_cast<std::size_t>(o)] << '='
           << m.worker_labels[static_cast<std::size_t>(l)];
      os << '\n';
    }
  }
  return os.str();
}

PiScheme scheme_or_unit(const MarketFile& file) {
  return file.scheme ? *file.scheme : unit_scheme(file.market);
}

}  // namespace scarfmatch
