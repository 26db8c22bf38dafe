#include "scarfmatch/market.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scarfmatch {

FirmAssignment::FirmAssignment(int firm, std::vector<int> contract_ids)
    : firm_(firm), contract_ids_(std::move(contract_ids)) {
  std::sort(contract_ids_.begin(), contract_ids_.end());
  contract_ids_.erase(std::unique(contract_ids_.begin(), contract_ids_.end()),
                      contract_ids_.end());
}

Situation::Situation(FirmAssignment assignment, int worker)
    : worker_(worker), assignment_(std::move(assignment)) {}

const FirmAssignment& Situation::assignment() const {
  if (!assignment_) throw std::logic_error("empty situation has no assignment");
  return *assignment_;
}

int Market::agent_pos(AgentId id) const {
  return id.role == Role::firm ? id.index : firm_count() + id.index;
}

AgentId Market::agent_at(int pos) const {
  if (pos < firm_count()) return {Role::firm, pos};
  return {Role::worker, pos - firm_count()};
}

std::string Market::agent_label(int pos) const {
  const AgentId id = agent_at(pos);
  return id.role == Role::firm ? firm_labels.at(static_cast<std::size_t>(id.index))
                               : worker_labels.at(static_cast<std::size_t>(id.index));
}

std::optional<int> Market::contract_by_label(const std::string& label) const {
  for (std::size_t i = 0; i < contracts.size(); ++i) {
    if (contracts[i].label == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<int> Market::contracts_of_firm(int firm) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < contracts.size(); ++i) {
    if (contracts[i].firm == firm) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Market::contracts_of_worker(int worker) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < contracts.size(); ++i) {
    if (contracts[i].worker == worker) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Market::workers_of(const FirmAssignment& assignment) const {
  std::vector<int> out;
  for (int c : assignment.contract_ids()) out.push_back(contract(c).worker);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Market::own_contract(int worker, const FirmAssignment& assignment) const {
  for (int c : assignment.contract_ids()) {
    if (contract(c).worker == worker) return c;
  }
  throw std::invalid_argument("situation does not involve worker " +
                              worker_labels.at(static_cast<std::size_t>(worker)));
}

std::vector<std::string> Market::validate() const {
  std::vector<std::string> out;
  if (firm_count() < 2) out.push_back("single-firm market");
  if (worker_count() < 2) out.push_back("single-worker market");

  const auto check_unique = [&out](const std::vector<std::string>& labels, const char* what) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) out.push_back(std::string("duplicate ") + what + " label: " + l);
    }
  };
  check_unique(firm_labels, "firm");
  check_unique(worker_labels, "worker");

  std::set<std::string> contract_labels;
  for (const auto& c : contracts) {
    if (!contract_labels.insert(c.label).second)
      out.push_back("duplicate contract label: " + c.label);
    if (c.firm < 0 || c.firm >= firm_count())
      out.push_back("contract " + c.label + " names an unknown firm");
    if (c.worker < 0 || c.worker >= worker_count())
      out.push_back("contract " + c.label + " names an unknown worker");
  }

  if (static_cast<int>(firm_prefs.size()) != firm_count())
    out.push_back("firm preference lists do not cover all firms");
  if (static_cast<int>(worker_prefs.size()) != worker_count())
    out.push_back("worker preference lists do not cover all workers");
  if (!out.empty()) return out;

  for (int f = 0; f < firm_count(); ++f) {
    std::set<std::vector<int>> seen;
    for (const auto& y : firm_prefs[static_cast<std::size_t>(f)]) {
      const std::string name = assignment_label(*this, y);
      if (y.firm() != f) {
        out.push_back("assignment " + name + " listed by " + firm_labels[static_cast<std::size_t>(f)] +
                      " is not owned by it");
        continue;
      }
      if (y.empty()) {
        out.push_back("firm " + firm_labels[static_cast<std::size_t>(f)] +
                      " lists the empty assignment explicitly");
        continue;
      }
      std::set<int> workers;
      bool ok = true;
      for (int c : y.contract_ids()) {
        if (c < 0 || c >= static_cast<int>(contracts.size())) {
          out.push_back("assignment " + name + " names an unknown contract");
          ok = false;
          break;
        }
        if (contract(c).firm != f) {
          out.push_back("assignment " + name + " holds a contract of another firm");
          ok = false;
          break;
        }
        if (!workers.insert(contract(c).worker).second) {
          out.push_back("assignment " + name + " holds two contracts of worker " +
                        worker_labels[static_cast<std::size_t>(contract(c).worker)]);
          ok = false;
          break;
        }
      }
      if (ok && !seen.insert(y.contract_ids()).second)
        out.push_back("firm " + firm_labels[static_cast<std::size_t>(f)] + " lists " + name + " twice");
    }
  }

  for (int w = 0; w < worker_count(); ++w) {
    const auto& prefs = worker_prefs[static_cast<std::size_t>(w)];
    std::set<int> listed(prefs.begin(), prefs.end());
    if (listed.size() != prefs.size())
      out.push_back("worker " + worker_labels[static_cast<std::size_t>(w)] +
                    " lists a contract twice");
    for (int c : prefs) {
      if (c < 0 || c >= static_cast<int>(contracts.size()) || contract(c).worker != w) {
        out.push_back("worker " + worker_labels[static_cast<std::size_t>(w)] +
                      " lists a contract that is not hers");
      }
    }
    for (int c : contracts_of_worker(w)) {
      if (!listed.count(c))
        out.push_back("contract " + contract(c).label + " is missing from worker " +
                      worker_labels[static_cast<std::size_t>(w)] + "'s list");
    }
  }
  return out;
}

namespace {

// Smaller key = more preferred. Listed assignments take their list position,
// the empty assignment sits just below the list, unlisted nonempty
// assignments below that with a lexicographic tie-break.
struct FirmRankKey {
  int tier;
  int position;
  std::vector<std::string> tiebreak;

  friend std::strong_ordering operator<=>(const FirmRankKey&, const FirmRankKey&) = default;
};

}  // namespace

static FirmRankKey firm_rank_key(const Market& m, int firm, const FirmAssignment& y) {
  const auto& list = m.firm_prefs.at(static_cast<std::size_t>(firm));
  if (y.empty()) return {1, 0, {}};
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == y) return {0, static_cast<int>(i), {}};
  }
  std::vector<std::string> labels;
  for (int c : y.contract_ids()) labels.push_back(m.contract(c).label);
  std::sort(labels.begin(), labels.end());
  return {2, 0, std::move(labels)};
}

std::strong_ordering Market::firm_compare(int firm, const FirmAssignment& a,
                                          const FirmAssignment& b) const {
  if ((!a.empty() && a.firm() != firm) || (!b.empty() && b.firm() != firm))
    throw std::invalid_argument("assignment not owned by firm " +
                                firm_labels.at(static_cast<std::size_t>(firm)));
  const auto ka = firm_rank_key(*this, firm, a);
  const auto kb = firm_rank_key(*this, firm, b);
  if (ka == kb) return std::strong_ordering::equal;
  return ka < kb ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::strong_ordering Market::worker_compare_ext(int worker, const Situation& a,
                                                const Situation& b) const {
  if (a.worker() != worker || b.worker() != worker)
    throw std::invalid_argument("situation does not involve worker " +
                                worker_labels.at(static_cast<std::size_t>(worker)));
  const auto& prefs = worker_prefs.at(static_cast<std::size_t>(worker));
  const auto own_rank = [&](const Situation& s) -> int {
    if (s.is_empty()) return static_cast<int>(prefs.size());
    const int c = own_contract(worker, s.assignment());
    const auto it = std::find(prefs.begin(), prefs.end(), c);
    if (it == prefs.end()) throw std::logic_error("contract missing from worker list");
    return static_cast<int>(it - prefs.begin());
  };
  const int ra = own_rank(a);
  const int rb = own_rank(b);
  if (ra != rb) return ra < rb ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a == b) return std::strong_ordering::equal;
  // Equal own contracts force the same firm; the firm's view breaks the tie.
  return firm_compare(a.assignment().firm(), a.assignment(), b.assignment());
}

std::vector<FirmAssignment> Market::acceptable_assignments() const {
  std::vector<FirmAssignment> out;
  for (const auto& list : firm_prefs) out.insert(out.end(), list.begin(), list.end());
  return out;
}

std::vector<Situation> Market::worker_situations(int worker) const {
  std::vector<Situation> out;
  out.push_back(Situation::empty(worker));
  for (const auto& y : acceptable_assignments()) {
    for (int c : y.contract_ids()) {
      if (contract(c).worker == worker) {
        out.emplace_back(y, worker);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const Situation& a, const Situation& b) {
    return worker_compare_ext(worker, a, b) == std::strong_ordering::less;
  });
  return out;
}

std::string assignment_label(const Market& market, const FirmAssignment& assignment) {
  if (assignment.empty()) return "empty";
  std::vector<std::string> labels;
  for (int c : assignment.contract_ids()) labels.push_back(market.contract(c).label);
  std::sort(labels.begin(), labels.end());
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) os << ',';
    os << labels[i];
  }
  os << '}';
  return os.str();
}

}  // namespace scarfmatch
