#include "modp/momdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace modp {

namespace {

// Adjacency of the reachability graph. Terminal states contribute no edges.
std::vector<std::vector<StateIndex>> successor_graph(const Momdp& m) {
  std::vector<std::vector<StateIndex>> graph(m.state_count());
  for (StateIndex s = 0; s < m.state_count(); ++s) {
    if (m.is_terminal(s)) continue;
    for (const auto& action : m.actions(s)) {
      for (const auto& o : action.outcomes) {
        if (o.probability > 0.0) graph[s].push_back(o.successor);
      }
    }
    std::sort(graph[s].begin(), graph[s].end());
    graph[s].erase(std::unique(graph[s].begin(), graph[s].end()), graph[s].end());
  }
  return graph;
}

// Kahn's algorithm, smallest ready index first. Returns fewer than N states on a cycle.
std::vector<StateIndex> kahn_order(const std::vector<std::vector<StateIndex>>& graph) {
  std::vector<std::size_t> indegree(graph.size(), 0);
  for (const auto& succ : graph) {
    for (StateIndex t : succ) ++indegree[t];
  }
  std::priority_queue<StateIndex, std::vector<StateIndex>, std::greater<>> ready;
  for (StateIndex s = 0; s < graph.size(); ++s) {
    if (indegree[s] == 0) ready.push(s);
  }
  std::vector<StateIndex> order;
  order.reserve(graph.size());
  while (!ready.empty()) {
    StateIndex s = ready.top();
    ready.pop();
    order.push_back(s);
    for (StateIndex t : graph[s]) {
      if (--indegree[t] == 0) ready.push(t);
    }
  }
  return order;
}

std::string describe(const Momdp& m, StateIndex s, std::optional<std::size_t> a = std::nullopt) {
  std::string out = "(" + m.state(s).id;
  if (a) out += ", " + m.state(s).actions[*a].name;
  return out + ")";
}

}  // namespace

Momdp::Momdp(std::vector<State> states, std::size_t objectives, double gamma, StateIndex start,
             std::vector<StateIndex> terminals, bool continuing)
    : states_(std::move(states)),
      objectives_(objectives),
      gamma_(gamma),
      start_(start),
      terminals_(std::move(terminals)),
      terminal_flags_(states_.size(), false),
      continuing_(continuing) {
  if (start_ >= states_.size()) throw std::invalid_argument("start state index out of range");
  std::unordered_map<std::string, StateIndex> ids;
  for (StateIndex s = 0; s < states_.size(); ++s) {
    if (!ids.emplace(states_[s].id, s).second) {
      throw std::invalid_argument("duplicate state id '" + states_[s].id + "'");
    }
    for (auto& action : states_[s].actions) {
      for (const auto& o : action.outcomes) {
        if (o.successor >= states_.size()) {
          throw std::invalid_argument("successor index out of range at state '" + states_[s].id + "'");
        }
      }
      std::stable_sort(action.outcomes.begin(), action.outcomes.end(),
                       [](const Outcome& x, const Outcome& y) { return x.successor < y.successor; });
    }
  }
  std::sort(terminals_.begin(), terminals_.end());
  terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
  for (StateIndex t : terminals_) {
    if (t >= states_.size()) throw std::invalid_argument("terminal state index out of range");
    terminal_flags_[t] = true;
  }
}

const Action& Momdp::action(StateIndex s, std::size_t a) const {
  const auto& acts = actions(s);
  if (a >= acts.size()) {
    throw std::invalid_argument("action " + std::to_string(a) + " is not available at state '" +
                                states_.at(s).id + "'");
  }
  return acts[a];
}

std::optional<StateIndex> Momdp::find_state(std::string_view id) const {
  for (StateIndex s = 0; s < states_.size(); ++s) {
    if (states_[s].id == id) return s;
  }
  return std::nullopt;
}

Momdp Momdp::with_gamma(double gamma) const {
  Momdp copy = *this;
  copy.gamma_ = gamma;
  return copy;
}

bool operator==(const Momdp& a, const Momdp& b) {
  return a.states_ == b.states_ && a.objectives_ == b.objectives_ && a.gamma_ == b.gamma_ &&
         a.start_ == b.start_ && a.terminals_ == b.terminals_ && a.continuing_ == b.continuing_;
}

std::vector<Violation> validate(const Momdp& m) {
  std::vector<Violation> out;
  auto report = [&](std::optional<StateIndex> s, std::optional<std::size_t> a, std::string msg) {
    out.push_back({s, a, std::move(msg)});
  };

  if (!(m.gamma() > 0.0 && m.gamma() <= 1.0)) {
    std::ostringstream msg;
    msg << "gamma " << m.gamma() << " out of (0,1]";
    report(std::nullopt, std::nullopt, msg.str());
  }
  if (m.objectives() == 0) report(std::nullopt, std::nullopt, "objective count must be at least 1");

  for (StateIndex s = 0; s < m.state_count(); ++s) {
    const auto& acts = m.actions(s);
    if (m.is_terminal(s)) {
      if (!acts.empty()) report(s, std::nullopt, "terminal state " + describe(m, s) + " has actions");
      continue;
    }
    if (acts.empty()) {
      report(s, std::nullopt, "non-terminal state " + describe(m, s) + " has no actions");
      continue;
    }
    for (std::size_t a = 0; a < acts.size(); ++a) {
      const auto& outcomes = acts[a].outcomes;
      if (outcomes.empty()) {
        report(s, a, "no outcomes at " + describe(m, s, a));
        continue;
      }
      double mass = 0.0;
      for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto& o = outcomes[k];
        if (!(o.probability > 0.0) || !std::isfinite(o.probability)) {
          std::ostringstream msg;
          msg << "non-positive probability " << o.probability << " at " << describe(m, s, a);
          report(s, a, msg.str());
        }
        mass += o.probability;
        if (k > 0 && outcomes[k - 1].successor == o.successor) {
          report(s, a, "duplicate successor " + m.state(o.successor).id + " at " + describe(m, s, a));
        }
        if (o.reward.size() != m.objectives()) {
          report(s, a, "reward dimension " + std::to_string(o.reward.size()) + " != " +
                           std::to_string(m.objectives()) + " at " + describe(m, s, a));
        }
      }
      if (std::abs(mass - 1.0) > kProbabilityTolerance) {
        std::ostringstream msg;
        msg << "probability mass " << mass << " != 1 at " << describe(m, s, a);
        report(s, a, msg.str());
      }
    }
  }

  if (!m.continuing()) {
    // Reverse reachability from the terminal set.
    const auto graph = successor_graph(m);
    std::vector<std::vector<StateIndex>> reverse(m.state_count());
    for (StateIndex s = 0; s < graph.size(); ++s) {
      for (StateIndex t : graph[s]) reverse[t].push_back(s);
    }
    std::vector<bool> reaches(m.state_count(), false);
    std::vector<StateIndex> stack(m.terminals().begin(), m.terminals().end());
    for (StateIndex t : stack) reaches[t] = true;
    while (!stack.empty()) {
      StateIndex t = stack.back();
      stack.pop_back();
      for (StateIndex s : reverse[t]) {
        if (!reaches[s]) {
          reaches[s] = true;
          stack.push_back(s);
        }
      }
    }
    for (StateIndex s = 0; s < m.state_count(); ++s) {
      if (!reaches[s]) report(s, std::nullopt, "state " + describe(m, s) + " cannot reach a terminal state");
    }
  }
  return out;
}

std::vector<StateIndex> reachable_states(const Momdp& m, StateIndex s, std::size_t a) {
  std::vector<StateIndex> out;
  for (const auto& o : m.action(s, a).outcomes) {
    if (o.probability > 0.0) out.push_back(o.successor);
  }
  return out;
}

ModelStats compute_stats(const Momdp& m) {
  ModelStats stats;
  bool any = false;
  for (StateIndex s = 0; s < m.state_count(); ++s) {
    for (const auto& action : m.actions(s)) {
      for (const auto& o : action.outcomes) {
        for (double x : o.reward) {
          stats.r_min = any ? std::min(stats.r_min, x) : x;
          stats.r_max = any ? std::max(stats.r_max, x) : x;
          any = true;
        }
      }
    }
  }
  stats.range = stats.r_max - stats.r_min;

  const auto graph = successor_graph(m);
  const auto order = kahn_order(graph);
  stats.acyclic = order.size() == m.state_count();
  if (stats.acyclic) {
    // Longest path from the start, processed in topological order.
    std::vector<std::optional<std::size_t>> depth(m.state_count());
    depth[m.start()] = 0;
    std::size_t longest = 0;
    for (StateIndex s : order) {
      if (!depth[s]) continue;
      longest = std::max(longest, *depth[s]);
      for (StateIndex t : graph[s]) {
        depth[t] = std::max(depth[t].value_or(0), *depth[s] + 1);
      }
    }
    stats.max_episode_length = longest;
  }
  return stats;
}

std::vector<StateIndex> topological_order(const Momdp& m) {
  auto order = kahn_order(successor_graph(m));
  if (order.size() != m.state_count()) throw CyclicModelError("not a DAG");
  return order;
}

}  // namespace modp
