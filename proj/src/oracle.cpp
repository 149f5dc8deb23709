#include "modp/oracle.hpp"

#include <limits>
#include <string>

namespace modp {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > kSaturated - a ? kSaturated : a + b;
}

std::vector<StateIndex> dag_order(const Momdp& m) {
  return topological_order(m);  // throws CyclicModelError
}

std::vector<bool> reachable_from_start(const Momdp& m) {
  std::vector<bool> seen(m.state_count(), false);
  std::vector<StateIndex> stack{m.start()};
  seen[m.start()] = true;
  while (!stack.empty()) {
    const StateIndex s = stack.back();
    stack.pop_back();
    if (m.is_terminal(s)) continue;
    for (const auto& action : m.actions(s)) {
      for (const auto& o : action.outcomes) {
        if (!seen[o.successor]) {
          seen[o.successor] = true;
          stack.push_back(o.successor);
        }
      }
    }
  }
  return seen;
}

// History-dependent policy counts: count(s) = Σ_a Π_k count(s_k).
std::vector<std::uint64_t> history_counts(const Momdp& m, const std::vector<StateIndex>& order) {
  std::vector<std::uint64_t> count(m.state_count(), 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const StateIndex s = *it;
    if (m.is_terminal(s) || m.actions(s).empty()) continue;
    std::uint64_t total = 0;
    for (const auto& action : m.actions(s)) {
      std::uint64_t product = 1;
      for (const auto& o : action.outcomes) product = saturating_mul(product, count[o.successor]);
      total = saturating_add(total, product);
    }
    count[s] = total;
  }
  return count;
}

// Every history-dependent policy value from each state, unfiltered.
std::vector<double> enumerate_history_values(const Momdp& m, const std::vector<StateIndex>& order) {
  const std::size_t q = m.objectives();
  const double gamma = m.gamma();
  const auto relevant = reachable_from_start(m);
  std::vector<std::vector<double>> values(m.state_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const StateIndex s = *it;
    if (!relevant[s]) continue;
    auto& out = values[s];
    if (m.is_terminal(s) || m.actions(s).empty()) {
      out.assign(q, 0.0);
      continue;
    }
    for (const auto& action : m.actions(s)) {
      const auto& outcomes = action.outcomes;
      std::vector<std::size_t> pick(outcomes.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < q; ++i) {
          double v = 0.0;
          for (std::size_t k = 0; k < outcomes.size(); ++k) {
            const auto& o = outcomes[k];
            v += o.probability * (o.reward[i] + gamma * values[o.successor][pick[k] * q + i]);
          }
          out.push_back(v);
        }
        std::size_t k = outcomes.size();
        bool done = true;
        while (k > 0) {
          --k;
          if (++pick[k] * q < values[outcomes[k].successor].size()) {
            done = false;
            break;
          }
          pick[k] = 0;
        }
        if (done) break;
      }
    }
  }
  return std::move(values[m.start()]);
}

}  // namespace

std::vector<ValueVector> evaluate_policy(const Momdp& m, const DeterministicPolicy& policy) {
  const auto order = dag_order(m);
  if (policy.action.size() != m.state_count()) {
    throw std::invalid_argument("policy must assign an action to every state");
  }
  const std::size_t q = m.objectives();
  std::vector<ValueVector> value(m.state_count(), ValueVector(q));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const StateIndex s = *it;
    if (m.is_terminal(s)) continue;
    const Action& action = m.action(s, policy.action[s]);
    for (std::size_t i = 0; i < q; ++i) {
      double v = 0.0;
      for (const auto& o : action.outcomes) v += o.probability * (o.reward[i] + m.gamma() * value[o.successor][i]);
      value[s][i] = v;
    }
  }
  return value;
}

std::uint64_t count_policies(const Momdp& m, PolicyClass policy_class) {
  const auto order = dag_order(m);
  if (policy_class == PolicyClass::kHistoryDependent) return history_counts(m, order)[m.start()];
  std::uint64_t count = 1;
  for (StateIndex s = 0; s < m.state_count(); ++s) {
    if (!m.is_terminal(s) && !m.actions(s).empty()) count = saturating_mul(count, m.actions(s).size());
  }
  return count;
}

FrontSet brute_force_oracle(const Momdp& m, const OracleOptions& options) {
  const std::uint64_t count = count_policies(m, options.policy_class);
  if (count > options.policy_budget) {
    throw OracleBudgetExceeded("policy count " + std::to_string(count) + " exceeds budget " +
                               std::to_string(options.policy_budget));
  }
  const std::size_t q = m.objectives();
  if (options.policy_class == PolicyClass::kHistoryDependent) {
    return nd_filter(q, enumerate_history_values(m, dag_order(m)));
  }

  // Odometer over decision rules of the non-terminal states.
  std::vector<StateIndex> decision_states;
  for (StateIndex s = 0; s < m.state_count(); ++s) {
    if (!m.is_terminal(s) && !m.actions(s).empty()) decision_states.push_back(s);
  }
  DeterministicPolicy policy{std::vector<std::size_t>(m.state_count(), 0)};
  std::vector<double> values;
  while (true) {
    const auto v = evaluate_policy(m, policy);
    values.insert(values.end(), v[m.start()].begin(), v[m.start()].end());
    std::size_t k = decision_states.size();
    bool done = true;
    while (k > 0) {
      --k;
      const StateIndex s = decision_states[k];
      if (++policy.action[s] < m.actions(s).size()) {
        done = false;
        break;
      }
      policy.action[s] = 0;
    }
    if (done) break;
  }
  return nd_filter(q, values);
}

}  // namespace modp
