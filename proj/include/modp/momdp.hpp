#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modp/pareto.hpp"

namespace modp {

using StateIndex = std::size_t;

struct Outcome {
  StateIndex successor = 0;
  double probability = 0.0;
  ValueVector reward;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Action {
  std::string name;
  std::vector<Outcome> outcomes;

  friend bool operator==(const Action&, const Action&) = default;
};

struct State {
  std::string id;
  std::vector<Action> actions;

  friend bool operator==(const State&, const State&) = default;
};

/// Raised when an operation needs an acyclic model and gets a cyclic one.
class CyclicModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * A multi-objective MDP (S, A, p, r⃗, γ) with a start state and terminal set.
 *
 * Immutable after construction. The constructor only rejects references that
 * would make the model unaddressable (out-of-range state indices, duplicate
 * ids); definitional constraints such as probability mass or reward dimension
 * are reported by validate(). Outcomes of every action are kept in ascending
 * successor order.
 */
class Momdp {
 public:
  Momdp(std::vector<State> states, std::size_t objectives, double gamma, StateIndex start,
        std::vector<StateIndex> terminals, bool continuing = false);

  std::size_t state_count() const { return states_.size(); }
  std::size_t objectives() const { return objectives_; }
  double gamma() const { return gamma_; }
  StateIndex start() const { return start_; }
  bool continuing() const { return continuing_; }

  const std::vector<StateIndex>& terminals() const { return terminals_; }
  bool is_terminal(StateIndex s) const { return terminal_flags_.at(s); }

  const State& state(StateIndex s) const { return states_.at(s); }
  const std::vector<State>& states() const { return states_; }
  const std::vector<Action>& actions(StateIndex s) const { return states_.at(s).actions; }
  const Action& action(StateIndex s, std::size_t a) const;

  std::optional<StateIndex> find_state(std::string_view id) const;

  /// Copy with a different discount rate.
  Momdp with_gamma(double gamma) const;

  friend bool operator==(const Momdp& a, const Momdp& b);

 private:
  std::vector<State> states_;
  std::size_t objectives_;
  double gamma_;
  StateIndex start_;
  std::vector<StateIndex> terminals_;
  std::vector<bool> terminal_flags_;
  bool continuing_;
};

struct Violation {
  std::optional<StateIndex> state;
  std::optional<std::size_t> action;
  std::string message;
};

/// Every violated model invariant; empty means the model is valid.
std::vector<Violation> validate(const Momdp& m);

inline bool is_valid(const Momdp& m) { return validate(m).empty(); }

/// Probability mass tolerance used by validate().
inline constexpr double kProbabilityTolerance = 1e-9;

struct ModelStats {
  double r_min = 0.0;
  double r_max = 0.0;
  double range = 0.0;  ///< r_max - r_min
  std::optional<std::size_t> max_episode_length;  ///< nullopt when unbounded
  bool acyclic = true;
};

/// Successors of (s, a) with nonzero probability, ascending state index.
std::vector<StateIndex> reachable_states(const Momdp& m, StateIndex s, std::size_t a);

ModelStats compute_stats(const Momdp& m);

/// A topological order of all states; throws CyclicModelError("not a DAG").
std::vector<StateIndex> topological_order(const Momdp& m);

}  // namespace modp
