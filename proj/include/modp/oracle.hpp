#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "modp/momdp.hpp"
#include "modp/pareto.hpp"

namespace modp {

/// A decision rule δ: one action index per state (ignored at terminal states).
struct DeterministicPolicy {
  std::vector<std::size_t> action;
};

/// v⃗_δ(s) for every state of an acyclic model, by backwards expectation.
std::vector<ValueVector> evaluate_policy(const Momdp& m, const DeterministicPolicy& policy);

enum class PolicyClass {
  /// Actions may depend on the path taken so far (what B and W compute on DAGs).
  kHistoryDependent,
  /// One decision rule for the whole episode.
  kStationary,
};

struct OracleOptions {
  std::uint64_t policy_budget = 1'000'000;
  PolicyClass policy_class = PolicyClass::kHistoryDependent;
};

class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of distinct policies of the given class from the start state, saturating at UINT64_MAX.
std::uint64_t count_policies(const Momdp& m, PolicyClass policy_class);

/**
 * Ground-truth front at the start state by exhaustive policy enumeration.
 *
 * Every policy of the requested class is evaluated exactly and the values are
 * filtered once at the end; no pruning happens before that. History-dependent
 * enumeration unrolls the DAG into its tree of paths, so paths that reconverge
 * on a state may choose differently there.
 *
 * Throws CyclicModelError on cyclic models and OracleBudgetExceeded when the
 * policy count exceeds the budget.
 */
FrontSet brute_force_oracle(const Momdp& m, const OracleOptions& options = {});

}  // namespace modp
