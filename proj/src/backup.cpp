#include <algorithm>
#include <stdexcept>
#include <string>

#include "minkowski.hpp"
#include "modp/solvers.hpp"

namespace modp {

namespace {

// { p (r⃗ + γ v⃗) : v⃗ ∈ front }, componentwise in exactly that arithmetic order.
std::vector<double> discounted_image(const FrontSet& front, const Outcome& o, double gamma) {
  std::vector<double> flat;
  flat.reserve(front.coordinates().size());
  for (auto v : front) {
    for (std::size_t i = 0; i < v.size(); ++i) flat.push_back(o.probability * (o.reward[i] + gamma * v[i]));
  }
  return flat;
}

const FrontSet& successor_front(const Momdp& m, const FrontMap& prev, const Outcome& o) {
  if (!prev.has(o.successor)) {
    throw std::out_of_range("no front for successor '" + m.state(o.successor).id + "'");
  }
  const FrontSet& front = prev.at(o.successor);
  if (front.dimension() != m.objectives() || o.reward.size() != m.objectives()) {
    throw std::invalid_argument("front or reward dimension does not match the model");
  }
  return front;
}

FrontSet staged_action_set(const Momdp& m, const FrontMap& prev, const Action& action,
                           detail::DeadlineGuard& guard, std::size_t& transient) {
  FrontSet acc;
  bool first = true;
  for (const auto& o : action.outcomes) {
    if (!(o.probability > 0.0)) continue;
    FrontSet term = nd_filter(m.objectives(), discounted_image(successor_front(m, prev, o), o, m.gamma()));
    if (first) {
      acc = std::move(term);
      first = false;
    } else {
      acc = detail::minkowski_nd(acc, term, guard, detail::kMaterializeLimit, &transient);
    }
  }
  return acc;
}

// The literal cartesian product of the successor fronts, one candidate per element.
std::vector<double> full_action_set(const Momdp& m, const FrontMap& prev, const Action& action,
                                    detail::DeadlineGuard& guard, std::size_t& transient) {
  const std::size_t dim = m.objectives();
  std::vector<std::vector<double>> images;
  for (const auto& o : action.outcomes) {
    if (o.probability > 0.0) images.push_back(discounted_image(successor_front(m, prev, o), o, m.gamma()));
  }
  std::vector<double> candidates;
  if (images.empty()) return candidates;
  for (const auto& image : images) {
    if (image.empty()) return candidates;
  }
  std::vector<std::size_t> cursor(images.size(), 0);
  std::vector<double> sum(dim);
  while (true) {
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = images[0][cursor[0] * dim + i];
      for (std::size_t k = 1; k < images.size(); ++k) acc += images[k][cursor[k] * dim + i];
      sum[i] = acc;
    }
    candidates.insert(candidates.end(), sum.begin(), sum.end());
    guard.tick();
    std::size_t k = images.size();
    while (k > 0) {
      --k;
      if (++cursor[k] * dim < images[k].size()) break;
      cursor[k] = 0;
      if (k == 0) {
        transient = std::max(transient, candidates.size() / dim);
        return candidates;
      }
    }
  }
}

}  // namespace

FrontSet backup_state(const Momdp& m, StateIndex s, const FrontMap& prev, std::optional<double> precision,
                      const BackupOptions& options, BackupStats* stats) {
  if (m.is_terminal(s)) throw std::invalid_argument("cannot back up terminal state '" + m.state(s).id + "'");
  if (precision && !(*precision > 0.0)) throw std::invalid_argument("precision must be positive");
  const std::size_t dim = m.objectives();
  detail::DeadlineGuard guard(options.deadline);
  guard.check();

  std::vector<double> joined;
  std::size_t transient = 0;
  for (const auto& action : m.actions(s)) {
    std::size_t held = joined.size() / dim;
    std::vector<double> action_set;
    if (options.product_mode == ProductMode::kStaged) {
      FrontSet t = staged_action_set(m, prev, action, guard, transient);
      action_set.assign(t.coordinates().begin(), t.coordinates().end());
    } else {
      action_set = full_action_set(m, prev, action, guard, transient);
    }
    transient = std::max(transient, held + action_set.size() / dim);
    if (precision) {
      for (double& x : action_set) x = round_to_grid(x, *precision);
    }
    joined.insert(joined.end(), action_set.begin(), action_set.end());
  }
  FrontSet result = nd_filter(dim, joined);
  if (stats) stats->transient_vectors = std::max(transient, joined.size() / dim);
  return result;
}

}  // namespace modp
