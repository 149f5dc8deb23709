#include "modp/environments.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace modp::env {

namespace {

std::string stage_id(int i) { return "s" + std::to_string(i); }

// Chain with per-stage reward magnitude; stage index i runs 1..depth.
template <typename Magnitude>
Momdp chain(int depth, double gamma, Magnitude magnitude, bool absorbing_exit) {
  if (depth < 1) throw std::invalid_argument("chain depth must be at least 1");
  std::vector<State> states(depth + 1);
  const StateIndex exit = depth + 1;
  for (int k = 0; k <= depth; ++k) states[k].id = stage_id(k);
  for (int k = 0; k < depth; ++k) {
    const double w = magnitude(k + 1);
    const ValueVector first{0.0, w};
    const ValueVector second{w, 0.0};
    for (const auto& [name, reward] : {std::pair{"a1", first}, std::pair{"a2", second}}) {
      Action action{name, {}};
      if (absorbing_exit) {
        action.outcomes.push_back({static_cast<StateIndex>(k + 1), 0.5, reward});
        action.outcomes.push_back({exit, 0.5, reward});
      } else {
        action.outcomes.push_back({static_cast<StateIndex>(k + 1), 1.0, reward});
      }
      states[k].actions.push_back(std::move(action));
    }
  }
  std::vector<StateIndex> terminals{static_cast<StateIndex>(depth)};
  if (absorbing_exit) {
    states.push_back(State{"g", {}});
    terminals.push_back(exit);
  }
  return Momdp(std::move(states), 2, gamma, 0, std::move(terminals));
}

std::string cell_id(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

Momdp hansen(int depth, double gamma) {
  return chain(depth, gamma, [](int) { return 1.0; }, false);
}

Momdp hansen_variant(int depth, HansenKind kind) {
  switch (kind) {
    case HansenKind::kExponential:
      return chain(depth, 1.0, [](int i) { return std::ldexp(1.0, i); }, false);
    case HansenKind::kFractional:
      return chain(depth, 1.0, [](int i) { return std::ldexp(1.0, -i); }, false);
    case HansenKind::kDiscounted:
      return chain(depth, 0.5, [](int) { return 1.0; }, false);
    case HansenKind::kNondeterministic:
      return chain(depth, 1.0, [](int) { return 1.0; }, true);
  }
  throw std::invalid_argument("unknown Hansen variant");
}

HansenKind parse_hansen_kind(std::string_view name) {
  if (name == "exponential") return HansenKind::kExponential;
  if (name == "fractional") return HansenKind::kFractional;
  if (name == "discounted") return HansenKind::kDiscounted;
  if (name == "nondeterministic") return HansenKind::kNondeterministic;
  throw std::invalid_argument("unknown Hansen variant '" + std::string(name) + "'");
}

Momdp cyclic_example(CyclicKind kind) {
  const ValueVector up{0.0, 1.0};
  const ValueVector right{1.0, 0.0};
  const ValueVector none{0.0, 0.0};
  if (kind == CyclicKind::kStochasticLoop) {
    std::vector<State> states{
        State{"s0",
              {Action{"a1", {{0, 0.5, up}, {1, 0.5, none}}},
               Action{"a2", {{0, 0.5, right}, {1, 0.5, none}}}}},
        State{"s1", {}}};
    return Momdp(std::move(states), 2, 1.0, 0, {1});
  }
  std::vector<State> states{
      State{"s0", {Action{"a1", {{0, 1.0, up}}}, Action{"a2", {{0, 1.0, right}}}}}};
  return Momdp(std::move(states), 2, 0.5, 0, {}, /*continuing=*/true);
}

CyclicKind parse_cyclic_kind(std::string_view name) {
  if (name == "stochastic-loop" || name == "stochastic_loop") return CyclicKind::kStochasticLoop;
  if (name == "continuing") return CyclicKind::kContinuing;
  throw std::invalid_argument("unknown cyclic example '" + std::string(name) + "'");
}

DepthProfile DepthProfile::canonical() {
  return {{1, 2, 3, 4, 4, 4, 7, 7, 9, 10}, {1, 2, 3, 5, 8, 16, 24, 50, 74, 124}};
}

void DepthProfile::check() const {
  if (depths.size() != treasures.size()) {
    throw std::invalid_argument("depth profile: depths and treasures differ in length");
  }
  for (std::size_t c = 0; c < depths.size(); ++c) {
    if (depths[c] < 1) throw std::invalid_argument("depth profile: depths must be positive");
    if (c > 0 && depths[c] < depths[c - 1]) {
      throw std::invalid_argument("depth profile: depths must be nondecreasing");
    }
  }
}

Momdp sdst_rd(int columns, double p_intended, const DepthProfile& profile) {
  profile.check();
  if (columns < 1 || static_cast<std::size_t>(columns) > profile.depths.size()) {
    throw std::invalid_argument("sdst_rd: columns must be in 1.." + std::to_string(profile.depths.size()));
  }
  if (!(p_intended > 0.0 && p_intended <= 1.0)) {
    throw std::invalid_argument("sdst_rd: p_intended must be in (0,1]");
  }

  // Column-major cell numbering.
  std::vector<StateIndex> column_offset(columns + 1, 0);
  for (int c = 0; c < columns; ++c) column_offset[c + 1] = column_offset[c] + profile.depths[c] + 1;
  auto index = [&](int c, int r) { return column_offset[c] + static_cast<StateIndex>(r); };
  auto entering = [&](int c, int r) {
    const double treasure = r == profile.depths[c] ? profile.treasures[c] : 0.0;
    return ValueVector{-1.0, treasure};
  };

  std::vector<State> states(column_offset[columns]);
  std::vector<StateIndex> terminals;
  for (int c = 0; c < columns; ++c) {
    for (int r = 0; r <= profile.depths[c]; ++r) {
      State& state = states[index(c, r)];
      state.id = cell_id(c, r);
      if (r == profile.depths[c]) {
        terminals.push_back(index(c, r));
        continue;
      }
      const Outcome down{index(c, r + 1), 1.0, entering(c, r + 1)};
      if (c + 1 >= columns) {
        state.actions.push_back(Action{"down", {down}});
        continue;
      }
      const Outcome right{index(c + 1, r), 1.0, entering(c + 1, r)};
      auto mixed = [&](const Outcome& chosen, const Outcome& other) {
        std::vector<Outcome> outcomes{chosen};
        outcomes.front().probability = p_intended;
        if (p_intended < 1.0) {
          outcomes.push_back(other);
          outcomes.back().probability = 1.0 - p_intended;
        }
        return outcomes;
      };
      state.actions.push_back(Action{"down", mixed(down, right)});
      state.actions.push_back(Action{"right", mixed(right, down)});
    }
  }
  return Momdp(std::move(states), 2, 1.0, index(0, 0), std::move(terminals));
}

std::size_t sdst_rd_horizon(int columns, const DepthProfile& profile) {
  profile.check();
  if (columns < 1 || static_cast<std::size_t>(columns) > profile.depths.size()) {
    throw std::invalid_argument("sdst_rd_horizon: columns out of range");
  }
  return static_cast<std::size_t>(columns - 1 + profile.depths[columns - 1]);
}

Momdp pyramid(int n, const PyramidOptions& options) {
  if (n < 2) throw std::invalid_argument("pyramid: N must be at least 2");
  if (!(options.p_intended > 0.0 && options.p_intended <= 1.0)) {
    throw std::invalid_argument("pyramid: p_intended must be in (0,1]");
  }
  auto index = [n](int x, int y) { return static_cast<StateIndex>((x - 1) * n + (y - 1)); };
  auto is_terminal = [n](int x, int y) { return x + y == n + 1; };
  const double shift = options.indexing == PyramidIndexing::kZeroBased ? 1.0 : 0.0;
  auto entering = [&](int x, int y) {
    if (is_terminal(x, y)) return ValueVector{10.0 * (x - shift), 10.0 * (y - shift)};
    return ValueVector{-1.0, -1.0};
  };

  struct Move {
    const char* name;
    int dx, dy;
  };
  static constexpr Move kMoves[] = {{"right", 1, 0}, {"left", -1, 0}, {"up", 0, 1}, {"down", 0, -1}};

  std::vector<State> states(static_cast<std::size_t>(n) * n);
  std::vector<StateIndex> terminals;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      State& state = states[index(x, y)];
      state.id = cell_id(x, y);
      if (is_terminal(x, y)) {
        terminals.push_back(index(x, y));
        continue;
      }
      std::vector<std::pair<const Move*, StateIndex>> available;
      for (const Move& m : kMoves) {
        const int tx = x + m.dx;
        const int ty = y + m.dy;
        if (tx >= 1 && tx <= n && ty >= 1 && ty <= n) available.emplace_back(&m, index(tx, ty));
      }
      const double k = static_cast<double>(available.size());
      for (const auto& [move, target] : available) {
        std::map<StateIndex, double> mass;
        mass[target] += options.p_intended;
        const double noise = 1.0 - options.p_intended;
        if (noise > 0.0) {
          for (const auto& [other, dest] : available) {
            if (options.noise == PyramidNoise::kUniformAll) {
              mass[dest] += noise / k;
            } else if (other != move) {
              mass[dest] += noise / (k - 1.0);
            }
          }
        }
        Action action{move->name, {}};
        for (const auto& [dest, p] : mass) {
          const int dx = static_cast<int>(dest / n) + 1;
          const int dy = static_cast<int>(dest % n) + 1;
          action.outcomes.push_back({dest, p, entering(dx, dy)});
        }
        state.actions.push_back(std::move(action));
      }
    }
  }
  return Momdp(std::move(states), 2, 1.0, index(1, 1), std::move(terminals));
}

}  // namespace modp::env
