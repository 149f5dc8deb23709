#include <doctest.h>

#include <random>
#include <set>

#include "modp/environments.hpp"
#include "modp/oracle.hpp"
#include "modp/solvers.hpp"
#include "test_support.hpp"

using namespace modp;
using modp::testing::approx_equal;
using modp::testing::front;

namespace {

FrontSet start_front(const Momdp& m) { return solve_b(m).front_map.at(m.start()); }

std::set<StateIndex> reachable_from_start(const Momdp& m) {
  std::set<StateIndex> seen{m.start()};
  std::vector<StateIndex> stack{m.start()};
  while (!stack.empty()) {
    const StateIndex s = stack.back();
    stack.pop_back();
    for (const auto& a : m.actions(s)) {
      for (const auto& o : a.outcomes) {
        if (seen.insert(o.successor).second) stack.push_back(o.successor);
      }
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("hansen chain") {
  const Momdp h = env::hansen(3);
  CHECK(h.state_count() == 4);
  CHECK(compute_stats(h).max_episode_length == std::size_t{3});
  CHECK(start_front(env::hansen(1)) == front({{1, 0}, {0, 1}}));
  CHECK(start_front(env::hansen(5)).size() == 6);
  CHECK_THROWS_AS(env::hansen(0), std::invalid_argument);
  CHECK(env::hansen(2, 0.5).gamma() == 0.5);
}

TEST_CASE("hansen variants") {
  CHECK(start_front(env::hansen_variant(3, env::HansenKind::kExponential)).size() == 8);
  CHECK(start_front(env::hansen_variant(1, env::HansenKind::kExponential)) == front({{0, 2}, {2, 0}}));
  CHECK(start_front(env::hansen_variant(2, env::HansenKind::kFractional)) ==
        front({{0, .75}, {.25, .5}, {.5, .25}, {.75, 0}}));
  CHECK(start_front(env::hansen_variant(2, env::HansenKind::kDiscounted)) ==
        front({{1.5, 0}, {1, .5}, {.5, 1}, {0, 1.5}}));
  // Stage rewards 1, 1/2, 1/4 in expectation.
  CHECK(start_front(env::hansen_variant(2, env::HansenKind::kNondeterministic)) ==
        front({{1.5, 0}, {1, .5}, {.5, 1}, {0, 1.5}}));
  CHECK(env::parse_hansen_kind("exponential") == env::HansenKind::kExponential);
  CHECK(env::parse_hansen_kind("fractional") == env::HansenKind::kFractional);
  CHECK_THROWS_AS(env::parse_hansen_kind("cubic"), std::invalid_argument);
}

TEST_CASE("cyclic examples") {
  const auto loop = env::cyclic_example(env::CyclicKind::kStochasticLoop);
  CHECK(loop.state_count() == 2);
  CHECK(loop.gamma() == 1.0);
  CHECK_FALSE(compute_stats(loop).acyclic);
  CHECK_THROWS_WITH_AS(solve_b(loop), doctest::Contains("requires a DAG"), CyclicModelError);

  const auto cont = env::cyclic_example(env::CyclicKind::kContinuing);
  CHECK(cont.terminals().empty());
  CHECK(cont.gamma() == 0.5);
  CHECK(solve_w(cont, 1).front_map.at(0) == front({{0, 1}, {1, 0}}));
  CHECK(env::parse_cyclic_kind("stochastic_loop") == env::CyclicKind::kStochasticLoop);
  CHECK(env::parse_cyclic_kind("stochastic-loop") == env::CyclicKind::kStochasticLoop);
  CHECK_THROWS_AS(env::parse_cyclic_kind("spiral"), std::invalid_argument);
}

TEST_CASE("sdst_rd construction") {
  CHECK(start_front(env::sdst_rd(1)) == front({{-1, 1}}));
  CHECK(approx_equal(start_front(env::sdst_rd(2)), front({{-1.4, 1.2}, {-2.6, 1.8}})));
  CHECK(start_front(env::sdst_rd(2, 1.0)) == front({{-1, 1}, {-3, 2}}));
  for (int i = 1; i <= 6; ++i) CHECK(start_front(env::sdst_rd(i, 1.0)).size() == std::size_t(i));

  const Momdp m = env::sdst_rd(2);
  const auto down = m.find_state("(0,1)");
  const auto right = m.find_state("(1,0)");
  REQUIRE(down);
  REQUIRE(right);
  REQUIRE(m.actions(m.start()).size() == 2);
  CHECK(m.action(m.start(), 0).name == "down");
  std::vector<StateIndex> expected{*down, *right};
  std::sort(expected.begin(), expected.end());
  CHECK(reachable_states(m, m.start(), 0) == expected);
  CHECK(compute_stats(m).max_episode_length == std::size_t{3});

  CHECK_THROWS_AS(env::sdst_rd(0), std::invalid_argument);
  CHECK_THROWS_AS(env::sdst_rd(11), std::invalid_argument);
  CHECK_THROWS_AS(env::sdst_rd(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(env::sdst_rd(2, 0.8, env::DepthProfile{{2, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(env::sdst_rd(2, 0.8, env::DepthProfile{{1, 2}, {1}}), std::invalid_argument);

  const env::DepthProfile custom{{1, 1}, {3, 4}};
  CHECK(start_front(env::sdst_rd(2, 1.0, custom)) == front({{-1, 3}, {-2, 4}}));
}

TEST_CASE("pyramid construction") {
  const Momdp p2 = env::pyramid(2);
  CHECK(p2.state_count() == 4);
  std::set<std::string> terminal_ids;
  for (auto t : p2.terminals()) terminal_ids.insert(p2.state(t).id);
  CHECK(terminal_ids == std::set<std::string>{"(1,2)", "(2,1)"});
  CHECK(p2.state(p2.start()).id == "(1,1)");
  // Both moves from (1,1) land on the diagonal, so only N >= 3 has cycles.
  CHECK(compute_stats(p2).acyclic);
  CHECK_FALSE(compute_stats(env::pyramid(3)).acyclic);

  const Momdp p5 = env::pyramid(5);
  CHECK(p5.state_count() == 25);
  CHECK(p5.terminals().size() == 5);
  CHECK_THROWS_AS(env::pyramid(1), std::invalid_argument);
  CHECK_THROWS_AS(env::pyramid(0), std::invalid_argument);

  // From (1,1) of pyramid(2) the moves are right and up; uniform-all noise
  // sends the chosen move 0.975 and the other 0.025.
  const auto& right = p2.action(p2.start(), 0);
  REQUIRE(right.outcomes.size() == 2);
  const auto to_21 = *p2.find_state("(2,1)");
  for (const auto& o : right.outcomes) {
    CHECK(o.probability == doctest::Approx(o.successor == to_21 ? 0.975 : 0.025));
  }
  const Momdp others = env::pyramid(2, {0.95, env::PyramidNoise::kUniformOthers, env::PyramidIndexing::kOneBased});
  for (const auto& o : others.action(others.start(), 0).outcomes) {
    CHECK(o.probability == doctest::Approx(o.successor == to_21 ? 0.95 : 0.05));
    if (o.successor == to_21) CHECK(o.reward == ValueVector{20, 10});
  }
  const Momdp zero = env::pyramid(2, {0.95, env::PyramidNoise::kUniformAll, env::PyramidIndexing::kZeroBased});
  for (const auto& o : zero.action(zero.start(), 0).outcomes) {
    if (o.successor == to_21) CHECK(o.reward == ValueVector{10, 0});
  }
}

TEST_SUITE("properties") {
  TEST_CASE("acyclicity of each family") {
    for (int d = 1; d <= 10; ++d) {
      CHECK(compute_stats(env::hansen(d)).acyclic);
      CHECK(compute_stats(env::hansen_variant(d, env::HansenKind::kExponential)).acyclic);
      CHECK(compute_stats(env::hansen_variant(d, env::HansenKind::kFractional)).acyclic);
      CHECK(compute_stats(env::sdst_rd(d)).acyclic);
    }
    for (int n = 3; n <= 6; ++n) CHECK_FALSE(compute_stats(env::pyramid(n)).acyclic);
    CHECK_FALSE(compute_stats(env::cyclic_example(env::CyclicKind::kStochasticLoop)).acyclic);
    CHECK_FALSE(compute_stats(env::cyclic_example(env::CyclicKind::kContinuing)).acyclic);
  }

  TEST_CASE("sdst_rd probability masses") {
    for (double p : {0.8, 0.6, 1.0}) {
      for (int c = 1; c <= 10; ++c) {
        const Momdp m = env::sdst_rd(c, p);
        for (StateIndex s = 0; s < m.state_count(); ++s) {
          for (const auto& a : m.actions(s)) {
            std::multiset<double> mass;
            for (const auto& o : a.outcomes) mass.insert(o.probability);
            const bool single = mass == std::multiset<double>{1.0};
            const bool split = mass == std::multiset<double>{p, 1.0 - p};
            CHECK((single || split));
          }
        }
      }
    }
  }

  TEST_CASE("hansen oracle front") {
    for (int d = 1; d <= 10; ++d) {
      std::vector<ValueVector> expected;
      for (int k = 0; k <= d; ++k) expected.push_back(ValueVector{double(k), double(d - k)});
      const FrontSet f = brute_force_oracle(env::hansen(d));
      CHECK(f == nd_filter(expected));
      CHECK(f.size() == std::size_t(d + 1));
    }
  }

  TEST_CASE("sdst_rd episode length equals its horizon") {
    const auto profile = env::DepthProfile::canonical();
    for (int c = 1; c <= 10; ++c) {
      const std::size_t horizon = (c - 1) + profile.depths[c - 1];
      CHECK(env::sdst_rd_horizon(c) == horizon);
      CHECK(compute_stats(env::sdst_rd(c)).max_episode_length == horizon);
    }
  }

  TEST_CASE("pyramid terminals and reachable cells") {
    for (int n = 2; n <= 8; ++n) {
      for (auto noise : {env::PyramidNoise::kUniformAll, env::PyramidNoise::kUniformOthers}) {
        const Momdp m = env::pyramid(n, {0.95, noise, env::PyramidIndexing::kOneBased});
        CHECK(m.terminals().size() == std::size_t(n));
        for (StateIndex s : reachable_from_start(m)) {
          if (m.is_terminal(s)) continue;
          const int x = int(s) / n + 1;
          const int y = int(s) % n + 1;
          CHECK(x + y < n + 1);
        }
      }
    }
  }

  TEST_CASE("random parameterisations build valid models") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> prob(0.05, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      const int columns = 1 + int(rng() % 10);
      const Momdp grid = env::sdst_rd(columns, prob(rng));
      CHECK(is_valid(grid));
      CHECK(*compute_stats(grid).max_episode_length == env::sdst_rd_horizon(columns));

      const int n = 2 + int(rng() % 6);
      env::PyramidOptions options;
      options.p_intended = prob(rng);
      options.noise = rng() % 2 ? env::PyramidNoise::kUniformAll : env::PyramidNoise::kUniformOthers;
      options.indexing = rng() % 2 ? env::PyramidIndexing::kOneBased : env::PyramidIndexing::kZeroBased;
      const Momdp pyr = env::pyramid(n, options);
      CHECK(is_valid(pyr));
      CHECK(pyr.terminals().size() == std::size_t(n));
      CHECK(compute_stats(pyr).acyclic == (n == 2));

      const int d = 1 + int(rng() % 40);
      CHECK(is_valid(env::hansen(d, prob(rng))));
    }
  }
}
