#include <doctest.h>

#include "tam/dynamics.hpp"
#include "tam/errors.hpp"
#include "tam/orbit.hpp"
#include "test_support.hpp"

using namespace tam;
using testing::behavior_names;
using S = std::set<std::string>;

TEST_CASE("step_eq1 examples") {
  CHECK(behavior_names(step_eq1(testing::two_clique({"a"}, "1/2"))) == S{"a", "b"});
  CHECK(behavior_names(step_eq1(testing::two_clique({"a", "b"}, "1"))) == S{"a", "b"});
  auto m = random_model(4, 7, 0.5, 0.2, Rational(0));
  CHECK(step_eq1(m).behavior().count() == 7);
}

TEST_CASE("step_eq2 examples") {
  auto m = testing::two_clique({"a"}, "3/5");
  auto m1 = step_eq2(m);
  CHECK(behavior_names(m1) == S{"b"});
  CHECK(behavior_names(step_eq2(m1)) == S{"a"});

  auto path = build_model({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}, {"a", "b"}, Rational(1, 2));
  CHECK(step_eq2(path).behavior().contains(path.network().index("a")));

  auto empty = random_model(9, 6, 0.6, 0.0, Rational(1, 3));
  CHECK(step_eq2(empty).behavior().empty());
}

TEST_CASE("game thresholds") {
  CHECK(game_threshold(Game(GameKind::Coordination, 1, 1)) == Rational(1, 2));
  CHECK(game_threshold(Game(GameKind::Coordination, 3, 1)) == Rational(1, 4));
  CHECK(game_threshold(Game(GameKind::Anticoordination, 1, 2)) == Rational(1, 3));
  CHECK(behavior_threshold(Game(GameKind::Anticoordination, 1, 2)) == Rational(2, 3));
  CHECK(behavior_threshold(Game(GameKind::Coordination, 3, 1)) == Rational(1, 4));
  CHECK_THROWS_AS(Game(GameKind::Coordination, 0, 1), Error);
  CHECK(parse_tie_policy("favor_notB") == TiePolicy::FavorNotB);
  CHECK_THROWS_AS(parse_tie_policy("coin"), Error);
}

TEST_CASE("anticoordination on the 2-clique") {
  Game g(GameKind::Anticoordination, 1, 1);
  auto m = testing::two_clique({"a", "b"}, "1/2");
  auto m1 = best_response_step(m, g, TiePolicy::Conservative, false);
  CHECK(m1.behavior().empty());
  CHECK(best_response_step(m1, g, TiePolicy::Conservative, false).behavior().count() == 2);
}

TEST_CASE("eq1 is monotone and settles within |A|+1 steps") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto m = testing::trial_model(seed);
    auto cur = m;
    for (std::size_t k = 0; k <= m.agent_count(); ++k) {
      auto next = step_eq1(cur);
      CHECK((cur.behavior() & next.behavior()) == cur.behavior());
      cur = next;
    }
    CHECK(step_eq1(cur) == cur);
  }
}

TEST_CASE("eq2 differs from eq1 only on B-members and tie agents") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto m = testing::trial_model(seed);
    auto d = step_eq1(m).behavior() ^ step_eq2(m).behavior();
    for (AgentId a : d.members()) {
      bool tie = neighbor_fraction(m.network(), a, m.behavior()) == m.theta();
      CHECK((tie || m.behavior().contains(a)));
    }
  }
}

TEST_CASE("best response matches the payoff-sum oracle") {
  const std::vector<std::pair<int, int>> payoffs = {{1, 1}, {1, 2}, {3, 1}, {2, 5}};
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    auto m = testing::trial_model(seed);
    for (auto kind : {GameKind::Coordination, GameKind::Anticoordination}) {
      for (auto [x, y] : payoffs) {
        Game g(kind, x, y);
        for (auto tie : {TiePolicy::FavorB, TiePolicy::FavorNotB, TiePolicy::Conservative}) {
          for (bool seed_flag : {false, true}) {
            auto got = best_response_step(m, g, tie, seed_flag);
            CHECK(got.behavior() == testing::payoff_sum_best_response(m, g, tie, seed_flag));
            CHECK(got.theta() == behavior_threshold(g));
          }
        }
      }
    }
  }
}

TEST_CASE("best response reproduces eq1 and eq2") {
  const std::vector<std::pair<int, int>> payoffs = {{1, 1}, {1, 2}, {3, 1}};
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto base = testing::trial_model(seed);
    for (auto [x, y] : payoffs) {
      Game g(GameKind::Coordination, x, y);
      auto m = base.with_theta(game_threshold(g));
      CHECK(best_response_step(m, g, TiePolicy::Conservative, false) == step_eq2(m));
      CHECK(best_response_step(m, g, TiePolicy::FavorB, true) == step_eq1(m));
      ++checked;
    }
  }
  CHECK(checked == 3000);
}

TEST_CASE("coordination and anticoordination are dual under complement") {
  // Swapping B for its complement turns one game into the other when the
  // tie policy is swapped as well. The conservative policy is only dual on
  // agents that are not at a tie.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto m = testing::trial_model(seed);
    auto flipped = m.with_behavior(m.behavior().complement());
    for (auto [x, y] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {3, 1}}) {
      Game coord(GameKind::Coordination, x, y);
      Game anti(GameKind::Anticoordination, y, x);
      REQUIRE(game_threshold(coord) == game_threshold(anti));
      CHECK(best_response_step(m, coord, TiePolicy::FavorB, false).behavior() ==
            best_response_step(flipped, anti, TiePolicy::FavorB, false).behavior());
      CHECK(best_response_step(m, coord, TiePolicy::FavorNotB, false).behavior() ==
            best_response_step(flipped, anti, TiePolicy::FavorNotB, false).behavior());
      auto c = best_response_step(m, coord, TiePolicy::Conservative, false).behavior();
      auto a = best_response_step(flipped, anti, TiePolicy::Conservative, false).behavior();
      auto at = m.with_theta(game_threshold(coord));
      for (AgentId i : (c ^ a).members()) {
        CHECK(neighbor_fraction(m.network(), i, m.behavior()) == at.theta());
      }
    }
  }
}
