#pragma once

#include <string>
#include <string_view>

#include "tam/model.hpp"
#include "tam/rational.hpp"

namespace tam {

enum class GameKind { Coordination, Anticoordination };

// Pairwise game played against every neighbor. Coordination pays x for
// (B,B) and y for (~B,~B); anti-coordination pays y to the B player and x to
// the ~B player of a mixed pair.
struct Game {
  GameKind kind;
  Rational x;
  Rational y;

  Game(GameKind k, Rational x_, Rational y_);
};

enum class TiePolicy { FavorB, FavorNotB, Conservative };

std::string_view to_string(TiePolicy t);
std::string_view to_string(GameKind k);
TiePolicy parse_tie_policy(std::string_view s);

// B' = B ∪ {a : frac_B(a) >= theta}
ThresholdModel step_eq1(const ThresholdModel& m);

// B' = {a : frac_B(a) > theta} ∪ {a ∈ B : frac_B(a) == theta}
ThresholdModel step_eq2(const ThresholdModel& m);

// Coordination: y/(x+y). Anti-coordination: x/(x+y).
Rational game_threshold(const Game& g);
// Threshold on the B-fraction of neighbors at which the best response
// changes: y/(x+y) for both kinds (for anti-coordination this is
// 1 - game_threshold, since that game compares the ~B-fraction).
Rational behavior_threshold(const Game& g);

// Simultaneous best response of every agent to the current profile. The
// model's own theta is ignored; the result carries game_threshold(g).
// With seed, agents currently playing B keep playing it.
ThresholdModel best_response_step(const ThresholdModel& m, const Game& g, TiePolicy tie, bool seed);

}  // namespace tam
