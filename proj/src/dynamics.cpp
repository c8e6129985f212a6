#include "tam/dynamics.hpp"

#include "tam/errors.hpp"

namespace tam {

Game::Game(GameKind k, Rational x_, Rational y_) : kind(k), x(std::move(x_)), y(std::move(y_)) {
  if (x <= Rational(0) || y <= Rational(0)) {
    throw Error(Errc::InvalidDocument, "game payoffs must be positive");
  }
}

std::string_view to_string(TiePolicy t) {
  switch (t) {
    case TiePolicy::FavorB: return "favor_B";
    case TiePolicy::FavorNotB: return "favor_notB";
    case TiePolicy::Conservative: return "conservative";
  }
  return "?";
}

std::string_view to_string(GameKind k) { return k == GameKind::Coordination ? "coord" : "anti"; }

TiePolicy parse_tie_policy(std::string_view s) {
  if (s == "favor_B" || s == "favorB" || s == "B") return TiePolicy::FavorB;
  if (s == "favor_notB" || s == "favorNotB" || s == "notB") return TiePolicy::FavorNotB;
  if (s == "conservative") return TiePolicy::Conservative;
  throw Error(Errc::InvalidDocument, "unknown tie policy '" + std::string(s) + "'");
}

ThresholdModel step_eq1(const ThresholdModel& m) {
  const Network& net = m.network();
  AgentSet next = m.behavior();
  for (AgentId a = 0; a < net.size(); ++a) {
    if (compare_fraction(neighbors_in(net, a, m.behavior()), net.degree(a), m.theta()) >= 0) next.insert(a);
  }
  return m.with_behavior(std::move(next));
}

ThresholdModel step_eq2(const ThresholdModel& m) {
  const Network& net = m.network();
  AgentSet next(net.size());
  for (AgentId a = 0; a < net.size(); ++a) {
    auto cmp = compare_fraction(neighbors_in(net, a, m.behavior()), net.degree(a), m.theta());
    next.assign(a, cmp > 0 || (cmp == 0 && m.behavior().contains(a)));
  }
  return m.with_behavior(std::move(next));
}

Rational game_threshold(const Game& g) {
  return g.kind == GameKind::Coordination ? g.y / (g.x + g.y) : g.x / (g.x + g.y);
}

Rational behavior_threshold(const Game& g) { return g.y / (g.x + g.y); }

ThresholdModel best_response_step(const ThresholdModel& m, const Game& g, TiePolicy tie, bool seed) {
  const Network& net = m.network();
  const Rational theta = game_threshold(g);
  // Coordination players look at B-neighbors, anti-coordination players at
  // ~B-neighbors; either way B is the best response above theta.
  const AgentSet watched = g.kind == GameKind::Coordination ? m.behavior() : m.behavior().complement();
  AgentSet next(net.size());
  for (AgentId a = 0; a < net.size(); ++a) {
    auto cmp = compare_fraction(neighbors_in(net, a, watched), net.degree(a), theta);
    bool plays_b = false;
    if (cmp > 0) {
      plays_b = true;
    } else if (cmp == 0) {
      switch (tie) {
        case TiePolicy::FavorB: plays_b = true; break;
        case TiePolicy::FavorNotB: plays_b = false; break;
        case TiePolicy::Conservative: plays_b = m.behavior().contains(a); break;
      }
    }
    if (seed && m.behavior().contains(a)) plays_b = true;
    next.assign(a, plays_b);
  }
  return ThresholdModel(m.network_ptr(), std::move(next), behavior_threshold(g));
}

}  // namespace tam
