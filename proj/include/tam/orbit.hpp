#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tam/action_model.hpp"
#include "tam/dynamics.hpp"
#include "tam/errors.hpp"
#include "tam/model.hpp"

namespace tam {

struct Eq1Rule {};
struct Eq2Rule {};
struct BestResponseRule {
  Game game;
  TiePolicy tie;
  bool seed;
};
struct ActionModelRule {
  ActionModel model;
};

using UpdateRule = std::variant<Eq1Rule, Eq2Rule, BestResponseRule, ActionModelRule>;

ThresholdModel apply_rule(const UpdateRule& rule, const ThresholdModel& m);
// Best-response rules fix theta to the game threshold; all others use the
// model's own.
std::optional<Rational> forced_theta(const UpdateRule& rule);
std::string describe(const UpdateRule& rule);

struct Trace {
  ThresholdModel initial;
  std::vector<AgentSet> behavior;  // behavior[k] after k steps
};

// steps + 1 entries. If the rule forces theta, the initial model is
// re-thresholded first.
Trace run(const ThresholdModel& m, const UpdateRule& rule, std::size_t steps);

struct OrbitResult {
  std::size_t transient;
  std::size_t period;
  friend bool operator==(const OrbitResult&, const OrbitResult&) = default;
};

// Generic eventually-periodic detection over hashable states: iterates
// until a state repeats and returns the minimal (transient, period). Throws
// CapExceeded if no repeat appears within `cap` steps.
template <class State, class Hash, class Step>
OrbitResult find_orbit(State state, Step&& step, std::size_t cap) {
  std::unordered_map<State, std::size_t, Hash> seen;
  seen.emplace(state, 0);
  for (std::size_t k = 1; k <= cap; ++k) {
    state = step(state);
    auto [it, inserted] = seen.emplace(state, k);
    if (!inserted) return {it->second, k - it->second};
  }
  throw Error(Errc::CapExceeded, "no repeated state within " + std::to_string(cap) + " steps");
}

OrbitResult detect_orbit(const ThresholdModel& m, const UpdateRule& rule, std::size_t cap);

struct Divergence {
  std::size_t step;
  AgentSet left;
  AgentSet right;
  AgentSet differing;
};

struct EquivalenceReport {
  bool equivalent;
  std::optional<Divergence> first_divergence;
};

EquivalenceReport check_stepwise_equivalence(const ThresholdModel& m, const UpdateRule& a, const UpdateRule& b,
                                             std::size_t steps);

// Agents whose B-fraction equals theta exactly.
std::size_t tie_agent_count(const ThresholdModel& m);

// Uniform double in [0,1) from the top 53 bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
double unit_draw(std::mt19937_64& rng);
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);  // [0, bound)

// p/q with q uniform in 1..max(1,max_degree) and p uniform in 0..q, so exact
// ties actually occur.
Rational random_theta(std::mt19937_64& rng, std::size_t max_degree);

// Agents "a0".."a{n-1}", G(n, edge_probability) symmetrized, resampled until
// every agent has a neighbor (GenerationFailed after max_resamples). With
// no theta given, one is drawn by random_theta.
ThresholdModel random_model(std::uint64_t seed, std::size_t n_agents, double edge_probability,
                            double behavior_probability, std::optional<Rational> theta = std::nullopt,
                            std::size_t max_resamples = 1000);

}  // namespace tam
