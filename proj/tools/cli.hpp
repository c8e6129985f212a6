#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tam/belief.hpp"
#include "tam/orbit.hpp"

namespace tam::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kEquivalenceFailed = 1;
inline constexpr int kUsageError = 2;

// eq1 | eq2 | br:<coord|anti>:<x>:<y>:<tie>[:seed] | am:<1..27> | am:e1 |
// am:e2 | am:file=<path> | auto:file=<path>
using Rule = std::variant<UpdateRule, Automaton>;
Rule parse_rule(std::string_view spec);

// Seed used when --seed is absent: THRESHOLD_AM_SEED, else 0.
std::uint64_t default_seed();

// Random trial models used by `equiv`; index i of a run with a given base
// seed always yields the same model.
struct TrialParams {
  std::size_t min_agents = 2;
  std::size_t max_agents = 10;
  double edge_prob = 0.5;
  double behavior_prob = 0.5;
  std::optional<Rational> theta;
};
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index);
std::size_t trial_size(std::uint64_t base_seed, std::size_t index, const TrialParams& p);
ThresholdModel trial_threshold_model(std::uint64_t base_seed, std::size_t index, const TrialParams& p);
GeneralModel trial_belief_model(std::uint64_t base_seed, std::size_t index, const TrialParams& p);

// Runs the tool with argv-style arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tam::cli
