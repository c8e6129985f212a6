#pragma once

#include <unordered_map>
#include <vector>

#include "tam/formula.hpp"
#include "tam/model.hpp"

namespace tam {

// Closed-form model checking. With f = |N(a) ∩ ||phi||| / |N(a)|:
//   <le> phi  iff  f >= theta
//   (=) phi   iff  f == theta
//   [le] phi  iff  every neighbor satisfies phi
//   F phi     iff  every neighbor satisfies phi;  <F> phi  iff  some neighbor does
// Throws MissingTheta, UnknownAtom, IsolatedAgent (threshold modality at a
// degree-0 agent).
AgentSet extension(const GeneralModel& m, const Formula& phi);
AgentSet extension(const ThresholdModel& m, const Formula& phi);
bool eval(const GeneralModel& m, AgentId a, const Formula& phi);
bool eval(const ThresholdModel& m, AgentId a, const Formula& phi);

// Literal subset semantics: enumerates every C ⊆ N(a) for the threshold
// modalities. Exponential in degree; intended as a test oracle. Results are
// memoized per formula node, so one oracle instance can check many formulas
// sharing subterms.
class SubsetOracle {
 public:
  explicit SubsetOracle(GeneralModel m) : model_(std::move(m)) {}
  bool holds(AgentId a, const Formula& phi);

 private:
  const std::vector<bool>& table(const Formula& phi);
  bool compute(AgentId a, const Formula& phi);

  GeneralModel model_;
  // Node identity -> (formula kept alive, per-agent truth values).
  std::unordered_map<const void*, std::pair<Formula, std::vector<bool>>> memo_;
};

bool eval_subset_oracle(const GeneralModel& m, AgentId a, const Formula& phi);
bool eval_subset_oracle(const ThresholdModel& m, AgentId a, const Formula& phi);

}  // namespace tam
