#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tam/action_model.hpp"
#include "tam/formula.hpp"
#include "tam/model.hpp"

namespace tam {

enum class Polarity { P, NotP };

// Atom believing the given polarity: Bp or Bnp.
Formula believes(Polarity pol);
// S: F B(pol) & <F> B(pol)
Formula strong(Polarity pol);
// W: F ~B(opposite) & <F> B(pol)
Formula weak(Polarity pol);

// The three mutually exclusive belief states of one agent.
enum class AtomState { Undecided, BelievesP, BelievesNotP };

std::string_view to_string(AtomState s);
AtomState atom_state_of(const GeneralModel& m, AgentId a);
// Canonical labels: Up -> "~Bp & ~Bnp", Bp -> "Bp", Bnp -> "Bnp".
Formula canonical_label(AtomState s);
PostCondition post_for(AtomState s);
// Which single atom state a Boolean label over {Bp, Bnp} describes. Throws
// NotAtomState for modal labels or labels true in zero or several states.
AtomState label_atom_state(const Formula& label);
// Throws NotAtomState unless post assigns both Bp and Bnp, not both true.
AtomState post_atom_state(const PostCondition& post);

struct AutomatonState {
  std::string id;
  Formula label;
  friend bool operator==(const AutomatonState&, const AutomatonState&) = default;
};

struct Transition {
  std::string from;
  Formula trigger;
  std::string to;
  friend bool operator==(const Transition&, const Transition&) = default;
};

class Automaton {
 public:
  // Throws InvalidAutomaton for duplicate ids, dangling transition ends or
  // labels that are not atom-state formulas.
  Automaton(std::vector<AutomatonState> states, std::vector<Transition> transitions);

  const std::vector<AutomatonState>& states() const noexcept { return states_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const AutomatonState& state(std::string_view id) const;
  std::vector<const Transition*> outgoing(std::string_view id) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  std::vector<AutomatonState> states_;
  std::vector<Transition> transitions_;
};

// Every agent moves simultaneously: find its state by label, fire the one
// trigger it satisfies (if any) and take the target's atom state. Throws
// NoMatchingState, AmbiguousState, NondeterminismDetected.
GeneralModel automaton_step(const GeneralModel& m, const Automaton& a);

// One action state per transition (pre = label(from) & trigger, post = atom
// state of label(to)), plus per automaton state a residual "stay" state
// pre = label & ~(t1 | ... | tk), post = no change. Full relation.
ActionModel automaton_to_action_model(const Automaton& a);

// Inverse: every precondition must be a conjunction (label & trigger).
// No-change states are residuals and contribute only their label. Labels
// are collapsed by printed normal form. Throws PreconditionNotConjunctive.
Automaton action_model_to_automaton(const ActionModel& e);

// Equality ignoring state ids and ordering: compares labels and transitions
// as (label, trigger, label) triples, all in printed normal form.
bool same_up_to_relabeling(const Automaton& a, const Automaton& b);
// Compares action states as a multiset of (printed pre, post), plus relation
// fullness.
bool same_up_to_relabeling(const ActionModel& a, const ActionModel& b);

// Each agent independently Up / Bp / Bnp with equal probability.
GeneralModel random_belief_model(std::uint64_t seed, std::size_t n_agents, double edge_probability,
                                 std::size_t max_resamples = 1000);

}  // namespace tam
