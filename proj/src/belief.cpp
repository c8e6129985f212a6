#include "tam/belief.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "tam/errors.hpp"
#include "tam/logic.hpp"
#include "tam/orbit.hpp"

namespace tam {

Formula believes(Polarity pol) { return atom(pol == Polarity::P ? kBelievesP : kBelievesNotP); }

namespace {

Polarity opposite(Polarity pol) { return pol == Polarity::P ? Polarity::NotP : Polarity::P; }

// Truth of a Boolean formula over {Bp, Bnp} in a single atom state.
bool holds_in(const Formula& f, AtomState s) {
  switch (f.op()) {
    case Op::Top: return true;
    case Op::Atom:
      if (f.atom_name() == kBelievesP) return s == AtomState::BelievesP;
      if (f.atom_name() == kBelievesNotP) return s == AtomState::BelievesNotP;
      throw Error(Errc::NotAtomState, "label uses atom '" + f.atom_name() + "' outside {Bp, Bnp}");
    case Op::Not: return !holds_in(f.operand(), s);
    case Op::And: return holds_in(f.left(), s) && holds_in(f.right(), s);
    default: throw Error(Errc::NotAtomState, "label '" + to_string(f) + "' contains a modality");
  }
}

constexpr AtomState kAllStates[] = {AtomState::Undecided, AtomState::BelievesP, AtomState::BelievesNotP};

std::string key_of(const Formula& f) { return to_string(normal_form(f)); }

}  // namespace

Formula strong(Polarity pol) { return conj(box_f(believes(pol)), diam_f(believes(pol))); }

Formula weak(Polarity pol) { return conj(box_f(neg(believes(opposite(pol)))), diam_f(believes(pol))); }

std::string_view to_string(AtomState s) {
  switch (s) {
    case AtomState::Undecided: return "Up";
    case AtomState::BelievesP: return "Bp";
    case AtomState::BelievesNotP: return "Bnp";
  }
  return "?";
}

AtomState atom_state_of(const GeneralModel& m, AgentId a) {
  bool p = m.atom(kBelievesP).contains(a);
  bool np = m.atom(kBelievesNotP).contains(a);
  if (p && np) throw Error(Errc::InvalidDocument, "agent '" + m.network().name(a) + "' believes both p and not p");
  if (p) return AtomState::BelievesP;
  if (np) return AtomState::BelievesNotP;
  return AtomState::Undecided;
}

Formula canonical_label(AtomState s) {
  switch (s) {
    case AtomState::Undecided: return undecided();
    case AtomState::BelievesP: return atom(kBelievesP);
    case AtomState::BelievesNotP: return atom(kBelievesNotP);
  }
  return top();
}

PostCondition post_for(AtomState s) {
  return {{std::string(kBelievesP), s == AtomState::BelievesP}, {std::string(kBelievesNotP), s == AtomState::BelievesNotP}};
}

AtomState label_atom_state(const Formula& label) {
  std::vector<AtomState> sat;
  for (AtomState s : kAllStates) {
    if (holds_in(label, s)) sat.push_back(s);
  }
  if (sat.size() != 1) {
    throw Error(Errc::NotAtomState, "label '" + to_string(label) + "' holds in " + std::to_string(sat.size()) +
                                        " belief states (expected exactly 1)");
  }
  return sat.front();
}

AtomState post_atom_state(const PostCondition& post) {
  auto p = post.find(kBelievesP);
  auto np = post.find(kBelievesNotP);
  if (post.size() != 2 || p == post.end() || np == post.end() || (p->second && np->second)) {
    throw Error(Errc::NotAtomState, "postcondition does not set exactly one belief state");
  }
  if (p->second) return AtomState::BelievesP;
  if (np->second) return AtomState::BelievesNotP;
  return AtomState::Undecided;
}

Automaton::Automaton(std::vector<AutomatonState> states, std::vector<Transition> transitions)
    : states_(std::move(states)), transitions_(std::move(transitions)) {
  if (states_.empty()) throw Error(Errc::InvalidAutomaton, "automaton needs at least one state");
  std::set<std::string> ids;
  for (const auto& s : states_) {
    if (!ids.insert(s.id).second) throw Error(Errc::InvalidAutomaton, "duplicate automaton state '" + s.id + "'");
    label_atom_state(s.label);
  }
  for (const auto& t : transitions_) {
    if (!ids.count(t.from) || !ids.count(t.to)) {
      throw Error(Errc::InvalidAutomaton, "transition " + t.from + " -> " + t.to + " names a missing state");
    }
  }
}

const AutomatonState& Automaton::state(std::string_view id) const {
  for (const auto& s : states_) {
    if (s.id == id) return s;
  }
  throw Error(Errc::InvalidAutomaton, "no automaton state '" + std::string(id) + "'");
}

std::vector<const Transition*> Automaton::outgoing(std::string_view id) const {
  std::vector<const Transition*> out;
  for (const auto& t : transitions_) {
    if (t.from == id) out.push_back(&t);
  }
  return out;
}

GeneralModel automaton_step(const GeneralModel& m, const Automaton& aut) {
  const Network& net = m.network();
  std::vector<AgentSet> label_ext;
  for (const auto& s : aut.states()) label_ext.push_back(extension(m, s.label));
  std::vector<AgentSet> trigger_ext;
  for (const auto& t : aut.transitions()) trigger_ext.push_back(extension(m, t.trigger));

  AgentSet next_p = m.atom(kBelievesP);
  AgentSet next_np = m.atom(kBelievesNotP);
  for (AgentId a = 0; a < net.size(); ++a) {
    std::vector<std::size_t> here;
    for (std::size_t s = 0; s < aut.states().size(); ++s) {
      if (label_ext[s].contains(a)) here.push_back(s);
    }
    if (here.empty()) throw Error(Errc::NoMatchingState, "agent '" + net.name(a) + "' matches no automaton state");
    if (here.size() > 1) {
      throw Error(Errc::AmbiguousState, "agent '" + net.name(a) + "' matches automaton states '" +
                                            aut.states()[here[0]].id + "' and '" + aut.states()[here[1]].id + "'");
    }
    const std::string& current = aut.states()[here.front()].id;
    const Transition* fired = nullptr;
    for (std::size_t t = 0; t < aut.transitions().size(); ++t) {
      const Transition& tr = aut.transitions()[t];
      if (tr.from != current || !trigger_ext[t].contains(a)) continue;
      if (fired) {
        throw Error(Errc::NondeterminismDetected, "agent '" + net.name(a) + "' fires both " + fired->from + " -> " +
                                                      fired->to + " and " + tr.from + " -> " + tr.to);
      }
      fired = &tr;
    }
    if (!fired) continue;
    AtomState target = label_atom_state(aut.state(fired->to).label);
    next_p.assign(a, target == AtomState::BelievesP);
    next_np.assign(a, target == AtomState::BelievesNotP);
  }
  Valuation val = m.valuation();
  val[std::string(kBelievesP)] = std::move(next_p);
  val[std::string(kBelievesNotP)] = std::move(next_np);
  return m.with_valuation(std::move(val));
}

ActionModel automaton_to_action_model(const Automaton& aut) {
  std::vector<ActionState> states;
  std::size_t counter = 0;
  for (const auto& s : aut.states()) {
    std::vector<Formula> triggers;
    for (const Transition* t : aut.outgoing(s.id)) {
      triggers.push_back(t->trigger);
      states.push_back({"t" + std::to_string(++counter), conj(s.label, t->trigger),
                        post_for(label_atom_state(aut.state(t->to).label))});
    }
    states.push_back({"stay_" + s.id, conj(s.label, neg(disj_all(triggers))), post_keep()});
  }
  return ActionModel(std::move(states));
}

Automaton action_model_to_automaton(const ActionModel& e) {
  struct Entry {
    std::string key;
    Formula label;
    AtomState atom_state;
    std::string id;
  };
  std::vector<Entry> entries;
  std::map<AtomState, int> per_state;
  auto register_label = [&](const Formula& label) -> const Entry& {
    std::string key = key_of(label);
    for (const auto& en : entries) {
      if (en.key == key) return en;
    }
    AtomState as = label_atom_state(label);
    int n = ++per_state[as];
    std::string id(to_string(as));
    if (n > 1) id += "_" + std::to_string(n);
    entries.push_back({key, label, as, id});
    return entries.back();
  };

  for (const auto& s : e.states()) {
    if (s.pre.op() != Op::And) {
      throw Error(Errc::PreconditionNotConjunctive,
                  "precondition of action state '" + s.id + "' is not a conjunction: " + to_string(s.pre));
    }
    register_label(s.pre.left());
  }

  std::vector<Transition> transitions;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& s : e.states()) {
    if (s.post.empty()) continue;
    std::string from = register_label(s.pre.left()).id;
    AtomState target = post_atom_state(s.post);
    auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& en) { return en.atom_state == target; });
    std::string to = it != entries.end() ? it->id : register_label(canonical_label(target)).id;
    if (seen.emplace(from, key_of(s.pre.right()), to).second) transitions.push_back({from, s.pre.right(), to});
  }

  std::vector<AutomatonState> states;
  for (const auto& en : entries) states.push_back({en.id, en.label});
  return Automaton(std::move(states), std::move(transitions));
}

bool same_up_to_relabeling(const Automaton& a, const Automaton& b) {
  auto shape = [](const Automaton& x) {
    std::set<std::string> labels;
    std::multiset<std::tuple<std::string, std::string, std::string>> edges;
    for (const auto& s : x.states()) labels.insert(key_of(s.label));
    for (const auto& t : x.transitions()) {
      edges.emplace(key_of(x.state(t.from).label), key_of(t.trigger), key_of(x.state(t.to).label));
    }
    return std::make_pair(labels, edges);
  };
  return a.states().size() == b.states().size() && shape(a) == shape(b);
}

bool same_up_to_relabeling(const ActionModel& a, const ActionModel& b) {
  auto shape = [](const ActionModel& x) {
    std::multiset<std::pair<std::string, PostCondition>> out;
    for (const auto& s : x.states()) out.emplace(to_string(s.pre), s.post);
    return out;
  };
  return a.relation().is_full(a.size()) == b.relation().is_full(b.size()) && shape(a) == shape(b);
}

GeneralModel random_belief_model(std::uint64_t seed, std::size_t n_agents, double edge_probability,
                                 std::size_t max_resamples) {
  // Reuse the threshold generator for the graph, then draw belief states
  // from a derived stream.
  ThresholdModel base = random_model(seed, n_agents, edge_probability, 0.0, Rational(0), max_resamples);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  AgentSet p(n_agents);
  AgentSet np(n_agents);
  for (AgentId a = 0; a < n_agents; ++a) {
    switch (uniform_index(rng, 3)) {
      case 1: p.insert(a); break;
      case 2: np.insert(a); break;
      default: break;
    }
  }
  Valuation val;
  val.emplace(std::string(kBelievesP), std::move(p));
  val.emplace(std::string(kBelievesNotP), std::move(np));
  return GeneralModel(base.network_ptr(), std::move(val));
}

}  // namespace tam
