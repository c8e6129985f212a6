#include "tam/action_model.hpp"

#include <algorithm>
#include <unordered_set>

#include "tam/errors.hpp"
#include "tam/logic.hpp"

namespace tam {

PostCondition post_B() { return {{std::string(kBehaviorAtom), true}}; }
PostCondition post_not_B() { return {{std::string(kBehaviorAtom), false}}; }
PostCondition post_keep() { return {}; }

std::optional<std::string> threshold_post_name(const PostCondition& p) {
  if (p.empty()) return "T";
  if (p.size() == 1 && p.begin()->first == kBehaviorAtom) return p.begin()->second ? "B" : "~B";
  return std::nullopt;
}

bool Relation::is_full(std::size_t state_count) const {
  if (!pairs_) return true;
  return pairs_->size() == state_count * state_count;
}

ActionModel::ActionModel(std::vector<ActionState> states, Relation relation)
    : states_(std::move(states)), relation_(std::move(relation)) {
  if (states_.empty()) throw Error(Errc::InvalidActionModel, "action model needs at least one state");
  std::unordered_set<std::string> ids;
  for (const auto& s : states_) {
    if (!ids.insert(s.id).second) throw Error(Errc::InvalidActionModel, "duplicate action state id '" + s.id + "'");
  }
  if (relation_.explicit_pairs()) {
    for (const auto& [s, t] : relation_.pair_set()) {
      if (s >= states_.size() || t >= states_.size()) {
        throw Error(Errc::InvalidActionModel, "relation refers to a missing action state");
      }
    }
  }
}

std::size_t ActionModel::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].id == id) return i;
  }
  throw Error(Errc::InvalidActionModel, "no action state '" + std::string(id) + "'");
}

namespace {

std::vector<std::string> all_atoms(const GeneralModel& m, const ActionModel& e) {
  std::vector<std::string> atoms;
  for (const auto& [name, ext] : m.valuation()) atoms.push_back(name);
  for (const auto& s : e.states()) {
    for (const auto& [q, v] : s.post) atoms.push_back(q);
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

bool updated_value(const GeneralModel& m, const PostCondition& post, const std::string& q, AgentId a) {
  if (auto it = post.find(q); it != post.end()) return it->second;
  return m.has_atom(q) && m.atom(q).contains(a);
}

}  // namespace

ProductModel product_update(const GeneralModel& m, const ActionModel& e) {
  const Network& net = m.network();
  std::vector<AgentSet> pre_ext;
  pre_ext.reserve(e.size());
  for (const auto& s : e.states()) pre_ext.push_back(extension(m, s.pre));

  ProductModel out{GeneralModel(Network::from_adjacency({}, {}), {}), {}};
  std::vector<std::string> names;
  // Pair (a, s) -> product index, agent-major.
  std::vector<std::vector<std::optional<AgentId>>> slot(net.size(), std::vector<std::optional<AgentId>>(e.size()));
  for (AgentId a = 0; a < net.size(); ++a) {
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (!pre_ext[s].contains(a)) continue;
      slot[a][s] = out.origin.size();
      out.origin.emplace_back(a, s);
      names.push_back("(" + net.name(a) + "," + e.states()[s].id + ")");
    }
  }
  if (out.origin.empty()) throw Error(Errc::EmptyProduct, "no agent satisfies any precondition");

  std::vector<std::vector<AgentId>> adj(out.origin.size());
  for (AgentId p = 0; p < out.origin.size(); ++p) {
    auto [a, s] = out.origin[p];
    for (AgentId b : net.neighbors(a)) {
      for (std::size_t t = 0; t < e.size(); ++t) {
        if (slot[b][t] && e.relation().holds(s, t)) adj[p].push_back(*slot[b][t]);
      }
    }
  }

  Valuation val;
  for (const auto& q : all_atoms(m, e)) {
    AgentSet ext(out.origin.size());
    for (AgentId p = 0; p < out.origin.size(); ++p) {
      auto [a, s] = out.origin[p];
      ext.assign(p, updated_value(m, e.states()[s].post, q, a));
    }
    val.emplace(q, std::move(ext));
  }
  out.model = GeneralModel(Network::from_adjacency(std::move(names), std::move(adj)), std::move(val), m.theta());
  return out;
}

ProductModel product_update(const ThresholdModel& m, const ActionModel& e) { return product_update(m.general(), e); }

std::vector<std::size_t> matching_states(const GeneralModel& m, const ActionModel& e) {
  const std::size_t n = m.agent_count();
  std::vector<std::size_t> match(n, e.size());
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t s = 0; s < e.size(); ++s) {
    AgentSet ext = extension(m, e.states()[s].pre);
    for (AgentId a : ext.members()) {
      ++hits[a];
      match[a] = s;
    }
  }
  for (AgentId a = 0; a < n; ++a) {
    if (hits[a] != 1) {
      throw Error(Errc::NotAPartition, "agent '" + m.network().name(a) + "' satisfies " + std::to_string(hits[a]) +
                                           " preconditions (expected exactly 1)");
    }
  }
  return match;
}

GeneralModel canonical_product(const GeneralModel& m, const ActionModel& e) {
  if (!e.relation().is_full(e.size())) {
    throw Error(Errc::NotFullRelation, "canonical product requires the full relation");
  }
  const auto match = matching_states(m, e);
  Valuation val;
  for (const auto& q : all_atoms(m, e)) {
    AgentSet ext(m.agent_count());
    for (AgentId a = 0; a < m.agent_count(); ++a) ext.assign(a, updated_value(m, e.states()[match[a]].post, q, a));
    val.emplace(q, std::move(ext));
  }
  return m.with_valuation(std::move(val));
}

ThresholdModel canonical_product(const ThresholdModel& m, const ActionModel& e) {
  for (const auto& s : e.states()) {
    if (!threshold_post_name(s.post)) {
      throw Error(Errc::InvalidActionModel, "action state '" + s.id + "' assigns atoms other than B");
    }
  }
  GeneralModel next = canonical_product(m.general(), e);
  return m.with_behavior(next.atom(kBehaviorAtom));
}

// ----------------------------------------------------------------------------

std::string_view to_string(CatalogClass c) {
  switch (c) {
    case CatalogClass::Trivial: return "trivial";
    case CatalogClass::Nonsensical: return "nonsensical";
    case CatalogClass::CoordinationBR: return "coordination_br";
    case CatalogClass::SeededCoordination: return "seeded_coordination";
    case CatalogClass::AnticoordinationBR: return "anticoordination_br";
    case CatalogClass::SeededAnticoordination: return "seeded_anticoordination";
    case CatalogClass::Unclassified: return "unclassified";
  }
  return "?";
}

CatalogClass parse_catalog_class(std::string_view s) {
  for (auto c : {CatalogClass::Trivial, CatalogClass::Nonsensical, CatalogClass::CoordinationBR,
                 CatalogClass::SeededCoordination, CatalogClass::AnticoordinationBR,
                 CatalogClass::SeededAnticoordination, CatalogClass::Unclassified}) {
    if (to_string(c) == s) return c;
  }
  throw Error(Errc::InvalidDocument, "unknown catalog class '" + std::string(s) + "'");
}

Formula cell_above() { return diam_lt(atom(kBehaviorAtom)); }
Formula cell_tie() { return eq_theta(atom(kBehaviorAtom)); }
Formula cell_below() { return box_gt(neg(atom(kBehaviorAtom))); }

namespace {

void check_index(int i) {
  if (i < 1 || i > 27) throw Error(Errc::IndexOutOfRange, "rule index out of range 1..27");
}

PostCondition post_for_digit(int d) {
  switch (d) {
    case 0: return post_B();
    case 1: return post_keep();
    default: return post_not_B();
  }
}

}  // namespace

ActionModel table1(int i) {
  check_index(i);
  const int code = i - 1;
  const int digits[3] = {code / 9, (code / 3) % 3, code % 3};
  const Formula pres[3] = {cell_above(), cell_tie(), cell_below()};
  std::vector<ActionState> states;
  for (int k = 0; k < 3; ++k) {
    states.push_back({"s" + std::to_string(k + 1), pres[k], post_for_digit(digits[k])});
  }
  return ActionModel(std::move(states));
}

CatalogClass classify(int i) {
  check_index(i);
  static const std::pair<CatalogClass, std::vector<int>> lists[] = {
      {CatalogClass::Trivial, {1, 14, 27}},
      {CatalogClass::Nonsensical, {4, 7, 8, 16, 17, 24}},
      {CatalogClass::CoordinationBR, {3, 6, 9}},
      {CatalogClass::SeededCoordination, {2, 5, 15, 18}},
      {CatalogClass::AnticoordinationBR, {19, 22, 25}},
      {CatalogClass::SeededAnticoordination, {10, 13, 23, 26}},
  };
  for (const auto& [cls, ids] : lists) {
    if (std::find(ids.begin(), ids.end(), i) != ids.end()) return cls;
  }
  return CatalogClass::Unclassified;
}

ActionModel e1() {
  const Formula influenced = diam_leq(atom(kBehaviorAtom));
  return ActionModel({{"s1", influenced, post_B()}, {"s2", neg(influenced), post_keep()}});
}

ActionModel e2() { return table1(6); }

ActionModel swap_posts(const ActionModel& e) {
  std::vector<ActionState> states = e.states();
  for (auto& s : states) {
    for (auto& [q, v] : s.post) {
      if (q == kBehaviorAtom) v = !v;
    }
  }
  return ActionModel(std::move(states), e.relation());
}

}  // namespace tam
