#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tam/formula.hpp"
#include "tam/model.hpp"

namespace tam {

// Partial atom assignment. Empty means "no change" (T).
using PostCondition = std::map<std::string, bool, std::less<>>;

PostCondition post_B();
PostCondition post_not_B();
PostCondition post_keep();
// "B", "~B" or "T" for posts over {B}; nullopt for anything else.
std::optional<std::string> threshold_post_name(const PostCondition& p);

struct ActionState {
  std::string id;
  Formula pre;
  PostCondition post;

  friend bool operator==(const ActionState&, const ActionState&) = default;
};

// Relation over action states: either the full relation or explicit pairs
// of state indices.
class Relation {
 public:
  static Relation full() { return Relation(); }
  static Relation pairs(std::set<std::pair<std::size_t, std::size_t>> p) { return Relation(std::move(p)); }

  bool holds(std::size_t s, std::size_t t) const { return !pairs_ || pairs_->count({s, t}) > 0; }
  bool is_full(std::size_t state_count) const;
  bool explicit_pairs() const noexcept { return pairs_.has_value(); }
  const std::set<std::pair<std::size_t, std::size_t>>& pair_set() const { return *pairs_; }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  Relation() = default;
  explicit Relation(std::set<std::pair<std::size_t, std::size_t>> p) : pairs_(std::move(p)) {}
  std::optional<std::set<std::pair<std::size_t, std::size_t>>> pairs_;
};

class ActionModel {
 public:
  // Throws InvalidActionModel for an empty state list, duplicate ids or
  // relation pairs naming missing states.
  ActionModel(std::vector<ActionState> states, Relation relation = Relation::full());

  const std::vector<ActionState>& states() const noexcept { return states_; }
  const Relation& relation() const noexcept { return relation_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::size_t index_of(std::string_view id) const;

  friend bool operator==(const ActionModel&, const ActionModel&) = default;

 private:
  std::vector<ActionState> states_;
  Relation relation_;
};

// Product update result: agents are the surviving (agent, state) pairs.
struct ProductModel {
  GeneralModel model;
  std::vector<std::pair<AgentId, std::size_t>> origin;  // per product agent
};

// Agents (a, s) with a |= pre(s); ((a,s),(b,t)) linked iff a~b and s R t;
// q' = {(a,s) : post(s)(q)} ∪ {(a,s) : a ∈ ||q||, q ∉ dom post(s)}.
// Throws EmptyProduct when no agent survives.
ProductModel product_update(const GeneralModel& m, const ActionModel& e);
ProductModel product_update(const ThresholdModel& m, const ActionModel& e);

// For every agent, the index of the unique state whose precondition it
// satisfies. Throws NotAPartition.
std::vector<std::size_t> matching_states(const GeneralModel& m, const ActionModel& e);

// Product update with pairs relabeled back to agents. Requires a partitioning
// precondition set and the full relation (NotAPartition / NotFullRelation).
GeneralModel canonical_product(const GeneralModel& m, const ActionModel& e);
ThresholdModel canonical_product(const ThresholdModel& m, const ActionModel& e);

// ----------------------------------------------------------------------------
// The three-cell catalog

enum class CatalogClass {
  Trivial,
  Nonsensical,
  CoordinationBR,
  SeededCoordination,
  AnticoordinationBR,
  SeededAnticoordination,
  Unclassified,
};

std::string_view to_string(CatalogClass c);
CatalogClass parse_catalog_class(std::string_view s);

// The finest partition by the B-fraction f: f > theta, f == theta, f < theta.
Formula cell_above();  // <lt> B
Formula cell_tie();    // (=) B
Formula cell_below();  // [gt] ~B
// Display form of the cell preconditions, in state order.
inline constexpr std::string_view kCellText[3] = {"<lt> B", "(=) B", "[gt] ~B"};

// Column i (1..27): posts are the base-3 digits of i-1, first state most
// significant, digit 0 = B, 1 = T, 2 = ~B. Throws IndexOutOfRange.
ActionModel table1(int i);
CatalogClass classify(int i);

// Two-cell model: <le> B -> B, ~<le> B -> T.
ActionModel e1();
// Conservative tie model, identical to table1(6).
ActionModel e2();

// Swaps B and ~B in every post.
ActionModel swap_posts(const ActionModel& e);

}  // namespace tam
