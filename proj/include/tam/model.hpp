#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tam/rational.hpp"

namespace tam {

// Dense agent index. Names are kept by the Network; all user-facing output
// goes back through Network::name().
using AgentId = std::size_t;

inline constexpr std::string_view kBehaviorAtom = "B";
inline constexpr std::string_view kBelievesP = "Bp";
inline constexpr std::string_view kBelievesNotP = "Bnp";

// Subset of the agents of one network, indexed by AgentId.
class AgentSet {
 public:
  AgentSet() = default;
  explicit AgentSet(std::size_t universe, bool full = false) : bits_(universe, full) {}

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(AgentId a) const { return bits_[a]; }
  void insert(AgentId a) { bits_[a] = true; }
  void erase(AgentId a) { bits_[a] = false; }
  void assign(AgentId a, bool in) { bits_[a] = in; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<AgentId> members() const;

  AgentSet complement() const;
  AgentSet operator&(const AgentSet& o) const;
  AgentSet operator|(const AgentSet& o) const;
  // Agents in exactly one of the two sets.
  AgentSet operator^(const AgentSet& o) const;

  friend bool operator==(const AgentSet&, const AgentSet&) = default;
  const std::vector<bool>& bits() const noexcept { return bits_; }

 private:
  std::vector<bool> bits_;
};

struct AgentSetHash {
  std::size_t operator()(const AgentSet& s) const { return std::hash<std::vector<bool>>{}(s.bits()); }
};

// Symmetric irreflexive adjacency over named agents. Agent names are stored
// sorted, so AgentId order is lexicographic name order.
class Network {
 public:
  // Edges are symmetrized. Throws SelfLoop, UnknownAgent, DuplicateAgent,
  // and IsolatedAgent unless allow_isolated.
  static std::shared_ptr<const Network> build(std::vector<std::string> agents,
                                              const std::vector<std::pair<std::string, std::string>>& edges,
                                              bool allow_isolated = false);
  // Index-based construction used by product update and generators.
  static std::shared_ptr<const Network> from_adjacency(std::vector<std::string> names,
                                                       std::vector<std::vector<AgentId>> adjacency);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(AgentId a) const { return names_.at(a); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  AgentId index(std::string_view name) const;
  std::optional<AgentId> find(std::string_view name) const;

  std::span<const AgentId> neighbors(AgentId a) const { return adjacency_.at(a); }
  std::size_t degree(AgentId a) const { return adjacency_.at(a).size(); }
  bool linked(AgentId a, AgentId b) const;
  std::size_t max_degree() const;
  // Each undirected edge once, as (smaller, larger) index pairs, sorted.
  std::vector<std::pair<AgentId, AgentId>> edges() const;

  AgentSet set_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(const AgentSet& s) const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.names_ == b.names_ && a.adjacency_ == b.adjacency_;
  }

 private:
  Network() = default;
  std::vector<std::string> names_;
  std::unordered_map<std::string, AgentId> index_;
  std::vector<std::vector<AgentId>> adjacency_;
};

// |N(a) ∩ extension| / |N(a)|. Throws IsolatedAgent for degree 0.
Rational neighbor_fraction(const Network& net, AgentId a, const AgentSet& extension);
std::size_t neighbors_in(const Network& net, AgentId a, const AgentSet& extension);

class GeneralModel;

// (agents, network, behavior, theta) with every agent of positive degree.
class ThresholdModel {
 public:
  ThresholdModel(std::shared_ptr<const Network> net, AgentSet behavior, Rational theta);

  const Network& network() const noexcept { return *net_; }
  const std::shared_ptr<const Network>& network_ptr() const noexcept { return net_; }
  const AgentSet& behavior() const noexcept { return behavior_; }
  const Rational& theta() const noexcept { return theta_; }
  std::size_t agent_count() const noexcept { return net_->size(); }

  ThresholdModel with_behavior(AgentSet behavior) const;
  ThresholdModel with_theta(Rational theta) const;
  // Single-atom valuation {B}.
  GeneralModel general() const;

  friend bool operator==(const ThresholdModel& a, const ThresholdModel& b) {
    return *a.net_ == *b.net_ && a.behavior_ == b.behavior_ && a.theta_ == b.theta_;
  }

 private:
  std::shared_ptr<const Network> net_;
  AgentSet behavior_;
  Rational theta_;
};

ThresholdModel build_model(std::vector<std::string> agents,
                           const std::vector<std::pair<std::string, std::string>>& edges,
                           const std::vector<std::string>& behavior, Rational theta);

using Valuation = std::map<std::string, AgentSet, std::less<>>;

// Network plus an arbitrary atom valuation and an optional threshold. Used
// for belief models and for the raw output of product update.
class GeneralModel {
 public:
  GeneralModel(std::shared_ptr<const Network> net, Valuation valuation,
               std::optional<Rational> theta = std::nullopt);

  const Network& network() const noexcept { return *net_; }
  const std::shared_ptr<const Network>& network_ptr() const noexcept { return net_; }
  const Valuation& valuation() const noexcept { return valuation_; }
  const std::optional<Rational>& theta() const noexcept { return theta_; }
  std::size_t agent_count() const noexcept { return net_->size(); }

  bool has_atom(std::string_view name) const { return valuation_.find(name) != valuation_.end(); }
  // Throws UnknownAtom.
  const AgentSet& atom(std::string_view name) const;
  GeneralModel with_valuation(Valuation valuation) const;

  friend bool operator==(const GeneralModel& a, const GeneralModel& b) {
    return *a.net_ == *b.net_ && a.valuation_ == b.valuation_ && a.theta_ == b.theta_;
  }

 private:
  std::shared_ptr<const Network> net_;
  Valuation valuation_;
  std::optional<Rational> theta_;
};

// Belief model over atoms Bp and Bnp; undecided agents are in neither.
// Throws InvalidDocument if the two extensions overlap.
GeneralModel build_belief_model(std::vector<std::string> agents,
                                const std::vector<std::pair<std::string, std::string>>& edges,
                                const std::vector<std::string>& believes_p,
                                const std::vector<std::string>& believes_not_p);
void check_belief_exclusive(const GeneralModel& m);

}  // namespace tam
