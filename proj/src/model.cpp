#include "tam/model.hpp"

#include <algorithm>

#include "tam/errors.hpp"

namespace tam {

std::size_t AgentSet::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

std::vector<AgentId> AgentSet::members() const {
  std::vector<AgentId> out;
  for (AgentId a = 0; a < bits_.size(); ++a) {
    if (bits_[a]) out.push_back(a);
  }
  return out;
}

AgentSet AgentSet::complement() const {
  AgentSet out(universe());
  for (AgentId a = 0; a < bits_.size(); ++a) out.bits_[a] = !bits_[a];
  return out;
}

AgentSet AgentSet::operator&(const AgentSet& o) const {
  AgentSet out(universe());
  for (AgentId a = 0; a < bits_.size(); ++a) out.bits_[a] = bits_[a] && o.bits_[a];
  return out;
}

AgentSet AgentSet::operator|(const AgentSet& o) const {
  AgentSet out(universe());
  for (AgentId a = 0; a < bits_.size(); ++a) out.bits_[a] = bits_[a] || o.bits_[a];
  return out;
}

AgentSet AgentSet::operator^(const AgentSet& o) const {
  AgentSet out(universe());
  for (AgentId a = 0; a < bits_.size(); ++a) out.bits_[a] = bits_[a] != o.bits_[a];
  return out;
}

std::shared_ptr<const Network> Network::build(std::vector<std::string> agents,
                                              const std::vector<std::pair<std::string, std::string>>& edges,
                                              bool allow_isolated) {
  std::sort(agents.begin(), agents.end());
  if (auto dup = std::adjacent_find(agents.begin(), agents.end()); dup != agents.end()) {
    throw Error(Errc::DuplicateAgent, "duplicate agent '" + *dup + "'");
  }
  std::unordered_map<std::string, AgentId> index;
  for (AgentId i = 0; i < agents.size(); ++i) index.emplace(agents[i], i);

  auto lookup = [&](const std::string& n) {
    auto it = index.find(n);
    if (it == index.end()) throw Error(Errc::UnknownAgent, "unknown agent '" + n + "' in edge list");
    return it->second;
  };

  std::vector<std::vector<AgentId>> adj(agents.size());
  for (const auto& [u, v] : edges) {
    AgentId a = lookup(u);
    AgentId b = lookup(v);
    if (a == b) throw Error(Errc::SelfLoop, "self loop on agent '" + u + "'");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  if (!allow_isolated) {
    for (AgentId a = 0; a < adj.size(); ++a) {
      if (adj[a].empty()) throw Error(Errc::IsolatedAgent, "agent '" + agents[a] + "' has no neighbors");
    }
  }

  std::shared_ptr<Network> net(new Network());
  net->names_ = std::move(agents);
  net->index_ = std::move(index);
  net->adjacency_ = std::move(adj);
  return net;
}

std::shared_ptr<const Network> Network::from_adjacency(std::vector<std::string> names,
                                                       std::vector<std::vector<AgentId>> adjacency) {
  std::shared_ptr<Network> net(new Network());
  for (AgentId i = 0; i < names.size(); ++i) {
    if (!net->index_.emplace(names[i], i).second) {
      throw Error(Errc::DuplicateAgent, "duplicate agent '" + names[i] + "'");
    }
  }
  for (auto& row : adjacency) std::sort(row.begin(), row.end());
  net->names_ = std::move(names);
  net->adjacency_ = std::move(adjacency);
  return net;
}

AgentId Network::index(std::string_view name) const {
  auto found = find(name);
  if (!found) throw Error(Errc::UnknownAgent, "unknown agent '" + std::string(name) + "'");
  return *found;
}

std::optional<AgentId> Network::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Network::linked(AgentId a, AgentId b) const {
  const auto& row = adjacency_.at(a);
  return std::binary_search(row.begin(), row.end(), b);
}

std::size_t Network::max_degree() const {
  std::size_t best = 0;
  for (const auto& row : adjacency_) best = std::max(best, row.size());
  return best;
}

std::vector<std::pair<AgentId, AgentId>> Network::edges() const {
  std::vector<std::pair<AgentId, AgentId>> out;
  for (AgentId a = 0; a < adjacency_.size(); ++a) {
    for (AgentId b : adjacency_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

AgentSet Network::set_of(const std::vector<std::string>& names) const {
  AgentSet s(size());
  for (const auto& n : names) s.insert(index(n));
  return s;
}

std::vector<std::string> Network::names_of(const AgentSet& s) const {
  std::vector<std::string> out;
  for (AgentId a : s.members()) out.push_back(names_[a]);
  return out;
}

std::size_t neighbors_in(const Network& net, AgentId a, const AgentSet& extension) {
  std::size_t k = 0;
  for (AgentId b : net.neighbors(a)) k += extension.contains(b) ? 1 : 0;
  return k;
}

Rational neighbor_fraction(const Network& net, AgentId a, const AgentSet& extension) {
  if (a >= net.size()) throw Error(Errc::UnknownAgent, "agent index out of range");
  std::size_t deg = net.degree(a);
  if (deg == 0) throw Error(Errc::IsolatedAgent, "agent '" + net.name(a) + "' has no neighbors");
  return Rational(static_cast<std::int64_t>(neighbors_in(net, a, extension)), static_cast<std::int64_t>(deg));
}

namespace {

void check_theta(const Rational& theta) {
  if (theta < Rational(0) || theta > Rational(1)) {
    throw Error(Errc::ThetaOutOfRange, "theta " + theta.to_string() + " is outside [0,1]");
  }
}

}  // namespace

ThresholdModel::ThresholdModel(std::shared_ptr<const Network> net, AgentSet behavior, Rational theta)
    : net_(std::move(net)), behavior_(std::move(behavior)), theta_(std::move(theta)) {
  if (behavior_.universe() != net_->size()) {
    throw Error(Errc::UnknownAgent, "behavior set does not match the agent set");
  }
  for (AgentId a = 0; a < net_->size(); ++a) {
    if (net_->degree(a) == 0) throw Error(Errc::IsolatedAgent, "agent '" + net_->name(a) + "' has no neighbors");
  }
  check_theta(theta_);
}

ThresholdModel ThresholdModel::with_behavior(AgentSet behavior) const {
  return ThresholdModel(net_, std::move(behavior), theta_);
}

ThresholdModel ThresholdModel::with_theta(Rational theta) const { return ThresholdModel(net_, behavior_, std::move(theta)); }

GeneralModel ThresholdModel::general() const {
  Valuation v;
  v.emplace(std::string(kBehaviorAtom), behavior_);
  return GeneralModel(net_, std::move(v), theta_);
}

ThresholdModel build_model(std::vector<std::string> agents,
                           const std::vector<std::pair<std::string, std::string>>& edges,
                           const std::vector<std::string>& behavior, Rational theta) {
  check_theta(theta);
  auto net = Network::build(std::move(agents), edges);
  return ThresholdModel(net, net->set_of(behavior), std::move(theta));
}

GeneralModel::GeneralModel(std::shared_ptr<const Network> net, Valuation valuation, std::optional<Rational> theta)
    : net_(std::move(net)), valuation_(std::move(valuation)), theta_(std::move(theta)) {
  for (const auto& [name, ext] : valuation_) {
    if (ext.universe() != net_->size()) {
      throw Error(Errc::UnknownAgent, "extension of atom '" + name + "' does not match the agent set");
    }
  }
  if (theta_) check_theta(*theta_);
}

const AgentSet& GeneralModel::atom(std::string_view name) const {
  auto it = valuation_.find(name);
  if (it == valuation_.end()) throw Error(Errc::UnknownAtom, "model has no atom '" + std::string(name) + "'");
  return it->second;
}

GeneralModel GeneralModel::with_valuation(Valuation valuation) const {
  return GeneralModel(net_, std::move(valuation), theta_);
}

void check_belief_exclusive(const GeneralModel& m) {
  const AgentSet& p = m.atom(kBelievesP);
  const AgentSet& np = m.atom(kBelievesNotP);
  auto both = p & np;
  if (!both.empty()) {
    throw Error(Errc::InvalidDocument,
                "agent '" + m.network().name(both.members().front()) + "' believes both p and not p");
  }
}

GeneralModel build_belief_model(std::vector<std::string> agents,
                                const std::vector<std::pair<std::string, std::string>>& edges,
                                const std::vector<std::string>& believes_p,
                                const std::vector<std::string>& believes_not_p) {
  auto net = Network::build(std::move(agents), edges);
  Valuation v;
  v.emplace(std::string(kBelievesP), net->set_of(believes_p));
  v.emplace(std::string(kBelievesNotP), net->set_of(believes_not_p));
  GeneralModel m(net, std::move(v));
  check_belief_exclusive(m);
  return m;
}

}  // namespace tam
