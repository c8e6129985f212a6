#include "tam/logic.hpp"

#include "tam/errors.hpp"

namespace tam {

namespace {

const Rational& require_theta(const GeneralModel& m) {
  if (!m.theta()) throw Error(Errc::MissingTheta, "threshold modality evaluated on a model without theta");
  return *m.theta();
}

std::size_t require_degree(const Network& net, AgentId a) {
  std::size_t deg = net.degree(a);
  if (deg == 0) throw Error(Errc::IsolatedAgent, "threshold modality at isolated agent '" + net.name(a) + "'");
  return deg;
}

}  // namespace

AgentSet extension(const GeneralModel& m, const Formula& phi) {
  const Network& net = m.network();
  const std::size_t n = net.size();
  switch (phi.op()) {
    case Op::Top:
      return AgentSet(n, true);
    case Op::Atom:
      return m.atom(phi.atom_name());
    case Op::Not:
      return extension(m, phi.operand()).complement();
    case Op::And:
      return extension(m, phi.left()) & extension(m, phi.right());
    case Op::DiamLeq:
    case Op::EqTheta: {
      const Rational& theta = require_theta(m);
      AgentSet inner = extension(m, phi.operand());
      AgentSet out(n);
      for (AgentId a = 0; a < n; ++a) {
        auto cmp = compare_fraction(neighbors_in(net, a, inner), require_degree(net, a), theta);
        out.assign(a, phi.op() == Op::DiamLeq ? cmp >= 0 : cmp == 0);
      }
      return out;
    }
    case Op::BoxLeq: {
      require_theta(m);
      AgentSet inner = extension(m, phi.operand());
      AgentSet out(n);
      for (AgentId a = 0; a < n; ++a) out.assign(a, neighbors_in(net, a, inner) == require_degree(net, a));
      return out;
    }
    case Op::BoxF:
    case Op::DiamF: {
      AgentSet inner = extension(m, phi.operand());
      AgentSet out(n);
      for (AgentId a = 0; a < n; ++a) {
        std::size_t k = neighbors_in(net, a, inner);
        out.assign(a, phi.op() == Op::BoxF ? k == net.degree(a) : k > 0);
      }
      return out;
    }
  }
  return AgentSet(n);
}

AgentSet extension(const ThresholdModel& m, const Formula& phi) { return extension(m.general(), phi); }

bool eval(const GeneralModel& m, AgentId a, const Formula& phi) {
  if (a >= m.agent_count()) throw Error(Errc::UnknownAgent, "agent index out of range");
  switch (phi.op()) {
    case Op::Top: return true;
    case Op::Atom: return m.atom(phi.atom_name()).contains(a);
    case Op::Not: return !eval(m, a, phi.operand());
    case Op::And: return eval(m, a, phi.left()) && eval(m, a, phi.right());
    default: return extension(m, phi).contains(a);
  }
}

bool eval(const ThresholdModel& m, AgentId a, const Formula& phi) { return eval(m.general(), a, phi); }

const std::vector<bool>& SubsetOracle::table(const Formula& phi) {
  auto it = memo_.find(phi.id());
  if (it != memo_.end()) return it->second.second;
  std::vector<bool> values(model_.agent_count());
  for (AgentId a = 0; a < values.size(); ++a) values[a] = compute(a, phi);
  return memo_.emplace(phi.id(), std::make_pair(phi, std::move(values))).first->second.second;
}

bool SubsetOracle::holds(AgentId a, const Formula& phi) {
  if (a >= model_.agent_count()) throw Error(Errc::UnknownAgent, "agent index out of range");
  return table(phi)[a];
}

bool SubsetOracle::compute(AgentId a, const Formula& phi) {
  const Network& net = model_.network();
  switch (phi.op()) {
    case Op::Top: return true;
    case Op::Atom: return model_.atom(phi.atom_name()).contains(a);
    case Op::Not: return !table(phi.operand())[a];
    case Op::And: return table(phi.left())[a] && table(phi.right())[a];
    case Op::BoxF:
    case Op::DiamF: {
      const auto& inner = table(phi.operand());
      bool all = true;
      bool any = false;
      for (AgentId b : net.neighbors(a)) {
        all = all && inner[b];
        any = any || inner[b];
      }
      return phi.op() == Op::BoxF ? all : any;
    }
    case Op::EqTheta: {
      const Rational& theta = require_theta(model_);
      const auto& inner = table(phi.operand());
      std::size_t deg = require_degree(net, a);
      std::size_t k = 0;
      for (AgentId b : net.neighbors(a)) k += inner[b] ? 1 : 0;
      return Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(deg)) == theta;
    }
    case Op::DiamLeq:
    case Op::BoxLeq: {
      const Rational& theta = require_theta(model_);
      const auto& inner = table(phi.operand());
      auto nbrs = net.neighbors(a);
      std::size_t deg = require_degree(net, a);
      if (deg >= 63) throw Error(Errc::IndexOutOfRange, "subset oracle limited to degree < 63");
      // Bitmask over neighbor positions of those satisfying phi.
      std::uint64_t sat = 0;
      for (std::size_t i = 0; i < deg; ++i) {
        if (inner[nbrs[i]]) sat |= std::uint64_t{1} << i;
      }
      std::vector<bool> large_enough(deg + 1);
      for (std::size_t size = 0; size <= deg; ++size) {
        large_enough[size] =
            theta <= Rational(static_cast<std::int64_t>(size), static_cast<std::int64_t>(deg));
      }
      const std::uint64_t subsets = std::uint64_t{1} << deg;
      for (std::uint64_t c = 0; c < subsets; ++c) {
        if (!large_enough[__builtin_popcountll(c)]) continue;
        bool inside = (c & ~sat) == 0;
        if (phi.op() == Op::DiamLeq && inside) return true;
        if (phi.op() == Op::BoxLeq && !inside) return false;
      }
      return phi.op() == Op::BoxLeq;
    }
  }
  return false;
}

bool eval_subset_oracle(const GeneralModel& m, AgentId a, const Formula& phi) {
  return SubsetOracle(m).holds(a, phi);
}

bool eval_subset_oracle(const ThresholdModel& m, AgentId a, const Formula& phi) {
  return SubsetOracle(m.general()).holds(a, phi);
}

}  // namespace tam
