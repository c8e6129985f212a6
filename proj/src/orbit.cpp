#include "tam/orbit.hpp"

#include <sstream>

namespace tam {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ThresholdModel apply_rule(const UpdateRule& rule, const ThresholdModel& m) {
  return std::visit(overloaded{
                        [&](const Eq1Rule&) { return step_eq1(m); },
                        [&](const Eq2Rule&) { return step_eq2(m); },
                        [&](const BestResponseRule& r) { return best_response_step(m, r.game, r.tie, r.seed); },
                        [&](const ActionModelRule& r) { return canonical_product(m, r.model); },
                    },
                    rule);
}

std::optional<Rational> forced_theta(const UpdateRule& rule) {
  if (const auto* br = std::get_if<BestResponseRule>(&rule)) return behavior_threshold(br->game);
  return std::nullopt;
}

std::string describe(const UpdateRule& rule) {
  return std::visit(overloaded{
                        [](const Eq1Rule&) { return std::string("eq1"); },
                        [](const Eq2Rule&) { return std::string("eq2"); },
                        [](const BestResponseRule& r) {
                          std::ostringstream os;
                          os << "br:" << to_string(r.game.kind) << ':' << r.game.x << ':' << r.game.y << ':'
                             << to_string(r.tie) << (r.seed ? ":seed" : "");
                          return os.str();
                        },
                        [](const ActionModelRule& r) {
                          return "action model (" + std::to_string(r.model.size()) + " states)";
                        },
                    },
                    rule);
}

Trace run(const ThresholdModel& m, const UpdateRule& rule, std::size_t steps) {
  ThresholdModel cur = m;
  if (auto theta = forced_theta(rule)) cur = cur.with_theta(*theta);
  Trace t{cur, {cur.behavior()}};
  t.behavior.reserve(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) {
    cur = apply_rule(rule, cur);
    t.behavior.push_back(cur.behavior());
  }
  return t;
}

OrbitResult detect_orbit(const ThresholdModel& m, const UpdateRule& rule, std::size_t cap) {
  ThresholdModel start = m;
  if (auto theta = forced_theta(rule)) start = start.with_theta(*theta);
  auto step = [&](const AgentSet& b) { return apply_rule(rule, start.with_behavior(b)).behavior(); };
  return find_orbit<AgentSet, AgentSetHash>(start.behavior(), step, cap);
}

EquivalenceReport check_stepwise_equivalence(const ThresholdModel& m, const UpdateRule& a, const UpdateRule& b,
                                             std::size_t steps) {
  // A forced theta from either side applies to both, so the two rules start
  // from the same model.
  ThresholdModel start = m;
  if (auto theta = forced_theta(a)) {
    start = start.with_theta(*theta);
  } else if (auto theta_b = forced_theta(b)) {
    start = start.with_theta(*theta_b);
  }
  Trace ta = run(start, a, steps);
  Trace tb = run(start, b, steps);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (ta.behavior[k] != tb.behavior[k]) {
      return {false, Divergence{k, ta.behavior[k], tb.behavior[k], ta.behavior[k] ^ tb.behavior[k]}};
    }
  }
  return {true, std::nullopt};
}

std::size_t tie_agent_count(const ThresholdModel& m) {
  const Network& net = m.network();
  std::size_t ties = 0;
  for (AgentId a = 0; a < net.size(); ++a) {
    if (compare_fraction(neighbors_in(net, a, m.behavior()), net.degree(a), m.theta()) == 0) ++ties;
  }
  return ties;
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased and implementation-independent.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

Rational random_theta(std::mt19937_64& rng, std::size_t max_degree) {
  const std::uint64_t q = 1 + uniform_index(rng, std::max<std::size_t>(1, max_degree));
  const std::uint64_t p = uniform_index(rng, q + 1);
  return Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
}

ThresholdModel random_model(std::uint64_t seed, std::size_t n_agents, double edge_probability,
                            double behavior_probability, std::optional<Rational> theta,
                            std::size_t max_resamples) {
  if (n_agents < 2) throw Error(Errc::GenerationFailed, "random models need at least 2 agents");
  if (edge_probability < 0 || edge_probability > 1 || behavior_probability < 0 || behavior_probability > 1) {
    throw Error(Errc::GenerationFailed, "probabilities must lie in [0,1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_agents; ++i) names.push_back("a" + std::to_string(i));

  for (std::size_t attempt = 0; attempt < max_resamples; ++attempt) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::size_t> degree(n_agents, 0);
    for (std::size_t i = 0; i < n_agents; ++i) {
      for (std::size_t j = i + 1; j < n_agents; ++j) {
        if (unit_draw(rng) < edge_probability) {
          edges.emplace_back(names[i], names[j]);
          ++degree[i];
          ++degree[j];
        }
      }
    }
    if (std::find(degree.begin(), degree.end(), 0) != degree.end()) continue;

    std::vector<std::string> behavior;
    for (std::size_t i = 0; i < n_agents; ++i) {
      if (unit_draw(rng) < behavior_probability) behavior.push_back(names[i]);
    }
    auto net = Network::build(names, edges);
    Rational th = theta ? *theta : random_theta(rng, net->max_degree());
    return ThresholdModel(net, net->set_of(behavior), th);
  }
  throw Error(Errc::GenerationFailed,
              "could not generate a model without isolated agents in " + std::to_string(max_resamples) + " attempts");
}

}  // namespace tam
