#include <doctest.h>

#include <random>

#include "tam/errors.hpp"
#include "tam/model.hpp"
#include "tam/orbit.hpp"
#include "test_support.hpp"

using namespace tam;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Io;
}

}  // namespace

TEST_CASE("smallest legal model") {
  auto m = build_model({"b", "a"}, {{"a", "b"}}, {"a"}, Rational(1, 2));
  const Network& net = m.network();
  REQUIRE(net.size() == 2);
  CHECK(net.name(0) == "a");
  CHECK(net.names_of(AgentSet(2, true)) == std::vector<std::string>{"a", "b"});
  CHECK(net.neighbors(net.index("a")).size() == 1);
  CHECK(net.neighbors(net.index("a"))[0] == net.index("b"));
  CHECK(net.neighbors(net.index("b"))[0] == net.index("a"));
  CHECK(testing::behavior_names(m) == std::set<std::string>{"a"});
}

TEST_CASE("construction errors") {
  CHECK(code_of([] { build_model({"a"}, {{"a", "a"}}, {}, Rational(0)); }) == Errc::SelfLoop);
  CHECK(code_of([] { build_model({"a", "b", "c"}, {{"a", "b"}}, {}, Rational(0)); }) == Errc::IsolatedAgent);
  CHECK(code_of([] { build_model({"a", "b"}, {{"a", "z"}}, {}, Rational(0)); }) == Errc::UnknownAgent);
  CHECK(code_of([] { build_model({"a", "b"}, {{"a", "b"}}, {"z"}, Rational(0)); }) == Errc::UnknownAgent);
  CHECK(code_of([] { build_model({"a", "a"}, {{"a", "a"}}, {}, Rational(0)); }) == Errc::DuplicateAgent);
  CHECK(code_of([] { build_model({"a", "b"}, {{"a", "b"}}, {}, Rational(3, 2)); }) == Errc::ThetaOutOfRange);
  CHECK(code_of([] { build_model({"a", "b"}, {{"a", "b"}}, {}, Rational(-1, 2)); }) == Errc::ThetaOutOfRange);
  try {
    build_model({"a", "b", "c"}, {{"a", "b"}}, {}, Rational(0));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'c'") != std::string::npos);
  }
}

TEST_CASE("symmetrization is idempotent") {
  auto one_way = Network::build({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}});
  auto both = Network::build({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}});
  CHECK(*one_way == *both);
  std::vector<std::pair<std::string, std::string>> again;
  for (auto [x, y] : one_way->edges()) {
    again.emplace_back(one_way->name(x), one_way->name(y));
    again.emplace_back(one_way->name(y), one_way->name(x));
  }
  CHECK(*Network::build(one_way->names(), again) == *one_way);
  CHECK(one_way->linked(0, 1));
  CHECK(one_way->linked(1, 0));
  CHECK_FALSE(one_way->linked(0, 2));
}

TEST_CASE("neighbor_fraction examples") {
  auto m = testing::operator_illustration_model();
  const Network& net = m.network();
  AgentSet only_b = net.set_of({"b"});
  AgentSet bcd = net.set_of({"a", "c", "d"});
  // N(b) = {a, c, d}
  CHECK(neighbor_fraction(net, net.index("b"), net.set_of({"a"})) == Rational(1, 3));
  CHECK(neighbor_fraction(net, net.index("e"), AgentSet(5)) == Rational(0));
  CHECK(neighbor_fraction(net, net.index("b"), bcd) == Rational(1));
  CHECK(neighbor_fraction(net, net.index("c"), only_b) == Rational(1, 2));
}

TEST_CASE("fraction of a set and its complement sum to one") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto m = random_model(seed, 2 + seed % 9, 0.4, 0.5);
    std::mt19937_64 rng(seed);
    AgentSet x(m.agent_count());
    for (AgentId a = 0; a < m.agent_count(); ++a) x.assign(a, rng() % 2);
    for (AgentId a = 0; a < m.agent_count(); ++a) {
      CHECK(neighbor_fraction(m.network(), a, x) + neighbor_fraction(m.network(), a, x.complement()) == Rational(1));
    }
  }
}

TEST_CASE("agent sets") {
  AgentSet s(4);
  s.insert(1);
  s.insert(3);
  CHECK(s.count() == 2);
  CHECK(s.members() == std::vector<AgentId>{1, 3});
  CHECK(s.complement().members() == std::vector<AgentId>{0, 2});
  AgentSet t(4);
  t.insert(3);
  t.insert(0);
  CHECK((s & t).members() == std::vector<AgentId>{3});
  CHECK((s | t).members() == std::vector<AgentId>{0, 1, 3});
  CHECK((s ^ t).members() == std::vector<AgentId>{0, 1});
  CHECK(AgentSet(3).empty());
}

TEST_CASE("general models") {
  auto g = build_belief_model({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {"a"}, {"c"});
  CHECK(g.has_atom("Bp"));
  CHECK(g.has_atom("Bnp"));
  CHECK_FALSE(g.theta().has_value());
  CHECK(code_of([&] { g.atom("B"); }) == Errc::UnknownAtom);
  CHECK(code_of([] { build_belief_model({"a", "b"}, {{"a", "b"}}, {"a"}, {"a"}); }) == Errc::InvalidDocument);
  auto m = testing::two_clique({"a"}, "1/2");
  CHECK(m.general().atom("B") == m.behavior());
  CHECK(m.general().theta() == Rational(1, 2));
}
