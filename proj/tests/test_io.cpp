#include <doctest.h>

#include <random>

#include "tam/errors.hpp"
#include "tam/io.hpp"
#include "test_support.hpp"

using namespace tam;
using io::Json;

TEST_CASE("threshold model documents") {
  Json j = io::parse_json(R"({"agents": ["b","a"], "edges": [["a","b"]], "behavior": ["a"], "theta": "1/2"})");
  auto m = io::threshold_model_from_json(j);
  CHECK(m == testing::two_clique({"a"}, "1/2"));
  Json out = io::to_json(m);
  CHECK(out["agents"] == Json::array({"a", "b"}));
  CHECK(out["theta"] == "1/2");
  CHECK(io::threshold_model_from_json(io::parse_json(io::dump(out))) == m);
  CHECK(io::dump(out).back() == '\n');
}

TEST_CASE("theta must be an exact string") {
  for (const char* doc : {R"({"agents":["a","b"],"edges":[["a","b"]],"behavior":[],"theta":0.5})",
                          R"({"agents":["a","b"],"edges":[["a","b"]],"behavior":[],"theta":"0.5"})",
                          R"({"agents":["a","b"],"edges":[["a","b"]],"behavior":[]})",
                          R"({"agents":["a","b"],"edges":[["a"]],"behavior":[],"theta":"1"})"}) {
    CAPTURE(doc);
    CHECK_THROWS_AS(io::threshold_model_from_json(io::parse_json(doc)), Error);
  }
  try {
    io::threshold_model_from_json(
        io::parse_json(R"({"agents":["a","b"],"edges":[["a","b"]],"behavior":[],"theta":0.5})"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("exact") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_json("{"), Error);
}

TEST_CASE("serialization round-trips") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto m = testing::trial_model(seed);
    Json j = io::to_json(m);
    CHECK(io::parse_json(io::dump(j)) == j);
    CHECK(io::threshold_model_from_json(j) == m);
    auto b = random_belief_model(seed, 2 + seed % 8, 0.5);
    Json jb = io::to_json(b);
    CHECK(io::parse_json(io::dump(jb)) == jb);
    CHECK(io::belief_model_from_json(jb) == b);
  }
  for (int i = 1; i <= 27; ++i) {
    Json j = io::to_json(table1(i));
    CHECK(io::action_model_from_json(j) == table1(i));
    CHECK(io::parse_json(io::dump(j)) == j);
  }
  ActionModel restricted({{"s", top(), post_keep()}, {"t", bottom(), post_not_B()}}, Relation::pairs({{0, 1}}));
  CHECK(io::action_model_from_json(io::to_json(restricted)) == restricted);
  Automaton fig = io::influence_automaton();
  CHECK(io::automaton_from_json(io::to_json(fig)) == fig);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto e = testing::random_conjunctive_action_model(rng);
    CHECK(io::action_model_from_json(io::parse_json(io::dump(io::to_json(e)))) == e);
  }
}

TEST_CASE("belief documents reject overlap") {
  CHECK_THROWS_AS(io::belief_model_from_json(io::parse_json(
                      R"({"agents":["a","b"],"edges":[["a","b"]],"valuation":{"Bp":["a"],"Bnp":["a"]}})")),
                  Error);
}

TEST_CASE("dot export") {
  auto m = testing::two_clique({"a"}, "1/2");
  std::string dot = io::to_dot(m);
  CHECK(dot.find("a [style=filled];") != std::string::npos);
  CHECK(dot.find("a -- b;") != std::string::npos);
  CHECK(dot.starts_with("graph G {"));
  CHECK(dot == io::to_dot(m));
  auto odd = build_model({"x y", "z"}, {{"x y", "z"}}, {"x y"}, Rational(0));
  CHECK(io::to_dot(odd).find("\"x y\" -- z;") != std::string::npos);
  auto b = build_belief_model({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {"a"}, {"c"});
  std::string bd = io::to_dot(b);
  CHECK(bd.find("a [style=filled];") != std::string::npos);
  CHECK(bd.find("c [style=dashed];") != std::string::npos);
}

TEST_CASE("csv traces") {
  auto m = testing::two_clique({"a"}, "3/5");
  CHECK(io::trace_csv(run(m, Eq2Rule{}, 2)) == "step,a,b\n0,1,0\n1,0,1\n2,1,0\n");
  auto b = build_belief_model({"a", "b"}, {{"a", "b"}}, {"a"}, {});
  CHECK(io::belief_trace_csv({b}) == "step,a,b\n0,Bp,Up\n");
}

TEST_CASE("bundled automaton") {
  CHECK(std::filesystem::exists(io::data_dir() / "influence_automaton.json"));
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), Error);
}
