#include <doctest.h>

#include "tam/belief.hpp"
#include "tam/errors.hpp"
#include "tam/io.hpp"
#include "tam/logic.hpp"
#include "test_support.hpp"

using namespace tam;

namespace {

// Agent x has friends y and z.
GeneralModel friends(std::vector<std::string> bp, std::vector<std::string> bnp) {
  return build_belief_model({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}}, bp, bnp);
}

AtomState state_of(const GeneralModel& m, std::string_view name) {
  return atom_state_of(m, m.network().index(name));
}

bool same_atoms(const GeneralModel& a, const GeneralModel& b) {
  return a.atom("Bp") == b.atom("Bp") && a.atom("Bnp") == b.atom("Bnp");
}

}  // namespace

TEST_CASE("strong and weak influence") {
  CHECK(eval(friends({"y", "z"}, {}), 0, strong(Polarity::P)));
  CHECK(eval(friends({"y"}, {}), 0, weak(Polarity::P)));
  CHECK_FALSE(eval(friends({"y"}, {}), 0, strong(Polarity::P)));
  CHECK_FALSE(eval(friends({"y"}, {"z"}), 0, strong(Polarity::P)));
  CHECK_FALSE(eval(friends({"y"}, {"z"}), 0, weak(Polarity::P)));
  CHECK(eval(friends({}, {"y", "z"}), 0, strong(Polarity::NotP)));
  CHECK(to_string(strong(Polarity::P)) == "F Bp & <F> Bp");
  CHECK(to_string(weak(Polarity::NotP)) == "F ~Bp & <F> Bnp");
}

TEST_CASE("atom states and labels") {
  auto m = friends({"y"}, {"z"});
  CHECK(state_of(m, "x") == AtomState::Undecided);
  CHECK(state_of(m, "y") == AtomState::BelievesP);
  CHECK(state_of(m, "z") == AtomState::BelievesNotP);
  for (auto s : {AtomState::Undecided, AtomState::BelievesP, AtomState::BelievesNotP}) {
    CHECK(label_atom_state(canonical_label(s)) == s);
    CHECK(post_atom_state(post_for(s)) == s);
  }
  CHECK(label_atom_state(parse_formula("~Bnp & ~Bp")) == AtomState::Undecided);
  CHECK_THROWS_AS(label_atom_state(parse_formula("F Bp")), Error);
}

TEST_CASE("influence automaton steps") {
  Automaton fig = io::influence_automaton();
  REQUIRE(fig.states().size() == 3);
  CHECK(fig.transitions().size() == 6);

  auto pulled = automaton_step(friends({"y", "z"}, {}), fig);
  CHECK(state_of(pulled, "x") == AtomState::BelievesP);

  auto split = automaton_step(friends({"y"}, {"z"}), fig);
  CHECK(state_of(split, "x") == AtomState::Undecided);

  // a believer of p surrounded by believers of not-p flips
  auto flipped = automaton_step(build_belief_model({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}}, {"x"}, {"y", "z"}), fig);
  CHECK(state_of(flipped, "x") == AtomState::BelievesNotP);

  // weak opposite influence unsettles a believer
  auto unsettled = automaton_step(build_belief_model({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}}, {"x"}, {"y"}), fig);
  CHECK(state_of(unsettled, "x") == AtomState::Undecided);
}

TEST_CASE("automaton step errors") {
  Automaton only_up({{"Up", undecided()}}, {});
  try {
    automaton_step(friends({"y"}, {}), only_up);
    FAIL("expected NoMatchingState");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoMatchingState);
  }
  Automaton racy({{"Up", undecided()}, {"Bp", atom("Bp")}, {"Bnp", atom("Bnp")}},
                 {{"Up", top(), "Bp"}, {"Up", top(), "Bnp"}});
  try {
    automaton_step(friends({}, {}), racy);
    FAIL("expected NondeterminismDetected");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NondeterminismDetected);
  }
  CHECK_THROWS_AS(Automaton({{"Up", undecided()}}, {{"Up", top(), "Nowhere"}}), Error);
}

TEST_CASE("exclusivity and determinism over random models") {
  Automaton fig = io::influence_automaton();
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto m = random_belief_model(seed, 2 + seed % 9, 0.5);
    for (int k = 0; k < 10; ++k) {
      m = automaton_step(m, fig);  // throws on two firing triggers
      CHECK((m.atom("Bp") & m.atom("Bnp")).empty());
    }
  }
}

TEST_CASE("translation shape") {
  Automaton fig = io::influence_automaton();
  ActionModel e = automaton_to_action_model(fig);
  CHECK(e.size() == fig.transitions().size() + fig.states().size());
  CHECK(e.relation().is_full(e.size()));
  CHECK(e.states().front().id == "t1");
  for (const auto& s : e.states()) {
    CHECK(s.pre.op() == Op::And);
    if (s.id.starts_with("stay_")) CHECK(s.post.empty());
  }

  Automaton single({{"Bp", atom("Bp")}}, {});
  ActionModel one = automaton_to_action_model(single);
  REQUIRE(one.size() == 1);
  CHECK(one.states()[0].post.empty());
  CHECK(one.states()[0].pre == conj(atom("Bp"), top()));
  CHECK(action_model_to_automaton(one) == single);
}

TEST_CASE("non-conjunctive precondition is rejected") {
  ActionModel e({{"s", diam_leq(atom("B")), post_B()}});
  try {
    action_model_to_automaton(e);
    FAIL("expected PreconditionNotConjunctive");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::PreconditionNotConjunctive);
  }
}

TEST_CASE("round trips") {
  Automaton fig = io::influence_automaton();
  ActionModel e = automaton_to_action_model(fig);
  CHECK(action_model_to_automaton(e) == fig);
  CHECK(same_up_to_relabeling(action_model_to_automaton(e), fig));
  CHECK(automaton_to_action_model(action_model_to_automaton(e)) == e);

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    ActionModel r = testing::random_conjunctive_action_model(rng);
    Automaton a = action_model_to_automaton(r);
    CHECK(automaton_to_action_model(a) == r);
    CHECK(same_up_to_relabeling(automaton_to_action_model(a), r));
    CHECK(action_model_to_automaton(automaton_to_action_model(a)) == a);
  }
}

TEST_CASE("automaton and translated action model agree") {
  Automaton fig = io::influence_automaton();
  ActionModel e = automaton_to_action_model(fig);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto m = random_belief_model(seed, 2 + seed % 9, 0.5);
    auto via_product = m;
    for (int k = 0; k < 10; ++k) {
      m = automaton_step(m, fig);
      via_product = canonical_product(via_product, e);
      CHECK(same_atoms(m, via_product));
    }
  }
}

TEST_CASE("random belief models") {
  auto a = random_belief_model(8, 7, 0.5);
  CHECK(a == random_belief_model(8, 7, 0.5));
  CHECK_NOTHROW(check_belief_exclusive(a));
  CHECK_FALSE(a.theta().has_value());
}
