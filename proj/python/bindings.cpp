#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "tam/action_model.hpp"
#include "tam/belief.hpp"
#include "tam/dynamics.hpp"
#include "tam/errors.hpp"
#include "tam/io.hpp"
#include "tam/logic.hpp"
#include "tam/orbit.hpp"

namespace py = pybind11;
using namespace tam;

namespace {

// Thetas cross the boundary as exact text: "p/q", an int, or a Fraction.
Rational to_rational(const py::object& o) {
  if (py::isinstance<py::float_>(o)) {
    throw Error(Errc::InvalidRational, "theta must be exact (\"p/q\" or Fraction), got a float");
  }
  return Rational::parse(py::str(o).cast<std::string>());
}

std::vector<std::string> names(const Network& net, const AgentSet& s) { return net.names_of(s); }

Formula as_formula(const py::object& f) {
  if (py::isinstance<py::str>(f)) return parse_formula(f.cast<std::string>());
  return f.cast<Formula>();
}

UpdateRule threshold_rule(const std::string& spec) {
  cli::Rule r = cli::parse_rule(spec);
  if (!std::holds_alternative<UpdateRule>(r)) {
    throw Error(Errc::InvalidDocument, "automaton rules apply to belief models");
  }
  return std::get<UpdateRule>(r);
}

ActionModel as_action_model(const py::object& o) {
  if (py::isinstance<py::str>(o)) {
    UpdateRule r = threshold_rule(o.cast<std::string>());
    if (auto* am = std::get_if<ActionModelRule>(&r)) return am->model;
    throw Error(Errc::InvalidDocument, "expected an am:... rule");
  }
  return o.cast<ActionModel>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Threshold-model diffusion dynamics, action models and belief automata";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<Formula>(m, "Formula")
      .def(py::init([](const std::string& text) { return parse_formula(text); }), py::arg("text"))
      .def("__str__", [](const Formula& f) { return to_string(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + to_string(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def_property_readonly("depth", &Formula::depth)
      .def_property_readonly("atoms", [](const Formula& f) { return atoms_of(f); });

  m.def("parse_formula", &parse_formula, py::arg("text"));

  py::class_<ThresholdModel>(m, "ThresholdModel")
      .def(py::init([](std::vector<std::string> agents, std::vector<std::pair<std::string, std::string>> edges,
                       std::vector<std::string> behavior, const py::object& theta) {
             return build_model(std::move(agents), edges, behavior, to_rational(theta));
           }),
           py::arg("agents"), py::arg("edges"), py::arg("behavior"), py::arg("theta"))
      .def_property_readonly("agents", [](const ThresholdModel& x) { return x.network().names(); })
      .def_property_readonly("behavior", [](const ThresholdModel& x) { return names(x.network(), x.behavior()); })
      .def_property_readonly("theta", [](const ThresholdModel& x) { return x.theta().to_string(); })
      .def_property_readonly("edges",
                             [](const ThresholdModel& x) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (auto [a, b] : x.network().edges()) out.emplace_back(x.network().name(a), x.network().name(b));
                               return out;
                             })
      .def("neighbors",
           [](const ThresholdModel& x, const std::string& a) {
             std::vector<std::string> out;
             for (AgentId b : x.network().neighbors(x.network().index(a))) out.push_back(x.network().name(b));
             return out;
           })
      .def("fraction",
           [](const ThresholdModel& x, const std::string& a) {
             return neighbor_fraction(x.network(), x.network().index(a), x.behavior()).to_string();
           },
           "Fraction of a's neighbors in B, as \"p/q\"")
      .def("with_behavior",
           [](const ThresholdModel& x, const std::vector<std::string>& b) {
             return x.with_behavior(x.network().set_of(b));
           })
      .def("with_theta", [](const ThresholdModel& x, const py::object& t) { return x.with_theta(to_rational(t)); })
      .def("to_json", [](const ThresholdModel& x) { return io::dump(io::to_json(x)); })
      .def_static("from_json",
                  [](const std::string& text) { return io::threshold_model_from_json(io::parse_json(text)); })
      .def("to_dot", [](const ThresholdModel& x) { return io::to_dot(x); })
      .def("__eq__", [](const ThresholdModel& a, const ThresholdModel& b) { return a == b; })
      .def("__repr__", [](const ThresholdModel& x) {
        std::ostringstream os;
        os << "ThresholdModel(" << x.agent_count() << " agents, |B|=" << x.behavior().count()
           << ", theta=" << x.theta() << ")";
        return os.str();
      });

  py::class_<GeneralModel>(m, "BeliefModel")
      .def(py::init([](std::vector<std::string> agents, std::vector<std::pair<std::string, std::string>> edges,
                       std::vector<std::string> bp, std::vector<std::string> bnp) {
             return build_belief_model(std::move(agents), edges, bp, bnp);
           }),
           py::arg("agents"), py::arg("edges"), py::arg("believes_p"), py::arg("believes_not_p"))
      .def_property_readonly("agents", [](const GeneralModel& x) { return x.network().names(); })
      .def("states",
           [](const GeneralModel& x) {
             std::map<std::string, std::string> out;
             for (AgentId a = 0; a < x.agent_count(); ++a) {
               out[x.network().name(a)] = std::string(to_string(atom_state_of(x, a)));
             }
             return out;
           },
           "Map agent -> Up | Bp | Bnp")
      .def("atom", [](const GeneralModel& x, const std::string& q) { return names(x.network(), x.atom(q)); })
      .def("to_json", [](const GeneralModel& x) { return io::dump(io::to_json(x)); })
      .def_static("from_json", [](const std::string& text) { return io::belief_model_from_json(io::parse_json(text)); })
      .def("__eq__", [](const GeneralModel& a, const GeneralModel& b) { return a == b; });

  m.def("random_model",
        [](std::uint64_t seed, std::size_t n, double p_edge, double p_b, const py::object& theta) {
          std::optional<Rational> t;
          if (!theta.is_none()) t = to_rational(theta);
          return random_model(seed, n, p_edge, p_b, t);
        },
        py::arg("seed"), py::arg("n_agents"), py::arg("edge_probability") = 0.5,
        py::arg("behavior_probability") = 0.5, py::arg("theta") = py::none());
  m.def("random_belief_model", [](std::uint64_t seed, std::size_t n, double p) { return random_belief_model(seed, n, p); },
        py::arg("seed"), py::arg("n_agents"), py::arg("edge_probability") = 0.5);

  // logic
  m.def("evaluate",
        [](const ThresholdModel& x, const std::string& agent, const py::object& f) {
          return eval(x, x.network().index(agent), as_formula(f));
        },
        py::arg("model"), py::arg("agent"), py::arg("formula"));
  m.def("evaluate",
        [](const GeneralModel& x, const std::string& agent, const py::object& f) {
          return eval(x, x.network().index(agent), as_formula(f));
        },
        py::arg("model"), py::arg("agent"), py::arg("formula"));
  m.def("evaluate_subsets",
        [](const ThresholdModel& x, const std::string& agent, const py::object& f) {
          return eval_subset_oracle(x, x.network().index(agent), as_formula(f));
        },
        py::arg("model"), py::arg("agent"), py::arg("formula"));
  m.def("extension",
        [](const ThresholdModel& x, const py::object& f) { return names(x.network(), extension(x, as_formula(f))); });
  m.def("extension",
        [](const GeneralModel& x, const py::object& f) { return names(x.network(), extension(x, as_formula(f))); });

  // direct dynamics
  m.def("step_eq1", &step_eq1);
  m.def("step_eq2", &step_eq2);
  m.def("game_threshold",
        [](const std::string& kind, const py::object& x, const py::object& y) {
          GameKind k = kind == "coord" ? GameKind::Coordination : GameKind::Anticoordination;
          if (kind != "coord" && kind != "anti") throw Error(Errc::InvalidDocument, "kind must be coord or anti");
          return game_threshold(Game(k, to_rational(x), to_rational(y))).to_string();
        },
        py::arg("kind"), py::arg("x"), py::arg("y"));

  // action models
  py::class_<ActionModel>(m, "ActionModel")
      .def_property_readonly("states",
                             [](const ActionModel& e) {
                               std::vector<std::tuple<std::string, std::string, std::string>> out;
                               for (const auto& s : e.states()) {
                                 io::Json post = io::to_json(ActionModel({s})).at("states").at(0).at("post");
                                 out.emplace_back(s.id, to_string(s.pre),
                                                  post.is_string() ? post.get<std::string>() : post.dump());
                               }
                               return out;
                             },
                             "(id, precondition, postcondition) triples")
      .def("to_json", [](const ActionModel& e) { return io::dump(io::to_json(e)); })
      .def_static("from_json", [](const std::string& t) { return io::action_model_from_json(io::parse_json(t)); })
      .def("__eq__", [](const ActionModel& a, const ActionModel& b) { return a == b; })
      .def("__len__", &ActionModel::size);

  m.def("table1", &table1, py::arg("index"));
  m.def("e1", &e1);
  m.def("e2", &e2);
  m.def("classify", [](int i) { return std::string(to_string(classify(i))); }, py::arg("index"));
  m.def("canonical_product",
        [](const ThresholdModel& x, const py::object& e) { return canonical_product(x, as_action_model(e)); },
        py::arg("model"), py::arg("action_model"));
  m.def("canonical_product",
        [](const GeneralModel& x, const py::object& e) { return canonical_product(x, as_action_model(e)); },
        py::arg("model"), py::arg("action_model"));
  m.def("product_size",
        [](const ThresholdModel& x, const py::object& e) { return product_update(x, as_action_model(e)).model.agent_count(); },
        "Number of (agent, state) pairs in the product update");

  // orbits and equivalence; rules are CLI-style specs such as "eq2" or "am:22"
  m.def("run",
        [](const ThresholdModel& x, const std::string& rule, std::size_t steps) {
          Trace t = run(x, threshold_rule(rule), steps);
          std::vector<std::vector<std::string>> out;
          for (const auto& b : t.behavior) out.push_back(names(x.network(), b));
          return out;
        },
        py::arg("model"), py::arg("rule"), py::arg("steps"));
  m.def("detect_orbit",
        [](const ThresholdModel& x, const std::string& rule, std::size_t cap) {
          OrbitResult o = detect_orbit(x, threshold_rule(rule), cap);
          return std::make_pair(o.transient, o.period);
        },
        py::arg("model"), py::arg("rule"), py::arg("cap") = 4096, "Returns (transient, period)");
  m.def("check_equivalence",
        [](const ThresholdModel& x, const std::string& left, const std::string& right, std::size_t steps) {
          EquivalenceReport r = check_stepwise_equivalence(x, threshold_rule(left), threshold_rule(right), steps);
          py::dict out;
          out["equivalent"] = r.equivalent;
          if (r.first_divergence) {
            out["step"] = r.first_divergence->step;
            out["differing"] = names(x.network(), r.first_divergence->differing);
          }
          return out;
        },
        py::arg("model"), py::arg("left"), py::arg("right"), py::arg("steps") = 10);

  // belief automata
  py::class_<Automaton>(m, "Automaton")
      .def_property_readonly("states",
                             [](const Automaton& a) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& s : a.states()) out.emplace_back(s.id, to_string(s.label));
                               return out;
                             })
      .def_property_readonly("transitions",
                             [](const Automaton& a) {
                               std::vector<std::tuple<std::string, std::string, std::string>> out;
                               for (const auto& t : a.transitions()) out.emplace_back(t.from, to_string(t.trigger), t.to);
                               return out;
                             })
      .def("to_json", [](const Automaton& a) { return io::dump(io::to_json(a)); })
      .def_static("from_json", [](const std::string& t) { return io::automaton_from_json(io::parse_json(t)); })
      .def("__eq__", [](const Automaton& a, const Automaton& b) { return a == b; });

  m.def("influence_automaton", &io::influence_automaton);
  m.def("automaton_step", &automaton_step, py::arg("model"), py::arg("automaton"));
  m.def("automaton_to_action_model", &automaton_to_action_model);
  m.def("action_model_to_automaton", &action_model_to_automaton);

  // command line, in process
  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run threshold-am with the given arguments; returns (exit_code, stdout, stderr)");
}
