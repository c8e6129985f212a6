#include "tam/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "tam/errors.hpp"

namespace tam::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidDocument, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(string_of(e, what));
  return out;
}

std::vector<std::pair<std::string, std::string>> edge_list(const Json& j) {
  if (!j.is_array()) bad("edges must be an array of [a, b] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad("each edge must be a two-element array");
    out.emplace_back(string_of(e[0], "edge endpoint"), string_of(e[1], "edge endpoint"));
  }
  return out;
}

Rational theta_of(const Json& j) {
  if (j.is_number_float()) {
    bad("theta must be an exact rational string such as \"1/4\"; floating-point values are rejected because "
        "tie checks (fraction == theta) need exact arithmetic");
  }
  if (!j.is_string()) bad("theta must be a rational string such as \"1/2\"");
  return Rational::parse(j.get<std::string>());
}

Json edges_json(const Network& net) {
  Json edges = Json::array();
  for (auto [a, b] : net.edges()) edges.push_back({net.name(a), net.name(b)});
  return edges;
}

Formula formula_of(const Json& j, const char* what) {
  return parse_formula(string_of(j, what));
}

PostCondition post_of(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "B") return post_B();
    if (s == "~B") return post_not_B();
    if (s == "T") return post_keep();
    bad("post must be \"B\", \"~B\", \"T\" or an atom map, got \"" + s + "\"");
  }
  if (!j.is_object()) bad("post must be a string or an object");
  PostCondition p;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_boolean()) bad("post values must be booleans");
    p.emplace(k, v.get<bool>());
  }
  return p;
}

Json post_json(const PostCondition& p) {
  if (auto name = threshold_post_name(p)) return *name;
  Json o = Json::object();
  for (const auto& [k, v] : p) o[k] = v;
  return o;
}

std::string dot_id(const std::string& name) {
  static const std::regex plain("[A-Za-z_][A-Za-z0-9_]*");
  if (std::regex_match(name, plain)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ThresholdModel threshold_model_from_json(const Json& j) {
  return build_model(string_list(field(j, "agents"), "agents"), edge_list(field(j, "edges")),
                     string_list(field(j, "behavior"), "behavior"), theta_of(field(j, "theta")));
}

GeneralModel belief_model_from_json(const Json& j) {
  const Json& val = field(j, "valuation");
  std::vector<std::string> p;
  std::vector<std::string> np;
  if (val.contains("Bp")) p = string_list(val["Bp"], "valuation Bp");
  if (val.contains("Bnp")) np = string_list(val["Bnp"], "valuation Bnp");
  for (const auto& [k, v] : val.items()) {
    if (k != "Bp" && k != "Bnp") bad("belief valuation may only name Bp and Bnp, got '" + k + "'");
  }
  return build_belief_model(string_list(field(j, "agents"), "agents"), edge_list(field(j, "edges")), p, np);
}

Json to_json(const ThresholdModel& m) {
  const Network& net = m.network();
  return Json{{"agents", net.names()},
              {"edges", edges_json(net)},
              {"behavior", net.names_of(m.behavior())},
              {"theta", m.theta().to_string()}};
}

Json to_json(const GeneralModel& m) {
  const Network& net = m.network();
  Json val = Json::object();
  for (const auto& [atom_name, ext] : m.valuation()) val[atom_name] = net.names_of(ext);
  Json out{{"agents", net.names()}, {"edges", edges_json(net)}, {"valuation", val}};
  if (m.theta()) out["theta"] = m.theta()->to_string();
  return out;
}

ActionModel action_model_from_json(const Json& j) {
  const Json& states_json = field(j, "states");
  if (!states_json.is_array()) bad("states must be an array");
  std::vector<ActionState> states;
  for (const auto& s : states_json) {
    states.push_back({string_of(field(s, "id"), "state id"), formula_of(field(s, "pre"), "pre"),
                      post_of(field(s, "post"))});
  }
  Relation rel = Relation::full();
  if (j.contains("relation")) {
    const Json& r = j["relation"];
    if (r.is_string()) {
      if (r.get<std::string>() != "full") bad("relation must be \"full\" or a list of pairs");
    } else {
      ActionModel probe(states);
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& e : edge_list(r)) pairs.emplace(probe.index_of(e.first), probe.index_of(e.second));
      rel = Relation::pairs(std::move(pairs));
    }
  }
  return ActionModel(std::move(states), std::move(rel));
}

Json to_json(const ActionModel& e) {
  Json states = Json::array();
  for (const auto& s : e.states()) {
    states.push_back({{"id", s.id}, {"pre", to_string(s.pre)}, {"post", post_json(s.post)}});
  }
  Json rel;
  if (e.relation().is_full(e.size())) {
    rel = "full";
  } else {
    rel = Json::array();
    for (auto [a, b] : e.relation().pair_set()) rel.push_back({e.states()[a].id, e.states()[b].id});
  }
  return Json{{"states", states}, {"relation", rel}};
}

Automaton automaton_from_json(const Json& j) {
  const Json& sj = field(j, "states");
  if (!sj.is_array()) bad("states must be an array");
  std::vector<AutomatonState> states;
  for (const auto& s : sj) {
    states.push_back({string_of(field(s, "id"), "state id"), formula_of(field(s, "label"), "label")});
  }
  std::vector<Transition> transitions;
  if (j.contains("transitions")) {
    if (!j["transitions"].is_array()) bad("transitions must be an array");
    for (const auto& t : j["transitions"]) {
      transitions.push_back({string_of(field(t, "from"), "from"), formula_of(field(t, "trigger"), "trigger"),
                             string_of(field(t, "to"), "to")});
    }
  }
  return Automaton(std::move(states), std::move(transitions));
}

Json to_json(const Automaton& a) {
  Json states = Json::array();
  for (const auto& s : a.states()) states.push_back({{"id", s.id}, {"label", to_string(s.label)}});
  // Transitions grouped by source state, in state order.
  Json transitions = Json::array();
  for (const auto& s : a.states()) {
    for (const Transition* t : a.outgoing(s.id)) {
      transitions.push_back({{"from", t->from}, {"trigger", to_string(t->trigger)}, {"to", t->to}});
    }
  }
  return Json{{"states", states}, {"transitions", transitions}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidDocument, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
  out << text;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("TAM_DATA_DIR"); env && *env) return env;
#ifdef TAM_DATA_DIR
  return TAM_DATA_DIR;
#else
  return "data";
#endif
}

Automaton influence_automaton() { return automaton_from_json(read_json_file(data_dir() / "influence_automaton.json")); }

std::string trace_csv(const Trace& t) {
  const Network& net = t.initial.network();
  std::ostringstream os;
  os << "step";
  for (const auto& n : net.names()) os << ',' << n;
  os << '\n';
  for (std::size_t k = 0; k < t.behavior.size(); ++k) {
    os << k;
    for (AgentId a = 0; a < net.size(); ++a) os << ',' << (t.behavior[k].contains(a) ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

std::string belief_trace_csv(const std::vector<GeneralModel>& frames) {
  std::ostringstream os;
  if (frames.empty()) return "step\n";
  const Network& net = frames.front().network();
  os << "step";
  for (const auto& n : net.names()) os << ',' << n;
  os << '\n';
  for (std::size_t k = 0; k < frames.size(); ++k) {
    os << k;
    for (AgentId a = 0; a < net.size(); ++a) os << ',' << to_string(atom_state_of(frames[k], a));
    os << '\n';
  }
  return os.str();
}

std::string to_dot(const Network& net, const AgentSet& behavior) {
  std::ostringstream os;
  os << "graph G {\n  node [shape=circle, fillcolor=gray];\n";
  for (AgentId a = 0; a < net.size(); ++a) {
    os << "  " << dot_id(net.name(a)) << (behavior.contains(a) ? " [style=filled]" : "") << ";\n";
  }
  for (auto [a, b] : net.edges()) os << "  " << dot_id(net.name(a)) << " -- " << dot_id(net.name(b)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const ThresholdModel& m) { return to_dot(m.network(), m.behavior()); }

std::string to_dot(const GeneralModel& belief) {
  const Network& net = belief.network();
  std::ostringstream os;
  os << "graph G {\n  node [shape=circle, fillcolor=gray];\n";
  for (AgentId a = 0; a < net.size(); ++a) {
    os << "  " << dot_id(net.name(a));
    switch (atom_state_of(belief, a)) {
      case AtomState::BelievesP: os << " [style=filled]"; break;
      case AtomState::BelievesNotP: os << " [style=dashed]"; break;
      case AtomState::Undecided: break;
    }
    os << ";\n";
  }
  for (auto [a, b] : net.edges()) os << "  " << dot_id(net.name(a)) << " -- " << dot_id(net.name(b)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace tam::io
