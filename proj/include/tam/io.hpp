#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tam/action_model.hpp"
#include "tam/belief.hpp"
#include "tam/model.hpp"
#include "tam/orbit.hpp"

namespace tam::io {

using Json = nlohmann::json;

// Threshold model document:
//   {"agents": [...], "edges": [[a,b],...], "behavior": [...], "theta": "p/q"}
// Belief model document:
//   {"agents": [...], "edges": [...], "valuation": {"Bp": [...], "Bnp": [...]}}
// theta must be a string; JSON numbers are rejected.
ThresholdModel threshold_model_from_json(const Json& j);
GeneralModel belief_model_from_json(const Json& j);
Json to_json(const ThresholdModel& m);
Json to_json(const GeneralModel& m);

// {"states": [{"id", "pre", "post"}], "relation": "full" | [[s,t],...]}
// post is "B", "~B", "T" or an atom map such as {"Bp": true, "Bnp": false}.
ActionModel action_model_from_json(const Json& j);
Json to_json(const ActionModel& e);

// {"states": [{"id", "label"}], "transitions": [{"from", "trigger", "to"}]}
Automaton automaton_from_json(const Json& j);
Json to_json(const Automaton& a);

// Canonical text: sorted keys, sorted agent lists, two-space indent and a
// trailing newline. Stable byte-for-byte.
std::string dump(const Json& j);
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Directory holding bundled data files; TAM_DATA_DIR in the environment
// overrides the build-time location.
std::filesystem::path data_dir();
// The bundled strong/weak influence automaton.
Automaton influence_automaton();

// "step,a,b,..." header then one 0/1 row per step.
std::string trace_csv(const Trace& t);
// Same layout with Up/Bp/Bnp cells.
std::string belief_trace_csv(const std::vector<GeneralModel>& frames);

// Undirected graph; B (or Bp) agents filled, Bnp agents dashed.
// Nodes and edges in index order.
std::string to_dot(const ThresholdModel& m);
std::string to_dot(const Network& net, const AgentSet& behavior);
std::string to_dot(const GeneralModel& belief);

}  // namespace tam::io
