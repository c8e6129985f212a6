#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tam/errors.hpp"
#include "tam/io.hpp"

namespace tam::cli {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void usage(const std::string& what) { throw Error(Errc::InvalidDocument, what); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Either kind of loaded model.
using AnyModel = std::variant<ThresholdModel, GeneralModel>;

AnyModel load_model(const std::string& path) {
  io::Json j = io::read_json_file(path);
  if (j.is_object() && j.contains("valuation")) return io::belief_model_from_json(j);
  return io::threshold_model_from_json(j);
}

GeneralModel belief_step(const Rule& rule, const GeneralModel& m) {
  if (const auto* aut = std::get_if<Automaton>(&rule)) return automaton_step(m, *aut);
  if (const auto* am = std::get_if<ActionModelRule>(&std::get<UpdateRule>(rule))) {
    return canonical_product(m, am->model);
  }
  usage("only am:file=... and auto:file=... rules apply to belief models");
}

std::string pad_index(std::size_t k, std::size_t last) {
  std::size_t width = std::max<std::size_t>(3, std::to_string(last).size());
  std::ostringstream os;
  os << std::setw(static_cast<int>(width)) << std::setfill('0') << k;
  return os.str();
}

void write_frames(const fs::path& dir, const std::vector<std::string>& dots) {
  fs::create_directories(dir);
  for (std::size_t k = 0; k < dots.size(); ++k) {
    io::write_text_file(dir / ("frame_" + pad_index(k, dots.size() - 1) + ".dot"), dots[k]);
  }
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out.empty() ? "-" : out;
}

std::size_t default_cap(std::size_t n_agents) {
  // More steps than distinct behavior sets (3^n for belief models) always
  // forces a repeat; clamp for large models.
  if (n_agents >= 30) return std::size_t{1} << 40;
  std::size_t cap = 1;
  for (std::size_t i = 0; i < n_agents; ++i) cap = std::min<std::size_t>(cap * 3, std::size_t{1} << 40);
  return cap + 1;
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
  std::string model;
  std::string rule;
  std::size_t steps = 10;
  bool orbit = false;
  std::size_t cap = 0;
  std::string out;
  std::string frames;
};

int simulate(const SimulateOptions& o, std::ostream& out) {
  Rule rule = parse_rule(o.rule);
  AnyModel model = load_model(o.model);
  std::string csv;
  std::vector<std::string> dots;
  std::optional<OrbitResult> orbit;

  if (const auto* tm = std::get_if<ThresholdModel>(&model)) {
    if (std::holds_alternative<Automaton>(rule)) usage("automaton rules need a belief model (with \"valuation\")");
    const UpdateRule& ur = std::get<UpdateRule>(rule);
    Trace t = run(*tm, ur, o.steps);
    csv = io::trace_csv(t);
    for (const auto& b : t.behavior) dots.push_back(io::to_dot(t.initial.network(), b));
    if (o.orbit) orbit = detect_orbit(*tm, ur, o.cap ? o.cap : default_cap(tm->agent_count()));
  } else {
    const GeneralModel& bm = std::get<GeneralModel>(model);
    std::vector<GeneralModel> frames{bm};
    for (std::size_t k = 0; k < o.steps; ++k) frames.push_back(belief_step(rule, frames.back()));
    csv = io::belief_trace_csv(frames);
    for (const auto& f : frames) dots.push_back(io::to_dot(f));
    if (o.orbit) {
      struct BeliefHash {
        std::size_t operator()(const std::pair<AgentSet, AgentSet>& s) const {
          return AgentSetHash{}(s.first) * 31 + AgentSetHash{}(s.second);
        }
      };
      auto step = [&](const std::pair<AgentSet, AgentSet>& s) {
        Valuation v;
        v.emplace(std::string(kBelievesP), s.first);
        v.emplace(std::string(kBelievesNotP), s.second);
        GeneralModel next = belief_step(rule, bm.with_valuation(std::move(v)));
        return std::make_pair(next.atom(kBelievesP), next.atom(kBelievesNotP));
      };
      orbit = find_orbit<std::pair<AgentSet, AgentSet>, BeliefHash>(
          {bm.atom(kBelievesP), bm.atom(kBelievesNotP)}, step, o.cap ? o.cap : default_cap(bm.agent_count()));
    }
  }

  if (o.out.empty()) {
    out << csv;
  } else {
    io::write_text_file(o.out, csv);
  }
  if (!o.frames.empty()) write_frames(o.frames, dots);
  if (orbit) out << "transient=" << orbit->transient << " period=" << orbit->period << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct EquivOptions {
  std::string left;
  std::string right;
  std::string model;
  std::size_t trials = 100;
  std::size_t max_agents = 10;
  std::size_t min_agents = 2;
  std::optional<std::uint64_t> seed;
  std::size_t steps = 10;
  double edge_prob = 0.5;
  double behavior_prob = 0.5;
  std::string theta;
  std::size_t threads = 0;
};

struct TrialOutcome {
  bool pass = true;
  std::string detail;
};

TrialOutcome compare_threshold(const ThresholdModel& m, const Rule& left, const Rule& right, std::size_t steps) {
  if (std::holds_alternative<Automaton>(left) || std::holds_alternative<Automaton>(right)) {
    usage("automaton rules need belief models");
  }
  EquivalenceReport r = check_stepwise_equivalence(m, std::get<UpdateRule>(left), std::get<UpdateRule>(right), steps);
  if (r.equivalent) return {};
  const Network& net = m.network();
  std::ostringstream os;
  os << "first divergence at step " << r.first_divergence->step << "; differing agents: "
     << join_names(net.names_of(r.first_divergence->differing)) << " (left B={"
     << join_names(net.names_of(r.first_divergence->left)) << "}, right B={"
     << join_names(net.names_of(r.first_divergence->right)) << "})";
  return {false, os.str()};
}

TrialOutcome compare_belief(const GeneralModel& m, const Rule& left, const Rule& right, std::size_t steps) {
  GeneralModel a = m;
  GeneralModel b = m;
  for (std::size_t k = 1; k <= steps; ++k) {
    a = belief_step(left, a);
    b = belief_step(right, b);
    if (a.valuation() != b.valuation()) {
      AgentSet diff = (a.atom(kBelievesP) ^ b.atom(kBelievesP)) | (a.atom(kBelievesNotP) ^ b.atom(kBelievesNotP));
      return {false, "first divergence at step " + std::to_string(k) +
                         "; differing agents: " + join_names(m.network().names_of(diff))};
    }
  }
  return {};
}

bool is_belief_rule(const Rule& r) { return std::holds_alternative<Automaton>(r); }

int equiv(const EquivOptions& o, std::ostream& out) {
  Rule left = parse_rule(o.left);
  Rule right = parse_rule(o.right);
  const std::string label = o.left + " vs " + o.right;

  if (!o.model.empty()) {
    AnyModel model = load_model(o.model);
    TrialOutcome r = std::holds_alternative<ThresholdModel>(model)
                         ? compare_threshold(std::get<ThresholdModel>(model), left, right, o.steps)
                         : compare_belief(std::get<GeneralModel>(model), left, right, o.steps);
    if (r.pass) {
      out << "PASS: " << label << " on " << o.model << ", " << o.steps << " steps\n";
      return kOk;
    }
    out << "FAIL: " << label << " on " << o.model << ": " << r.detail << '\n';
    return kEquivalenceFailed;
  }

  if (o.min_agents < 2 || o.max_agents < o.min_agents) usage("need 2 <= --min-agents <= --agents");
  TrialParams params{o.min_agents, o.max_agents, o.edge_prob, o.behavior_prob, std::nullopt};
  if (!o.theta.empty()) params.theta = Rational::parse(o.theta);
  const bool belief = is_belief_rule(left) || is_belief_rule(right);
  const std::uint64_t base_seed = o.seed ? *o.seed : default_seed();

  std::vector<TrialOutcome> outcomes(o.trials);
  std::vector<std::string> headers(o.trials);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed_hard{false};
  std::string hard_error;
  std::mutex hard_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < o.trials; i = next++) {
      try {
        std::ostringstream head;
        head << "trial " << i << " (seed " << trial_seed(base_seed, i) << ", " << trial_size(base_seed, i, params)
             << " agents";
        if (belief) {
          GeneralModel m = trial_belief_model(base_seed, i, params);
          head << ")";
          outcomes[i] = compare_belief(m, left, right, o.steps);
        } else {
          ThresholdModel m = trial_threshold_model(base_seed, i, params);
          head << ", theta=" << m.theta() << ")";
          outcomes[i] = compare_threshold(m, left, right, o.steps);
        }
        headers[i] = head.str();
      } catch (const std::exception& e) {
        std::lock_guard lock(hard_mutex);
        if (!failed_hard.exchange(true)) hard_error = e.what();
        return;
      }
    }
  };

  std::size_t workers = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, o.trials));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failed_hard) throw Error(Errc::InvalidDocument, hard_error);

  std::size_t failures = 0;
  for (std::size_t i = 0; i < o.trials; ++i) {
    if (outcomes[i].pass) continue;
    if (failures == 0) out << "FAIL: " << label << ": " << headers[i] << ": " << outcomes[i].detail << '\n';
    ++failures;
  }
  if (failures == 0) {
    out << "PASS: " << label << ", " << o.trials << " trials x " << o.steps << " steps (seed " << base_seed << ")\n";
    return kOk;
  }
  out << "FAIL: " << failures << "/" << o.trials << " trials diverged\n";
  return kEquivalenceFailed;
}

// ---------------------------------------------------------------------------

std::string catalog_row(int i) {
  ActionModel e = table1(i);
  std::ostringstream os;
  os << i << ": ";
  for (std::size_t k = 0; k < 3; ++k) {
    os << kCellText[k] << " → " << *threshold_post_name(e.states()[k].post) << " | ";
  }
  os << "class=" << to_string(classify(i));
  return os.str();
}

int catalog(const std::string& cls, bool json, std::ostream& out) {
  std::optional<CatalogClass> filter;
  if (!cls.empty()) filter = parse_catalog_class(cls);
  io::Json rows = io::Json::array();
  for (int i = 1; i <= 27; ++i) {
    if (filter && classify(i) != *filter) continue;
    if (json) {
      rows.push_back({{"index", i}, {"class", std::string(to_string(classify(i)))}, {"model", io::to_json(table1(i))}});
    } else {
      out << catalog_row(i) << '\n';
    }
  }
  if (json) out << io::dump(rows);
  return kOk;
}

int translate(const std::string& in, const std::string& to, const std::string& out_path, std::ostream& out) {
  io::Json j = io::read_json_file(in);
  std::string text;
  if (to == "action-model") {
    text = io::dump(io::to_json(automaton_to_action_model(io::automaton_from_json(j))));
  } else if (to == "automaton") {
    text = io::dump(io::to_json(action_model_to_automaton(io::action_model_from_json(j))));
  } else {
    usage("--to must be action-model or automaton");
  }
  if (out_path.empty()) {
    out << text;
  } else {
    io::write_text_file(out_path, text);
  }
  return kOk;
}

int dot(const std::string& model_path, std::ostream& out) {
  AnyModel m = load_model(model_path);
  if (const auto* tm = std::get_if<ThresholdModel>(&m)) {
    out << io::to_dot(*tm);
  } else {
    out << io::to_dot(std::get<GeneralModel>(m));
  }
  return kOk;
}

}  // namespace

Rule parse_rule(std::string_view spec) {
  const std::string s(spec);
  if (s == "eq1") return UpdateRule{Eq1Rule{}};
  if (s == "eq2") return UpdateRule{Eq2Rule{}};
  if (s.rfind("auto:file=", 0) == 0) return io::automaton_from_json(io::read_json_file(s.substr(10)));
  if (s.rfind("am:", 0) == 0) {
    std::string rest = s.substr(3);
    if (rest == "e1") return UpdateRule{ActionModelRule{e1()}};
    if (rest == "e2") return UpdateRule{ActionModelRule{e2()}};
    if (rest.rfind("file=", 0) == 0) {
      return UpdateRule{ActionModelRule{io::action_model_from_json(io::read_json_file(rest.substr(5)))}};
    }
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(c); })) {
      usage("malformed action model rule '" + s + "'");
    }
    if (rest.size() > 3) throw Error(Errc::IndexOutOfRange, "rule index out of range 1..27");
    return UpdateRule{ActionModelRule{table1(std::stoi(rest))}};
  }
  if (s.rfind("br:", 0) == 0) {
    auto parts = split(s, ':');
    if (parts.size() != 5 && parts.size() != 6) usage("best-response rule must be br:<coord|anti>:<x>:<y>:<tie>[:seed]");
    GameKind kind;
    if (parts[1] == "coord") {
      kind = GameKind::Coordination;
    } else if (parts[1] == "anti") {
      kind = GameKind::Anticoordination;
    } else {
      usage("game kind must be coord or anti, got '" + parts[1] + "'");
    }
    bool seed = false;
    if (parts.size() == 6) {
      if (parts[5] != "seed") usage("trailing best-response flag must be 'seed'");
      seed = true;
    }
    return UpdateRule{BestResponseRule{Game(kind, Rational::parse(parts[2]), Rational::parse(parts[3])),
                                       parse_tie_policy(parts[4]), seed}};
  }
  usage("unknown rule '" + s + "'");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("THRESHOLD_AM_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidDocument, "THRESHOLD_AM_SEED must be a non-negative integer");
    }
  }
  return 0;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index) {
  return splitmix64(base_seed * 0x100000001b3ULL + index);
}

std::size_t trial_size(std::uint64_t base_seed, std::size_t index, const TrialParams& p) {
  std::mt19937_64 size_rng(trial_seed(base_seed, index));
  return p.min_agents + uniform_index(size_rng, p.max_agents - p.min_agents + 1);
}

ThresholdModel trial_threshold_model(std::uint64_t base_seed, std::size_t index, const TrialParams& p) {
  return random_model(trial_seed(base_seed, index), trial_size(base_seed, index, p), p.edge_prob, p.behavior_prob,
                      p.theta);
}

GeneralModel trial_belief_model(std::uint64_t base_seed, std::size_t index, const TrialParams& p) {
  return random_belief_model(trial_seed(base_seed, index), trial_size(base_seed, index, p), p.edge_prob);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Threshold-model diffusion dynamics: direct updates, best responses and action models"};
  app.name("threshold-am");
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run one rule on a model and write the trace as CSV");
  simulate_cmd->add_option("--model", sim.model, "Model JSON (threshold or belief)")->required();
  simulate_cmd->add_option("--rule", sim.rule, "Update rule spec")->required();
  simulate_cmd->add_option("--steps", sim.steps, "Number of steps")->capture_default_str();
  simulate_cmd->add_flag("--orbit", sim.orbit, "Also print transient and period");
  simulate_cmd->add_option("--cap", sim.cap, "Step cap for orbit detection");
  simulate_cmd->add_option("--out", sim.out, "Write the CSV here instead of stdout");
  simulate_cmd->add_option("--frames", sim.frames, "Directory for one DOT file per step");

  EquivOptions eq;
  auto* equiv_cmd = app.add_subcommand("equiv", "Check step-wise equivalence of two rules");
  equiv_cmd->add_option("--left", eq.left, "First rule spec")->required();
  equiv_cmd->add_option("--right", eq.right, "Second rule spec")->required();
  equiv_cmd->add_option("--model", eq.model, "Check a single model file instead of random trials");
  equiv_cmd->add_option("--trials", eq.trials, "Number of random models")->capture_default_str();
  equiv_cmd->add_option("--agents", eq.max_agents, "Largest random model size")->capture_default_str();
  equiv_cmd->add_option("--min-agents", eq.min_agents, "Smallest random model size")->capture_default_str();
  equiv_cmd->add_option("--seed", eq.seed, "Base seed (default: $THRESHOLD_AM_SEED or 0)");
  equiv_cmd->add_option("--steps", eq.steps, "Steps per trial")->capture_default_str();
  equiv_cmd->add_option("--edge-prob", eq.edge_prob, "Edge probability")->capture_default_str();
  equiv_cmd->add_option("--behavior-prob", eq.behavior_prob, "Initial B probability")->capture_default_str();
  equiv_cmd->add_option("--theta", eq.theta, "Fixed theta as p/q (default: drawn per trial)");
  equiv_cmd->add_option("--threads", eq.threads, "Worker threads (default: hardware)");

  std::string cls;
  bool catalog_json = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "List the 27 three-cell action models");
  catalog_cmd->add_option("--class", cls, "Only rows of this class");
  catalog_cmd->add_flag("--json", catalog_json, "Emit action-model JSON");

  std::string tr_in;
  std::string tr_to;
  std::string tr_out;
  auto* translate_cmd = app.add_subcommand("translate", "Convert automaton JSON <-> action-model JSON");
  translate_cmd->add_option("--in", tr_in, "Input file")->required();
  translate_cmd->add_option("--to", tr_to, "action-model | automaton")->required();
  translate_cmd->add_option("--out", tr_out, "Output file (default stdout)");

  std::string dot_model;
  auto* dot_cmd = app.add_subcommand("dot", "Render a model as Graphviz DOT");
  dot_cmd->add_option("--model", dot_model, "Model JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (simulate_cmd->parsed()) return simulate(sim, out);
    if (equiv_cmd->parsed()) return equiv(eq, out);
    if (catalog_cmd->parsed()) return catalog(cls, catalog_json, out);
    if (translate_cmd->parsed()) return translate(tr_in, tr_to, tr_out, out);
    if (dot_cmd->parsed()) return dot(dot_model, out);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace tam::cli
