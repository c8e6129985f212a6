#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "tam/io.hpp"

namespace fs = std::filesystem;
using tam::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("tam_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const std::string kTwo = std::string(TAM_TEST_DATA) + "/two_clique_loop.json";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("simulate") {
  auto r = call({"simulate", "--model", kTwo, "--rule", "eq2", "--steps", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "step,a,b\n0,1,0\n1,0,1\n2,1,0\n3,0,1\n4,1,0\n");

  auto o = call({"simulate", "--model", kTwo, "--rule", "am:6", "--orbit"});
  CHECK(o.code == 0);
  CHECK(o.out.find("transient=0 period=2") != std::string::npos);

  auto bad = call({"simulate", "--model", kTwo, "--rule", "am:99"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("rule index out of range 1..27") != std::string::npos);
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);

  CHECK(call({"simulate", "--model", kTwo, "--rule", "nope"}).code == 2);
  CHECK(call({"simulate", "--model", "/nonexistent.json", "--rule", "eq1"}).code == 2);
  CHECK(call({"simulate"}).code == 2);
  CHECK(call({"bogus"}).code == 2);
}

TEST_CASE("simulate writes frames and files") {
  fs::path dir = scratch("frames");
  auto r = call({"simulate", "--model", kTwo, "--rule", "eq2", "--steps", "3", "--frames", dir.string(), "--out",
                 (dir / "trace.csv").string()});
  CHECK(r.code == 0);
  for (const char* f : {"frame_000.dot", "frame_001.dot", "frame_002.dot", "frame_003.dot"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK_FALSE(fs::exists(dir / "frame_004.dot"));
  CHECK(slurp(dir / "frame_001.dot").find("b [style=filled];") != std::string::npos);
  CHECK(slurp(dir / "trace.csv").starts_with("step,a,b\n"));
}

TEST_CASE("simulate a belief model with an automaton") {
  fs::path dir = scratch("belief");
  tam::io::write_text_file(dir / "m.json",
                           R"({"agents":["x","y","z"],"edges":[["x","y"],["x","z"]],"valuation":{"Bp":["y","z"],"Bnp":[]}})");
  std::string autf = (tam::io::data_dir() / "influence_automaton.json").string();
  auto r = call({"simulate", "--model", (dir / "m.json").string(), "--rule", "auto:file=" + autf, "--steps", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "step,x,y,z\n0,Up,Bp,Bp\n1,Bp,Bp,Bp\n");
}

TEST_CASE("equiv") {
  auto pass = call({"equiv", "--left", "eq1", "--right", "am:e1", "--trials", "200", "--agents", "8", "--seed", "7"});
  CHECK(pass.code == 0);
  CHECK(pass.out.starts_with("PASS"));

  auto anti = call({"equiv", "--left", "br:anti:1:1:conservative", "--right", "am:22", "--trials", "200"});
  CHECK(anti.code == 0);

  auto fail = call({"equiv", "--left", "eq1", "--right", "am:3", "--trials", "50"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("first divergence at step") != std::string::npos);
  CHECK(fail.out.find("differing agents") != std::string::npos);

  auto on_model = call({"equiv", "--left", "eq2", "--right", "am:e2", "--model", kTwo});
  CHECK(on_model.code == 0);
}

TEST_CASE("catalog") {
  auto all = call({"catalog"});
  CHECK(all.code == 0);
  CHECK(all.out.find("22: <lt> B → ~B | (=) B → T | [gt] ~B → B | class=anticoordination_br\n") !=
        std::string::npos);
  CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 27);
  auto triv = call({"catalog", "--class", "trivial"});
  CHECK(triv.out.starts_with("1: "));
  CHECK(triv.out.find("\n14: ") != std::string::npos);
  CHECK(triv.out.find("\n27: ") != std::string::npos);
  CHECK(std::count(triv.out.begin(), triv.out.end(), '\n') == 3);
  auto js = call({"catalog", "--json"});
  auto parsed = tam::io::parse_json(js.out);
  CHECK(parsed.size() == 27);
  CHECK(tam::io::dump(parsed) == js.out);
  CHECK(call({"catalog", "--class", "weird"}).code == 2);
}

TEST_CASE("translate round-trips byte-identically") {
  fs::path dir = scratch("translate");
  std::string src = (tam::io::data_dir() / "influence_automaton.json").string();
  REQUIRE(call({"translate", "--in", src, "--to", "action-model", "--out", (dir / "am.json").string()}).code == 0);
  REQUIRE(call({"translate", "--in", (dir / "am.json").string(), "--to", "automaton", "--out",
                (dir / "back.json").string()})
              .code == 0);
  std::string canonical = tam::io::dump(tam::io::to_json(tam::io::automaton_from_json(tam::io::read_json_file(src))));
  CHECK(slurp(dir / "back.json") == canonical);
  auto again = call({"translate", "--in", (dir / "back.json").string(), "--to", "action-model"});
  CHECK(again.out == slurp(dir / "am.json"));
  CHECK(call({"translate", "--in", src, "--to", "sideways"}).code == 2);
}

TEST_CASE("dot") {
  auto r = call({"dot", "--model", kTwo});
  CHECK(r.code == 0);
  CHECK(r.out.find("a [style=filled];") != std::string::npos);
  CHECK(r.out.find("a -- b;") != std::string::npos);
  CHECK(call({"dot", "--model", kTwo}).out == r.out);
}

TEST_CASE("rule specs") {
  using tam::cli::parse_rule;
  CHECK(std::holds_alternative<tam::UpdateRule>(parse_rule("eq1")));
  CHECK(std::holds_alternative<tam::UpdateRule>(parse_rule("br:coord:3:1:favor_B:seed")));
  CHECK(std::holds_alternative<tam::UpdateRule>(parse_rule("am:e2")));
  CHECK_THROWS(parse_rule("br:coord:0:1:favor_B"));
  CHECK_THROWS(parse_rule("br:coord:1:1"));
  CHECK_THROWS(parse_rule("am:0"));
  CHECK_THROWS(parse_rule("auto:file=/nonexistent.json"));
}

TEST_CASE("reruns are deterministic") {
  std::vector<std::vector<std::string>> cmds = {
      {"equiv", "--left", "eq1", "--right", "am:3", "--trials", "40", "--seed", "3"},
      {"equiv", "--left", "eq2", "--right", "am:6", "--trials", "40", "--seed", "3", "--threads", "4"},
      {"simulate", "--model", kTwo, "--rule", "br:coord:1:2:favor_B", "--steps", "6"},
      {"catalog", "--json"},
  };
  for (const auto& c : cmds) {
    auto a = call(c);
    auto b = call(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
  auto one = call({"equiv", "--left", "eq2", "--right", "am:6", "--trials", "40", "--seed", "3", "--threads", "1"});
  auto many = call({"equiv", "--left", "eq2", "--right", "am:6", "--trials", "40", "--seed", "3", "--threads", "8"});
  CHECK(one.out == many.out);
}
