#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"

using namespace sks;

namespace {

std::string model(const char* name) { return oracle::models_dir() + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(CommandOptions o) {
  std::ostringstream out, err;
  int code = run_command(o, out, err);
  return {code, out.str(), err.str()};
}

CommandOptions cmd(std::string command, std::string m, std::vector<std::string> args = {}) {
  CommandOptions o;
  o.command = std::move(command);
  o.model = m.empty() ? "" : model(m.c_str());
  o.args = std::move(args);
  return o;
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("FNV-1a digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("model files") {
  Model m = parse_model(R"(
domain a b   # two elements
constant a = a
constant b = b
predicate P/1
function s/1 a:b b:a
interp J0
pos P a
interp J1
pos P a
neg P b
h J0 J1
sentence l := ~T('l')
seed P(s(a))
depth 0
cond k3
)");
  CHECK(m.structure.domain.size() == 2);
  CHECK(m.structure.X.size() == 2);
  CHECK(m.structure.H.size() == 3);  // reflexive pairs added
  CHECK(m.seeds.size() == 2);
  CHECK(m.seeds.front() == m.env->slot_formula(*m.env->find_sentence("l")));
  CHECK(m.depth == 0);
  CHECK(m.cond == Admissibility::K3);
  CHECK(validate_structure(*m.env, m.structure).ok());
  CHECK(eval(*m.env, m.structure, 1, {}, parse("P(s(a))", *m.env)) == TruthValue::False);
}

TEST_CASE("model file errors name the line") {
  auto error = [](const char* text) {
    try {
      parse_model(text, "m");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(has(error("domain a\nbogus line\n"), "m:2: unknown keyword"));
  CHECK(has(error("domain a\nconstant a = z\n"), "m:2: unknown domain element"));
  CHECK(has(error("domain a\nconstant a = a\npredicate P/1\ninterp J\npos P a a\n"), "m:5"));
  CHECK(has(error("domain a\nconstant a = a\ninterp J\nsentence x := P(\n"), "m:4"));
  CHECK(has(error("domain a\n"), "no interpretations"));
  CHECK(has(error("domain a\nconstant a = a\ninterp J\nh J K\n"), "unknown interpretation"));
}

TEST_CASE("exit statuses") {
  CHECK(run(cmd("validate", "liar.model")).code == kOk);
  CHECK(run(cmd("validate", "missing.model")).code == kInputError);
  CHECK(run(cmd("bogus", "liar.model")).code == kInputError);
  CHECK(run(cmd("eval", "liar.model", {"P(a"})).code == kInputError);

  auto f = cmd("fixpoint", "curry.model");
  f.cond = "n3nve";
  auto r = run(f);
  CHECK(r.code == kCollapse);
  CHECK(has(r.out, "minimal-element-lost"));

  auto p = cmd("prove", "", {"=> P(a), ~P(a)"});
  CHECK(run(p).code == kCheckFailed);
  p.args = {"P(a), ~P(a) =>"};
  p.logic = "k3";
  CHECK(run(p).code == kOk);
}

TEST_CASE("eval reports per point") {
  auto o = cmd("eval", "contraposition.model", {"~Q(a) -> ~P(a)"});
  o.format = Format::Record;
  auto r = run(o);
  REQUIRE(r.code == kOk);
  CHECK(has(r.out, "\"J0\": \"undefined\""));
  o.args = {"P(a) -> Q(a)"};
  o.interp = "J1";
  r = run(o);
  CHECK(has(r.out, "\"J1\": \"true\""));
  CHECK_FALSE(has(r.out, "\"J0\""));

  auto c = cmd("eval", "curry.model", {"k -> k"});
  c.cond = "nve";
  r = run(c);
  CHECK(r.code == kOk);
  CHECK(has(r.out, "true"));
}

TEST_CASE("text and record formats carry the same fields") {
  auto o = cmd("fixpoint", "liar.model");
  auto text = run(o);
  o.format = Format::Record;
  auto rec = run(o);
  REQUIRE(text.code == kOk);
  REQUIRE(rec.code == kOk);
  for (const char* key : {"command", "digest", "status", "theta_fixed", "elapsed_ms"}) {
    CAPTURE(key);
    CHECK(has(text.out, std::string(key) + ":"));
    CHECK(has(rec.out, std::string("\"") + key + "\""));
  }
}

TEST_CASE("saved results feed the diagnostics") {
  auto o = cmd("fixpoint", "liar.model");
  o.format = Format::Record;
  o.cond = "n3";
  auto r = run(o);
  REQUIRE(r.code == kOk);
  auto file = std::filesystem::temp_directory_path() / "sks-liar-n3.json";
  std::ofstream(file) << r.out;

  for (const char* c : {"naivety", "principles"}) {
    auto d = cmd(c, "liar.model");
    d.result = file.string();
    CHECK(run(d).code == kOk);
    d.cond = "nve";
    CHECK(run(d).code == kInputError);
  }
  auto d = cmd("dedthm", "liar.model", {"P(a)", "l"});
  d.result = file.string();
  auto out = run(d);
  CHECK(out.code == kOk);
  CHECK(has(out.out, "agree"));
  std::filesystem::remove(file);
}

TEST_CASE("strip_timing") {
  CHECK(strip_timing("a: 1\nelapsed_ms: 12\nb: 2\n") == "a: 1\nb: 2\n");
  auto o = cmd("principles", "curry.model");
  o.cond = "nve";
  CHECK(strip_timing(run(o).out) == strip_timing(run(o).out));
}

TEST_CASE("curry derivation from the CLI") {
  auto o = cmd("prove", "curry.model");
  o.curry = "k";
  auto r = run(o);
  CHECK(r.code == kOk);
  CHECK(has(r.out, "check: ok"));
}
