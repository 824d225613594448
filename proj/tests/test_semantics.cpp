#include <doctest.h>

#include "oracle.hpp"

using namespace sks;

namespace {

struct Two {
  SentenceEnv env;
  SupervaluationStructure s;
  std::uint32_t P, Q;

  // J0 leaves P(a) open; J1 makes it true. Q(a) is false throughout.
  Two() {
    P = env.declare_predicate("P", 1);
    Q = env.declare_predicate("Q", 1);
    env.declare_constant("a");
    s.domain = {"a"};
    for (int j = 0; j < 2; ++j) {
      PartialInterpretation I;
      I.name = "J" + std::to_string(j);
      I.constants = {0};
      I.preds.assign(1, std::vector<Extension>(env.predicate_count()));
      I.preds[0][Q].neg.insert({0});
      if (j == 1) I.preds[0][P].pos.insert({0});
      s.X.push_back(I);
    }
    s.H = {{0, 0}, {0, 1}, {1, 1}};
    s.finalize();
  }
  TruthValue at(std::uint32_t J, const char* text) { return eval(env, s, J, {}, parse(text, env)); }
};

}  // namespace

TEST_CASE("strong Kleene connectives") {
  Two t;
  CHECK(t.at(0, "P(a)") == TruthValue::Undefined);
  CHECK(t.at(0, "~Q(a)") == TruthValue::True);
  CHECK(t.at(0, "P(a) & Q(a)") == TruthValue::False);
  CHECK(t.at(0, "P(a) | ~Q(a)") == TruthValue::True);
  CHECK(t.at(0, "P(a) | Q(a)") == TruthValue::Undefined);
  CHECK(t.at(0, "A x ~Q(x)") == TruthValue::True);
  CHECK(t.at(0, "E x P(x)") == TruthValue::Undefined);
  CHECK(t.at(0, "false") == TruthValue::False);
  CHECK(t.at(0, "a = a") == TruthValue::True);
}

TEST_CASE("conditionals look at H-successors") {
  Two t;
  // P(a) holds at J1, Q(a) nowhere.
  CHECK(t.at(0, "P(a) -> Q(a)") == TruthValue::Undefined);
  CHECK(t.at(1, "P(a) -> Q(a)") == TruthValue::False);
  CHECK(t.at(0, "Q(a) -> P(a)") == TruthValue::True);
  CHECK(t.at(0, "P(a) -> P(a)") == TruthValue::True);
  // Falsity of a conditional is local.
  CHECK(t.at(0, "~(P(a) -> Q(a))") == TruthValue::Undefined);
  CHECK(t.at(1, "~(P(a) -> Q(a))") == TruthValue::True);
}

TEST_CASE("sentences as objects") {
  Two t;
  CHECK_THROWS_AS(t.at(0, "Sent('x')"), SyntaxError);
  std::uint32_t slot = t.env.declare_sentence("s");
  t.env.define_sentence(slot, parse("P(a)", t.env));
  CHECK(t.at(0, "Sent('s')") == TruthValue::True);
  CHECK(t.at(0, "Sent(a)") == TruthValue::False);
  // Ordinary predicates and T are gaps on the ground structure.
  CHECK(t.at(1, "P('s')") == TruthValue::Undefined);
  CHECK(t.at(1, "T('s')") == TruthValue::Undefined);
  CHECK(t.at(0, "'s' = 's'") == TruthValue::True);
  CHECK(t.at(0, "'s' = a") == TruthValue::False);
}

TEST_CASE("validation") {
  Two t;
  CHECK(validate_structure(t.env, t.s).ok());

  auto broken = t.s;
  broken.X[0].preds[0][t.P].neg.insert({0});
  broken.X[0].preds[0][t.P].pos.insert({0});
  CHECK_FALSE(validate_structure(t.env, broken).ok());

  broken = t.s;
  broken.H = {{0, 1}, {1, 1}};
  CHECK_FALSE(validate_structure(t.env, broken).ok());

  // H must respect the information order.
  broken = t.s;
  broken.H = {{0, 0}, {1, 0}, {1, 1}};
  broken.finalize();
  CHECK_FALSE(validate_structure(t.env, broken).ok());

  broken = t.s;
  broken.X[1].constants = {1};
  CHECK_FALSE(validate_structure(t.env, broken).ok());

  CHECK(leq(t.s.X[0], t.s.X[1]));
  CHECK_FALSE(leq(t.s.X[1], t.s.X[0]));
}

TEST_CASE("assignments name their values") {
  Two t;
  std::uint32_t x = t.env.variable("x");
  FormulaId px = t.env.atom(t.P, {t.env.var(x)});
  CHECK(eval(t.env, t.s, 1, {{x, 0}}, px) == TruthValue::True);
  CHECK_THROWS_AS(eval(t.env, t.s, 1, {}, px), InputError);
}

TEST_CASE("random structures validate and persistence holds") {
  std::mt19937 rng(31);
  for (int k = 0; k < 40; ++k) {
    SentenceEnv env;
    auto sig = oracle::declare_signature(env);
    auto s = oracle::random_structure(env, sig, rng);
    REQUIRE(validate_structure(env, s).ok());
    oracle::FormulaShape shape;
    shape.conditionals = true;
    std::vector<FormulaId> fs;
    for (int i = 0; i < 30; ++i) fs.push_back(oracle::random_formula(env, sig, rng, shape));
    auto par = persistence_check(env, s, fs);
    auto ser = persistence_check_serial(env, s, fs);
    CHECK(par.empty());
    CHECK(ser.empty());
  }
}

TEST_CASE("evaluator matches the oracle with conditionals") {
  std::mt19937 rng(41);
  SentenceEnv env;
  auto sig = oracle::declare_signature(env);
  for (int k = 0; k < 200; ++k) {
    auto s = oracle::random_structure(env, sig, rng);
    oracle::FormulaShape shape;
    shape.conditionals = true;
    FormulaId f = oracle::random_formula(env, sig, rng, shape);
    for (std::uint32_t J = 0; J < s.X.size(); ++J) CHECK(eval(env, s, J, {}, f) == oracle::kleene(env, s, J, 0, f));
  }
}
