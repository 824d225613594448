#include <doctest.h>

#include "oracle.hpp"

using namespace sks;

namespace {

std::string toy() { return oracle::models_dir() + "/modal-toy.model"; }

}  // namespace

TEST_CASE("frame validation") {
  Frame F;
  F.worlds = {"u", "v"};
  F.R = {{0, 1}, {}};
  F.rank = {{0, 1}, {-1, 0}};
  CHECK(validate_frame(F).ok());
  // Ties are allowed.
  F.rank[0] = {0, 0};
  CHECK(validate_frame(F).ok());
  // Every carrier world must be ranked, the base world included.
  F.rank[0] = {0, -1};
  CHECK_FALSE(validate_frame(F).ok());
  F.rank[0] = {0, 1};
  F.rank[1] = {-1, -1};
  CHECK_FALSE(validate_frame(F).ok());
  F.rank[1] = {-1, 0};
  F.R[1] = {2};
  CHECK_FALSE(validate_frame(F).ok());
  F.R[1] = {};
  F.rank.pop_back();
  CHECK_FALSE(validate_frame(F).ok());
}

TEST_CASE("modal toy values") {
  Model m = load_model(toy());
  SentenceEnv& env = *m.env;
  auto& s = m.structure;
  auto at = [&](std::uint32_t w, const char* text) { return eval_modal(env, s, w, 0, {}, parse(text, env)); };
  CHECK(at(0, "[]P(a)") == TruthValue::False);
  CHECK(at(1, "[]~P(a)") == TruthValue::True);
  CHECK(at(0, "[](Q(a) | ~P(a))") == TruthValue::True);
  CHECK(at(0, "[]Q(a)") == TruthValue::Undefined);
  // w0 is the closest P-world and Q holds there.
  CHECK(at(0, "P(a) ~> Q(a)") == TruthValue::True);
  // No P-world is visible from w1.
  CHECK(at(1, "P(a) ~> Q(a)") == TruthValue::True);
  CHECK(at(0, "~(P(a) ~> Q(a))") == TruthValue::False);
  CHECK(at(0, "~P(a) ~> Q(a)") == TruthValue::Undefined);
  CHECK_THROWS_AS(at(2, "P(a)"), InputError);
}

TEST_CASE("modal sentences need a frame") {
  SentenceEnv env;
  auto sig = oracle::declare_signature(env);
  std::mt19937 rng(61);
  auto s = oracle::random_structure(env, sig, rng);
  CHECK_THROWS_AS(eval_modal(env, s, 0, 0, {}, parse("[]P(a)", env)), InputError);
  CHECK_NOTHROW(eval_modal(env, s, 0, 0, {}, parse("P(a)", env)));
}

TEST_CASE("box and counterfactual agree with the oracle on random frames") {
  std::mt19937 rng(71);
  for (int k = 0; k < 60; ++k) {
    SentenceEnv env;
    auto sig = oracle::declare_signature(env);
    oracle::StructureShape shape;
    shape.worlds = 2 + k % 2;
    auto s = oracle::random_structure(env, sig, rng, shape);
    REQUIRE(validate_frame(*s.frame).ok());
    oracle::FormulaShape fs;
    fs.conditionals = true;
    fs.depth = 2;
    FormulaId a = oracle::random_formula(env, sig, rng, fs), b = oracle::random_formula(env, sig, rng, fs);
    for (FormulaId f : {env.box(a), env.neg(env.box(b)), env.cop(a, b), env.neg(env.cop(a, b))})
      for (std::uint32_t w = 0; w < shape.worlds; ++w)
        for (std::uint32_t J = 0; J < s.X.size(); ++J) CHECK(eval_modal(env, s, w, J, {}, f) == oracle::kleene(env, s, J, w, f));
  }
}

TEST_CASE("modal fixed point") {
  auto l = oracle::open_model(toy());
  const TruthContext& ctx = *l->ctx;
  CHECK(ctx.modal());
  CHECK(ctx.points() == 2);
  for (auto e : {Admissibility::K3, Admissibility::Nve, Admissibility::N3Nve}) {
    CAPTURE(to_string(e));
    auto r = modal_fixed_point(ctx, e);
    REQUIRE(r.ok());
    CHECK(check_naivety(ctx, r).empty());
    CHECK(verify_fixed_point(ctx, r).theta_fixed);
    // The counterfactual is grounded, so its truth is settled at w0.
    CHECK(value_at_fixpoint(ctx, r, 0, parse("T({P(a) ~> Q(a)})", ctx.env())) == TruthValue::True);
    CHECK(value_at_fixpoint(ctx, r, 0, l->named("l")) == TruthValue::Undefined);
  }

  auto plain = oracle::open_model(oracle::models_dir() + "/liar.model");
  CHECK_THROWS_AS(modal_fixed_point(*plain->ctx, Admissibility::K3), InputError);
}
