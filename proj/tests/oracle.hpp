#pragma once

// Reference implementations and random generators shared by the unit tests
// and the acceptance binary. Nothing here calls the library evaluator.

#include <memory>
#include <random>
#include <string>

#include "sks/cli.hpp"

namespace oracle {

using namespace sks;

// Signature used by every random test: P/1, Q/1, R/2, constants a b c,
// function f/1.
struct Signature {
  std::uint32_t P, Q, R, f;
  std::vector<std::uint32_t> constants;
};
Signature declare_signature(SentenceEnv& env);

struct StructureShape {
  unsigned max_domain = 3;
  unsigned max_interps = 4;
  unsigned worlds = 0;  // 0: no frame
  double density = 0.4;
};

// Validated by construction: interpretations grow along a random forest and
// H is its reflexive-transitive ancestor relation.
SupervaluationStructure random_structure(const SentenceEnv& env, const Signature& sig, std::mt19937& rng,
                                         const StructureShape& shape = {});

struct FormulaShape {
  unsigned depth = 3;
  bool conditionals = false;
  bool quantifiers = true;
  bool truth = false;
  bool identity = true;
  bool functions = true;
};
FormulaId random_formula(SentenceEnv& env, const Signature& sig, std::mt19937& rng, const FormulaShape& shape);

// Strong Kleene recursion with assignments (quantifiers range over the
// domain, not over constants). -> is read over H-successors. T-atoms are
// gaps; Sent is classical.
TruthValue kleene(const SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t interp,
                  std::uint32_t world, FormulaId f);

// Brute force of the printed counterfactual clauses at (w, J), for
// sentences a, b whose values the oracle can compute.
bool cop_true(const SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t interp, std::uint32_t w,
              FormulaId a, FormulaId b);
bool cop_false(const SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t interp, std::uint32_t w,
               FormulaId a, FormulaId b);

// A model file opened the way the CLI opens it.
struct Loaded {
  Model model;
  SentenceUniverse universe;
  std::unique_ptr<TruthContext> ctx;
  FormulaId named(const std::string& name) const;
};
std::unique_ptr<Loaded> open_model(const std::string& path, bool parallel = true);
std::unique_ptr<Loaded> open_parsed(Model m, bool parallel = true);

std::string models_dir();

}  // namespace oracle
