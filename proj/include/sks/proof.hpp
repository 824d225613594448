#pragma once

#include <memory>
#include <unordered_set>

#include "sks/syntax.hpp"

namespace sks {

// Finite-set sequent; both sides kept sorted and duplicate-free.
struct Sequent {
  std::vector<FormulaId> left, right;

  static Sequent of(std::vector<FormulaId> l, std::vector<FormulaId> r);
  bool in_left(FormulaId f) const;
  bool in_right(FormulaId f) const;
  bool operator==(const Sequent&) const = default;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const;
};

std::string print(const SentenceEnv& env, const Sequent& s);
// "phi, psi => chi"; either side may be empty.
Sequent parse_sequent(std::string_view text, SentenceEnv& env, const ParseOptions& opts = {});

enum class Logic : std::uint8_t { K3, N3, K3T, N3T };

struct Calculus {
  Logic logic = Logic::K3;
  bool identity = false;

  bool conditional_rules() const { return logic == Logic::N3 || logic == Logic::N3T; }
  bool truth_rules() const { return logic == Logic::K3T || logic == Logic::N3T; }
};

const char* to_string(Logic l);
Logic parse_logic(std::string_view name);

// Atomic for the calculus: no rule decomposes it.
bool is_atomic(const SentenceEnv& env, const Calculus& c, FormulaId f);
bool is_literal(const SentenceEnv& env, const Calculus& c, FormulaId f);

struct ProofTree {
  Sequent sequent;
  std::string rule;
  FormulaId principal = kNone;
  FormulaId aux = kNone;  // identity used by rep, cut formula
  TermId term = kNone;    // instance term or eigenvariable
  std::string note;
  std::vector<ProofTree> premises;

  std::size_t size() const;
};

enum class ProofStatus : std::uint8_t { Proved, Refuted, Indeterminate };
const char* to_string(ProofStatus s);

struct ProveOptions {
  std::size_t max_steps = 200000;
  std::size_t max_params = 6;
  bool record = false;
  std::vector<FormulaId> cut_formulas;
};

struct ProofResult {
  ProofStatus status = ProofStatus::Indeterminate;
  std::optional<ProofTree> tree;
  std::size_t steps = 0;
  bool proved() const { return status == ProofStatus::Proved; }
};

// Backward search: invertible rules to saturation, committed branching,
// then ->r and the supplied cut formulas. Failures without budget
// exhaustion are reported as Refuted.
ProofResult prove(SentenceEnv& env, const Calculus& c, const Sequent& goal, const ProveOptions& opts = {});

struct CheckResult {
  bool ok = true;
  std::string reason;
};
CheckResult check_proof(SentenceEnv& env, const Calculus& c, const ProofTree& tree);

std::string render_tree(const SentenceEnv& env, const ProofTree& tree);

enum class SatVerdict : std::uint8_t { Saturated, NotSaturated, Indeterminate };

// Not provable: S => universe \ S.
SatVerdict saturated(SentenceEnv& env, const Calculus& c, const std::vector<FormulaId>& S,
                     const std::vector<FormulaId>& universe, const ProveOptions& opts = {});

struct SaturateResult {
  enum Status : std::uint8_t { Ok, Inconsistent, Indeterminate, NoExtension } status = Ok;
  std::vector<FormulaId> set;
};
SaturateResult saturate(SentenceEnv& env, const Calculus& c, const std::vector<FormulaId>& S,
                        const std::vector<FormulaId>& universe, const ProveOptions& opts = {});

// The Curry derivation of => false from the named sentence `kappa`
// (body T('kappa') -> false) in N3 with the truth rules.
ProofTree curry_derivation(SentenceEnv& env, std::uint32_t kappa_slot);

}  // namespace sks
