#pragma once

#include <compare>
#include <map>
#include <set>
#include <unordered_map>

#include "sks/syntax.hpp"

namespace sks {

using Elem = std::uint32_t;
using Tuple = std::vector<Elem>;

// What a closed term denotes: a domain element or a sentence object.
struct Value {
  enum Kind : std::uint8_t { Element, Sentence };
  Kind kind = Element;
  std::uint32_t id = 0;  // domain index or FormulaId
  bool operator==(const Value&) const = default;
  auto operator<=>(const Value&) const = default;
};

struct Extension {
  std::set<Tuple> pos, neg;
};

struct PartialInterpretation {
  std::string name;
  std::vector<Elem> constants;                  // indexed by constant
  std::vector<std::map<Tuple, Elem>> functions; // indexed by function
  std::vector<std::vector<Extension>> preds;    // [world][predicate]
};

// Ordering frame. rank[w][v] orders the carrier {v | wRv or v = w}; -1 = unranked.
struct Frame {
  std::vector<std::string> worlds;
  std::vector<std::vector<std::uint32_t>> R;
  std::vector<std::vector<int>> rank;

  std::size_t size() const { return worlds.size(); }
  bool accessible(std::uint32_t w, std::uint32_t v) const;
  std::vector<std::uint32_t> carrier(std::uint32_t w) const;
};

struct SupervaluationStructure {
  std::vector<std::string> domain;
  std::vector<PartialInterpretation> X;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> H;
  std::optional<Frame> frame;

  // Derived by finalize(): H-successors per interpretation, sorted.
  std::vector<std::vector<std::uint32_t>> h_succ;
  void finalize();

  std::uint32_t world_count() const { return frame ? static_cast<std::uint32_t>(frame->size()) : 1; }
  std::uint32_t point_count() const { return world_count() * static_cast<std::uint32_t>(X.size()); }
  std::uint32_t point(std::uint32_t w, std::uint32_t j) const {
    return w * static_cast<std::uint32_t>(X.size()) + j;
  }
  std::uint32_t point_world(std::uint32_t p) const { return p / static_cast<std::uint32_t>(X.size()); }
  std::uint32_t point_interp(std::uint32_t p) const { return p % static_cast<std::uint32_t>(X.size()); }
  std::string point_name(std::uint32_t p) const;
};

struct Report {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Information order; throws InputError on signature mismatch.
bool leq(const PartialInterpretation& I, const PartialInterpretation& J);
Report validate_structure(const SentenceEnv& env, const SupervaluationStructure& s);

enum class TruthValue : std::uint8_t { True, False, Undefined };
const char* to_string(TruthValue v);

using Assignment = std::unordered_map<std::uint32_t, Elem>;  // variable -> element

Value denote(const SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t interp,
             const Assignment& beta, TermId t);

// Interpretation of T over a pool of valuations. Node (v, p) pairs pool
// member v with point p of the structure.
class TruthLayer {
 public:
  virtual ~TruthLayer() = default;
  virtual std::uint32_t pool_size() const = 0;
  // Is f (or its negation, when negated) in valuation v at point p?
  virtual bool contains(std::uint32_t v, std::uint32_t p, FormulaId f, bool negated) const = 0;
  // Pool members admissible from v (the valuation half of H_Phi).
  virtual const std::vector<std::uint32_t>& successors(std::uint32_t v) const = 0;
};

// No truth predicate: T-atoms are gaps and H_Phi reduces to H.
class BaseLayer final : public TruthLayer {
 public:
  std::uint32_t pool_size() const override { return 1; }
  bool contains(std::uint32_t, std::uint32_t, FormulaId, bool) const override { return false; }
  const std::vector<std::uint32_t>& successors(std::uint32_t) const override { return self_; }

 private:
  std::vector<std::uint32_t> self_{0};
};

const BaseLayer& base_layer();

// Memoizing bilateral evaluator for closed formulas. Not thread-safe: use
// one instance per worker.
class Evaluator {
 public:
  Evaluator(SentenceEnv& env, const SupervaluationStructure& s, const TruthLayer& layer = base_layer());

  // f true (or, when negated, ~f true) at node (v, p).
  bool holds(std::uint32_t v, std::uint32_t p, FormulaId f, bool negated = false);
  TruthValue value(std::uint32_t v, std::uint32_t p, FormulaId f);
  void clear() { memo_.clear(); }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  bool compute(std::uint32_t node, FormulaId f, bool negated);
  bool at(std::uint32_t node, FormulaId f, bool negated);
  Value denote(std::uint32_t interp, TermId t) const;
  const std::vector<FormulaId>& instances(FormulaId universal);
  FormulaId cop_cond(FormulaId cop);
  bool cond_true(std::uint32_t node, FormulaId a, FormulaId b);

  SentenceEnv& env_;
  const SupervaluationStructure& s_;
  const TruthLayer& layer_;
  std::uint32_t points_;
  std::vector<TermId> constants_;
  std::unordered_map<std::uint64_t, bool> memo_;
  std::unordered_map<FormulaId, std::vector<FormulaId>> instances_;
  std::unordered_map<FormulaId, FormulaId> cop_cond_;
};

// Evaluate at world 0 (or world w) of interpretation J under an assignment;
// free variables are replaced by constants naming their values.
TruthValue eval(SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t interp,
                const Assignment& beta, FormulaId f, std::uint32_t world = 0);

struct PersistenceFailure {
  std::uint32_t from, to, world;
  FormulaId sentence;
};

// Truth at J implies truth at J' for every (J, J') in H, every world and
// every listed sentence. Parallel over sentences; the serial variant is the
// reference implementation.
std::vector<PersistenceFailure> persistence_check(SentenceEnv& env, const SupervaluationStructure& s,
                                                  const std::vector<FormulaId>& sentences);
std::vector<PersistenceFailure> persistence_check_serial(SentenceEnv& env,
                                                         const SupervaluationStructure& s,
                                                         const std::vector<FormulaId>& sentences);

}  // namespace sks
