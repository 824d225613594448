#pragma once

#include <mutex>

#include "sks/proof.hpp"
#include "sks/semantics.hpp"

namespace sks {

// Fixed-width bitset over universe indices.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;
  bool subset_of(const Bits& o) const;
  Bits operator&(const Bits& o) const;
  bool operator==(const Bits&) const = default;
  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Valuation function: one sentence set per point (world, interpretation).
struct Valuation {
  std::vector<Bits> at;
  bool operator==(const Valuation&) const = default;
  std::size_t hash() const;
};

struct ValuationHash {
  std::size_t operator()(const Valuation& v) const { return v.hash(); }
};

bool leq(const Valuation& f, const Valuation& g);
Valuation meet(const std::vector<const Valuation*>& vs);

enum class Admissibility : std::uint8_t { C, K3, N3, Nve, N3Nve };
const char* to_string(Admissibility e);
Admissibility parse_admissibility(std::string_view name);

struct TruthOptions {
  std::size_t y_cap = 50000;  // materialized start set
  ProveOptions prove{20000, 4, false, {}};
  bool parallel = true;
};

class YCapExceeded : public std::runtime_error {
 public:
  explicit YCapExceeded(std::size_t cap)
      : std::runtime_error("start valuation set exceeds cap " + std::to_string(cap)) {}
};

// Shared facts about a structure and its sentence universe, plus caches of
// saturation verdicts. Safe for concurrent use after construction.
class TruthContext {
 public:
  TruthContext(SentenceEnv& env, const SupervaluationStructure& s, const SentenceUniverse& u,
               TruthOptions opts = {});

  SentenceEnv& env() const { return env_; }
  const SupervaluationStructure& structure() const { return s_; }
  const SentenceUniverse& universe() const { return u_; }
  const TruthOptions& options() const { return opts_; }
  std::size_t size() const { return u_.size(); }
  std::uint32_t points() const { return s_.point_count(); }
  bool modal() const { return s_.frame.has_value(); }

  FormulaId member(std::size_t i) const { return u_.members[i]; }
  int index(FormulaId f) const { return u_.find(f); }
  // Index of ~phi; for phi = ~psi with ~~psi outside the universe, psi.
  int neg_index(std::size_t i) const { return neg_[i]; }
  bool t_free(std::size_t i) const { return t_free_[i]; }
  // Free of -> and ~> outside quotes.
  bool conditional_free(std::size_t i) const { return cond_free_[i]; }
  // T-free member true at point p of the ground structure.
  bool base_true(std::uint32_t p, std::size_t i) const { return base_true_[p].test(i); }

  Valuation empty() const;
  std::vector<FormulaId> sentences(const Bits& b) const;

  // Basic: consistent, T-free members sound, H-monotone per world.
  std::vector<std::string> basic_violations(const Valuation& f) const;
  bool is_basic(const Valuation& f) const;

  // Per-point saturation relative to the universe (or its conditional-free part).
  SatVerdict saturated_at(const Calculus& c, const Bits& s, bool conditional_free_part) const;
  // The saturation demand of the condition on g (not the ordering).
  bool admissible(Admissibility e, const Valuation& g) const;
  // g in Phi_e(f).
  bool admissible_from(Admissibility e, const Valuation& f, const Valuation& g) const;

  // One application of the Kripke jump, and its least fixed point from the
  // empty valuation (with box clauses on a frame).
  Valuation kripke_jump(const Valuation& g) const;
  Valuation minimal_fixpoint() const;

  // B^T above the least fixed point, materialized in a deterministic order.
  const std::vector<Valuation>& start_set() const;

  Calculus calculus(Logic l) const { return {l, identity_}; }

 private:
  std::vector<Bits> enumerate_point(std::uint32_t p, const Bits& least) const;
  std::vector<Valuation> modal_start() const;

  SentenceEnv& env_;
  const SupervaluationStructure& s_;
  const SentenceUniverse& u_;
  TruthOptions opts_;
  bool identity_ = false;
  std::vector<int> neg_;
  std::vector<char> t_free_, cond_free_;
  std::vector<Bits> base_true_;
  Bits cond_free_mask_;
  std::vector<FormulaId> cond_free_members_;

  struct SatKey {
    Logic logic;
    bool part;
    Bits bits;
    bool operator==(const SatKey&) const = default;
  };
  struct SatKeyHash {
    std::size_t operator()(const SatKey& k) const {
      return k.bits.hash() * 31 + static_cast<std::size_t>(k.logic) * 2 + k.part;
    }
  };
  mutable std::mutex mu_;
  mutable std::unordered_map<SatKey, SatVerdict, SatKeyHash> sat_cache_;
  mutable std::unordered_map<Valuation, bool, ValuationHash> basic_cache_;
  mutable std::once_flag start_once_;
  mutable std::vector<Valuation> start_;
};

// The truth structure (D, X x pool, H_Phi) seen from a root valuation. Only
// nodes reachable from the root are built; node 0 is the root.
class PoolView final : public TruthLayer {
 public:
  PoolView(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool,
           const Valuation& root);
  // Every pool member as a node (node i = pool[i]), all wired.
  PoolView(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool);

  std::uint32_t pool_size() const override { return static_cast<std::uint32_t>(nodes_.size()); }
  bool contains(std::uint32_t v, std::uint32_t p, FormulaId f, bool negated) const override;
  const std::vector<std::uint32_t>& successors(std::uint32_t v) const override { return succ_[v]; }

  const Valuation& valuation(std::uint32_t v) const { return *nodes_[v]; }
  // Pool index of node v, or -1 for a root outside the pool.
  int pool_index(std::uint32_t v) const { return pool_index_[v]; }

 private:
  const TruthContext& ctx_;
  std::vector<const Valuation*> nodes_;
  std::vector<int> pool_index_;
  std::vector<std::vector<std::uint32_t>> succ_;

  void wire(Admissibility e, const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to);
};

// theta(pool, f): the universe members true at J_f, per point. The parallel
// path evaluates sentences on OpenMP workers; serial is the reference.
Valuation theta(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool,
                const Valuation& f);
Valuation theta_serial(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool,
                       const Valuation& f);

// Theta(Y_f): members of Y above theta(Y_f, f).
std::vector<const Valuation*> big_theta(const std::vector<const Valuation*>& Y, const Valuation& next);

// Least element of Y if it belongs to Y, and whether it has an admissible
// member of Y above it.
struct Groundedness {
  bool has_least = false;
  bool admissible_above = false;
  Valuation least;
  bool grounded() const { return has_least && admissible_above; }
};
Groundedness groundedness(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& Y);

struct StageRecord {
  std::size_t stage = 0;
  std::vector<std::size_t> sizes;  // |theta(p)| per point
  std::size_t pool = 0;            // |Theta|
};

struct FixedPointResult {
  enum Status : std::uint8_t { FixedPoint, Collapse };
  Admissibility cond = Admissibility::C;
  Status status = FixedPoint;
  std::string reason;               // collapse reason tag
  std::size_t collapse_stage = 0;
  std::vector<std::string> analysis;  // per-stage account of named sentences
  Valuation start;                  // the least Kripke fixed point
  std::size_t start_set_size = 0;
  Valuation g;                      // final valuation
  std::vector<std::size_t> Z;       // final pool, indices into the start set
  std::vector<Valuation> stages;    // theta^0, theta^1, ...
  std::vector<StageRecord> trace;

  bool ok() const { return status == FixedPoint; }
};

// Default start: f_k with the materialized B^T above it. An explicit start
// supplies its own pool (indices into the start set) and valuation.
struct StartPair {
  std::vector<std::size_t> Y;
  Valuation f;
};

FixedPointResult iterate_fixed_point(const TruthContext& ctx, Admissibility e,
                                     const std::optional<StartPair>& start = std::nullopt);

std::vector<const Valuation*> pool_of(const TruthContext& ctx, const std::vector<std::size_t>& indices);

// theta(Z, g) == g and Theta(Z) == Z.
struct FixedPointCheck {
  bool theta_fixed = false;
  bool big_theta_fixed = false;
};
FixedPointCheck verify_fixed_point(const TruthContext& ctx, const FixedPointResult& r);

struct NaivetyFailure {
  std::uint32_t point;
  FormulaId sentence;
  bool negated;  // the ~T / ~phi form failed
};
std::vector<NaivetyFailure> check_naivety(const TruthContext& ctx, const FixedPointResult& r);

struct GeneratedSubstructure {
  std::vector<std::size_t> members;  // indices into the start set
  bool reflexive = false;
  bool theta_fixed = false;
};
GeneratedSubstructure generated_substructure(const TruthContext& ctx, const FixedPointResult& r);

struct PrincipleOutcome {
  char label;
  std::string schema;
  bool asserted = false;
  std::size_t instances = 0;
  std::vector<std::string> violations;
};
bool principle_asserted(char label, Admissibility e);
std::vector<PrincipleOutcome> check_principles(const TruthContext& ctx, const FixedPointResult& r);

// Global consequence over the generated substructure:
// (Gamma, phi |= psi, Gamma |= phi -> psi).
std::pair<bool, bool> deduction_theorem_check(const TruthContext& ctx, const FixedPointResult& r,
                                              const std::vector<FormulaId>& gamma, FormulaId phi,
                                              FormulaId psi);

// Some g in Phi(f) within Z and (J, J') in H with phi in g(J').
struct Witness {
  bool found = false;
  std::uint32_t point = 0;
  std::size_t valuation = 0;  // index into the start set
};
Witness exists_admissible_with(const TruthContext& ctx, const FixedPointResult& r, FormulaId phi,
                               std::uint32_t point);

// Truth value of an arbitrary closed sentence at J_f (or at the node of any
// member of the pool) inside the final truth structure.
TruthValue value_at_fixpoint(const TruthContext& ctx, const FixedPointResult& r, std::uint32_t point,
                             FormulaId f);

}  // namespace sks
