#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sks {

using TermId = std::uint32_t;
using FormulaId = std::uint32_t;
inline constexpr std::uint32_t kNone = 0xffffffffu;

enum class TermKind : std::uint8_t { Var, Const, Param, Func, Quote };

// Var: sym = variable index. Const: constant index. Param: eigenvariable
// index. Func: function index. Quote: sentence slot.
struct TermNode {
  TermKind kind;
  std::uint32_t sym;
  std::vector<TermId> args;
};

enum class Op : std::uint8_t { Ident, Atom, Truth, Falsum, Neg, And, Cond, Forall, Box, Cop };

struct FormulaNode {
  Op op;
  std::uint32_t sym = kNone;  // predicate (Atom) or bound variable (Forall)
  FormulaId a = kNone;
  FormulaId b = kNone;
  std::vector<TermId> terms;  // Ident: 2, Atom: arity, Truth: 1
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
  std::size_t pos;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PredicateDecl {
  std::string name;
  unsigned arity;
};

struct FunctionDecl {
  std::string name;
  unsigned arity;
};

// Append-only storage whose elements never move, so readers on other threads
// can hold references while a writer (under the env mutex) appends.
template <class T>
class StableVector {
  static constexpr unsigned kBits = 12;
  static constexpr std::uint32_t kChunk = 1u << kBits;
  static constexpr std::uint32_t kMaxChunks = 1u << 14;

 public:
  StableVector() : chunks_(new std::atomic<T*>[kMaxChunks]) {
    for (std::uint32_t i = 0; i < kMaxChunks; ++i) chunks_[i].store(nullptr);
  }
  ~StableVector() {
    for (std::uint32_t i = 0; i < kMaxChunks; ++i) delete[] chunks_[i].load();
  }
  StableVector(const StableVector&) = delete;
  StableVector& operator=(const StableVector&) = delete;

  const T& operator[](std::uint32_t i) const {
    return chunks_[i >> kBits].load(std::memory_order_acquire)[i & (kChunk - 1)];
  }
  T& mut(std::uint32_t i) { return chunks_[i >> kBits].load()[i & (kChunk - 1)]; }
  std::uint32_t size() const { return size_.load(std::memory_order_acquire); }
  std::uint32_t push(T v) {
    std::uint32_t i = size_.load(std::memory_order_relaxed);
    std::uint32_t c = i >> kBits;
    if (c >= kMaxChunks) throw std::length_error("formula store exhausted");
    T* chunk = chunks_[c].load(std::memory_order_relaxed);
    if (!chunk) {
      chunk = new T[kChunk];
      chunks_[c].store(chunk, std::memory_order_release);
    }
    chunk[i & (kChunk - 1)] = std::move(v);
    size_.store(i + 1, std::memory_order_release);
    return i;
  }

 private:
  std::unique_ptr<std::atomic<T*>[]> chunks_;
  std::atomic<std::uint32_t> size_{0};
};

// Signature, named sentences and the hash-consed term/formula store.
// Interning is thread-safe; everything else is set up before evaluation.
class SentenceEnv {
 public:
  SentenceEnv();
  SentenceEnv(const SentenceEnv&) = delete;
  SentenceEnv& operator=(const SentenceEnv&) = delete;

  std::uint32_t declare_predicate(const std::string& name, unsigned arity);
  std::uint32_t declare_constant(const std::string& name);
  std::uint32_t declare_function(const std::string& name, unsigned arity);
  std::uint32_t variable(const std::string& name);

  std::optional<std::uint32_t> find_predicate(std::string_view name) const;
  std::optional<std::uint32_t> find_constant(std::string_view name) const;
  std::optional<std::uint32_t> find_function(std::string_view name) const;
  std::optional<std::uint32_t> find_sentence(std::string_view name) const;

  const PredicateDecl& predicate(std::uint32_t p) const { return predicates_[p]; }
  const std::string& constant_name(std::uint32_t c) const { return constants_[c]; }
  const FunctionDecl& function(std::uint32_t f) const { return functions_[f]; }
  const std::string& variable_name(std::uint32_t v) const { return variables_[v]; }
  std::size_t predicate_count() const { return predicates_.size(); }
  std::size_t constant_count() const { return constants_.size(); }
  std::size_t function_count() const { return functions_.size(); }
  std::uint32_t sent_predicate() const { return sent_pred_; }

  // Named sentences: reserve a slot, parse the body (which may quote the
  // slot), then bind it.
  std::uint32_t declare_sentence(const std::string& name);
  void define_sentence(std::uint32_t slot, FormulaId body);
  std::vector<std::uint32_t> named_slots() const;
  std::uint32_t quote_slot(FormulaId f);  // slot whose sentence is f
  FormulaId slot_formula(std::uint32_t slot) const;
  const std::string* slot_name(std::uint32_t slot) const;
  const std::string* sentence_name(FormulaId f) const;  // name if f is a named body

  TermId var(std::uint32_t v);
  TermId constant(std::uint32_t c);
  TermId param(std::uint32_t p);
  TermId func(std::uint32_t f, std::vector<TermId> args);
  TermId quote(std::uint32_t slot);
  TermId quote_of(FormulaId f) { return quote(quote_slot(f)); }

  FormulaId ident(TermId s, TermId t);
  FormulaId atom(std::uint32_t pred, std::vector<TermId> args);
  FormulaId truth(TermId t);
  FormulaId falsum();
  FormulaId neg(FormulaId a);
  FormulaId conj(FormulaId a, FormulaId b);
  FormulaId cond(FormulaId a, FormulaId b);
  FormulaId forall(std::uint32_t v, FormulaId a);
  FormulaId box(FormulaId a);
  FormulaId cop(FormulaId a, FormulaId b);

  // Derived forms, expanded on construction.
  FormulaId disj(FormulaId a, FormulaId b) { return neg(conj(neg(a), neg(b))); }
  FormulaId exists(std::uint32_t v, FormulaId a) { return neg(forall(v, neg(a))); }
  FormulaId iff(FormulaId a, FormulaId b) { return conj(cond(a, b), cond(b, a)); }
  FormulaId strict(FormulaId a, FormulaId b) { return box(cond(a, b)); }
  FormulaId verum() { return neg(falsum()); }

  const FormulaNode& node(FormulaId f) const { return formulas_[f]; }
  const TermNode& term(TermId t) const { return terms_[t]; }
  std::size_t formula_count() const { return formulas_.size(); }

  // Capture-free substitution of a closed term for the free occurrences of v.
  FormulaId substitute(FormulaId f, std::uint32_t v, TermId t);
  TermId substitute_term(TermId s, std::uint32_t v, TermId t);
  // Replace term `from` by `to` throughout (closed terms only).
  FormulaId replace_term(FormulaId f, TermId from, TermId to);
  // Every atomic formula obtained from the literal `f` by replacing exactly
  // one occurrence of `from` with `to` (outside quotes).
  std::vector<FormulaId> replace_one(FormulaId f, TermId from, TermId to);
  // Closed terms occurring in f outside quotes (subterms included).
  void collect_terms(FormulaId f, std::vector<TermId>& out) const;
  // Instance of a universal: body of forall(v, body) with t for v.
  FormulaId instance(FormulaId universal, TermId t);

  bool closed(FormulaId f) const;
  bool term_closed(TermId t) const;
  bool occurs_param(FormulaId f, std::uint32_t p) const;
  bool term_has_param(TermId t, std::uint32_t p) const;

  std::vector<TermId> constant_terms();  // one term per declared constant

 private:
  struct TermKey {
    TermKind kind;
    std::uint32_t sym;
    std::vector<TermId> args;
    bool operator==(const TermKey&) const = default;
  };
  struct FormulaKey {
    Op op;
    std::uint32_t sym;
    FormulaId a, b;
    std::vector<TermId> terms;
    bool operator==(const FormulaKey&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const TermKey& k) const;
    std::size_t operator()(const FormulaKey& k) const;
  };

  TermId intern_term(TermNode n);
  FormulaId intern_formula(FormulaNode n);

  mutable std::recursive_mutex mu_;
  StableVector<TermNode> terms_;
  StableVector<FormulaNode> formulas_;
  std::unordered_map<TermKey, TermId, KeyHash> term_index_;
  std::unordered_map<FormulaKey, FormulaId, KeyHash> formula_index_;

  std::vector<PredicateDecl> predicates_;
  std::vector<std::string> constants_;
  std::vector<FunctionDecl> functions_;
  std::vector<std::string> variables_;
  std::unordered_map<std::string, std::uint32_t> pred_by_name_, const_by_name_, func_by_name_,
      var_by_name_, sent_by_name_;

  struct Slot {
    std::optional<std::string> name;
    FormulaId formula = kNone;
  };
  StableVector<Slot> slots_;
  std::unordered_map<FormulaId, std::uint32_t> slot_by_formula_;
  std::uint32_t sent_pred_ = 0;
};

struct ParseOptions {
  bool modal = true;    // admit [] and ~>
  bool lenient = false; // auto-declare unknown predicates/constants
};

FormulaId parse(std::string_view text, SentenceEnv& env, const ParseOptions& opts = {});
TermId parse_term(std::string_view text, SentenceEnv& env, const ParseOptions& opts = {});

// Structural printing; parse(print(f)) == f.
std::string print(const SentenceEnv& env, FormulaId f);
std::string print_term(const SentenceEnv& env, TermId t);
// Report form: a named sentence prints as its name.
std::string display(const SentenceEnv& env, FormulaId f);

// Syntactic measures.
unsigned negation_prefix(const SentenceEnv& env, FormulaId f);
unsigned wrap_depth(const SentenceEnv& env, FormulaId f);
unsigned formula_size(const SentenceEnv& env, FormulaId f);
bool is_t_free(const SentenceEnv& env, FormulaId f);
// Free of -> and ~> (the fragment whose truth the Kripke jump fixes).
bool is_conditional_free(const SentenceEnv& env, FormulaId f);
bool is_modal_free(const SentenceEnv& env, FormulaId f);
std::vector<FormulaId> immediate_subsentences(SentenceEnv& env, FormulaId f);

class UniverseCapExceeded : public std::runtime_error {
 public:
  UniverseCapExceeded(std::size_t cap)
      : std::runtime_error("sentence universe exceeds cap " + std::to_string(cap)), cap(cap) {}
  std::size_t cap;
};

struct SentenceUniverse {
  std::vector<FormulaId> members;
  std::unordered_map<FormulaId, std::uint32_t> index;
  unsigned depth = 0;

  std::size_t size() const { return members.size(); }
  int find(FormulaId f) const {
    auto it = index.find(f);
    return it == index.end() ? -1 : static_cast<int>(it->second);
  }
  bool contains(FormulaId f) const { return index.count(f) != 0; }
};

SentenceUniverse build_universe(SentenceEnv& env, const std::vector<FormulaId>& seeds,
                                unsigned depth, std::size_t cap = 4000);

}  // namespace sks
