#include "sks/syntax.hpp"

#include <algorithm>
#include <functional>

namespace sks {

namespace {

inline void mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

}  // namespace

std::size_t SentenceEnv::KeyHash::operator()(const TermKey& k) const {
  std::size_t h = static_cast<std::size_t>(k.kind);
  mix(h, k.sym);
  for (auto a : k.args) mix(h, a);
  return h;
}

std::size_t SentenceEnv::KeyHash::operator()(const FormulaKey& k) const {
  std::size_t h = static_cast<std::size_t>(k.op);
  mix(h, k.sym);
  mix(h, k.a);
  mix(h, k.b);
  for (auto t : k.terms) mix(h, t);
  return h;
}

SentenceEnv::SentenceEnv() { sent_pred_ = declare_predicate("Sent", 1); }

std::uint32_t SentenceEnv::declare_predicate(const std::string& name, unsigned arity) {
  std::lock_guard lock(mu_);
  if (name == "T" || name == "A" || name == "E" || name == "false" || name == "true")
    throw InputError("reserved name '" + name + "'");
  if (auto it = pred_by_name_.find(name); it != pred_by_name_.end()) {
    if (predicates_[it->second].arity != arity)
      throw InputError("predicate '" + name + "' redeclared with different arity");
    return it->second;
  }
  if (const_by_name_.count(name) || func_by_name_.count(name) || sent_by_name_.count(name))
    throw InputError("name '" + name + "' already in use");
  auto id = static_cast<std::uint32_t>(predicates_.size());
  predicates_.push_back({name, arity});
  pred_by_name_.emplace(name, id);
  return id;
}

std::uint32_t SentenceEnv::declare_constant(const std::string& name) {
  std::lock_guard lock(mu_);
  if (name == "T" || name == "A" || name == "E" || name == "false" || name == "true")
    throw InputError("reserved name '" + name + "'");
  if (auto it = const_by_name_.find(name); it != const_by_name_.end()) return it->second;
  if (pred_by_name_.count(name) || func_by_name_.count(name) || sent_by_name_.count(name))
    throw InputError("name '" + name + "' already in use");
  auto id = static_cast<std::uint32_t>(constants_.size());
  constants_.push_back(name);
  const_by_name_.emplace(name, id);
  return id;
}

std::uint32_t SentenceEnv::declare_function(const std::string& name, unsigned arity) {
  std::lock_guard lock(mu_);
  if (arity == 0) throw InputError("function '" + name + "' must have positive arity");
  if (auto it = func_by_name_.find(name); it != func_by_name_.end()) {
    if (functions_[it->second].arity != arity)
      throw InputError("function '" + name + "' redeclared with different arity");
    return it->second;
  }
  if (pred_by_name_.count(name) || const_by_name_.count(name) || sent_by_name_.count(name))
    throw InputError("name '" + name + "' already in use");
  auto id = static_cast<std::uint32_t>(functions_.size());
  functions_.push_back({name, arity});
  func_by_name_.emplace(name, id);
  return id;
}

std::uint32_t SentenceEnv::variable(const std::string& name) {
  std::lock_guard lock(mu_);
  if (auto it = var_by_name_.find(name); it != var_by_name_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(variables_.size());
  variables_.push_back(name);
  var_by_name_.emplace(name, id);
  return id;
}

namespace {
template <class Map>
std::optional<std::uint32_t> lookup(const Map& m, std::string_view name) {
  auto it = m.find(std::string(name));
  if (it == m.end()) return std::nullopt;
  return it->second;
}
}  // namespace

std::optional<std::uint32_t> SentenceEnv::find_predicate(std::string_view name) const {
  std::lock_guard lock(mu_);
  return lookup(pred_by_name_, name);
}
std::optional<std::uint32_t> SentenceEnv::find_constant(std::string_view name) const {
  std::lock_guard lock(mu_);
  return lookup(const_by_name_, name);
}
std::optional<std::uint32_t> SentenceEnv::find_function(std::string_view name) const {
  std::lock_guard lock(mu_);
  return lookup(func_by_name_, name);
}
std::optional<std::uint32_t> SentenceEnv::find_sentence(std::string_view name) const {
  std::lock_guard lock(mu_);
  return lookup(sent_by_name_, name);
}

std::uint32_t SentenceEnv::declare_sentence(const std::string& name) {
  std::lock_guard lock(mu_);
  if (sent_by_name_.count(name)) throw InputError("sentence '" + name + "' defined twice");
  if (pred_by_name_.count(name) || const_by_name_.count(name) || func_by_name_.count(name))
    throw InputError("name '" + name + "' already in use");
  Slot s;
  s.name = name;
  auto id = slots_.push(std::move(s));
  sent_by_name_.emplace(name, id);
  return id;
}

void SentenceEnv::define_sentence(std::uint32_t slot, FormulaId body) {
  std::lock_guard lock(mu_);
  if (!closed(body)) throw InputError("sentence '" + *slots_[slot].name + "' is not closed");
  if (auto it = slot_by_formula_.find(body); it != slot_by_formula_.end()) {
    const Slot& other = slots_[it->second];
    throw InputError("sentence '" + *slots_[slot].name + "' has the same body as " +
                     (other.name ? "sentence '" + *other.name + "'" : "an earlier quotation"));
  }
  slots_.mut(slot).formula = body;
  slot_by_formula_.emplace(body, slot);
}

std::vector<std::uint32_t> SentenceEnv::named_slots() const {
  std::lock_guard lock(mu_);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < slots_.size(); ++i)
    if (slots_[i].name) out.push_back(i);
  return out;
}

std::uint32_t SentenceEnv::quote_slot(FormulaId f) {
  std::lock_guard lock(mu_);
  if (auto it = slot_by_formula_.find(f); it != slot_by_formula_.end()) return it->second;
  Slot s;
  s.formula = f;
  auto id = slots_.push(std::move(s));
  slot_by_formula_.emplace(f, id);
  return id;
}

FormulaId SentenceEnv::slot_formula(std::uint32_t slot) const { return slots_[slot].formula; }

const std::string* SentenceEnv::slot_name(std::uint32_t slot) const {
  const Slot& s = slots_[slot];
  return s.name ? &*s.name : nullptr;
}

const std::string* SentenceEnv::sentence_name(FormulaId f) const {
  std::lock_guard lock(mu_);
  auto it = slot_by_formula_.find(f);
  if (it == slot_by_formula_.end()) return nullptr;
  return slot_name(it->second);
}

TermId SentenceEnv::intern_term(TermNode n) {
  std::lock_guard lock(mu_);
  TermKey key{n.kind, n.sym, n.args};
  if (auto it = term_index_.find(key); it != term_index_.end()) return it->second;
  auto id = terms_.push(std::move(n));
  term_index_.emplace(std::move(key), id);
  return id;
}

FormulaId SentenceEnv::intern_formula(FormulaNode n) {
  std::lock_guard lock(mu_);
  FormulaKey key{n.op, n.sym, n.a, n.b, n.terms};
  if (auto it = formula_index_.find(key); it != formula_index_.end()) return it->second;
  auto id = formulas_.push(std::move(n));
  formula_index_.emplace(std::move(key), id);
  return id;
}

TermId SentenceEnv::var(std::uint32_t v) { return intern_term({TermKind::Var, v, {}}); }
TermId SentenceEnv::constant(std::uint32_t c) { return intern_term({TermKind::Const, c, {}}); }
TermId SentenceEnv::param(std::uint32_t p) { return intern_term({TermKind::Param, p, {}}); }
TermId SentenceEnv::func(std::uint32_t f, std::vector<TermId> args) {
  if (args.size() != functions_[f].arity)
    throw InputError("arity mismatch for function '" + functions_[f].name + "'");
  return intern_term({TermKind::Func, f, std::move(args)});
}
TermId SentenceEnv::quote(std::uint32_t slot) { return intern_term({TermKind::Quote, slot, {}}); }

FormulaId SentenceEnv::ident(TermId s, TermId t) {
  return intern_formula({Op::Ident, kNone, kNone, kNone, {s, t}});
}
FormulaId SentenceEnv::atom(std::uint32_t pred, std::vector<TermId> args) {
  if (args.size() != predicates_[pred].arity)
    throw InputError("arity mismatch for predicate '" + predicates_[pred].name + "'");
  return intern_formula({Op::Atom, pred, kNone, kNone, std::move(args)});
}
FormulaId SentenceEnv::truth(TermId t) {
  return intern_formula({Op::Truth, kNone, kNone, kNone, {t}});
}
FormulaId SentenceEnv::falsum() { return intern_formula({Op::Falsum, kNone, kNone, kNone, {}}); }
FormulaId SentenceEnv::neg(FormulaId a) { return intern_formula({Op::Neg, kNone, a, kNone, {}}); }
FormulaId SentenceEnv::conj(FormulaId a, FormulaId b) {
  return intern_formula({Op::And, kNone, a, b, {}});
}
FormulaId SentenceEnv::cond(FormulaId a, FormulaId b) {
  return intern_formula({Op::Cond, kNone, a, b, {}});
}
FormulaId SentenceEnv::forall(std::uint32_t v, FormulaId a) {
  return intern_formula({Op::Forall, v, a, kNone, {}});
}
FormulaId SentenceEnv::box(FormulaId a) { return intern_formula({Op::Box, kNone, a, kNone, {}}); }
FormulaId SentenceEnv::cop(FormulaId a, FormulaId b) {
  return intern_formula({Op::Cop, kNone, a, b, {}});
}

TermId SentenceEnv::substitute_term(TermId s, std::uint32_t v, TermId t) {
  const TermNode& n = terms_[s];
  switch (n.kind) {
    case TermKind::Var:
      return n.sym == v ? t : s;
    case TermKind::Func: {
      std::vector<TermId> args;
      bool changed = false;
      for (auto a : n.args) {
        args.push_back(substitute_term(a, v, t));
        changed |= args.back() != a;
      }
      return changed ? func(n.sym, std::move(args)) : s;
    }
    default:
      return s;
  }
}

FormulaId SentenceEnv::substitute(FormulaId f, std::uint32_t v, TermId t) {
  const FormulaNode& n = formulas_[f];
  switch (n.op) {
    case Op::Ident:
    case Op::Atom:
    case Op::Truth: {
      FormulaNode m = n;
      bool changed = false;
      for (auto& a : m.terms) {
        auto b = substitute_term(a, v, t);
        changed |= b != a;
        a = b;
      }
      return changed ? intern_formula(std::move(m)) : f;
    }
    case Op::Falsum:
      return f;
    case Op::Neg:
    case Op::Box: {
      auto a = substitute(n.a, v, t);
      if (a == n.a) return f;
      return n.op == Op::Neg ? neg(a) : box(a);
    }
    case Op::And:
    case Op::Cond:
    case Op::Cop: {
      auto a = substitute(n.a, v, t);
      auto b = substitute(n.b, v, t);
      if (a == n.a && b == n.b) return f;
      return intern_formula({n.op, kNone, a, b, {}});
    }
    case Op::Forall: {
      if (n.sym == v) return f;
      auto a = substitute(n.a, v, t);
      return a == n.a ? f : forall(n.sym, a);
    }
  }
  return f;
}

namespace {
TermId replace_in_term(SentenceEnv& env, TermId s, TermId from, TermId to) {
  if (s == from) return to;
  const TermNode& n = env.term(s);
  if (n.kind != TermKind::Func) return s;
  std::vector<TermId> args;
  bool changed = false;
  for (auto a : n.args) {
    args.push_back(replace_in_term(env, a, from, to));
    changed |= args.back() != a;
  }
  return changed ? env.func(n.sym, std::move(args)) : s;
}

std::size_t count_in_term(const SentenceEnv& env, TermId s, TermId from) {
  if (s == from) return 1;
  const TermNode& n = env.term(s);
  std::size_t c = 0;
  if (n.kind == TermKind::Func)
    for (auto a : n.args) c += count_in_term(env, a, from);
  return c;
}

// Replace the k-th occurrence (pre-order) of `from` in s; k is consumed.
TermId replace_kth(SentenceEnv& env, TermId s, TermId from, TermId to, std::size_t& k) {
  if (s == from) {
    if (k == 0) {
      k = static_cast<std::size_t>(-1);
      return to;
    }
    --k;
    return s;
  }
  const TermNode& n = env.term(s);
  if (n.kind != TermKind::Func) return s;
  std::vector<TermId> args;
  bool changed = false;
  for (auto a : n.args) {
    args.push_back(replace_kth(env, a, from, to, k));
    changed |= args.back() != a;
  }
  return changed ? env.func(n.sym, std::move(args)) : s;
}
}  // namespace

FormulaId SentenceEnv::replace_term(FormulaId f, TermId from, TermId to) {
  const FormulaNode& n = formulas_[f];
  switch (n.op) {
    case Op::Ident:
    case Op::Atom:
    case Op::Truth: {
      FormulaNode m = n;
      for (auto& a : m.terms) a = replace_in_term(*this, a, from, to);
      return intern_formula(std::move(m));
    }
    case Op::Falsum:
      return f;
    case Op::Neg:
      return neg(replace_term(n.a, from, to));
    case Op::Box:
      return box(replace_term(n.a, from, to));
    case Op::And:
    case Op::Cond:
    case Op::Cop:
      return intern_formula({n.op, kNone, replace_term(n.a, from, to), replace_term(n.b, from, to), {}});
    case Op::Forall:
      return forall(n.sym, replace_term(n.a, from, to));
  }
  return f;
}

std::vector<FormulaId> SentenceEnv::replace_one(FormulaId f, TermId from, TermId to) {
  std::vector<FormulaId> out;
  const FormulaNode& n0 = formulas_[f];
  if (n0.op == Op::Neg) {
    for (auto g : replace_one(n0.a, from, to)) out.push_back(neg(g));
    return out;
  }
  if (n0.op != Op::Ident && n0.op != Op::Atom && n0.op != Op::Truth) return out;
  FormulaNode n = n0;
  std::size_t total = 0;
  for (auto a : n.terms) total += count_in_term(*this, a, from);
  for (std::size_t occ = 0; occ < total; ++occ) {
    FormulaNode m = n;
    std::size_t k = occ;
    for (auto& a : m.terms) a = replace_kth(*this, a, from, to, k);
    out.push_back(intern_formula(std::move(m)));
  }
  return out;
}

void SentenceEnv::collect_terms(FormulaId f, std::vector<TermId>& out) const {
  const FormulaNode& n = formulas_[f];
  std::function<void(TermId)> walk = [&](TermId t) {
    if (!term_closed(t)) return;
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    const TermNode& tn = terms_[t];
    if (tn.kind == TermKind::Func)
      for (auto a : tn.args) walk(a);
  };
  switch (n.op) {
    case Op::Ident:
    case Op::Atom:
    case Op::Truth:
      for (auto t : n.terms) walk(t);
      break;
    case Op::Falsum:
      break;
    case Op::Neg:
    case Op::Box:
    case Op::Forall:
      collect_terms(n.a, out);
      break;
    case Op::And:
    case Op::Cond:
    case Op::Cop:
      collect_terms(n.a, out);
      collect_terms(n.b, out);
      break;
  }
}

FormulaId SentenceEnv::instance(FormulaId universal, TermId t) {
  const FormulaNode& n = formulas_[universal];
  if (n.op != Op::Forall) throw std::logic_error("instance of a non-universal formula");
  return substitute(n.a, n.sym, t);
}

bool SentenceEnv::term_closed(TermId t) const {
  const TermNode& n = terms_[t];
  if (n.kind == TermKind::Var) return false;
  for (auto a : n.args)
    if (!term_closed(a)) return false;
  return true;
}

namespace {
bool free_in(const SentenceEnv& env, FormulaId f, std::vector<std::uint32_t>& bound) {
  const FormulaNode& n = env.node(f);
  std::function<bool(TermId)> term_ok = [&](TermId t) {
    const TermNode& tn = env.term(t);
    if (tn.kind == TermKind::Var)
      return std::find(bound.begin(), bound.end(), tn.sym) != bound.end();
    for (auto a : tn.args)
      if (!term_ok(a)) return false;
    return true;
  };
  switch (n.op) {
    case Op::Ident:
    case Op::Atom:
    case Op::Truth:
      for (auto t : n.terms)
        if (!term_ok(t)) return false;
      return true;
    case Op::Falsum:
      return true;
    case Op::Neg:
    case Op::Box:
      return free_in(env, n.a, bound);
    case Op::And:
    case Op::Cond:
    case Op::Cop:
      return free_in(env, n.a, bound) && free_in(env, n.b, bound);
    case Op::Forall: {
      bound.push_back(n.sym);
      bool ok = free_in(env, n.a, bound);
      bound.pop_back();
      return ok;
    }
  }
  return true;
}
}  // namespace

bool SentenceEnv::closed(FormulaId f) const {
  std::vector<std::uint32_t> bound;
  return free_in(*this, f, bound);
}

bool SentenceEnv::term_has_param(TermId t, std::uint32_t p) const {
  const TermNode& n = terms_[t];
  if (n.kind == TermKind::Param) return n.sym == p;
  for (auto a : n.args)
    if (term_has_param(a, p)) return true;
  return false;
}

bool SentenceEnv::occurs_param(FormulaId f, std::uint32_t p) const {
  const FormulaNode& n = formulas_[f];
  switch (n.op) {
    case Op::Ident:
    case Op::Atom:
    case Op::Truth:
      for (auto t : n.terms)
        if (term_has_param(t, p)) return true;
      return false;
    case Op::Falsum:
      return false;
    case Op::Neg:
    case Op::Box:
    case Op::Forall:
      return occurs_param(n.a, p);
    case Op::And:
    case Op::Cond:
    case Op::Cop:
      return occurs_param(n.a, p) || occurs_param(n.b, p);
  }
  return false;
}

std::vector<TermId> SentenceEnv::constant_terms() {
  std::vector<TermId> out;
  for (std::uint32_t c = 0; c < constants_.size(); ++c) out.push_back(constant(c));
  return out;
}

}  // namespace sks
