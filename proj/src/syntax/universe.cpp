#include <algorithm>
#include <deque>
#include <tuple>

#include "sks/syntax.hpp"

namespace sks {

unsigned negation_prefix(const SentenceEnv& env, FormulaId f) {
  unsigned k = 0;
  while (env.node(f).op == Op::Neg) {
    f = env.node(f).a;
    ++k;
  }
  return k;
}

namespace {

unsigned term_wrap(const SentenceEnv& env, TermId t) {
  const TermNode& n = env.term(t);
  if (n.kind == TermKind::Quote) {
    if (env.slot_name(n.sym)) return 0;
    return 1 + wrap_depth(env, env.slot_formula(n.sym));
  }
  unsigned d = 0;
  for (auto a : n.args) d = std::max(d, term_wrap(env, a));
  return d;
}

template <class Pred>
bool all_nodes(const SentenceEnv& env, FormulaId f, Pred pred) {
  if (!pred(env.node(f))) return false;
  const FormulaNode& n = env.node(f);
  if (n.a != kNone && !all_nodes(env, n.a, pred)) return false;
  if (n.b != kNone && !all_nodes(env, n.b, pred)) return false;
  return true;
}

}  // namespace

// Quotation nesting: a named quote counts 0, an anonymous quote one more
// than its body.
unsigned wrap_depth(const SentenceEnv& env, FormulaId f) {
  const FormulaNode& n = env.node(f);
  unsigned d = 0;
  for (auto t : n.terms) d = std::max(d, term_wrap(env, t));
  if (n.a != kNone) d = std::max(d, wrap_depth(env, n.a));
  if (n.b != kNone) d = std::max(d, wrap_depth(env, n.b));
  return d;
}

unsigned formula_size(const SentenceEnv& env, FormulaId f) {
  const FormulaNode& n = env.node(f);
  unsigned s = 1;
  if (n.a != kNone) s += formula_size(env, n.a);
  if (n.b != kNone) s += formula_size(env, n.b);
  return s;
}

bool is_t_free(const SentenceEnv& env, FormulaId f) {
  return all_nodes(env, f, [](const FormulaNode& n) { return n.op != Op::Truth; });
}

bool is_conditional_free(const SentenceEnv& env, FormulaId f) {
  return all_nodes(env, f, [](const FormulaNode& n) { return n.op != Op::Cond && n.op != Op::Cop; });
}

bool is_modal_free(const SentenceEnv& env, FormulaId f) {
  return all_nodes(env, f, [](const FormulaNode& n) { return n.op != Op::Box && n.op != Op::Cop; });
}

// The sentences an evaluation clause for f consults directly.
std::vector<FormulaId> immediate_subsentences(SentenceEnv& env, FormulaId f) {
  std::vector<FormulaId> out;
  const FormulaNode n = env.node(f);
  auto instances = [&](FormulaId universal, bool negate) {
    for (auto c : env.constant_terms()) {
      auto i = env.instance(universal, c);
      out.push_back(negate ? env.neg(i) : i);
    }
  };
  switch (n.op) {
    case Op::Ident:
    case Op::Atom:
    case Op::Falsum:
      break;
    case Op::Truth: {
      const TermNode& t = env.term(n.terms[0]);
      if (t.kind == TermKind::Quote) out.push_back(env.slot_formula(t.sym));
      break;
    }
    case Op::Neg: {
      out.push_back(n.a);
      const FormulaNode m = env.node(n.a);
      switch (m.op) {
        case Op::Neg:
          out.push_back(m.a);
          break;
        case Op::And:
          out.push_back(env.neg(m.a));
          out.push_back(env.neg(m.b));
          break;
        case Op::Cond:
          out.push_back(m.a);
          out.push_back(env.neg(m.b));
          break;
        case Op::Cop:
          out.push_back(m.a);
          out.push_back(env.neg(m.b));
          out.push_back(env.cond(m.a, m.b));
          break;
        case Op::Forall:
          instances(n.a, true);
          break;
        case Op::Box:
          out.push_back(env.neg(m.a));
          break;
        default:
          break;
      }
      break;
    }
    case Op::And:
    case Op::Cond:
      out.push_back(n.a);
      out.push_back(n.b);
      break;
    case Op::Cop:
      out.push_back(n.a);
      out.push_back(n.b);
      out.push_back(env.cond(n.a, n.b));
      break;
    case Op::Forall:
      instances(f, false);
      break;
    case Op::Box:
      out.push_back(n.a);
      break;
  }
  return out;
}

SentenceUniverse build_universe(SentenceEnv& env, const std::vector<FormulaId>& seeds,
                                unsigned depth, std::size_t cap) {
  std::unordered_map<FormulaId, bool> seen;
  std::vector<FormulaId> found;
  std::deque<FormulaId> work;
  auto add = [&](FormulaId f) {
    if (seen.emplace(f, true).second) {
      if (found.size() >= cap) throw UniverseCapExceeded(cap);
      found.push_back(f);
      work.push_back(f);
    }
  };
  for (auto f : seeds) {
    if (!env.closed(f)) throw InputError("seed is not a sentence: " + print(env, f));
    add(f);
  }
  for (auto slot : env.named_slots())
    if (auto f = env.slot_formula(slot); f != kNone) add(f);

  while (!work.empty()) {
    FormulaId f = work.front();
    work.pop_front();
    for (auto g : immediate_subsentences(env, f)) add(g);
    if (negation_prefix(env, f) < 2) add(env.neg(f));
    auto q = env.quote_of(f);
    auto t = env.truth(q);
    if (wrap_depth(env, t) <= depth) add(t);
  }

  struct Key {
    unsigned wd, size;
    std::string text;
    FormulaId f;
  };
  std::vector<Key> keys;
  keys.reserve(found.size());
  for (auto f : found) keys.push_back({wrap_depth(env, f), formula_size(env, f), print(env, f), f});
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
    return std::tie(x.wd, x.size, x.text) < std::tie(y.wd, y.size, y.text);
  });

  SentenceUniverse u;
  u.depth = depth;
  for (auto& k : keys) {
    u.index.emplace(k.f, static_cast<std::uint32_t>(u.members.size()));
    u.members.push_back(k.f);
  }
  return u;
}

}  // namespace sks
