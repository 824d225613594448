#include <algorithm>

#include "sks/semantics.hpp"

namespace sks {

const char* to_string(TruthValue v) {
  switch (v) {
    case TruthValue::True: return "true";
    case TruthValue::False: return "false";
    default: return "undefined";
  }
}

const BaseLayer& base_layer() {
  static const BaseLayer layer;
  return layer;
}

Value denote(const SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t interp,
             const Assignment& beta, TermId t) {
  const TermNode& n = env.term(t);
  const auto& I = s.X[interp];
  switch (n.kind) {
    case TermKind::Var: {
      auto it = beta.find(n.sym);
      if (it == beta.end()) throw InputError("unbound variable " + env.variable_name(n.sym));
      return {Value::Element, it->second};
    }
    case TermKind::Const:
      return {Value::Element, I.constants.at(n.sym)};
    case TermKind::Param:
      throw InputError("eigenvariable has no denotation");
    case TermKind::Quote:
      return {Value::Sentence, env.slot_formula(n.sym)};
    case TermKind::Func: {
      Tuple args;
      for (auto a : n.args) {
        Value v = denote(env, s, interp, beta, a);
        // Functions act on the domain; a sentence argument passes through.
        if (v.kind == Value::Sentence) return v;
        args.push_back(v.id);
      }
      return {Value::Element, I.functions.at(n.sym).at(args)};
    }
  }
  return {};
}

Evaluator::Evaluator(SentenceEnv& env, const SupervaluationStructure& s, const TruthLayer& layer)
    : env_(env), s_(s), layer_(layer), points_(s.point_count()), constants_(env.constant_terms()) {}

Value Evaluator::denote(std::uint32_t interp, TermId t) const {
  static const Assignment empty;
  return sks::denote(env_, s_, interp, empty, t);
}

const std::vector<FormulaId>& Evaluator::instances(FormulaId universal) {
  auto it = instances_.find(universal);
  if (it != instances_.end()) return it->second;
  std::vector<FormulaId> out;
  out.reserve(constants_.size());
  for (auto c : constants_) out.push_back(env_.instance(universal, c));
  return instances_.emplace(universal, std::move(out)).first->second;
}

FormulaId Evaluator::cop_cond(FormulaId cop) {
  auto it = cop_cond_.find(cop);
  if (it != cop_cond_.end()) return it->second;
  const FormulaNode& n = env_.node(cop);
  return cop_cond_.emplace(cop, env_.cond(n.a, n.b)).first->second;
}

bool Evaluator::holds(std::uint32_t v, std::uint32_t p, FormulaId f, bool negated) {
  return at(v * points_ + p, f, negated);
}

TruthValue Evaluator::value(std::uint32_t v, std::uint32_t p, FormulaId f) {
  if (holds(v, p, f, false)) return TruthValue::True;
  if (holds(v, p, f, true)) return TruthValue::False;
  return TruthValue::Undefined;
}

bool Evaluator::at(std::uint32_t node, FormulaId f, bool negated) {
  std::uint64_t key = (static_cast<std::uint64_t>(node) << 32) | (static_cast<std::uint64_t>(f) << 1) |
                      (negated ? 1u : 0u);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool r = compute(node, f, negated);
  memo_.emplace(key, r);
  return r;
}

// For every H-successor node: antecedent not true, or consequent true.
bool Evaluator::cond_true(std::uint32_t node, FormulaId a, FormulaId b) {
  const std::uint32_t v = node / points_, p = node % points_;
  const std::uint32_t w = s_.point_world(p), j = s_.point_interp(p);
  for (auto v2 : layer_.successors(v))
    for (auto j2 : s_.h_succ[j]) {
      std::uint32_t n2 = v2 * points_ + s_.point(w, j2);
      if (at(n2, a, false) && !at(n2, b, false)) return false;
    }
  return true;
}

bool Evaluator::compute(std::uint32_t node, FormulaId f, bool neg) {
  const FormulaNode& n = env_.node(f);
  const std::uint32_t v = node / points_, p = node % points_;
  const std::uint32_t w = s_.point_world(p), j = s_.point_interp(p);
  auto world_node = [&](std::uint32_t w2) { return v * points_ + s_.point(w2, j); };

  switch (n.op) {
    case Op::Ident: {
      bool eq = denote(j, n.terms[0]) == denote(j, n.terms[1]);
      return neg ? !eq : eq;
    }
    case Op::Atom: {
      if (n.sym == env_.sent_predicate()) {
        bool sent = denote(j, n.terms[0]).kind == Value::Sentence;
        return neg ? !sent : sent;
      }
      Tuple t;
      for (auto a : n.terms) {
        Value d = denote(j, a);
        if (d.kind == Value::Sentence) return false;  // ordinary predicates hold of domain elements only
        t.push_back(d.id);
      }
      const Extension& e = s_.X[j].preds[w][n.sym];
      return neg ? e.neg.count(t) != 0 : e.pos.count(t) != 0;
    }
    case Op::Truth: {
      Value d = denote(j, n.terms[0]);
      if (d.kind != Value::Sentence) return false;
      return layer_.contains(v, p, d.id, neg);
    }
    case Op::Falsum:
      return neg;
    case Op::Neg:
      return at(node, n.a, !neg);
    case Op::And:
      if (!neg) return at(node, n.a, false) && at(node, n.b, false);
      return at(node, n.a, true) || at(node, n.b, true);
    case Op::Cond:
      if (!neg) return cond_true(node, n.a, n.b);
      return at(node, n.a, false) && at(node, n.b, true);
    case Op::Forall: {
      const auto& inst = instances(f);
      if (!neg) {
        for (auto i : inst)
          if (!at(node, i, false)) return false;
        return true;
      }
      for (auto i : inst)
        if (at(node, i, true)) return true;
      return false;
    }
    case Op::Box: {
      if (!s_.frame) throw InputError("modal connective with no frame loaded");
      const auto& R = s_.frame->R[w];
      if (!neg) {
        for (auto w2 : R)
          if (!at(world_node(w2), n.a, false)) return false;
        return true;
      }
      for (auto w2 : R)
        if (at(world_node(w2), n.a, true)) return true;
      return false;
    }
    case Op::Cop: {
      if (!s_.frame) throw InputError("modal connective with no frame loaded");
      const Frame& F = *s_.frame;
      const auto& R = F.R[w];
      const auto& rank = F.rank[w];
      const auto carrier = F.carrier(w);
      if (!neg) {
        bool imposs = true;
        for (auto w2 : R) imposs &= at(world_node(w2), n.a, true);
        if (imposs) return true;
        FormulaId c = cop_cond(f);
        for (auto w2 : R) {
          if (!at(world_node(w2), n.a, false)) continue;
          bool all = true;
          for (auto u : carrier)
            if (rank[u] <= rank[w2] && !at(world_node(u), c, false)) {
              all = false;
              break;
            }
          if (all) return true;
        }
        return false;
      }
      bool some = false;
      for (auto w2 : R) {
        if (!at(world_node(w2), n.a, false)) continue;
        some = true;
        bool witness = false;
        for (auto u : carrier)
          if (rank[u] < rank[w2] && at(world_node(u), n.a, false) && at(world_node(u), n.b, true)) {
            witness = true;
            break;
          }
        if (!witness) return false;
      }
      return some;
    }
  }
  return false;
}

TruthValue eval(SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t interp,
                const Assignment& beta, FormulaId f, std::uint32_t world) {
  // Substitute, for each assigned variable, a constant naming its value.
  for (auto [var, e] : beta) {
    std::optional<std::uint32_t> name;
    for (std::uint32_t c = 0; c < s.X[interp].constants.size(); ++c)
      if (s.X[interp].constants[c] == e) {
        name = c;
        break;
      }
    if (!name) throw InputError("domain element without a name");
    f = env.substitute(f, var, env.constant(*name));
  }
  if (!env.closed(f)) throw InputError("unbound free variable in " + print(env, f));
  Evaluator ev(env, s);
  return ev.value(0, s.point(world, interp), f);
}

namespace {

void check_sentence(Evaluator& ev, const SupervaluationStructure& s, FormulaId f,
                    std::vector<PersistenceFailure>& out) {
  for (std::uint32_t w = 0; w < s.world_count(); ++w)
    for (std::uint32_t a = 0; a < s.X.size(); ++a)
      for (auto b : s.h_succ[a])
        if (a != b && ev.holds(0, s.point(w, a), f) && !ev.holds(0, s.point(w, b), f))
          out.push_back({a, b, w, f});
}

}  // namespace

std::vector<PersistenceFailure> persistence_check_serial(SentenceEnv& env,
                                                         const SupervaluationStructure& s,
                                                         const std::vector<FormulaId>& sentences) {
  std::vector<PersistenceFailure> out;
  Evaluator ev(env, s);
  for (auto f : sentences) {
    check_sentence(ev, s, f, out);
    check_sentence(ev, s, env.neg(f), out);
  }
  return out;
}

std::vector<PersistenceFailure> persistence_check(SentenceEnv& env, const SupervaluationStructure& s,
                                                  const std::vector<FormulaId>& sentences) {
  const long n = static_cast<long>(sentences.size());
  std::vector<FormulaId> negs(sentences.size());
  for (long i = 0; i < n; ++i) negs[i] = env.neg(sentences[i]);
  std::vector<std::vector<PersistenceFailure>> per(sentences.size());
#pragma omp parallel
  {
    Evaluator ev(env, s);
#pragma omp for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
      check_sentence(ev, s, sentences[i], per[i]);
      check_sentence(ev, s, negs[i], per[i]);
    }
  }
  std::vector<PersistenceFailure> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace sks
