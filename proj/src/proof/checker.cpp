#include <algorithm>

#include "sks/proof.hpp"

namespace sks {

namespace {

using Side = std::vector<FormulaId>;

Side plus(Side s, FormulaId f) {
  auto it = std::lower_bound(s.begin(), s.end(), f);
  if (it == s.end() || *it != f) s.insert(it, f);
  return s;
}

Side minus(Side s, FormulaId f) {
  auto it = std::lower_bound(s.begin(), s.end(), f);
  if (it != s.end() && *it == f) s.erase(it);
  return s;
}

// Premise side equals the conclusion side plus `add`, with the principal
// either kept or dropped.
bool side_ok(const Side& premise, const Side& concl, FormulaId principal, const std::vector<FormulaId>& add) {
  Side keep = concl;
  for (auto f : add) keep = plus(keep, f);
  if (premise == keep) return true;
  if (principal == kNone) return false;
  Side drop = minus(concl, principal);
  for (auto f : add) drop = plus(drop, f);
  return premise == drop;
}

class Checker {
 public:
  Checker(SentenceEnv& env, const Calculus& c) : env_(env), c_(c) {}

  CheckResult check(const ProofTree& t) {
    if (auto why = node(t); !why.empty()) return {false, t.rule + " at " + print(env_, t.sequent) + ": " + why};
    for (auto& p : t.premises)
      if (auto r = check(p); !r.ok) return r;
    return {};
  }

 private:
  // Empty string when the node is a correct rule instance.
  std::string node(const ProofTree& t) {
    const Sequent& s = t.sequent;
    const auto& r = t.rule;
    const std::size_t n = t.premises.size();
    auto arity = [&](std::size_t k) { return n == k; };
    auto principal_left = [&] { return t.principal != kNone && s.in_left(t.principal); };
    auto principal_right = [&] { return t.principal != kNone && s.in_right(t.principal); };
    auto pn = [&]() -> const FormulaNode& { return env_.node(t.principal); };
    auto sub = [&]() -> const FormulaNode& { return env_.node(pn().a); };
    // Unary left/right rule with one of the candidate side formulas.
    auto unary = [&](bool left, std::vector<FormulaId> cands) -> std::string {
      if (!arity(1)) return "expects one premise";
      const Sequent& p = t.premises[0].sequent;
      for (auto f : cands) {
        bool ok = left ? side_ok(p.left, s.left, t.principal, {f}) && side_ok(p.right, s.right, kNone, {})
                       : side_ok(p.right, s.right, t.principal, {f}) && side_ok(p.left, s.left, kNone, {});
        if (ok) return "";
      }
      return "premise does not match";
    };
    auto binary = [&](bool left1, FormulaId f1, bool left2, FormulaId f2) -> std::string {
      if (!arity(2)) return "expects two premises";
      const Sequent& p = t.premises[0].sequent;
      const Sequent& q = t.premises[1].sequent;
      auto one = [&](const Sequent& x, bool left, FormulaId f) {
        FormulaId pl = principal_left() ? t.principal : kNone;
        FormulaId pr = principal_right() ? t.principal : kNone;
        return side_ok(x.left, s.left, pl, left ? std::vector<FormulaId>{f} : std::vector<FormulaId>{}) &&
               side_ok(x.right, s.right, pr, left ? std::vector<FormulaId>{} : std::vector<FormulaId>{f});
      };
      if (!one(p, left1, f1)) return "first premise does not match";
      if (!one(q, left2, f2)) return "second premise does not match";
      return "";
    };
    auto quote_body = [&](TermId q) -> FormulaId {
      const TermNode& tn = env_.term(q);
      return tn.kind == TermKind::Quote ? env_.slot_formula(tn.sym) : kNone;
    };
    const bool tr = c_.truth_rules(), cr = c_.conditional_rules(), id = c_.identity;

    if (r == "ax") {
      if (!arity(0)) return "axiom with premises";
      if (t.principal == kNone || !is_literal(env_, c_, t.principal)) return "principal is not a literal";
      return principal_left() && s.in_right(t.principal) ? "" : "literal not on both sides";
    }
    if (r == "bot-l") return arity(0) && s.in_left(env_.falsum()) ? "" : "false not in antecedent";
    if (r == "bot-r") return arity(0) && s.in_right(env_.verum()) ? "" : "~false not in succedent";
    if (r == "cut") {
      if (!arity(2) || t.aux == kNone) return "cut needs two premises and a formula";
      if (t.premises[0].sequent != Sequent{s.left, plus(s.right, t.aux)}) return "left cut premise does not match";
      if (t.premises[1].sequent != Sequent{plus(s.left, t.aux), s.right}) return "right cut premise does not match";
      return "";
    }
    if (r == "ref") {
      if (!id) return "identity rules not enabled";
      if (t.aux == kNone) return "missing identity";
      const FormulaNode& e = env_.node(t.aux);
      if (e.op != Op::Ident || e.terms[0] != e.terms[1] || !env_.term_closed(e.terms[0])) return "not of the form t = t";
      if (!arity(1)) return "expects one premise";
      return t.premises[0].sequent == Sequent{plus(s.left, t.aux), s.right} ? "" : "premise does not match";
    }
    if (r == "rep") {
      if (!id) return "identity rules not enabled";
      if (t.aux == kNone || !s.in_left(t.aux) || env_.node(t.aux).op != Op::Ident) return "identity not in antecedent";
      if (!principal_left()) return "principal not in antecedent";
      const FormulaNode& e = env_.node(t.aux);
      std::vector<FormulaId> cands = env_.replace_one(t.principal, e.terms[0], e.terms[1]);
      if (cands.empty()) return "nothing to replace";
      return unary(true, cands);
    }
    if (r == "neq-r") {
      if (!id) return "identity rules not enabled";
      if (!principal_right() || pn().op != Op::Neg || sub().op != Op::Ident) return "principal is not s != t";
      if (!arity(1)) return "expects one premise";
      const Sequent& p = t.premises[0].sequent;
      return side_ok(p.left, s.left, kNone, {pn().a}) && side_ok(p.right, s.right, t.principal, {})
                 ? ""
                 : "premise does not match";
    }

    if (t.principal == kNone) return "missing principal";
    const Op op = pn().op;
    const Op sop = op == Op::Neg ? sub().op : op;

    if (r == "dn-l" || r == "dn-r") {
      bool left = r == "dn-l";
      if (!(left ? principal_left() : principal_right()) || op != Op::Neg || sop != Op::Neg) return "principal is not ~~a";
      return unary(left, {env_.node(pn().a).a});
    }
    if (r == "and-l") {
      if (!principal_left() || op != Op::And) return "principal is not a conjunction in the antecedent";
      return unary(true, {pn().a, pn().b});
    }
    if (r == "and-r") {
      if (!principal_right() || op != Op::And) return "principal is not a conjunction in the succedent";
      return binary(false, pn().a, false, pn().b);
    }
    if (r == "neg-and-l") {
      if (!principal_left() || op != Op::Neg || sop != Op::And) return "principal is not ~(a & b)";
      return binary(true, env_.neg(sub().a), true, env_.neg(sub().b));
    }
    if (r == "neg-and-r") {
      if (!principal_right() || op != Op::Neg || sop != Op::And) return "principal is not ~(a & b)";
      return unary(false, {env_.neg(sub().a), env_.neg(sub().b)});
    }
    if (r == "neg-l") {
      if (!principal_left() || op != Op::Neg || !is_atomic(env_, c_, pn().a)) return "principal is not a negated atom";
      if (!arity(1)) return "expects one premise";
      const Sequent& p = t.premises[0].sequent;
      return side_ok(p.left, s.left, t.principal, {}) && side_ok(p.right, s.right, kNone, {pn().a})
                 ? ""
                 : "premise does not match";
    }
    if (r == "cond-l") {
      if (!cr) return "conditional rules not enabled";
      if (!principal_left() || op != Op::Cond) return "principal is not a conditional";
      return binary(false, pn().a, true, pn().b);
    }
    if (r == "cond-r") {
      if (!cr) return "conditional rules not enabled";
      if (!principal_right() || op != Op::Cond) return "principal is not a conditional";
      if (!arity(1)) return "expects one premise";
      const Sequent& p = t.premises[0].sequent;
      if (p.right != Side{pn().b}) return "premise succedent must be the consequent alone";
      return side_ok(p.left, s.left, kNone, {pn().a}) ? "" : "premise antecedent does not match";
    }
    if (r == "neg-cond-l") {
      if (!cr) return "conditional rules not enabled";
      if (!principal_left() || op != Op::Neg || sop != Op::Cond) return "principal is not ~(a -> b)";
      return unary(true, {sub().a, env_.neg(sub().b)});
    }
    if (r == "neg-cond-r") {
      if (!cr) return "conditional rules not enabled";
      if (!principal_right() || op != Op::Neg || sop != Op::Cond) return "principal is not ~(a -> b)";
      return binary(false, sub().a, false, env_.neg(sub().b));
    }
    if (r == "T-l" || r == "T-r" || r == "negT-l" || r == "negT-r") {
      if (!tr) return "truth rules not enabled";
      bool left = r == "T-l" || r == "negT-l";
      bool negated = r[0] == 'n';
      if (!(left ? principal_left() : principal_right())) return "principal on the wrong side";
      const FormulaNode& tn = negated ? (op == Op::Neg ? sub() : pn()) : pn();
      if ((negated && op != Op::Neg) || tn.op != Op::Truth) return "principal is not a truth atom";
      FormulaId body = quote_body(tn.terms[0]);
      if (body == kNone) return "truth rules apply to quotation terms only";
      return unary(left, {negated ? env_.neg(body) : body});
    }
    if (r == "all-l" || r == "neg-all-r") {
      bool left = r == "all-l";
      if (!(left ? principal_left() : principal_right())) return "principal on the wrong side";
      FormulaId u = left ? t.principal : pn().a;
      if (env_.node(u).op != Op::Forall || (!left && op != Op::Neg)) return "principal is not a quantifier";
      if (t.term == kNone || !env_.term_closed(t.term)) return "instance term must be closed";
      FormulaId i = env_.instance(u, t.term);
      return unary(left, {left ? i : env_.neg(i)});
    }
    if (r == "all-r" || r == "neg-all-l") {
      bool left = r == "neg-all-l";
      if (!(left ? principal_left() : principal_right())) return "principal on the wrong side";
      FormulaId u = left ? pn().a : t.principal;
      if (env_.node(u).op != Op::Forall || (left && op != Op::Neg)) return "principal is not a quantifier";
      if (t.term == kNone || env_.term(t.term).kind != TermKind::Param) return "eigenvariable required";
      std::uint32_t p = env_.term(t.term).sym;
      for (auto f : s.left)
        if (env_.occurs_param(f, p)) return "eigenvariable occurs in the conclusion";
      for (auto f : s.right)
        if (env_.occurs_param(f, p)) return "eigenvariable occurs in the conclusion";
      FormulaId i = env_.instance(u, t.term);
      return unary(left, {left ? env_.neg(i) : i});
    }
    return "unknown rule";
  }

  SentenceEnv& env_;
  Calculus c_;
};

}  // namespace

CheckResult check_proof(SentenceEnv& env, const Calculus& c, const ProofTree& tree) {
  return Checker(env, c).check(tree);
}

}  // namespace sks
