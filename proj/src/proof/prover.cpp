#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "sks/proof.hpp"

namespace sks {

namespace {

bool insert_sorted(std::vector<FormulaId>& v, FormulaId f) {
  auto it = std::lower_bound(v.begin(), v.end(), f);
  if (it != v.end() && *it == f) return false;
  v.insert(it, f);
  return true;
}

struct Step {
  const char* rule;
  FormulaId principal = kNone;
  FormulaId aux = kNone;
  TermId term = kNone;
  FormulaId add = kNone;
  bool to_left = true;
};

class Prover {
 public:
  Prover(SentenceEnv& env, const Calculus& c, const ProveOptions& opts)
      : env_(env), c_(c), opts_(opts), falsum_(env.falsum()), verum_(env.verum()),
        constants_(env.constant_terms()) {}

  ProofResult run(const Sequent& goal) {
    ProofResult r;
    ProofTree tree;
    bool ok = search(goal, opts_.record ? &tree : nullptr);
    r.steps = steps_;
    if (ok) {
      r.status = ProofStatus::Proved;
      if (opts_.record) r.tree = std::move(tree);
    } else {
      r.status = exhausted_ ? ProofStatus::Indeterminate : ProofStatus::Refuted;
    }
    return r;
  }

 private:
  FormulaId neg(FormulaId f) {
    auto it = neg_.find(f);
    if (it != neg_.end()) return it->second;
    return neg_.emplace(f, env_.neg(f)).first->second;
  }

  const FormulaId* quoted(TermId t) const {
    const TermNode& n = env_.term(t);
    if (n.kind != TermKind::Quote) return nullptr;
    tmp_ = env_.slot_formula(n.sym);
    return &tmp_;
  }

  void params_in_term(TermId t, std::vector<TermId>& out) const {
    const TermNode& n = env_.term(t);
    if (n.kind == TermKind::Param) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
      return;
    }
    if (n.kind == TermKind::Func)
      for (auto a : n.args) params_in_term(a, out);
  }
  void params_in(FormulaId f, std::vector<TermId>& out) const {
    const FormulaNode& n = env_.node(f);
    for (auto t : n.terms) params_in_term(t, out);
    if (n.a != kNone) params_in(n.a, out);
    if (n.b != kNone) params_in(n.b, out);
  }

  bool occurs(const Sequent& s, std::uint32_t p) const {
    for (auto f : s.left)
      if (env_.occurs_param(f, p)) return true;
    for (auto f : s.right)
      if (env_.occurs_param(f, p)) return true;
    return false;
  }

  // Eigenvariable instance for universal `u` (body negated when `negate`).
  // Returns kNone if the rule was already applied on this branch.
  std::optional<std::pair<FormulaId, TermId>> eigen(const Sequent& s, FormulaId u, bool negate,
                                                    bool left) {
    auto& ps = params_of_[u];
    auto side = [&](std::uint32_t p) {
      FormulaId i = env_.instance(u, env_.param(p));
      return negate ? neg(i) : i;
    };
    for (auto p : ps) {
      FormulaId i = side(p);
      if (left ? s.in_left(i) : s.in_right(i)) return std::nullopt;
    }
    for (auto p : ps)
      if (!occurs(s, p)) return std::make_pair(side(p), env_.param(p));
    if (next_param_ >= opts_.max_params) {
      exhausted_ = true;
      return std::nullopt;
    }
    auto p = next_param_++;
    ps.push_back(p);
    return std::make_pair(side(p), env_.param(p));
  }

  std::vector<TermId> instance_terms(const Sequent& s) const {
    std::vector<TermId> ts = constants_;
    std::vector<TermId> ps;
    for (auto f : s.left) params_in(f, ps);
    for (auto f : s.right) params_in(f, ps);
    ts.insert(ts.end(), ps.begin(), ps.end());
    return ts;
  }

  bool is_ground_literal(FormulaId f) const {
    const FormulaNode& n = env_.node(f);
    Op op = n.op == Op::Neg ? env_.node(n.a).op : n.op;
    return op == Op::Ident || op == Op::Atom || op == Op::Truth;
  }

  // First applicable invertible, non-branching rule (principal kept).
  std::optional<Step> next_step(const Sequent& s) {
    std::optional<std::vector<TermId>> terms;
    auto get_terms = [&]() -> const std::vector<TermId>& {
      if (!terms) terms = instance_terms(s);
      return *terms;
    };
    for (auto f : s.left) {
      const FormulaNode& n = env_.node(f);
      if (n.op == Op::Neg) {
        const FormulaNode& x = env_.node(n.a);
        if (x.op == Op::Neg) {
          if (!s.in_left(x.a)) return Step{"dn-l", f, kNone, kNone, x.a, true};
        } else if (is_atomic(env_, c_, n.a)) {
          if (!s.in_right(n.a)) return Step{"neg-l", f, kNone, kNone, n.a, false};
          if (c_.truth_rules() && x.op == Op::Truth && quoted(x.terms[0])) {
            FormulaId g = neg(*quoted(x.terms[0]));
            if (!s.in_left(g)) return Step{"negT-l", f, kNone, kNone, g, true};
          }
        } else if (x.op == Op::Cond && c_.conditional_rules()) {
          if (!s.in_left(x.a)) return Step{"neg-cond-l", f, kNone, kNone, x.a, true};
          FormulaId nb = neg(x.b);
          if (!s.in_left(nb)) return Step{"neg-cond-l", f, kNone, kNone, nb, true};
        } else if (x.op == Op::Forall) {
          if (auto e = eigen(s, n.a, true, true)) return Step{"neg-all-l", f, kNone, e->second, e->first, true};
        }
      } else if (n.op == Op::And) {
        if (!s.in_left(n.a)) return Step{"and-l", f, kNone, kNone, n.a, true};
        if (!s.in_left(n.b)) return Step{"and-l", f, kNone, kNone, n.b, true};
      } else if (n.op == Op::Truth && c_.truth_rules() && quoted(n.terms[0])) {
        FormulaId g = *quoted(n.terms[0]);
        if (!s.in_left(g)) return Step{"T-l", f, kNone, kNone, g, true};
      } else if (n.op == Op::Forall) {
        for (auto t : get_terms()) {
          FormulaId i = env_.instance(f, t);
          if (!s.in_left(i)) return Step{"all-l", f, kNone, t, i, true};
        }
      }
    }
    for (auto f : s.right) {
      const FormulaNode& n = env_.node(f);
      if (n.op == Op::Neg) {
        const FormulaNode& x = env_.node(n.a);
        if (x.op == Op::Neg) {
          if (!s.in_right(x.a)) return Step{"dn-r", f, kNone, kNone, x.a, false};
        } else if (x.op == Op::And) {
          FormulaId na = neg(x.a), nb = neg(x.b);
          if (!s.in_right(na)) return Step{"neg-and-r", f, kNone, kNone, na, false};
          if (!s.in_right(nb)) return Step{"neg-and-r", f, kNone, kNone, nb, false};
        } else if (x.op == Op::Truth && c_.truth_rules() && quoted(x.terms[0])) {
          FormulaId g = neg(*quoted(x.terms[0]));
          if (!s.in_right(g)) return Step{"negT-r", f, kNone, kNone, g, false};
        } else if (x.op == Op::Forall) {
          for (auto t : get_terms()) {
            FormulaId i = neg(env_.instance(n.a, t));
            if (!s.in_right(i)) return Step{"neg-all-r", f, kNone, t, i, false};
          }
        } else if (x.op == Op::Ident && c_.identity) {
          if (!s.in_left(n.a)) return Step{"neq-r", f, kNone, kNone, n.a, true};
        }
      } else if (n.op == Op::Truth && c_.truth_rules() && quoted(n.terms[0])) {
        FormulaId g = *quoted(n.terms[0]);
        if (!s.in_right(g)) return Step{"T-r", f, kNone, kNone, g, false};
      } else if (n.op == Op::Forall) {
        if (auto e = eigen(s, f, false, false)) return Step{"all-r", f, kNone, e->second, e->first, false};
      }
    }
    if (c_.identity) {
      std::vector<TermId> ts;
      for (auto f : s.left) env_.collect_terms(f, ts);
      for (auto f : s.right) env_.collect_terms(f, ts);
      std::sort(ts.begin(), ts.end());
      for (auto t : ts) {
        if (env_.term(t).kind == TermKind::Quote) continue;
        FormulaId r = env_.ident(t, t);
        if (!s.in_left(r)) return Step{"ref", kNone, r, kNone, r, true};
      }
      for (auto e : s.left) {
        const FormulaNode& id = env_.node(e);
        if (id.op != Op::Ident || id.terms[0] == id.terms[1]) continue;
        for (auto g : s.left) {
          if (!is_ground_literal(g)) continue;
          for (auto h : env_.replace_one(g, id.terms[0], id.terms[1]))
            if (!s.in_left(h)) return Step{"rep", g, e, kNone, h, true};
        }
      }
    }
    return std::nullopt;
  }

  bool tick() {
    if (++steps_ > opts_.max_steps) exhausted_ = true;
    return !exhausted_;
  }

  bool search(const Sequent& goal, ProofTree* out) {
    if (!tick()) return false;
    if (auto it = memo_.find(goal); it != memo_.end()) {
      if (!it->second) return false;
      if (!out) return true;
    }
    if (path_.count(goal)) {
      loop_hit_ = true;
      return false;
    }
    const bool outer_loop = loop_hit_;
    loop_hit_ = false;

    std::vector<std::pair<Sequent, Step>> chain;
    Sequent cur = goal;
    path_.insert(goal);
    std::vector<Sequent> pushed{goal};
    while (auto st = next_step(cur)) {
      if (!tick()) break;
      if (out) chain.emplace_back(cur, *st);
      insert_sorted(st->to_left ? cur.left : cur.right, st->add);
    }
    bool ok = false;
    ProofTree closing;
    if (!exhausted_) {
      if (cur != goal && path_.count(cur)) {
        loop_hit_ = true;
      } else {
        if (cur != goal) {
          path_.insert(cur);
          pushed.push_back(cur);
        }
        ok = close(cur, out ? &closing : nullptr);
      }
    }
    for (auto& s : pushed) path_.erase(s);

    if (ok) {
      memo_[goal] = true;
      if (out) {
        // Rebuild the saturation chain bottom-up.
        ProofTree node = std::move(closing);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
          ProofTree parent;
          parent.sequent = it->first;
          parent.rule = it->second.rule;
          parent.principal = it->second.principal;
          parent.aux = it->second.aux;
          parent.term = it->second.term;
          parent.premises.push_back(std::move(node));
          node = std::move(parent);
        }
        *out = std::move(node);
      }
    } else if (!loop_hit_ && !exhausted_) {
      memo_[goal] = false;
      memo_[cur] = false;
    }
    loop_hit_ = loop_hit_ || outer_loop;
    return ok;
  }

  ProofTree leaf(const Sequent& s, const char* rule, FormulaId principal) {
    ProofTree t;
    t.sequent = s;
    t.rule = rule;
    t.principal = principal;
    return t;
  }

  bool branch(const Sequent& s, const char* rule, FormulaId principal, Sequent p1, Sequent p2, ProofTree* out) {
    ProofTree t1, t2;
    if (!search(p1, out ? &t1 : nullptr)) return false;
    if (!search(p2, out ? &t2 : nullptr)) return false;
    if (out) {
      *out = leaf(s, rule, principal);
      out->premises.push_back(std::move(t1));
      out->premises.push_back(std::move(t2));
    }
    return true;
  }

  static Sequent with(const Sequent& s, FormulaId f, bool left) {
    Sequent r = s;
    insert_sorted(left ? r.left : r.right, f);
    return r;
  }

  bool close(const Sequent& s, ProofTree* out) {
    if (s.in_left(falsum_)) {
      if (out) *out = leaf(s, "bot-l", falsum_);
      return true;
    }
    if (s.in_right(verum_)) {
      if (out) *out = leaf(s, "bot-r", verum_);
      return true;
    }
    for (auto f : s.left)
      if (is_literal(env_, c_, f) && s.in_right(f)) {
        if (out) *out = leaf(s, "ax", f);
        return true;
      }

    // Invertible branching rules, committed to the first applicable one.
    for (auto f : s.left) {
      const FormulaNode& n = env_.node(f);
      if (n.op == Op::Neg && env_.node(n.a).op == Op::And) {
        const FormulaNode& x = env_.node(n.a);
        FormulaId na = neg(x.a), nb = neg(x.b);
        if (!s.in_left(na) && !s.in_left(nb))
          return branch(s, "neg-and-l", f, with(s, na, true), with(s, nb, true), out);
      } else if (n.op == Op::Cond && c_.conditional_rules()) {
        if (!s.in_right(n.a) && !s.in_left(n.b))
          return branch(s, "cond-l", f, with(s, n.a, false), with(s, n.b, true), out);
      }
    }
    for (auto f : s.right) {
      const FormulaNode& n = env_.node(f);
      if (n.op == Op::And) {
        if (!s.in_right(n.a) && !s.in_right(n.b))
          return branch(s, "and-r", f, with(s, n.a, false), with(s, n.b, false), out);
      } else if (n.op == Op::Neg && env_.node(n.a).op == Op::Cond && c_.conditional_rules()) {
        const FormulaNode& x = env_.node(n.a);
        FormulaId nb = neg(x.b);
        if (!s.in_right(x.a) && !s.in_right(nb))
          return branch(s, "neg-cond-r", f, with(s, x.a, false), with(s, nb, false), out);
      }
    }

    // Non-invertible: ->r drops the other succedents.
    if (c_.conditional_rules()) {
      for (auto f : s.right) {
        const FormulaNode& n = env_.node(f);
        if (n.op != Op::Cond) continue;
        Sequent p = with(Sequent{s.left, {}}, n.a, true);
        p.right = {n.b};
        ProofTree t;
        if (search(p, out ? &t : nullptr)) {
          if (out) {
            *out = leaf(s, "cond-r", f);
            out->premises.push_back(std::move(t));
          }
          return true;
        }
        if (exhausted_) return false;
      }
    }
    for (auto cf : opts_.cut_formulas) {
      if (s.in_left(cf) || s.in_right(cf)) continue;
      ProofTree t1, t2;
      if (search(with(s, cf, false), out ? &t1 : nullptr) && search(with(s, cf, true), out ? &t2 : nullptr)) {
        if (out) {
          *out = leaf(s, "cut", kNone);
          out->aux = cf;
          out->premises.push_back(std::move(t1));
          out->premises.push_back(std::move(t2));
        }
        return true;
      }
      if (exhausted_) return false;
    }
    return false;
  }

  SentenceEnv& env_;
  Calculus c_;
  const ProveOptions& opts_;
  FormulaId falsum_, verum_;
  std::vector<TermId> constants_;
  std::size_t steps_ = 0;
  bool exhausted_ = false;
  bool loop_hit_ = false;
  std::unordered_map<Sequent, bool, SequentHash> memo_;
  std::unordered_set<Sequent, SequentHash> path_;
  std::unordered_map<FormulaId, std::vector<std::uint32_t>> params_of_;
  std::uint32_t next_param_ = 0;
  std::unordered_map<FormulaId, FormulaId> neg_;
  mutable FormulaId tmp_ = kNone;
};

}  // namespace

ProofResult prove(SentenceEnv& env, const Calculus& c, const Sequent& goal, const ProveOptions& opts) {
  Prover p(env, c, opts);
  return p.run(Sequent::of(goal.left, goal.right));
}

}  // namespace sks
