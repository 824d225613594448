#include "sks/truth.hpp"

namespace sks {

namespace {

// Index of the sentence a truth-atom argument denotes, or -1.
int denoted(const TruthContext& ctx, std::uint32_t interp, TermId t) {
  static const Assignment none;
  Value v = denote(ctx.env(), ctx.structure(), interp, none, t);
  if (v.kind != Value::Sentence) return -1;
  return ctx.index(v.id);
}

bool in(const Bits& g, int i) { return i >= 0 && g.test(static_cast<std::size_t>(i)); }

}  // namespace

// Clauses of the jump; conditionals and ~> never enter.
Valuation TruthContext::kripke_jump(const Valuation& g) const {
  Valuation out = empty();
  auto& env = env_;
  for (std::uint32_t p = 0; p < points(); ++p) {
    const std::uint32_t w = s_.point_world(p), j = s_.point_interp(p);
    const Bits& cur = g.at[p];
    auto idx = [&](FormulaId f) { return index(f); };
    for (std::size_t i = 0; i < size(); ++i) {
      const FormulaId f = member(i);
      const FormulaNode& n = env.node(f);
      bool neg = n.op == Op::Neg;
      const FormulaNode& x = neg ? env.node(n.a) : n;
      bool put = false;
      switch (x.op) {
        case Op::Ident:
        case Op::Atom:
          put = base_true(p, i);
          break;
        case Op::Truth: {
          int d = denoted(*this, j, x.terms[0]);
          if (d < 0) break;
          put = neg ? in(cur, neg_[static_cast<std::size_t>(d)]) : in(cur, d);
          break;
        }
        case Op::Falsum:
          put = neg;
          break;
        case Op::Neg:
          put = neg && in(cur, idx(x.a));  // ~~a from a
          break;
        case Op::And:
          put = neg ? in(cur, idx(env.neg(x.a))) || in(cur, idx(env.neg(x.b)))
                    : in(cur, idx(x.a)) && in(cur, idx(x.b));
          break;
        case Op::Forall: {
          FormulaId u = neg ? n.a : f;
          auto cs = env.constant_terms();
          put = !neg;
          for (auto c : cs) {
            FormulaId inst = env.instance(u, c);
            if (neg && in(cur, idx(env.neg(inst)))) put = true;
            if (!neg && !in(cur, idx(inst))) put = false;
          }
          break;
        }
        case Op::Box: {
          if (!s_.frame) break;
          const auto& R = s_.frame->R[w];
          put = !neg;
          for (auto w2 : R) {
            const Bits& there = g.at[s_.point(w2, j)];
            if (neg && in(there, idx(env.neg(x.a)))) put = true;
            if (!neg && !in(there, idx(x.a))) put = false;
          }
          break;
        }
        case Op::Cond:
        case Op::Cop:
          break;
      }
      if (put) out.at[p].set(i);
    }
  }
  return out;
}

Valuation TruthContext::minimal_fixpoint() const {
  Valuation g = empty();
  for (;;) {
    Valuation next = kripke_jump(g);
    if (next == g) return g;
    g = std::move(next);
  }
}

}  // namespace sks
