#include "sks/proof.hpp"

namespace sks {

namespace {
ProofTree node(Sequent s, const char* rule, FormulaId principal, std::string note,
               std::vector<ProofTree> premises = {}) {
  ProofTree t;
  t.sequent = std::move(s);
  t.rule = rule;
  t.principal = principal;
  t.note = std::move(note);
  t.premises = std::move(premises);
  return t;
}
}  // namespace

ProofTree curry_derivation(SentenceEnv& env, std::uint32_t kappa_slot) {
  const FormulaId k = env.slot_formula(kappa_slot);
  if (k == kNone) throw InputError("curry sentence is not defined");
  const FormulaId tk = env.truth(env.quote(kappa_slot));
  const FormulaId bot = env.falsum();
  const FormulaNode& body = env.node(k);
  if (body.op != Op::Cond || body.a != tk || body.b != bot)
    throw InputError("curry sentence must have the body T('" + *env.slot_name(kappa_slot) + "') -> false");

  // T'k' => T'k', false and T'k', false => false close the ->l step.
  auto a = node(Sequent::of({tk}, {tk, bot}), "ax", tk, "(Ref)");
  auto b = node(Sequent::of({tk, bot}, {bot}), "bot-l", bot, "(Ref)");
  auto c = node(Sequent::of({k, tk}, {bot}), "cond-l", k, "kappa unfolds to T'k' -> false; (Ded) left to right",
                {std::move(a), std::move(b)});
  auto d = node(Sequent::of({tk}, {bot}), "T-l", tk, "(T l); the duplicate T'k' merges by (Contr)", {c});
  auto e = node(Sequent::of({}, {k, bot}), "cond-r", k, "(Ded) right to left gives T'k' -> false, which is kappa",
                {d});
  auto f = node(Sequent::of({}, {tk, bot}), "T-r", tk, "(T r)", {std::move(e)});
  auto g = node(Sequent::of({}, {bot}), "cut", kNone, "(Trans) on T'k'", {std::move(f), std::move(d)});
  g.aux = tk;
  return g;
}

}  // namespace sks
