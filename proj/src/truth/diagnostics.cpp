#include <algorithm>
#include <functional>

#include "sks/truth.hpp"

namespace sks {

namespace {

FormulaId T(SentenceEnv& env, FormulaId f) { return env.truth(env.quote_of(f)); }

}  // namespace

std::vector<NaivetyFailure> check_naivety(const TruthContext& ctx, const FixedPointResult& r) {
  std::vector<NaivetyFailure> out;
  auto pool = pool_of(ctx, r.Z);
  PoolView view(ctx, r.cond, pool, r.g);
  SentenceEnv& env = ctx.env();
  Evaluator ev(env, ctx.structure(), view);
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const FormulaId phi = ctx.member(i);
    const FormulaId tphi = T(env, phi);
    for (std::uint32_t p = 0; p < ctx.points(); ++p) {
      if (ev.holds(0, p, phi) != ev.holds(0, p, tphi)) out.push_back({p, phi, false});
      // ~T'phi' against ~phi, only where ~phi is itself a member.
      if (ctx.neg_index(i) >= 0 && ev.holds(0, p, phi, true) != ev.holds(0, p, tphi, true))
        out.push_back({p, phi, true});
    }
  }
  return out;
}

GeneratedSubstructure generated_substructure(const TruthContext& ctx, const FixedPointResult& r) {
  GeneratedSubstructure gs;
  const auto& Y = ctx.start_set();
  for (auto k : r.Z)
    if (ctx.admissible_from(r.cond, r.g, Y[k])) gs.members.push_back(k);
  gs.reflexive = std::all_of(gs.members.begin(), gs.members.end(),
                             [&](std::size_t k) { return ctx.admissible_from(r.cond, Y[k], Y[k]); });
  gs.theta_fixed = !gs.members.empty() && theta(ctx, r.cond, pool_of(ctx, gs.members), r.g) == r.g;
  return gs;
}

bool principle_asserted(char label, Admissibility e) {
  const bool base = e == Admissibility::K3 || e == Admissibility::N3 || e == Admissibility::Nve;
  if (label >= 'a' && label <= 'g') return base;
  if (label == 'h' || label == 'i') return e == Admissibility::N3;
  if (label == 'j' || label == 'k') return e == Admissibility::Nve;
  return false;
}

namespace {

struct Instance {
  char label;
  FormulaId formula;
};

// Instances of (a)-(k) over universe members; an instance is formed only
// when every sentence whose truth it mentions is itself a member.
std::vector<Instance> principle_instances(const TruthContext& ctx) {
  SentenceEnv& env = ctx.env();
  const auto& u = ctx.universe();
  auto in = [&](FormulaId f) { return u.contains(f); };
  auto sent = [&](FormulaId f) { return env.atom(env.sent_predicate(), {env.quote_of(f)}); };
  auto sent2 = [&](FormulaId a, FormulaId b) { return env.conj(sent(a), sent(b)); };
  auto conj_all = [&](const std::vector<FormulaId>& fs) {
    FormulaId acc = fs.front();
    for (std::size_t k = 1; k < fs.size(); ++k) acc = env.conj(acc, fs[k]);
    return acc;
  };
  const auto constants = env.constant_terms();

  std::vector<Instance> out;
  for (FormulaId phi : u.members) {
    const FormulaNode& n = env.node(phi);
    const FormulaId nphi = env.neg(phi);
    if (in(nphi)) {
      out.push_back({'a', env.cond(sent(phi), env.cond(env.conj(T(env, phi), T(env, nphi)), env.falsum()))});
      out.push_back({'b', env.cond(sent(phi), env.iff(T(env, nphi), env.neg(T(env, phi))))});
    }
    if (FormulaId nn = env.neg(nphi); in(nn)) out.push_back({'c', env.cond(sent(phi), env.iff(T(env, nn), T(env, phi)))});
    if (n.op == Op::And)
      out.push_back({'d', env.cond(sent2(n.a, n.b), env.iff(T(env, phi), env.conj(T(env, n.a), T(env, n.b))))});
    if (n.op == Op::Neg && env.node(n.a).op == Op::And) {
      const FormulaNode& c = env.node(n.a);
      FormulaId na = env.neg(c.a), nb = env.neg(c.b);
      if (in(na) && in(nb))
        out.push_back({'e', env.cond(sent2(c.a, c.b), env.iff(T(env, phi), env.disj(T(env, na), T(env, nb))))});
    }
    if (n.op == Op::Forall && !constants.empty()) {
      std::vector<FormulaId> ts, nts;
      bool ok = true, nok = in(env.neg(phi));
      for (auto c : constants) {
        FormulaId i = env.instance(phi, c);
        ok = ok && in(i);
        nok = nok && in(env.neg(i));
        ts.push_back(T(env, i));
      }
      if (ok) {
        out.push_back({'f', env.cond(sent(phi), env.cond(T(env, phi), conj_all(ts)))});
        if (nok) out.push_back({'g', env.cond(sent(phi), env.cond(env.neg(conj_all(ts)), T(env, env.neg(phi))))});
      }
    }
    if (n.op == Op::Cond)
      out.push_back({'h', env.cond(sent2(n.a, n.b), env.cond(env.conj(T(env, phi), T(env, n.a)), T(env, n.b)))});
    if (n.op == Op::Neg && env.node(n.a).op == Op::Cond) {
      const FormulaNode& c = env.node(n.a);
      if (FormulaId nb = env.neg(c.b); in(nb))
        out.push_back({'i', env.cond(sent2(c.a, c.b), env.iff(T(env, phi), env.conj(T(env, c.a), T(env, nb))))});
    }
    if (FormulaId tphi = T(env, phi); in(tphi)) {
      out.push_back({'j', env.cond(sent(phi), env.iff(T(env, tphi), T(env, phi)))});
      if (FormulaId ntphi = env.neg(tphi); in(ntphi) && in(nphi))
        out.push_back({'k', env.cond(sent(phi), env.iff(T(env, ntphi), T(env, nphi)))});
    }
  }
  return out;
}

const char* schema(char label) {
  switch (label) {
    case 'a': return "Sent(x) -> (T x & T neg(x) -> false)";
    case 'b': return "Sent(x) -> (T neg(x) <-> ~T x)";
    case 'c': return "Sent(x) -> (T neg(neg(x)) <-> T x)";
    case 'd': return "Sent(x) & Sent(y) -> (T and(x,y) <-> T x & T y)";
    case 'e': return "Sent(x) & Sent(y) -> (T neg(and(x,y)) <-> T neg(x) | T neg(y))";
    case 'f': return "T all(v,x) -> A y T x(y/v)";
    case 'g': return "~A y T x(y/v) -> T neg(all(v,x))";
    case 'h': return "Sent(x) & Sent(y) -> (T cond(x,y) & T x -> T y)";
    case 'i': return "Sent(x) & Sent(y) -> (T neg(cond(x,y)) <-> T x & T neg(y))";
    case 'j': return "Sent(x) -> (T T(x) <-> T x)";
    case 'k': return "Sent(x) -> (T neg(T(x)) <-> T neg(x))";
  }
  return "";
}

}  // namespace

std::vector<PrincipleOutcome> check_principles(const TruthContext& ctx, const FixedPointResult& r) {
  std::vector<PrincipleOutcome> out;
  for (char l = 'a'; l <= 'k'; ++l) out.push_back({l, schema(l), principle_asserted(l, r.cond), 0, {}});

  const auto gs = generated_substructure(ctx, r);
  auto pool = pool_of(ctx, gs.members);
  PoolView view(ctx, r.cond, pool);
  const auto instances = principle_instances(ctx);
  const auto n = static_cast<std::int64_t>(instances.size());
  std::vector<std::vector<std::string>> bad(instances.size());
#pragma omp parallel if (ctx.options().parallel)
  {
    Evaluator ev(ctx.env(), ctx.structure(), view);
#pragma omp for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
      const auto& inst = instances[static_cast<std::size_t>(k)];
      for (std::uint32_t v = 0; v < view.pool_size(); ++v)
        for (std::uint32_t p = 0; p < ctx.points(); ++p)
          if (!ev.holds(v, p, inst.formula))
            bad[static_cast<std::size_t>(k)].push_back(display(ctx.env(), inst.formula) + " fails at " +
                                                       ctx.structure().point_name(p) + " of valuation " +
                                                       std::to_string(gs.members[v]));
    }
  }
  for (std::size_t k = 0; k < instances.size(); ++k) {
    auto& o = out[static_cast<std::size_t>(instances[k].label - 'a')];
    ++o.instances;
    o.violations.insert(o.violations.end(), bad[k].begin(), bad[k].end());
  }
  return out;
}

std::pair<bool, bool> deduction_theorem_check(const TruthContext& ctx, const FixedPointResult& r,
                                              const std::vector<FormulaId>& gamma, FormulaId phi, FormulaId psi) {
  const auto gs = generated_substructure(ctx, r);
  auto pool = pool_of(ctx, gs.members);
  PoolView view(ctx, r.cond, pool);
  Evaluator ev(ctx.env(), ctx.structure(), view);
  const FormulaId imp = ctx.env().cond(phi, psi);
  bool left = true, right = true;
  for (std::uint32_t v = 0; v < view.pool_size(); ++v)
    for (std::uint32_t p = 0; p < ctx.points(); ++p) {
      bool g = std::all_of(gamma.begin(), gamma.end(), [&](FormulaId x) { return ev.holds(v, p, x); });
      if (!g) continue;
      if (ev.holds(v, p, phi) && !ev.holds(v, p, psi)) left = false;
      if (!ev.holds(v, p, imp)) right = false;
    }
  return {left, right};
}

Witness exists_admissible_with(const TruthContext& ctx, const FixedPointResult& r, FormulaId phi,
                               std::uint32_t point) {
  Witness w;
  const int i = ctx.index(phi);
  if (i < 0) return w;
  const auto& s = ctx.structure();
  const auto& Y = ctx.start_set();
  const std::uint32_t world = s.point_world(point), j = s.point_interp(point);
  for (auto k : r.Z) {
    if (!ctx.admissible_from(r.cond, r.g, Y[k])) continue;
    for (auto j2 : s.h_succ[j]) {
      std::uint32_t p2 = s.point(world, j2);
      if (Y[k].at[p2].test(static_cast<std::size_t>(i))) return {true, p2, k};
    }
  }
  return w;
}

TruthValue value_at_fixpoint(const TruthContext& ctx, const FixedPointResult& r, std::uint32_t point, FormulaId f) {
  auto pool = pool_of(ctx, r.Z);
  PoolView view(ctx, r.cond, pool, r.g);
  Evaluator ev(ctx.env(), ctx.structure(), view);
  return ev.value(0, point, f);
}

}  // namespace sks
