#include <algorithm>

#include "sks/truth.hpp"

namespace sks {

std::vector<const Valuation*> pool_of(const TruthContext& ctx, const std::vector<std::size_t>& indices) {
  const auto& Y = ctx.start_set();
  std::vector<const Valuation*> out;
  out.reserve(indices.size());
  for (auto k : indices) out.push_back(&Y.at(k));
  return out;
}

namespace {

struct Named {
  std::string name;
  int index;
};

std::vector<Named> named_members(const TruthContext& ctx) {
  std::vector<Named> out;
  for (auto slot : ctx.env().named_slots()) {
    int i = ctx.index(ctx.env().slot_formula(slot));
    if (i >= 0) out.push_back({*ctx.env().slot_name(slot), i});
  }
  return out;
}

std::string where(const TruthContext& ctx, std::uint32_t p) { return ctx.structure().point_name(p); }

}  // namespace

FixedPointResult iterate_fixed_point(const TruthContext& ctx, Admissibility e, const std::optional<StartPair>& start) {
  FixedPointResult r;
  r.cond = e;
  const auto& Yall = ctx.start_set();
  r.start_set_size = Yall.size();
  r.start = ctx.minimal_fixpoint();

  Valuation f;
  std::vector<std::size_t> Y;
  if (start) {
    f = start->f;
    Y = start->Y;
  } else {
    f = r.start;
    for (std::size_t k = 0; k < Yall.size(); ++k) Y.push_back(k);
  }
  r.stages.push_back(f);

  const auto named = named_members(ctx);
  auto collapse = [&](std::size_t stage, std::string reason) {
    r.status = FixedPointResult::Collapse;
    r.collapse_stage = stage;
    r.reason = std::move(reason);
    r.g = f;
    r.Z = Y;
    // Split the pool on each named sentence: members containing it at J
    // (case i) and members lacking it (case ii), with how many of each the
    // condition admits.
    auto pool = pool_of(ctx, Y);
    std::vector<char> adm(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) adm[k] = ctx.is_basic(*pool[k]) && ctx.admissible(e, *pool[k]);
    for (auto& s : named)
      for (std::uint32_t p = 0; p < ctx.points(); ++p) {
        std::size_t in = 0, in_adm = 0, out = 0, out_adm = 0;
        for (std::size_t k = 0; k < pool.size(); ++k) {
          bool has = pool[k]->at[p].test(static_cast<std::size_t>(s.index));
          (has ? in : out) += 1;
          (has ? in_adm : out_adm) += adm[k];
        }
        const std::string J = where(ctx, p);
        r.analysis.push_back("stage " + std::to_string(stage) + ": case (i) " + s.name + " in g(" + J + "): " +
                             std::to_string(in_adm) + " of " + std::to_string(in) + " admissible");
        r.analysis.push_back("stage " + std::to_string(stage) + ": case (ii) " + s.name + " not in g(" + J +
                             "): " + std::to_string(out_adm) + " of " + std::to_string(out) + " admissible");
        if (f.at[p].test(static_cast<std::size_t>(s.index)) &&
            std::none_of(pool.begin(), pool.end(), [&](auto* g) { return ctx.admissible_from(e, f, *g); }))
          r.analysis.push_back("stage " + std::to_string(stage) + ": " + s.name + " in f(" + J +
                               "), Phi(f) within Theta is empty");
      }
    return r;
  };

  // Each productive round adds a sentence to f or drops a pool member.
  const std::size_t guard = ctx.size() * ctx.points() + Yall.size() + 2;
  for (std::size_t stage = 0; stage <= guard; ++stage) {
    auto pool = pool_of(ctx, Y);
    if (pool.empty()) return collapse(stage, "Theta-empty");
    if (!groundedness(ctx, e, pool).grounded()) return collapse(stage, "minimal-element-lost");

    Valuation next = theta(ctx, e, pool, f);
    StageRecord rec;
    rec.stage = stage;
    for (auto& b : next.at) rec.sizes.push_back(b.count());

    // Case (ii): named sentences outside f(J) that theta puts in.
    for (auto& s : named)
      for (std::uint32_t p = 0; p < ctx.points(); ++p) {
        auto i = static_cast<std::size_t>(s.index);
        if (!f.at[p].test(i) && next.at[p].test(i))
          r.analysis.push_back("stage " + std::to_string(stage) + ": " + s.name + " not in f(" + where(ctx, p) +
                               "), enters theta(" + where(ctx, p) + ")");
      }

    if (!ctx.is_basic(next)) {
      r.trace.push_back(rec);
      return collapse(stage, "theta-left-basic");
    }
    std::vector<std::size_t> kept;
    for (auto k : Y)
      if (leq(next, Yall[k])) kept.push_back(k);
    rec.pool = kept.size();
    r.trace.push_back(rec);
    r.stages.push_back(next);
    if (kept.empty()) {
      f = std::move(next);
      Y.clear();
      return collapse(stage + 1, "Theta-empty");
    }
    if (next == f && kept == Y) {
      r.g = std::move(f);
      r.Z = std::move(Y);
      r.stages.pop_back();
      return r;
    }
    f = std::move(next);
    Y = std::move(kept);
  }
  return collapse(guard, "no-stabilization");
}

FixedPointCheck verify_fixed_point(const TruthContext& ctx, const FixedPointResult& r) {
  FixedPointCheck c;
  auto pool = pool_of(ctx, r.Z);
  Valuation t = theta(ctx, r.cond, pool, r.g);
  c.theta_fixed = t == r.g;
  c.big_theta_fixed = big_theta(pool, t).size() == pool.size();
  return c;
}

}  // namespace sks
