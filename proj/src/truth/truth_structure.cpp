#include <omp.h>

#include <algorithm>
#include <deque>

#include "sks/truth.hpp"

namespace sks {

namespace {

// Pool members that can serve as admissible successors at all: basic and
// meeting the saturation demand. Admissibility is pointwise in g, so this is
// computed once per pool.
std::vector<char> usable(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool) {
  std::vector<char> ok(pool.size(), 0);
  const auto n = static_cast<std::int64_t>(pool.size());
#pragma omp parallel for schedule(dynamic) if (ctx.options().parallel)
  for (std::int64_t k = 0; k < n; ++k) {
    const Valuation& g = *pool[static_cast<std::size_t>(k)];
    ok[static_cast<std::size_t>(k)] = ctx.is_basic(g) && ctx.admissible(e, g);
  }
  return ok;
}

}  // namespace

PoolView::PoolView(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool,
                   const Valuation& root)
    : ctx_(ctx) {
  const auto ok = usable(ctx, e, pool);
  std::vector<int> node_of(pool.size(), -1);
  nodes_.push_back(&root);
  pool_index_.push_back(-1);
  for (std::size_t k = 0; k < pool.size(); ++k)
    if (*pool[k] == root) {
      pool_index_[0] = static_cast<int>(k);
      node_of[k] = 0;
      break;
    }
  // Breadth-first over nodes reachable from the root.
  std::deque<std::uint32_t> todo{0};
  succ_.emplace_back();
  while (!todo.empty()) {
    const std::uint32_t v = todo.front();
    todo.pop_front();
    const Valuation& f = *nodes_[v];
    if (!ctx.is_basic(f)) continue;
    std::vector<std::uint32_t> out;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (!ok[k] || !leq(f, *pool[k])) continue;
      if (node_of[k] < 0) {
        node_of[k] = static_cast<int>(nodes_.size());
        nodes_.push_back(pool[k]);
        pool_index_.push_back(static_cast<int>(k));
        succ_.emplace_back();
        todo.push_back(static_cast<std::uint32_t>(node_of[k]));
      }
      out.push_back(static_cast<std::uint32_t>(node_of[k]));
    }
    std::sort(out.begin(), out.end());
    succ_[v] = std::move(out);
  }
}

PoolView::PoolView(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool)
    : ctx_(ctx), nodes_(pool) {
  std::vector<std::uint32_t> all(pool.size());
  for (std::uint32_t k = 0; k < pool.size(); ++k) {
    all[k] = k;
    pool_index_.push_back(static_cast<int>(k));
  }
  succ_.assign(pool.size(), {});
  wire(e, all, all);
}

void PoolView::wire(Admissibility e, const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to) {
  const auto ok = usable(ctx_, e, nodes_);
  for (auto v : from) {
    if (!ctx_.is_basic(*nodes_[v])) continue;
    for (auto u : to)
      if (ok[u] && leq(*nodes_[v], *nodes_[u])) succ_[v].push_back(u);
  }
}

bool PoolView::contains(std::uint32_t v, std::uint32_t p, FormulaId f, bool negated) const {
  int i = ctx_.index(f);
  if (i < 0) return false;
  if (negated) i = ctx_.neg_index(static_cast<std::size_t>(i));
  return i >= 0 && nodes_[v]->at[p].test(static_cast<std::size_t>(i));
}

Valuation theta_serial(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool,
                       const Valuation& f) {
  PoolView view(ctx, e, pool, f);
  Evaluator ev(ctx.env(), ctx.structure(), view);
  Valuation out = ctx.empty();
  for (std::uint32_t p = 0; p < ctx.points(); ++p)
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (ev.holds(0, p, ctx.member(i))) out.at[p].set(i);
  return out;
}

Valuation theta(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& pool,
                const Valuation& f) {
  if (!ctx.options().parallel) return theta_serial(ctx, e, pool, f);
  PoolView view(ctx, e, pool, f);
  const std::uint32_t P = ctx.points();
  const auto n = static_cast<std::int64_t>(ctx.size());
  // One flag per (point, member); merged into bitsets afterwards.
  std::vector<char> hit(static_cast<std::size_t>(n) * P, 0);
#pragma omp parallel
  {
    Evaluator ev(ctx.env(), ctx.structure(), view);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i)
      for (std::uint32_t p = 0; p < P; ++p)
        hit[static_cast<std::size_t>(i) * P + p] = ev.holds(0, p, ctx.member(static_cast<std::size_t>(i)));
  }
  Valuation out = ctx.empty();
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
    for (std::uint32_t p = 0; p < P; ++p)
      if (hit[i * P + p]) out.at[p].set(i);
  return out;
}

std::vector<const Valuation*> big_theta(const std::vector<const Valuation*>& Y, const Valuation& next) {
  std::vector<const Valuation*> out;
  for (auto* g : Y)
    if (leq(next, *g)) out.push_back(g);
  return out;
}

Groundedness groundedness(const TruthContext& ctx, Admissibility e, const std::vector<const Valuation*>& Y) {
  Groundedness r;
  if (Y.empty()) return r;
  r.least = meet(Y);
  r.has_least = std::any_of(Y.begin(), Y.end(), [&](auto* g) { return *g == r.least; });
  if (!r.has_least) return r;
  r.admissible_above =
      std::any_of(Y.begin(), Y.end(), [&](auto* g) { return ctx.admissible_from(e, r.least, *g); });
  return r;
}

}  // namespace sks
