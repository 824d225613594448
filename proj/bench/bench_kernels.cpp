// OpenMP kernels against their serial reference paths.

#include <benchmark/benchmark.h>

#include "sks/cli.hpp"

#ifndef SKS_MODELS_DIR
#define SKS_MODELS_DIR "models"
#endif

namespace {

using namespace sks;

struct Fixture {
  Model model;
  SentenceUniverse universe;
  std::unique_ptr<TruthContext> ctx;
  std::vector<const Valuation*> pool;

  explicit Fixture(const std::string& name, unsigned depth) {
    model = load_model(std::string(SKS_MODELS_DIR) + "/" + name);
    universe = build_universe(*model.env, model.seeds, depth, model.cap);
    ctx = std::make_unique<TruthContext>(*model.env, model.structure, universe);
    for (auto& y : ctx->start_set()) pool.push_back(&y);
  }
};

Fixture& fixture(int which) {
  static Fixture liar("liar.model", 1), modal("modal-toy.model", 1);
  return which == 0 ? liar : modal;
}

void BM_theta(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  const bool parallel = state.range(1) != 0;
  Valuation root = f.ctx->minimal_fixpoint();
  for (auto _ : state) {
    Valuation v = parallel ? theta(*f.ctx, Admissibility::N3, f.pool, root)
                           : theta_serial(*f.ctx, Admissibility::N3, f.pool, root);
    benchmark::DoNotOptimize(v);
  }
  state.counters["sentences"] = static_cast<double>(f.ctx->size());
  state.counters["pool"] = static_cast<double>(f.pool.size());
}
BENCHMARK(BM_theta)
    ->ArgNames({"model", "parallel"})
    ->Args({0, 0})
    ->Args({0, 1})
    ->Args({1, 0})
    ->Args({1, 1})
    ->Unit(benchmark::kMillisecond);

// Persistence over a chain of interpretations and a depth-2 universe.
void BM_persistence(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  static Model m = parse_model(R"(
domain a b c
constant a = a
constant b = b
constant c = c
predicate P/1
predicate Q/1
predicate R/2
interp J0
pos P a
interp J1
pos P a
neg Q b
interp J2
pos P a
pos P b
neg Q b
pos R a b
interp J3
pos P a
pos P b
neg P c
neg Q b
pos Q a
pos R a b
neg R b a
h J0 J1
h J1 J2
h J2 J3
h J0 J2
h J0 J3
h J1 J3
seed A x (P(x) -> E y R(x, y))
seed (P(a) & ~Q(b)) -> A x (Q(x) | ~P(x))
seed ~(P(c) -> R(b, a))
)");
  static SentenceUniverse u = build_universe(*m.env, m.seeds, 2, 20000);
  for (auto _ : state) {
    auto r = parallel ? persistence_check(*m.env, m.structure, u.members)
                      : persistence_check_serial(*m.env, m.structure, u.members);
    benchmark::DoNotOptimize(r);
  }
  state.counters["sentences"] = static_cast<double>(u.size());
}
BENCHMARK(BM_persistence)->ArgNames({"parallel"})->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
