#include <algorithm>

#include "sks/proof.hpp"

namespace sks {

namespace {
std::vector<FormulaId> sorted(std::vector<FormulaId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<FormulaId> complement(const std::vector<FormulaId>& S, const std::vector<FormulaId>& universe) {
  std::vector<FormulaId> out;
  for (auto f : universe)
    if (!std::binary_search(S.begin(), S.end(), f)) out.push_back(f);
  return out;
}
}  // namespace

SatVerdict saturated(SentenceEnv& env, const Calculus& c, const std::vector<FormulaId>& S,
                     const std::vector<FormulaId>& universe, const ProveOptions& opts) {
  auto s = sorted(S);
  auto r = prove(env, c, Sequent::of(s, complement(s, universe)), opts);
  switch (r.status) {
    case ProofStatus::Proved: return SatVerdict::NotSaturated;
    case ProofStatus::Refuted: return SatVerdict::Saturated;
    default: return SatVerdict::Indeterminate;
  }
}

// Lindenbaum sweep: each universe member goes in or out in order, keeping
// S' => Out unprovable. The final S' => universe \ S' is then unprovable.
SaturateResult saturate(SentenceEnv& env, const Calculus& c, const std::vector<FormulaId>& S,
                        const std::vector<FormulaId>& universe, const ProveOptions& opts) {
  SaturateResult res;
  auto in = sorted(S);
  switch (saturated(env, c, in, universe, opts)) {
    case SatVerdict::Saturated: res.set = in; return res;
    case SatVerdict::Indeterminate: res.status = SaturateResult::Indeterminate; return res;
    default: break;
  }
  auto consistent = prove(env, c, Sequent::of(in, {}), opts);
  if (consistent.status == ProofStatus::Proved) {
    res.status = SaturateResult::Inconsistent;
    return res;
  }
  if (consistent.status == ProofStatus::Indeterminate) {
    res.status = SaturateResult::Indeterminate;
    return res;
  }
  std::vector<FormulaId> out;
  for (auto f : universe) {
    if (std::binary_search(in.begin(), in.end(), f)) continue;
    auto trial = in;
    trial.insert(std::lower_bound(trial.begin(), trial.end(), f), f);
    auto r = prove(env, c, Sequent::of(trial, out), opts);
    if (r.status == ProofStatus::Indeterminate) {
      res.status = SaturateResult::Indeterminate;
      return res;
    }
    if (r.status == ProofStatus::Proved)
      out.push_back(f);
    else
      in = std::move(trial);
  }
  res.set = in;
  auto v = saturated(env, c, in, universe, opts);
  if (v == SatVerdict::Indeterminate) res.status = SaturateResult::Indeterminate;
  if (v == SatVerdict::NotSaturated) res.status = SaturateResult::NoExtension;
  return res;
}

}  // namespace sks
