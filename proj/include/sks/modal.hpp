#pragma once

#include "sks/truth.hpp"

namespace sks {

// Each rank[w] must order the carrier {v | wRv or v = w}: every carrier
// world ranked (ranks are naturals, ties allowed). Ranks outside the carrier
// are ignored.
Report validate_frame(const Frame& frame);

// Truth value at world w of interpretation J; throws InputError when the
// sentence is modal and no frame is loaded.
TruthValue eval_modal(SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t world,
                      std::uint32_t interp, const Assignment& beta, FormulaId f);

// The truth-module iteration over (world, interpretation) points, started
// from the modal least fixed point.
FixedPointResult modal_fixed_point(const TruthContext& ctx, Admissibility e);

}  // namespace sks
