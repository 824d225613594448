#include "sks/modal.hpp"

namespace sks {

TruthValue eval_modal(SentenceEnv& env, const SupervaluationStructure& s, std::uint32_t world,
                      std::uint32_t interp, const Assignment& beta, FormulaId f) {
  if (world >= s.world_count()) throw InputError("world index out of range");
  return eval(env, s, interp, beta, f, world);
}

FixedPointResult modal_fixed_point(const TruthContext& ctx, Admissibility e) {
  if (!ctx.modal()) throw InputError("modal fixed point needs a frame");
  if (auto rep = validate_frame(*ctx.structure().frame); !rep.ok()) throw InputError(rep.violations.front());
  return iterate_fixed_point(ctx, e);
}

}  // namespace sks
