#include "sks/truth.hpp"

namespace sks {

namespace {

// Is In => Out provable in the calculus (restricted to the conditional-free
// members when `part`)?
bool closes(const TruthContext& ctx, Logic l, const std::vector<FormulaId>& in, const std::vector<FormulaId>& out) {
  auto r = prove(ctx.env(), ctx.calculus(l), Sequent::of(in, out), ctx.options().prove);
  return r.status == ProofStatus::Proved;
}

}  // namespace

// All sets S at point p with least(p) <= S that are K3-saturated, whose
// conditional-free part is K3T-saturated (on a frame: whose
// conditional-free part equals least(p)), and whose T-free members are true.
std::vector<Bits> TruthContext::enumerate_point(std::uint32_t p, const Bits& least) const {
  const std::size_t n = size();
  std::vector<signed char> fixed(n, 0);  // 1 in, -1 out, 0 free
  for (std::size_t i = 0; i < n; ++i) {
    if (least.test(i)) fixed[i] = 1;
    else if (t_free(i) && !base_true(p, i)) fixed[i] = -1;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (fixed[i] == 1 && neg_[i] >= 0 && fixed[static_cast<std::size_t>(neg_[i])] == 0)
      fixed[static_cast<std::size_t>(neg_[i])] = -1;

  std::vector<std::size_t> free;
  std::vector<FormulaId> in, out, in_part, out_part;
  for (std::size_t i = 0; i < n; ++i) {
    auto& side = fixed[i] == 1 ? in : out;
    auto& side_part = fixed[i] == 1 ? in_part : out_part;
    if (fixed[i] == 0) {
      free.push_back(i);
      continue;
    }
    side.push_back(member(i));
    if (conditional_free(i)) side_part.push_back(member(i));
  }

  const bool check_part = !modal();
  auto viable = [&]() {
    if (closes(*this, Logic::K3, in, out)) return false;
    if (check_part && closes(*this, Logic::K3T, in_part, out_part)) return false;
    return true;
  };

  std::vector<Bits> found;
  Bits cur = least;
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (found.size() > opts_.y_cap) throw YCapExceeded(opts_.y_cap);
    if (k == free.size()) {
      found.push_back(cur);
      return;
    }
    const std::size_t i = free[k];
    const FormulaId f = member(i);
    const bool part = conditional_free(i);
    // In first, then out.
    bool contradicts = neg_[i] >= 0 && cur.test(static_cast<std::size_t>(neg_[i]));
    if (!contradicts) {
      in.push_back(f);
      if (part) in_part.push_back(f);
      cur.set(i);
      if (viable()) self(self, k + 1);
      cur.reset(i);
      in.pop_back();
      if (part) in_part.pop_back();
    }
    out.push_back(f);
    if (part) out_part.push_back(f);
    if (viable()) self(self, k + 1);
    out.pop_back();
    if (part) out_part.pop_back();
  };
  if (viable()) dfs(dfs, 0);
  return found;
}

// Modal start: choose the conditional-bearing members per point; the
// conditional-free part is then the least fixed point of the jump with
// those members held, and the whole valuation must be basic and
// K3-saturated at every point.
std::vector<Valuation> TruthContext::modal_start() const {
  const std::uint32_t P = points();
  const std::size_t n = size();
  std::vector<std::vector<Bits>> per(P);
  for (std::uint32_t p = 0; p < P; ++p) {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i)
      if (!conditional_free(i) && (!t_free(i) || base_true(p, i))) free.push_back(i);
    Bits cur(n);
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (per[p].size() > opts_.y_cap) throw YCapExceeded(opts_.y_cap);
      if (k == free.size()) {
        per[p].push_back(cur);
        return;
      }
      const std::size_t i = free[k];
      if (neg_[i] < 0 || !cur.test(static_cast<std::size_t>(neg_[i]))) {
        cur.set(i);
        self(self, k + 1);
        cur.reset(i);
      }
      self(self, k + 1);
    };
    rec(rec, 0);
  }

  std::vector<Valuation> out;
  std::vector<std::size_t> choice(P, 0);
  auto emit = [&] {
    Valuation held = empty();
    for (std::uint32_t p = 0; p < P; ++p) held.at[p] = per[p][choice[p]];
    Valuation g = held;
    for (;;) {
      Valuation next = kripke_jump(g);
      for (std::uint32_t p = 0; p < P; ++p)
        for (std::size_t i = 0; i < n; ++i)
          if (held.at[p].test(i)) next.at[p].set(i);
      if (next == g) break;
      g = std::move(next);
    }
    if (!is_basic(g)) return;
    for (auto& b : g.at)
      if (saturated_at(calculus(Logic::K3), b, false) != SatVerdict::Saturated) return;
    out.push_back(std::move(g));
    if (out.size() > opts_.y_cap) throw YCapExceeded(opts_.y_cap);
  };
  auto rec = [&](auto&& self, std::uint32_t p) -> void {
    if (p == P) return emit();
    for (std::size_t k = 0; k < per[p].size(); ++k) {
      choice[p] = k;
      self(self, p + 1);
    }
  };
  rec(rec, 0);
  return out;
}

const std::vector<Valuation>& TruthContext::start_set() const {
  std::call_once(start_once_, [&] {
    if (modal()) {
      start_ = modal_start();
      return;
    }
    const Valuation least = minimal_fixpoint();
    const std::uint32_t P = points();
    std::vector<std::vector<Bits>> per(P);
    for (std::uint32_t p = 0; p < P; ++p) per[p] = enumerate_point(p, least.at[p]);

    // Combine per-point choices under H-monotonicity within each world.
    std::vector<std::size_t> choice(P, 0);
    std::vector<Valuation> out;
    auto compatible = [&](std::uint32_t p, const Bits& b) {
      const std::uint32_t w = s_.point_world(p), j = s_.point_interp(p);
      for (auto [a, c] : s_.H) {
        std::uint32_t pa = s_.point(w, a), pc = s_.point(w, c);
        if (pc == p && pa < p && !per[pa][choice[pa]].subset_of(b)) return false;
        if (pa == p && pc < p && !b.subset_of(per[pc][choice[pc]])) return false;
      }
      (void)j;
      return true;
    };
    auto rec = [&](auto&& self, std::uint32_t p) -> void {
      if (p == P) {
        Valuation v;
        for (std::uint32_t q = 0; q < P; ++q) v.at.push_back(per[q][choice[q]]);
        out.push_back(std::move(v));
        if (out.size() > opts_.y_cap) throw YCapExceeded(opts_.y_cap);
        return;
      }
      for (std::size_t k = 0; k < per[p].size(); ++k) {
        choice[p] = k;
        if (compatible(p, per[p][k])) self(self, p + 1);
      }
    };
    rec(rec, 0);
    start_ = std::move(out);
  });
  return start_;
}

}  // namespace sks
