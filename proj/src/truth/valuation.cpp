#include <algorithm>
#include <bit>

#include "sks/truth.hpp"

namespace sks {

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bits::subset_of(const Bits& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

Bits Bits::operator&(const Bits& o) const {
  Bits r = *this;
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
  return r;
}

std::size_t Bits::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (auto w : w_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
  return h;
}

std::size_t Valuation::hash() const {
  std::size_t h = at.size();
  for (auto& b : at) h = h * 1000003u ^ b.hash();
  return h;
}

bool leq(const Valuation& f, const Valuation& g) {
  for (std::size_t p = 0; p < f.at.size(); ++p)
    if (!f.at[p].subset_of(g.at[p])) return false;
  return true;
}

Valuation meet(const std::vector<const Valuation*>& vs) {
  if (vs.empty()) return {};
  Valuation r = *vs.front();
  for (std::size_t k = 1; k < vs.size(); ++k)
    for (std::size_t p = 0; p < r.at.size(); ++p) r.at[p] = r.at[p] & vs[k]->at[p];
  return r;
}

const char* to_string(Admissibility e) {
  switch (e) {
    case Admissibility::C: return "c";
    case Admissibility::K3: return "k3";
    case Admissibility::N3: return "n3";
    case Admissibility::Nve: return "nve";
    case Admissibility::N3Nve: return "n3nve";
  }
  return "?";
}

Admissibility parse_admissibility(std::string_view name) {
  if (name == "c") return Admissibility::C;
  if (name == "k3") return Admissibility::K3;
  if (name == "n3") return Admissibility::N3;
  if (name == "nve") return Admissibility::Nve;
  if (name == "n3nve") return Admissibility::N3Nve;
  throw InputError("unknown admissibility condition '" + std::string(name) + "'");
}

namespace {
bool mentions_identity(const SentenceEnv& env, FormulaId f) {
  const FormulaNode& n = env.node(f);
  if (n.op == Op::Ident) return true;
  return (n.a != kNone && mentions_identity(env, n.a)) || (n.b != kNone && mentions_identity(env, n.b));
}
}  // namespace

TruthContext::TruthContext(SentenceEnv& env, const SupervaluationStructure& s, const SentenceUniverse& u,
                           TruthOptions opts)
    : env_(env), s_(s), u_(u), opts_(std::move(opts)) {
  const std::size_t n = u.size();
  neg_.assign(n, -1);
  t_free_.assign(n, 0);
  cond_free_.assign(n, 0);
  cond_free_mask_ = Bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    FormulaId f = u.members[i];
    neg_[i] = u.find(env.neg(f));
    // Past the negation cap, ~~psi stands in for psi.
    if (neg_[i] < 0 && env.node(f).op == Op::Neg) neg_[i] = u.find(env.node(f).a);
    t_free_[i] = is_t_free(env, f);
    cond_free_[i] = is_conditional_free(env, f);
    if (cond_free_[i]) {
      cond_free_mask_.set(i);
      cond_free_members_.push_back(f);
    }
    identity_ = identity_ || mentions_identity(env, f);
  }
  base_true_.assign(s.point_count(), Bits(n));
  Evaluator ev(env, s);
  for (std::uint32_t p = 0; p < s.point_count(); ++p)
    for (std::size_t i = 0; i < n; ++i)
      if (t_free_[i] && ev.holds(0, p, u.members[i])) base_true_[p].set(i);
}

Valuation TruthContext::empty() const {
  Valuation v;
  v.at.assign(points(), Bits(size()));
  return v;
}

std::vector<FormulaId> TruthContext::sentences(const Bits& b) const {
  std::vector<FormulaId> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (b.test(i)) out.push_back(member(i));
  return out;
}

std::vector<std::string> TruthContext::basic_violations(const Valuation& f) const {
  std::vector<std::string> v;
  if (f.at.size() != points()) {
    v.push_back("valuation has the wrong number of points");
    return v;
  }
  for (std::uint32_t p = 0; p < points(); ++p) {
    const Bits& b = f.at[p];
    for (std::size_t i = 0; i < size(); ++i) {
      if (!b.test(i)) continue;
      if (neg_[i] >= 0 && b.test(static_cast<std::size_t>(neg_[i])))
        v.push_back("inconsistent at " + s_.point_name(p) + ": " + display(env_, member(i)));
      if (t_free_[i] && !base_true_[p].test(i))
        v.push_back("unsound at " + s_.point_name(p) + ": " + display(env_, member(i)));
    }
  }
  for (std::uint32_t w = 0; w < s_.world_count(); ++w)
    for (auto [a, b] : s_.H)
      if (!f.at[s_.point(w, a)].subset_of(f.at[s_.point(w, b)]))
        v.push_back("not monotone from " + s_.point_name(s_.point(w, a)) + " to " + s_.point_name(s_.point(w, b)));
  return v;
}

bool TruthContext::is_basic(const Valuation& f) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = basic_cache_.find(f); it != basic_cache_.end()) return it->second;
  }
  bool ok = basic_violations(f).empty();
  std::lock_guard lock(mu_);
  basic_cache_.emplace(f, ok);
  return ok;
}

SatVerdict TruthContext::saturated_at(const Calculus& c, const Bits& s, bool part) const {
  SatKey key{c.logic, part, part ? (s & cond_free_mask_) : s};
  {
    std::lock_guard lock(mu_);
    if (auto it = sat_cache_.find(key); it != sat_cache_.end()) return it->second;
  }
  auto members = sentences(key.bits);
  auto v = saturated(env_, c, members, part ? cond_free_members_ : u_.members, opts_.prove);
  std::lock_guard lock(mu_);
  sat_cache_.emplace(std::move(key), v);
  return v;
}

bool TruthContext::admissible(Admissibility e, const Valuation& g) const {
  Logic l;
  switch (e) {
    case Admissibility::C: return true;
    case Admissibility::K3: l = Logic::K3; break;
    case Admissibility::N3: l = Logic::N3; break;
    case Admissibility::Nve: l = Logic::K3T; break;
    default: l = Logic::N3T; break;
  }
  // Budget exhaustion counts against admissibility.
  for (auto& b : g.at)
    if (saturated_at(calculus(l), b, false) != SatVerdict::Saturated) return false;
  return true;
}

bool TruthContext::admissible_from(Admissibility e, const Valuation& f, const Valuation& g) const {
  return leq(f, g) && is_basic(f) && is_basic(g) && admissible(e, g);
}

}  // namespace sks
