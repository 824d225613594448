#include <algorithm>

#include "sks/semantics.hpp"

namespace sks {

bool Frame::accessible(std::uint32_t w, std::uint32_t v) const {
  return std::find(R[w].begin(), R[w].end(), v) != R[w].end();
}

std::vector<std::uint32_t> Frame::carrier(std::uint32_t w) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < size(); ++v)
    if (v == w || accessible(w, v)) out.push_back(v);
  return out;
}

void SupervaluationStructure::finalize() {
  h_succ.assign(X.size(), {});
  for (auto [a, b] : H)
    if (a < X.size() && b < X.size()) h_succ[a].push_back(b);
  for (auto& v : h_succ) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  if (frame)
    for (auto& r : frame->R) {
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
    }
}

std::string SupervaluationStructure::point_name(std::uint32_t p) const {
  std::string j = X[point_interp(p)].name;
  if (!frame) return j;
  return frame->worlds[point_world(p)] + "/" + j;
}

bool leq(const PartialInterpretation& I, const PartialInterpretation& J) {
  if (I.preds.size() != J.preds.size()) throw InputError("interpretations differ in world count");
  for (std::size_t w = 0; w < I.preds.size(); ++w) {
    if (I.preds[w].size() != J.preds[w].size()) throw InputError("interpretations differ in signature");
    for (std::size_t p = 0; p < I.preds[w].size(); ++p) {
      const auto& a = I.preds[w][p];
      const auto& b = J.preds[w][p];
      if (!std::includes(b.pos.begin(), b.pos.end(), a.pos.begin(), a.pos.end())) return false;
      if (!std::includes(b.neg.begin(), b.neg.end(), a.neg.begin(), a.neg.end())) return false;
    }
  }
  return true;
}

Report validate_structure(const SentenceEnv& env, const SupervaluationStructure& s) {
  Report r;
  auto& v = r.violations;
  const std::size_t n = s.X.size();
  const std::size_t d = s.domain.size();
  if (d == 0) v.push_back("domain is empty");
  if (n == 0) v.push_back("no interpretations");
  const std::size_t worlds = s.world_count();

  for (std::size_t j = 0; j < n; ++j) {
    const auto& I = s.X[j];
    const std::string who = "interpretation " + I.name;
    if (I.constants.size() != env.constant_count()) v.push_back(who + ": constant map incomplete");
    for (auto e : I.constants)
      if (e >= d) v.push_back(who + ": constant outside the domain");
    if (I.functions.size() != env.function_count()) v.push_back(who + ": function map incomplete");
    for (std::size_t f = 0; f < I.functions.size() && f < env.function_count(); ++f) {
      std::size_t expected = 1;
      for (unsigned k = 0; k < env.function(static_cast<std::uint32_t>(f)).arity; ++k) expected *= d;
      if (I.functions[f].size() != expected)
        v.push_back(who + ": function " + env.function(static_cast<std::uint32_t>(f)).name + " is not total");
      for (auto& [args, val] : I.functions[f]) {
        bool bad = val >= d || args.size() != env.function(static_cast<std::uint32_t>(f)).arity;
        for (auto a : args) bad |= a >= d;
        if (bad) v.push_back(who + ": function " + env.function(static_cast<std::uint32_t>(f)).name +
                             " has an ill-formed entry");
      }
    }
    if (I.preds.size() != worlds) {
      v.push_back(who + ": predicate maps do not cover every world");
      continue;
    }
    for (std::size_t w = 0; w < worlds; ++w) {
      if (I.preds[w].size() != env.predicate_count()) {
        v.push_back(who + ": predicate map incomplete");
        continue;
      }
      for (std::size_t p = 0; p < I.preds[w].size(); ++p) {
        const auto& pd = env.predicate(static_cast<std::uint32_t>(p));
        const auto& ext = I.preds[w][p];
        for (const auto* set : {&ext.pos, &ext.neg})
          for (const auto& t : *set) {
            bool bad = t.size() != pd.arity;
            for (auto e : t) bad |= e >= d;
            if (bad) v.push_back(who + ": ill-formed tuple for " + pd.name);
          }
        for (const auto& t : ext.pos)
          if (ext.neg.count(t)) {
            v.push_back(who + ": extension and anti-extension of " + pd.name + " overlap");
            break;
          }
      }
    }
  }

  // Constants and functions are shared by all interpretations.
  for (std::size_t j = 1; j < n; ++j) {
    if (s.X[j].constants != s.X[0].constants)
      v.push_back("interpretations " + s.X[0].name + " and " + s.X[j].name + " disagree on constants");
    if (s.X[j].functions != s.X[0].functions)
      v.push_back("interpretations " + s.X[0].name + " and " + s.X[j].name + " disagree on functions");
  }
  for (std::size_t e = 0; e < d && n > 0; ++e) {
    bool named = false;
    for (auto c : s.X[0].constants) named |= c == e;
    if (!named) v.push_back("domain element " + s.domain[e] + " has no name");
  }

  std::vector<std::vector<char>> h(n, std::vector<char>(n, 0));
  for (auto [a, b] : s.H) {
    if (a >= n || b >= n) {
      v.push_back("H refers to an unknown interpretation");
      continue;
    }
    h[a][b] = 1;
  }
  bool reflexive = true, transitive = true;
  for (std::size_t a = 0; a < n; ++a) reflexive &= h[a][a] != 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (h[a][b])
        for (std::size_t c = 0; c < n; ++c)
          if (h[b][c] && !h[a][c]) transitive = false;
  if (!reflexive) v.push_back("H not reflexive");
  if (!transitive) v.push_back("H not transitive");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (h[a][b] && a != b) {
        bool ok = false;
        try {
          ok = leq(s.X[a], s.X[b]);
        } catch (const InputError&) {
        }
        if (!ok) v.push_back("H exceeds information order: (" + s.X[a].name + ", " + s.X[b].name + ")");
      }
  return r;
}

}  // namespace sks
