// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "oracle.hpp"

using namespace sks;
using oracle::Loaded;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (problems.size() < 8) problems.push_back(what);
  }
};

std::string path(const std::string& name) { return oracle::models_dir() + "/" + name; }

const std::vector<Admissibility> kBase = {Admissibility::C, Admissibility::K3, Admissibility::N3, Admissibility::Nve};
const std::vector<std::string> kParadoxModels = {"liar.model", "curry.model", "truthteller.model"};

std::size_t pick(std::mt19937& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// 1. Truth persists along H for every universe sentence.
Outcome persistence() {
  Outcome o;
  std::mt19937 rng(101);
  std::size_t structures = 0, sentences = 0, failures = 0, pairs = 0;
  while (structures < 200) {
    SentenceEnv env;
    auto sig = oracle::declare_signature(env);
    oracle::StructureShape shape;
    auto s = oracle::random_structure(env, sig, rng, shape);
    if (!validate_structure(env, s).ok()) {
      o.require(false, "generator produced an invalid structure");
      continue;
    }
    ++structures;
    oracle::FormulaShape fs;
    fs.conditionals = true;
    fs.truth = true;
    fs.depth = 2;
    std::vector<FormulaId> seeds;
    for (int k = 0; k < 4; ++k) seeds.push_back(oracle::random_formula(env, sig, rng, fs));
    SentenceUniverse u;
    try {
      u = build_universe(env, seeds, 1, 300);
    } catch (const UniverseCapExceeded&) {
      u = build_universe(env, seeds, 0, 300);
    }
    auto par = persistence_check(env, s, u.members);
    auto ser = persistence_check_serial(env, s, u.members);
    sentences += u.size();
    pairs += s.H.size();
    failures += par.size();
    o.require(par.size() == ser.size(), "parallel and serial sweeps disagree");
    for (auto& f : par) o.require(false, "counterexample: " + print(env, f.sentence));
  }
  o.detail = std::to_string(structures) + " structures, " + std::to_string(sentences) + " sentences, " +
             std::to_string(pairs) + " H-pairs, " + std::to_string(failures) + " counterexamples";
  return o;
}

// 2. eval agrees with the strong Kleene oracle on conditional-free sentences.
Outcome kleene_agreement() {
  Outcome o;
  std::mt19937 rng(202);
  std::size_t agree = 0, counts[3] = {0, 0, 0};
  for (int batch = 0; batch < 50; ++batch) {
    SentenceEnv env;
    auto sig = oracle::declare_signature(env);
    for (int k = 0; k < 10; ++k) {
      auto s = oracle::random_structure(env, sig, rng);
      oracle::FormulaShape fs;
      fs.depth = 4;
      fs.truth = k % 3 == 0;
      FormulaId f = oracle::random_formula(env, sig, rng, fs);
      auto J = static_cast<std::uint32_t>(pick(rng, s.X.size()));
      TruthValue a = eval(env, s, J, {}, f), b = oracle::kleene(env, s, J, 0, f);
      counts[static_cast<int>(b)]++;
      if (a == b) ++agree;
      else o.require(false, print(env, f) + ": eval " + to_string(a) + ", oracle " + to_string(b));
    }
  }
  o.detail = std::to_string(agree) + "/500 agree (oracle: " + std::to_string(counts[0]) + " true, " +
             std::to_string(counts[1]) + " false, " + std::to_string(counts[2]) + " undefined)";
  return o;
}

struct FixedPointCase {
  std::string model;
  Admissibility cond;
  std::shared_ptr<Loaded> l;
  FixedPointResult r;
};

std::vector<FixedPointCase>& fixed_points() {
  static std::vector<FixedPointCase> cases = [] {
    std::vector<FixedPointCase> out;
    for (auto& m : kParadoxModels) {
      std::shared_ptr<Loaded> l = oracle::open_model(path(m));
      for (auto e : kBase) out.push_back({m, e, l, iterate_fixed_point(*l->ctx, e)});
    }
    return out;
  }();
  return cases;
}

const FixedPointCase& case_of(const std::string& model, Admissibility e) {
  for (auto& c : fixed_points())
    if (c.model == model && c.cond == e) return c;
  throw std::logic_error("no case " + model);
}

// 3. Fixed points exist, are naive, and are stable under one more step.
Outcome fixed_point_existence() {
  Outcome o;
  std::size_t checked = 0;
  for (auto& c : fixed_points()) {
    const std::string tag = c.model + "/" + to_string(c.cond);
    o.require(c.r.ok(), tag + ": " + c.r.reason);
    if (!c.r.ok()) continue;
    auto fails = check_naivety(*c.l->ctx, c.r);
    o.require(fails.empty(), tag + ": " + std::to_string(fails.size()) + " naivety failures");
    auto chk = verify_fixed_point(*c.l->ctx, c.r);
    o.require(chk.theta_fixed, tag + ": theta(Z, g) != g");
    o.require(chk.big_theta_fixed, tag + ": Theta(Z) != Z");
    ++checked;
  }
  o.detail = std::to_string(checked) + "/12 fixed points naive and stable";
  return o;
}

bool absent(const Loaded& l, const FixedPointResult& r, FormulaId f) {
  int i = l.ctx->index(f);
  if (i < 0) return true;
  for (auto& b : r.g.at)
    if (b.test(static_cast<std::size_t>(i))) return false;
  return true;
}

// 4. Liar and Curry at the Nve fixed point.
Outcome paradox_diagnostics() {
  Outcome o;
  {
    auto& c = case_of("liar.model", Admissibility::Nve);
    o.require(c.r.ok(), "liar: no fixed point");
    FormulaId l = c.l->named("l");
    SentenceEnv& env = *c.l->model.env;
    o.require(absent(*c.l, c.r, l), "liar in g");
    o.require(absent(*c.l, c.r, env.neg(l)), "~liar in g");
  }
  auto& c = case_of("curry.model", Admissibility::Nve);
  o.require(c.r.ok(), "curry: no fixed point");
  if (!c.r.ok()) return o;
  const TruthContext& ctx = *c.l->ctx;
  SentenceEnv& env = *c.l->model.env;
  FormulaId k = c.l->named("k");
  o.require(absent(*c.l, c.r, k), "k in g");
  o.require(absent(*c.l, c.r, env.neg(k)), "~k in g");
  FormulaId kk = env.cond(k, k), tk = env.cond(env.truth(env.quote_of(k)), k);
  std::size_t witnesses = 0;
  for (std::uint32_t p = 0; p < ctx.points(); ++p) {
    o.require(value_at_fixpoint(ctx, c.r, p, kk) == TruthValue::True, "k -> k not true");
    o.require(value_at_fixpoint(ctx, c.r, p, tk) != TruthValue::True, "T'k' -> k true");
    auto w = exists_admissible_with(ctx, c.r, k, p);
    witnesses += w.found;
    o.require(w.found, "no admissible g with k in g(J')");
  }
  o.detail = "liar and curry absent from g; k -> k true, T'k' -> k not true; " + std::to_string(witnesses) +
             " witness(es) with k in g(J')";
  return o;
}

// 5. N3-Nve on Curry collapses with the case analysis in the report.
Outcome impossibility() {
  Outcome o;
  auto l = oracle::open_model(path("curry.model"));
  auto r = iterate_fixed_point(*l->ctx, Admissibility::N3Nve);
  o.require(!r.ok(), "n3nve reached a fixed point");
  auto has = [&](const std::string& s) {
    return std::any_of(r.analysis.begin(), r.analysis.end(), [&](auto& a) { return a.find(s) != std::string::npos; });
  };
  o.require(has("case (i) k in g("), "no case (i) line");
  o.require(has("case (ii) k not in g("), "no case (ii) line");

  CommandOptions opts;
  opts.command = "fixpoint";
  opts.model = path("curry.model");
  opts.cond = "n3nve";
  std::ostringstream out, err;
  int code = run_command(opts, out, err);
  o.require(code == kCollapse, "exit status " + std::to_string(code));
  o.require(out.str().find(r.reason) != std::string::npos, "reason missing from the report");
  o.require(out.str().find("case (i)") != std::string::npos, "case analysis missing from the report");
  o.detail = "collapse (" + r.reason + ", stage " + std::to_string(r.collapse_stage) + "), exit " +
             std::to_string(code);
  return o;
}

// 6. Principles (a)-(k) in their asserted cells.
Outcome principles() {
  Outcome o;
  const std::vector<Admissibility> conds = {Admissibility::K3, Admissibility::N3, Admissibility::Nve};
  for (char lab = 'a'; lab <= 'k'; ++lab) {
    bool want_n3 = lab <= 'i', want_nve = lab <= 'g' || lab >= 'j';
    o.require(principle_asserted(lab, Admissibility::N3) == want_n3, std::string("assertion table at N3: ") + lab);
    o.require(principle_asserted(lab, Admissibility::Nve) == want_nve, std::string("assertion table at Nve: ") + lab);
    o.require(principle_asserted(lab, Admissibility::K3) == (lab <= 'g'), std::string("assertion table at K3: ") + lab);
  }
  std::vector<std::size_t> instances(11, 0);
  std::size_t cells = 0;
  for (auto& m : kParadoxModels)
    for (auto e : conds) {
      auto& c = case_of(m, e);
      if (!c.r.ok()) continue;
      for (auto& p : check_principles(*c.l->ctx, c.r)) {
        if (m == "liar.model") instances[static_cast<std::size_t>(p.label - 'a')] += p.instances;
        if (!p.asserted) continue;
        ++cells;
        o.require(p.violations.empty(), m + "/" + to_string(e) + " (" + p.label + "): " +
                                            (p.violations.empty() ? "" : p.violations.front()));
      }
    }
  for (char lab = 'a'; lab <= 'k'; ++lab)
    o.require(instances[static_cast<std::size_t>(lab - 'a')] > 0, std::string("no instance of ") + lab);
  o.detail = std::to_string(cells) + " asserted cells clean; every principle instantiated on liar.model";
  return o;
}

// 7. Prover corpus and semantic soundness of proved sequents.
Outcome prover() {
  Outcome o;
  {
    SentenceEnv env;
    oracle::declare_signature(env);
    auto seq = [&](const char* t) { return parse_sequent(t, env); };
    Calculus k3{Logic::K3, false}, n3{Logic::N3, false}, n3i{Logic::N3, true};
    o.require(prove(env, k3, seq("P(a), ~P(a) => false")).proved(), "phi, ~phi => false");
    auto lem = prove(env, n3, seq("=> P(a), ~P(a)"));
    o.require(lem.status == ProofStatus::Refuted, std::string("=> phi, ~phi: ") + to_string(lem.status));
    o.require(prove(env, n3, seq("=> P(a) -> P(a)")).proved(), "=> phi -> phi");
    auto contra = prove(env, n3, seq("P(a) -> Q(a) => ~Q(a) -> ~P(a)"));
    o.require(contra.status == ProofStatus::Refuted, std::string("contraposition: ") + to_string(contra.status));
    o.require(prove(env, n3, seq("P(a) => Q(a)")).status == ProofStatus::Refuted, "phi => psi");
    o.require(prove(env, n3i, seq("a = b, ~(a = b) =>")).proved(), "s = t, s != t =>");
  }
  {
    SentenceEnv env;
    std::uint32_t slot = env.declare_sentence("k");
    env.define_sentence(slot, parse("T('k') -> false", env));
    auto tree = curry_derivation(env, slot);
    auto chk = check_proof(env, {Logic::N3T, false}, tree);
    o.require(chk.ok, "curry derivation: " + chk.reason);
    o.require(tree.sequent.left.empty() && tree.sequent.right == std::vector<FormulaId>{env.falsum()},
              "curry derivation does not end in => false");
  }

  std::mt19937 rng(707);
  std::size_t checks = 0, attempts = 0, counterexamples = 0;
  while (checks < 300 && attempts < 200000) {
    ++attempts;
    SentenceEnv env;
    auto sig = oracle::declare_signature(env);
    oracle::FormulaShape fs;
    fs.depth = 2;
    fs.conditionals = true;
    fs.functions = false;
    std::vector<FormulaId> pool;
    for (int k = 0; k < 4; ++k) pool.push_back(oracle::random_formula(env, sig, rng, fs));
    std::vector<FormulaId> left, right;
    for (std::size_t k = 0, n = pick(rng, 3); k < n; ++k) left.push_back(pool[pick(rng, pool.size())]);
    for (std::size_t k = 0, n = 1 + pick(rng, 2); k < n; ++k) right.push_back(pool[pick(rng, pool.size())]);
    Calculus c{Logic::N3, true};
    ProveOptions po;
    po.max_steps = 20000;
    po.record = true;
    auto res = prove(env, c, Sequent::of(left, right), po);
    if (!res.proved()) continue;
    if (res.tree) {
      auto chk = check_proof(env, c, *res.tree);
      o.require(chk.ok, "proof of " + print(env, res.tree->sequent) + " rejected: " + chk.reason);
    }
    auto s = oracle::random_structure(env, sig, rng);
    auto seq = Sequent::of(left, right);
    for (std::uint32_t J = 0; J < s.X.size(); ++J) {
      bool l = std::all_of(seq.left.begin(), seq.left.end(),
                           [&](FormulaId f) { return oracle::kleene(env, s, J, 0, f) == TruthValue::True; });
      bool r = std::any_of(seq.right.begin(), seq.right.end(),
                           [&](FormulaId f) { return oracle::kleene(env, s, J, 0, f) == TruthValue::True; });
      if (l && !r) {
        ++counterexamples;
        o.require(false, "counterexample to " + print(env, seq));
      }
    }
    ++checks;
  }
  o.require(checks == 300, "only " + std::to_string(checks) + " proved sequents generated");
  o.detail = "corpus ok; " + std::to_string(checks) + " proved sequents checked, " + std::to_string(counterexamples) +
             " counterexamples";
  return o;
}

// 8. Global deduction theorem at every fixed point.
Outcome deduction_theorem() {
  Outcome o;
  std::mt19937 rng(808);
  std::size_t triples = 0, both = 0, fps = 0;
  for (auto& c : fixed_points()) {
    if (!c.r.ok()) {
      o.require(false, c.model + "/" + to_string(c.cond) + ": no fixed point");
      continue;
    }
    ++fps;
    const TruthContext& ctx = *c.l->ctx;
    SentenceEnv& env = ctx.env();
    auto member = [&] { return ctx.member(pick(rng, ctx.size())); };
    for (int k = 0; k < 200; ++k) {
      std::vector<FormulaId> gamma;
      for (std::size_t n = pick(rng, 3); n > 0; --n) gamma.push_back(member());
      FormulaId phi = member(), psi = member();
      if (k % 4 == 0) phi = env.cond(phi, member());
      if (k % 5 == 0) psi = env.truth(env.quote_of(psi));
      auto [left, right] = deduction_theorem_check(ctx, c.r, gamma, phi, psi);
      ++triples;
      both += left && right;
      o.require(left == right, c.model + "/" + to_string(c.cond) + ": " + print(env, phi) + " / " + print(env, psi));
    }
  }
  o.detail = std::to_string(triples) + " triples over " + std::to_string(fps) + " fixed points agree (" +
             std::to_string(both) + " valid)";
  return o;
}

const char* kToyTruthteller = R"(
domain a
constant a = a
predicate P/1
interp J0
interp J1
pos P a
h J0 J1
sentence t := T('t')
seed P(a)
depth 0
)";

const char* kToyLiar = R"(
domain a
constant a = a
predicate P/1
interp J0
interp J1
pos P a
h J0 J1
sentence l := ~T('l')
seed P(a)
seed T('l') -> P(a)
depth 0
)";

// 9. Monotonicity, generated substructure and the fixed-point biconditional on toys.
Outcome monotonicity() {
  Outcome o;
  std::size_t jmono = 0, yfmono = 0, gensub = 0, afl = 0;
  for (auto [text, name] : {std::pair{kToyTruthteller, "toy-truthteller"}, std::pair{kToyLiar, "toy-liar"}}) {
    auto l = oracle::open_parsed(parse_model(text, name));
    const TruthContext& ctx = *l->ctx;
    const auto& s = ctx.structure();
    const auto& Y = ctx.start_set();
    const std::size_t n = Y.size();
    o.require(n <= 12, std::string(name) + ": start set too large for exhaustive checks");
    if (n > 12) continue;
    std::vector<const Valuation*> all;
    for (auto& y : Y) all.push_back(&y);
    std::vector<const Valuation*> roots = all;
    Valuation least = ctx.minimal_fixpoint();
    roots.push_back(&least);

    for (auto e : kBase) {
      const std::string tag = std::string(name) + "/" + to_string(e);
      // J-monotonicity: truth and falsity persist along H at fixed f.
      for (auto f : roots) {
        PoolView view(ctx, e, all, *f);
        Evaluator ev(ctx.env(), s, view);
        for (std::size_t i = 0; i < ctx.size(); ++i)
          for (auto [a, b] : s.H)
            for (bool neg : {false, true}) {
              if (ev.holds(0, a, ctx.member(i), neg))
                o.require(ev.holds(0, b, ctx.member(i), neg), tag + ": J-monotonicity");
              ++jmono;
            }
      }
      // (Y, f)-monotonicity: Z within Y, f <= g.
      for (auto f : roots)
        for (auto g : roots) {
          if (!leq(*f, *g)) continue;
          PoolView big(ctx, e, all, *f);
          Evaluator ev1(ctx.env(), s, big);
          for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<const Valuation*> Z;
            for (std::size_t k = 0; k < n; ++k)
              if (mask >> k & 1) Z.push_back(all[k]);
            PoolView small(ctx, e, Z, *g);
            Evaluator ev2(ctx.env(), s, small);
            for (std::size_t i = 0; i < ctx.size(); ++i)
              for (std::uint32_t p = 0; p < ctx.points(); ++p) {
                if (ev1.holds(0, p, ctx.member(i)))
                  o.require(ev2.holds(0, p, ctx.member(i)), tag + ": (Y,f)-monotonicity");
                ++yfmono;
              }
          }
        }
      // theta over Y agrees with theta over the members above g.
      for (auto g : roots) {
        bool nonempty = std::any_of(all.begin(), all.end(), [&](auto h) { return ctx.admissible_from(e, *g, *h); });
        if (!nonempty) continue;
        std::vector<const Valuation*> up;
        for (auto h : all)
          if (leq(*g, *h)) up.push_back(h);
        o.require(theta(ctx, e, all, *g) == theta(ctx, e, up, *g), tag + ": generated substructure");
        ++gensub;
      }
      // Theta(Y_f) = Y_f iff theta(Y_f, f) = f, when theta(Y_f, f) is in Y_f.
      for (auto f : all) {
        std::vector<const Valuation*> Yf;
        for (auto h : all)
          if (leq(*f, *h)) Yf.push_back(h);
        Valuation t = theta(ctx, e, Yf, *f);
        if (std::none_of(Yf.begin(), Yf.end(), [&](auto h) { return *h == t; })) continue;
        bool lhs = big_theta(Yf, t).size() == Yf.size();
        o.require(lhs == (t == *f), tag + ": fixed-point biconditional");
        ++afl;
      }
    }
  }
  o.require(afl > 0, "no toy pool with theta(Y_f, f) in Y_f");
  o.detail = std::to_string(jmono) + " J-checks, " + std::to_string(yfmono) + " (Y,f)-checks, " +
             std::to_string(gensub) + " substructure and " + std::to_string(afl) + " biconditional cases";
  return o;
}

// Frames on n worlds up to isomorphism, with every weak order of each carrier.
std::vector<Frame> frames_up_to_iso(unsigned n) {
  std::vector<Frame> out;
  std::vector<unsigned> perm(n);
  auto encode = [&](const std::vector<std::vector<char>>& R, const std::vector<std::vector<int>>& rank,
                    const std::vector<unsigned>& p) {
    std::vector<int> code(2 * n * n);
    for (unsigned w = 0; w < n; ++w)
      for (unsigned v = 0; v < n; ++v) {
        code[p[w] * n + p[v]] = R[w][v];
        code[n * n + p[w] * n + p[v]] = rank[w][v];
      }
    return code;
  };
  for (unsigned bits = 0; bits < (1u << (n * n)); ++bits) {
    std::vector<std::vector<char>> R(n, std::vector<char>(n, 0));
    for (unsigned w = 0; w < n; ++w)
      for (unsigned v = 0; v < n; ++v) R[w][v] = bits >> (w * n + v) & 1;
    std::vector<std::vector<unsigned>> carrier(n);
    for (unsigned w = 0; w < n; ++w)
      for (unsigned v = 0; v < n; ++v)
        if (v == w || R[w][v]) carrier[w].push_back(v);
    std::vector<std::vector<int>> rank(n, std::vector<int>(n, -1));
    std::function<void(unsigned, unsigned)> go = [&](unsigned w, unsigned k) {
      if (w == n) {
        std::iota(perm.begin(), perm.end(), 0u);
        auto self = encode(R, rank, perm);
        while (std::next_permutation(perm.begin(), perm.end()))
          if (encode(R, rank, perm) < self) return;
        Frame F;
        for (unsigned x = 0; x < n; ++x) F.worlds.push_back("w" + std::to_string(x));
        F.R.assign(n, {});
        for (unsigned x = 0; x < n; ++x)
          for (unsigned v = 0; v < n; ++v)
            if (R[x][v]) F.R[x].push_back(v);
        F.rank = rank;
        out.push_back(std::move(F));
        return;
      }
      const auto& c = carrier[w];
      if (k == c.size()) {
        // Only normalized rankings: the used ranks form 0..m.
        std::vector<char> used(c.size(), 0);
        for (auto v : c) used[static_cast<std::size_t>(rank[w][v])] = 1;
        auto first_gap = std::find(used.begin(), used.end(), 0);
        if (std::find(first_gap, used.end(), 1) != used.end()) return;
        go(w + 1, 0);
        return;
      }
      for (int r = 0; r < static_cast<int>(c.size()); ++r) {
        rank[w][c[k]] = r;
        go(w, k + 1);
      }
      rank[w][c[k]] = -1;
    };
    go(0, 0);
  }
  return out;
}

// 10. Modal suite.
Outcome modal() {
  Outcome o;
  std::mt19937 rng(1010);
  std::size_t degenerate = 0;
  for (int k = 0; k < 100; ++k) {
    SentenceEnv env;
    auto sig = oracle::declare_signature(env);
    auto s = oracle::random_structure(env, sig, rng);
    auto m = s;
    Frame F;
    F.worlds = {"w0"};
    F.R = {{0}};
    F.rank = {{0}};
    m.frame = F;
    m.finalize();
    oracle::FormulaShape fs;
    fs.conditionals = true;
    fs.depth = 3;
    for (int t = 0; t < 5; ++t) {
      FormulaId a = oracle::random_formula(env, sig, rng, fs), b = oracle::random_formula(env, sig, rng, fs);
      for (std::uint32_t J = 0; J < s.X.size(); ++J) {
        TruthValue plain = eval(env, s, J, {}, a);
        o.require(eval_modal(env, m, 0, J, {}, a) == plain, "one-world frame changes " + print(env, a));
        o.require(eval_modal(env, m, 0, J, {}, env.box(a)) == plain, "box on a reflexive point");
        TruthValue na = eval(env, s, J, {}, env.neg(a));
        TruthValue ab = eval(env, s, J, {}, env.cond(a, b));
        bool want = na == TruthValue::True || (plain == TruthValue::True && ab == TruthValue::True);
        TruthValue got = eval_modal(env, m, 0, J, {}, env.cop(a, b));
        o.require(got == (want ? TruthValue::True : TruthValue::Undefined), "counterfactual on a reflexive point");
        ++degenerate;
      }
    }
  }

  std::size_t frames = 0, cop_checks = 0;
  for (unsigned n : {2u, 3u}) {
    for (const Frame& F : frames_up_to_iso(n)) {
      ++frames;
      o.require(validate_frame(F).ok(), "enumerated frame rejected");
      for (int variant = 0; variant < 2; ++variant) {
        SentenceEnv env;
        std::uint32_t P = env.declare_predicate("P", 1), Q = env.declare_predicate("Q", 1);
        env.declare_constant("a");
        SupervaluationStructure s;
        s.domain = {"a"};
        s.frame = F;
        for (int j = 0; j < 2; ++j) {
          PartialInterpretation I;
          I.name = "J" + std::to_string(j);
          I.constants = {0};
          I.preds = j == 0 ? std::vector<std::vector<Extension>>(n, std::vector<Extension>(env.predicate_count()))
                           : s.X[0].preds;
          for (unsigned w = 0; w < n; ++w)
            for (auto p : {P, Q}) {
              auto& ext = I.preds[w][p];
              if (!ext.pos.empty() || !ext.neg.empty()) continue;
              switch (pick(rng, j == 0 ? 3 : 2)) {
                case 0: ext.pos.insert({0}); break;
                case 1: ext.neg.insert({0}); break;
                default: break;
              }
            }
          s.X.push_back(std::move(I));
        }
        s.H = {{0, 0}, {0, 1}, {1, 1}};
        s.finalize();
        FormulaId a = env.atom(P, {env.constant(0)}), b = env.atom(Q, {env.constant(0)});
        if (variant == 1) a = env.neg(a);
        FormulaId c = env.cop(a, b);
        for (std::uint32_t J = 0; J < 2; ++J)
          for (std::uint32_t w = 0; w < n; ++w) {
            for (FormulaId x : {a, b})
              o.require(eval_modal(env, s, w, J, {}, x) == oracle::kleene(env, s, J, w, x), "atom value");
            bool t = oracle::cop_true(env, s, J, w, a, b), f = oracle::cop_false(env, s, J, w, a, b);
            o.require(eval_modal(env, s, w, J, {}, c) == (t ? TruthValue::True : f ? TruthValue::False : TruthValue::Undefined),
                      "counterfactual differs from the printed clause on a " + std::to_string(n) + "-world frame");
            o.require(eval_modal(env, s, w, J, {}, env.neg(c)) == (f ? TruthValue::True : t ? TruthValue::False : TruthValue::Undefined),
                      "negated counterfactual differs on a " + std::to_string(n) + "-world frame");
            ++cop_checks;
          }
      }
    }
  }

  std::size_t naive = 0;
  auto l = oracle::open_model(path("modal-toy.model"));
  for (auto e : {Admissibility::C, Admissibility::K3, Admissibility::N3, Admissibility::Nve, Admissibility::N3Nve}) {
    auto r = modal_fixed_point(*l->ctx, e);
    o.require(r.ok(), std::string("modal toy ") + to_string(e) + ": " + r.reason);
    if (!r.ok()) continue;
    auto fails = check_naivety(*l->ctx, r);
    o.require(fails.empty(), std::string("modal toy ") + to_string(e) + ": naivety failures");
    naive += fails.empty();
  }
  o.detail = std::to_string(degenerate) + " degenerate-frame checks, " + std::to_string(frames) +
             " frames up to isomorphism (" + std::to_string(cop_checks) + " counterfactual checks), " +
             std::to_string(naive) + "/5 modal fixed points naive";
  return o;
}

// 11. Every corpus command twice, compared modulo timing.
Outcome determinism() {
  Outcome o;
  std::vector<CommandOptions> cmds;
  auto add = [&](std::string cmd, std::string model, std::vector<std::string> args = {},
                 std::optional<std::string> cond = std::nullopt, bool modal = false) {
    CommandOptions c;
    c.command = std::move(cmd);
    c.model = model.empty() ? "" : path(model);
    c.args = std::move(args);
    c.cond = std::move(cond);
    c.modal = modal;
    c.format = Format::Record;
    c.trace = true;
    cmds.push_back(std::move(c));
  };
  for (auto m : {"liar.model", "curry.model", "truthteller.model", "contraposition.model", "modal-toy.model"})
    add("validate", m);
  for (auto m : kParadoxModels)
    for (auto c : {"c", "k3", "n3", "nve", "n3nve"}) {
      add("fixpoint", m, {}, c);
      add("naivety", m, {}, c);
      add("principles", m, {}, c);
    }
  for (auto c : {"c", "k3", "n3", "nve", "n3nve"}) add("fixpoint", "modal-toy.model", {}, c, true);
  add("eval", "curry.model", {"k -> k"}, "nve");
  add("eval", "contraposition.model", {"~Q(a) -> ~P(a)"});
  add("modal-eval", "modal-toy.model", {"P(a) ~> Q(a)"});
  add("prove", "", {"P(a), ~P(a) => false"});
  add("prove", "contraposition.model", {"P(a) -> Q(a) => ~Q(a) -> ~P(a)"});
  add("dedthm", "liar.model", {"P(a)", "T('l') -> P(a)"}, "nve");
  cmds.back().gamma = {"A x P(x)"};
  CommandOptions curry;
  curry.command = "prove";
  curry.model = path("curry.model");
  curry.curry = "k";
  curry.format = Format::Record;
  cmds.push_back(curry);

  for (auto& c : cmds) {
    std::ostringstream a, b, ea, eb;
    int x = run_command(c, a, ea), y = run_command(c, b, eb);
    std::string tag = c.command + " " + c.model + (c.cond ? " " + *c.cond : "");
    o.require(x == y, tag + ": exit status differs");
    o.require(strip_timing(a.str()) == strip_timing(b.str()), tag + ": reports differ");
    o.require(a.str().find("elapsed_ms") != std::string::npos, tag + ": no timing field");
  }
  o.detail = std::to_string(cmds.size()) + " commands, identical reports modulo timing";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"persistence", persistence},
      {"kleene-agreement", kleene_agreement},
      {"fixed-point-existence", fixed_point_existence},
      {"paradox-diagnostics", paradox_diagnostics},
      {"impossibility", impossibility},
      {"principles", principles},
      {"prover", prover},
      {"deduction-theorem", deduction_theorem},
      {"monotonicity", monotonicity},
      {"modal", modal},
      {"determinism", determinism},
  };
  int failed = 0, k = 0;
  for (auto& [name, run] : criteria) {
    ++k;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-22s %s  %s (%.1fs)\n", k, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    for (auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", k - failed, k);
  return failed ? 1 : 0;
}
