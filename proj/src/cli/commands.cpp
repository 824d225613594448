#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "sks/cli.hpp"

namespace sks {

using json = nlohmann::ordered_json;

namespace {

struct Session {
  Model model;
  SentenceUniverse universe;
  std::unique_ptr<TruthContext> ctx;
};

std::string base_name(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

json header(const CommandOptions& o, const Model* m) {
  json j;
  j["command"] = o.command;
  if (m) {
    j["model"] = base_name(m->origin);
    j["digest"] = m->digest;
  }
  return j;
}

Admissibility condition(const CommandOptions& o, const Model& m) {
  if (o.cond) return parse_admissibility(*o.cond);
  if (m.cond) return *m.cond;
  throw InputError("no admissibility condition: pass --cond or put 'cond' in the model");
}

void open_session(Session& s, const CommandOptions& o) {
  s.model = load_model(o.model);
  if (auto rep = validate_structure(*s.model.env, s.model.structure); !rep.ok())
    throw InputError("invalid structure: " + rep.violations.front());
  if (s.model.structure.frame)
    if (auto rep = validate_frame(*s.model.structure.frame); !rep.ok())
      throw InputError("invalid frame: " + rep.violations.front());
  s.universe = build_universe(*s.model.env, s.model.seeds, o.depth.value_or(s.model.depth), s.model.cap);
  TruthOptions t;
  t.y_cap = s.model.y_cap;
  if (auto b = o.budget ? o.budget : s.model.budget) t.prove.max_steps = *b;
  t.parallel = !o.serial;
  s.ctx = std::make_unique<TruthContext>(*s.model.env, s.model.structure, s.universe, t);
}

json sets(const TruthContext& ctx, const Valuation& v) {
  json j = json::object();
  for (std::uint32_t p = 0; p < ctx.points(); ++p) {
    json list = json::array();
    for (auto f : ctx.sentences(v.at[p])) list.push_back(print(ctx.env(), f));
    j[ctx.structure().point_name(p)] = list;
  }
  return j;
}

Valuation sets_back(const TruthContext& ctx, const json& j) {
  Valuation v = ctx.empty();
  for (std::uint32_t p = 0; p < ctx.points(); ++p) {
    const auto name = ctx.structure().point_name(p);
    if (!j.contains(name)) throw InputError("saved result lacks point " + name);
    for (const auto& s : j.at(name)) {
      int i = ctx.index(parse(s.get<std::string>(), ctx.env()));
      if (i < 0) throw InputError("saved result names a sentence outside the universe: " + s.get<std::string>());
      v.at[p].set(static_cast<std::size_t>(i));
    }
  }
  return v;
}

const char* status_name(const FixedPointResult& r) { return r.ok() ? "fixed-point" : "collapse"; }

// Membership of each named sentence and its negation at the final valuation.
json named_summary(const TruthContext& ctx, const FixedPointResult& r) {
  json j = json::object();
  SentenceEnv& env = ctx.env();
  for (auto slot : env.named_slots()) {
    FormulaId f = env.slot_formula(slot);
    json per = json::object();
    for (std::uint32_t p = 0; p < ctx.points(); ++p) {
      int i = ctx.index(f);
      int n = i >= 0 ? ctx.neg_index(static_cast<std::size_t>(i)) : -1;
      json e;
      e["in_f"] = i >= 0 && r.g.at[p].test(static_cast<std::size_t>(i));
      e["negation_in_f"] = n >= 0 && r.g.at[p].test(static_cast<std::size_t>(n));
      if (r.ok()) e["value"] = to_string(value_at_fixpoint(ctx, r, p, f));
      per[ctx.structure().point_name(p)] = e;
    }
    j[*env.slot_name(slot)] = per;
  }
  return j;
}

json result_record(const TruthContext& ctx, const FixedPointResult& r, bool trace) {
  json j;
  j["condition"] = to_string(r.cond);
  j["status"] = status_name(r);
  if (!r.ok()) {
    j["reason"] = r.reason;
    j["collapse_stage"] = r.collapse_stage;
  }
  j["universe_size"] = ctx.size();
  j["start_set_size"] = r.start_set_size;
  json stages = json::array();
  for (auto& s : r.trace) {
    json e;
    e["stage"] = s.stage;
    json sizes = json::object();
    for (std::uint32_t p = 0; p < s.sizes.size(); ++p) sizes[ctx.structure().point_name(p)] = s.sizes[p];
    e["theta_sizes"] = sizes;
    e["pool"] = s.pool;
    stages.push_back(e);
  }
  j["stages"] = stages;
  j["analysis"] = r.analysis;
  j["named"] = named_summary(ctx, r);
  j["least"] = sets(ctx, r.start);
  j["g"] = sets(ctx, r.g);
  j["Z"] = r.Z;
  if (trace) {
    json vs = json::array();
    for (auto& v : r.stages) vs.push_back(sets(ctx, v));
    j["stage_valuations"] = vs;
  }
  return j;
}

FixedPointResult result_back(const TruthContext& ctx, const json& j) {
  FixedPointResult r;
  r.cond = parse_admissibility(j.at("condition").get<std::string>());
  r.status = j.at("status") == "fixed-point" ? FixedPointResult::FixedPoint : FixedPointResult::Collapse;
  if (!r.ok()) {
    r.reason = j.at("reason").get<std::string>();
    r.collapse_stage = j.at("collapse_stage").get<std::size_t>();
  }
  r.start = sets_back(ctx, j.at("least"));
  r.g = sets_back(ctx, j.at("g"));
  r.Z = j.at("Z").get<std::vector<std::size_t>>();
  r.start_set_size = ctx.start_set().size();
  if (j.at("start_set_size").get<std::size_t>() != r.start_set_size)
    throw InputError("saved result was computed over a different start set");
  for (auto k : r.Z)
    if (k >= r.start_set_size) throw InputError("saved result has a pool index out of range");
  return r;
}

// The fixed point to diagnose: reloaded from --result or recomputed.
FixedPointResult obtain(const CommandOptions& o, Session& s) {
  if (o.result) {
    std::ifstream in(*o.result);
    if (!in) throw InputError("cannot open " + *o.result);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InputError(std::string("saved result is not a record: ") + e.what());
    }
    const json& body = j.contains("result") ? j.at("result") : j;
    FixedPointResult r = result_back(*s.ctx, body);
    if (o.cond && parse_admissibility(*o.cond) != r.cond) throw InputError("--cond disagrees with the saved result");
    return r;
  }
  Admissibility e = condition(o, s.model);
  return o.modal ? modal_fixed_point(*s.ctx, e) : iterate_fixed_point(*s.ctx, e);
}

FormulaId parse_closed(SentenceEnv& env, const std::string& text) {
  FormulaId f = parse(text, env);
  if (!env.closed(f)) throw InputError("not a sentence: " + text);
  return f;
}

std::uint32_t find_interp(const SupervaluationStructure& s, const std::string& name) {
  for (std::uint32_t j = 0; j < s.X.size(); ++j)
    if (s.X[j].name == name) return j;
  throw InputError("unknown interpretation " + name);
}

std::uint32_t find_world(const SupervaluationStructure& s, const std::string& name) {
  if (!s.frame) throw InputError("no frame loaded");
  for (std::uint32_t w = 0; w < s.frame->size(); ++w)
    if (s.frame->worlds[w] == name) return w;
  throw InputError("unknown world " + name);
}

// Points selected by --world / --interp (all when absent).
std::vector<std::uint32_t> selected_points(const CommandOptions& o, const SupervaluationStructure& s) {
  std::vector<std::uint32_t> out;
  std::optional<std::uint32_t> w, j;
  if (o.world) w = find_world(s, *o.world);
  if (o.interp) j = find_interp(s, *o.interp);
  for (std::uint32_t p = 0; p < s.point_count(); ++p)
    if ((!w || s.point_world(p) == *w) && (!j || s.point_interp(p) == *j)) out.push_back(p);
  return out;
}

int cmd_validate(const CommandOptions& o, json& rep) {
  Model m = load_model(o.model);
  rep = header(o, &m);
  auto r = validate_structure(*m.env, m.structure);
  if (m.structure.frame) {
    auto f = validate_frame(*m.structure.frame);
    r.violations.insert(r.violations.end(), f.violations.begin(), f.violations.end());
  }
  rep["verdict"] = r.ok() ? "valid" : "invalid";
  rep["violations"] = r.violations;
  if (r.ok()) {
    auto u = build_universe(*m.env, m.seeds, o.depth.value_or(m.depth), m.cap);
    rep["universe_size"] = u.size();
  }
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_eval(const CommandOptions& o, json& rep, bool modal) {
  if (o.args.size() != 1) throw InputError(o.command + " expects one formula");
  Session s;
  open_session(s, o);
  rep = header(o, &s.model);
  const auto& st = s.model.structure;
  if (modal && !st.frame) throw InputError("modal-eval needs a model with a frame");
  FormulaId f = parse_closed(*s.model.env, o.args[0]);
  rep["formula"] = print(*s.model.env, f);
  std::optional<FixedPointResult> r;
  if (o.cond) {
    r = iterate_fixed_point(*s.ctx, parse_admissibility(*o.cond));
    rep["condition"] = *o.cond;
    rep["status"] = status_name(*r);
    if (!r->ok()) return kCollapse;
  }
  json vals = json::object();
  for (auto p : selected_points(o, st)) {
    TruthValue v = r ? value_at_fixpoint(*s.ctx, *r, p, f)
                     : eval_modal(*s.model.env, st, st.point_world(p), st.point_interp(p), {}, f);
    vals[st.point_name(p)] = to_string(v);
  }
  rep["values"] = vals;
  return kOk;
}

int cmd_prove(const CommandOptions& o, json& rep) {
  std::optional<Model> m;
  auto env_holder = std::make_unique<SentenceEnv>();
  SentenceEnv* env = env_holder.get();
  if (!o.model.empty()) {
    m = load_model(o.model);
    env = m->env.get();
  }
  rep = header(o, m ? &*m : nullptr);
  Calculus c{parse_logic(o.logic), o.identity};
  rep["calculus"] = to_string(c.logic);
  rep["identity"] = c.identity;

  if (o.curry) {
    auto slot = env->find_sentence(*o.curry);
    if (!slot) throw InputError("unknown sentence " + *o.curry);
    c = {Logic::N3T, c.identity};
    rep["calculus"] = to_string(c.logic);
    ProofTree t = curry_derivation(*env, *slot);
    auto chk = check_proof(*env, c, t);
    rep["sequent"] = print(*env, t.sequent);
    rep["check"] = chk.ok ? "ok" : chk.reason;
    rep["tree"] = render_tree(*env, t);
    return chk.ok ? kOk : kCheckFailed;
  }

  if (o.args.size() != 1) throw InputError("prove expects one sequent");
  ParseOptions po;
  po.lenient = !m;
  Sequent goal = parse_sequent(o.args[0], *env, po);
  ProveOptions popts;
  popts.record = true;
  if (o.budget) popts.max_steps = *o.budget;
  else if (m && m->budget) popts.max_steps = *m->budget;
  auto r = prove(*env, c, goal, popts);
  rep["sequent"] = print(*env, goal);
  rep["status"] = to_string(r.status);
  rep["steps"] = r.steps;
  if (r.tree) {
    auto chk = check_proof(*env, c, *r.tree);
    rep["check"] = chk.ok ? "ok" : chk.reason;
    if (o.tree) rep["tree"] = render_tree(*env, *r.tree);
    if (!chk.ok) return kCheckFailed;
  }
  return r.proved() ? kOk : kCheckFailed;
}

int cmd_fixpoint(const CommandOptions& o, json& rep) {
  Session s;
  open_session(s, o);
  rep = header(o, &s.model);
  if (o.modal && !s.model.structure.frame) throw InputError("--modal needs a model with a frame");
  Admissibility e = condition(o, s.model);
  FixedPointResult r = o.modal ? modal_fixed_point(*s.ctx, e) : iterate_fixed_point(*s.ctx, e);
  rep["result"] = result_record(*s.ctx, r, o.trace);
  if (!r.ok()) return kCollapse;
  auto chk = verify_fixed_point(*s.ctx, r);
  rep["checks"]["theta_fixed"] = chk.theta_fixed;
  rep["checks"]["big_theta_fixed"] = chk.big_theta_fixed;
  return chk.theta_fixed && chk.big_theta_fixed ? kOk : kCheckFailed;
}

int cmd_naivety(const CommandOptions& o, json& rep) {
  Session s;
  open_session(s, o);
  rep = header(o, &s.model);
  FixedPointResult r = obtain(o, s);
  rep["condition"] = to_string(r.cond);
  rep["status"] = status_name(r);
  if (!r.ok()) return kCollapse;
  auto fails = check_naivety(*s.ctx, r);
  rep["sentences"] = s.ctx->size();
  rep["failures"] = json::array();
  for (auto& f : fails)
    rep["failures"].push_back(std::string(f.negated ? "~T / ~" : "T / ") + display(*s.model.env, f.sentence) +
                              " at " + s.model.structure.point_name(f.point));
  rep["verdict"] = fails.empty() ? "pass" : "fail";
  return fails.empty() ? kOk : kCheckFailed;
}

int cmd_principles(const CommandOptions& o, json& rep) {
  Session s;
  open_session(s, o);
  rep = header(o, &s.model);
  FixedPointResult r = obtain(o, s);
  rep["condition"] = to_string(r.cond);
  rep["status"] = status_name(r);
  if (!r.ok()) return kCollapse;
  bool ok = true;
  json list = json::array();
  for (auto& p : check_principles(*s.ctx, r)) {
    json e;
    e["label"] = std::string(1, p.label);
    e["schema"] = p.schema;
    e["asserted"] = p.asserted;
    e["instances"] = p.instances;
    e["violations"] = p.violations.size();
    if (!p.violations.empty()) e["first_violation"] = p.violations.front();
    e["verdict"] = !p.asserted ? "not asserted" : p.violations.empty() ? "pass" : "fail";
    ok = ok && (!p.asserted || p.violations.empty());
    list.push_back(e);
  }
  rep["principles"] = list;
  return ok ? kOk : kCheckFailed;
}

int cmd_dedthm(const CommandOptions& o, json& rep) {
  if (o.args.size() != 2) throw InputError("dedthm expects phi and psi");
  Session s;
  open_session(s, o);
  rep = header(o, &s.model);
  FixedPointResult r = obtain(o, s);
  rep["condition"] = to_string(r.cond);
  rep["status"] = status_name(r);
  if (!r.ok()) return kCollapse;
  SentenceEnv& env = *s.model.env;
  std::vector<FormulaId> gamma;
  for (auto& g : o.gamma) gamma.push_back(parse_closed(env, g));
  FormulaId phi = parse_closed(env, o.args[0]), psi = parse_closed(env, o.args[1]);
  auto [left, right] = deduction_theorem_check(*s.ctx, r, gamma, phi, psi);
  json g = json::array();
  for (auto f : gamma) g.push_back(print(env, f));
  rep["gamma"] = g;
  rep["phi"] = print(env, phi);
  rep["psi"] = print(env, psi);
  rep["consequence"] = left;
  rep["conditional"] = right;
  rep["verdict"] = left == right ? "agree" : "disagree";
  return left == right ? kOk : kCheckFailed;
}

void render_text(const json& j, std::ostream& out, const std::string& indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    out << indent << it.key() << ":";
    if (v.is_object()) {
      out << "\n";
      render_text(v, out, indent + "  ");
    } else if (v.is_array()) {
      bool scalars = std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_structured(); });
      if (scalars && (v.empty() || v.front().is_number())) {
        for (auto& x : v) out << " " << x.dump();
        out << "\n";
      } else if (scalars) {
        out << "\n";
        for (auto& x : v) out << indent << "  - " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
      } else {
        out << "\n";
        for (auto& x : v) {
          out << indent << "  -\n";
          render_text(x, out, indent + "    ");
        }
      }
    } else if (v.is_string()) {
      const auto& str = v.get_ref<const std::string&>();
      if (str.find('\n') == std::string::npos) {
        out << " " << str << "\n";
      } else {
        out << "\n";
        std::istringstream lines(str);
        for (std::string l; std::getline(lines, l);) out << indent << "  " << l << "\n";
      }
    } else {
      out << " " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string strip_timing(std::string_view report) {
  std::string out;
  std::size_t start = 0;
  while (start < report.size()) {
    auto end = report.find('\n', start);
    if (end == std::string_view::npos) end = report.size();
    auto line = report.substr(start, end - start);
    if (line.find("elapsed_ms") == std::string_view::npos) {
      out.append(line);
      out += '\n';
    }
    start = end + 1;
  }
  return out;
}

int run_command(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  json rep;
  int code = kOk;
  try {
    const auto& c = o.command;
    if (c == "validate") code = cmd_validate(o, rep);
    else if (c == "eval") code = cmd_eval(o, rep, false);
    else if (c == "modal-eval") code = cmd_eval(o, rep, true);
    else if (c == "prove") code = cmd_prove(o, rep);
    else if (c == "fixpoint") code = cmd_fixpoint(o, rep);
    else if (c == "naivety") code = cmd_naivety(o, rep);
    else if (c == "principles") code = cmd_principles(o, rep);
    else if (c == "dedthm") code = cmd_dedthm(o, rep);
    else throw InputError("unknown command " + c);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kInputError;
  } catch (const UniverseCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const YCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  rep["exit"] = code;
  rep["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (o.format == Format::Record) out << rep.dump(2) << "\n";
  else render_text(rep, out, "");
  return code;
}

}  // namespace sks
