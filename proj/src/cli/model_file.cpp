#include <fstream>
#include <sstream>

#include "sks/cli.hpp"

namespace sks {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// "name/arity"
std::pair<std::string, unsigned> symbol(const std::string& w) {
  auto slash = w.find('/');
  if (slash == std::string::npos) return {w, 0};
  return {w.substr(0, slash), static_cast<unsigned>(std::stoul(w.substr(slash + 1)))};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

class ModelParser {
 public:
  ModelParser(Model& m) : m_(m), env_(*m.env) {}

  void line(std::size_t no, std::string_view raw) {
    no_ = no;
    std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) return;
    auto w = words(text);
    const std::string& key = w[0];
    auto rest = [&] { return trim(std::string_view(text).substr(key.size())); };

    if (key == "domain") {
      need(m_.structure.domain.empty() && m_.structure.X.empty(), "domain must come first and once");
      for (std::size_t i = 1; i < w.size(); ++i) m_.structure.domain.push_back(w[i]);
    } else if (key == "constant") {
      need(w.size() == 4 && w[2] == "=", "expected 'constant c = element'");
      need(m_.structure.X.empty(), "declare constants before interpretations");
      env_.declare_constant(w[1]);
      constants_.push_back(elem(w[3]));
    } else if (key == "predicate") {
      need(w.size() == 2, "expected 'predicate P/arity'");
      need(m_.structure.X.empty(), "declare predicates before interpretations");
      auto [name, arity] = symbol(w[1]);
      env_.declare_predicate(name, arity);
    } else if (key == "function") {
      need(w.size() >= 2, "expected 'function f/arity args:value ...'");
      need(m_.structure.X.empty(), "declare functions before interpretations");
      auto [name, arity] = symbol(w[1]);
      need(arity > 0, "functions take at least one argument");
      env_.declare_function(name, arity);
      std::map<Tuple, Elem> table;
      for (std::size_t i = 2; i < w.size(); ++i) {
        auto colon = w[i].find(':');
        need(colon != std::string::npos, "function entry must read args:value");
        Tuple args;
        for (auto& a : split(w[i].substr(0, colon), ',')) args.push_back(elem(a));
        need(args.size() == arity, "function entry has the wrong arity");
        table[args] = elem(w[i].substr(colon + 1));
      }
      functions_.push_back(std::move(table));
    } else if (key == "worlds") {
      need(m_.structure.X.empty() && !m_.structure.frame, "worlds must precede interpretations");
      need(w.size() >= 2, "expected at least one world");
      Frame f;
      for (std::size_t i = 1; i < w.size(); ++i) f.worlds.push_back(w[i]);
      f.R.assign(f.size(), {});
      f.rank.assign(f.size(), std::vector<int>(f.size(), -1));
      m_.structure.frame = std::move(f);
    } else if (key == "R") {
      need(w.size() == 3, "expected 'R w v'");
      frame().R[world(w[1])].push_back(world(w[2]));
    } else if (key == "rank") {
      need(w.size() >= 2, "expected 'rank w v=n ...'");
      auto& row = frame().rank[world(w[1])];
      for (std::size_t i = 2; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        need(eq != std::string::npos, "rank entry must read world=n");
        int r = std::stoi(w[i].substr(eq + 1));
        need(r >= 0, "ranks are natural numbers");
        row[world(w[i].substr(0, eq))] = r;
      }
    } else if (key == "interp") {
      need(w.size() == 2, "expected 'interp name'");
      for (auto& I : m_.structure.X) need(I.name != w[1], "duplicate interpretation " + w[1]);
      PartialInterpretation I;
      I.name = w[1];
      I.constants = constants_;
      I.functions = functions_;
      I.preds.assign(m_.structure.world_count(), std::vector<Extension>(env_.predicate_count()));
      m_.structure.X.push_back(std::move(I));
      world_ = 0;
    } else if (key == "world") {
      need(w.size() == 2, "expected 'world w'");
      need(!m_.structure.X.empty(), "'world' belongs inside an interpretation");
      world_ = world(w[1]);
    } else if (key == "pos" || key == "neg") {
      need(w.size() >= 2, "expected a predicate");
      need(!m_.structure.X.empty(), "'" + key + "' belongs inside an interpretation");
      auto p = env_.find_predicate(w[1]);
      need(p.has_value(), "unknown predicate " + w[1]);
      need(*p != env_.sent_predicate(), "Sent is fixed by the syntax");
      Tuple t;
      for (std::size_t i = 2; i < w.size(); ++i) t.push_back(elem(w[i]));
      need(t.size() == env_.predicate(*p).arity, "wrong number of arguments for " + w[1]);
      auto& ext = m_.structure.X.back().preds[world_][*p];
      (key == "pos" ? ext.pos : ext.neg).insert(t);
    } else if (key == "h") {
      need(w.size() == 3, "expected 'h I J'");
      m_.structure.H.emplace_back(interp(w[1]), interp(w[2]));
    } else if (key == "sentence") {
      auto def = rest();
      auto assign = def.find(":=");
      need(assign != std::string::npos, "expected 'sentence name := formula'");
      std::string name = trim(def.substr(0, assign));
      need(!name.empty(), "sentence needs a name");
      std::uint32_t slot = env_.declare_sentence(name);
      FormulaId body = formula(def.substr(assign + 2));
      env_.define_sentence(slot, body);
      named_.push_back(body);
    } else if (key == "seed") {
      seeds_.push_back(formula(rest()));
    } else if (key == "depth") {
      m_.depth = static_cast<unsigned>(number(w));
    } else if (key == "cap") {
      m_.cap = number(w);
    } else if (key == "ycap") {
      m_.y_cap = number(w);
    } else if (key == "budget") {
      m_.budget = number(w);
    } else if (key == "cond") {
      need(w.size() == 2, "expected 'cond name'");
      m_.cond = parse_admissibility(w[1]);
    } else {
      fail("unknown keyword '" + key + "'");
    }
  }

  void finish() {
    auto& s = m_.structure;
    need(!s.X.empty(), "no interpretations");
    // H is reflexive; listing the identity pairs is optional.
    for (std::uint32_t j = 0; j < s.X.size(); ++j) s.H.emplace_back(j, j);
    std::sort(s.H.begin(), s.H.end());
    s.H.erase(std::unique(s.H.begin(), s.H.end()), s.H.end());
    s.finalize();
    m_.seeds = named_;
    m_.seeds.insert(m_.seeds.end(), seeds_.begin(), seeds_.end());
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(m_.origin + ":" + std::to_string(no_) + ": " + msg);
  }
  void need(bool ok, const std::string& msg) const {
    if (!ok) fail(msg);
  }
  std::size_t number(const std::vector<std::string>& w) const {
    need(w.size() == 2, "expected one number after '" + w[0] + "'");
    try {
      return std::stoul(w[1]);
    } catch (const std::exception&) {
      fail("not a number: " + w[1]);
    }
  }
  Elem elem(const std::string& name) const {
    const auto& d = m_.structure.domain;
    for (Elem e = 0; e < d.size(); ++e)
      if (d[e] == name) return e;
    fail("unknown domain element " + name);
  }
  Frame& frame() {
    need(m_.structure.frame.has_value(), "no 'worlds' line");
    return *m_.structure.frame;
  }
  std::uint32_t world(const std::string& name) {
    auto& ws = frame().worlds;
    for (std::uint32_t i = 0; i < ws.size(); ++i)
      if (ws[i] == name) return i;
    fail("unknown world " + name);
  }
  std::uint32_t interp(const std::string& name) const {
    const auto& X = m_.structure.X;
    for (std::uint32_t i = 0; i < X.size(); ++i)
      if (X[i].name == name) return i;
    fail("unknown interpretation " + name);
  }
  FormulaId formula(std::string_view text) {
    try {
      FormulaId f = parse(text, env_);
      need(env_.closed(f), "formula is not a sentence");
      return f;
    } catch (const SyntaxError& e) {
      fail(e.what());
    }
  }

  Model& m_;
  SentenceEnv& env_;
  std::size_t no_ = 0;
  std::uint32_t world_ = 0;
  std::vector<Elem> constants_;
  std::vector<std::map<Tuple, Elem>> functions_;
  std::vector<FormulaId> named_, seeds_;
};

}  // namespace

Model parse_model(std::string_view text, const std::string& origin) {
  Model m;
  m.origin = origin;
  m.digest = fnv1a_hex(text);
  ModelParser p(m);
  std::size_t no = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    p.line(++no, text.substr(start, end - start));
    start = end + 1;
  }
  p.finish();
  return m;
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path);
}

}  // namespace sks
