#include <algorithm>

#include "sks/proof.hpp"

namespace sks {

namespace {
void normalize(std::vector<FormulaId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Split at top-level commas (outside parens and braces).
std::vector<std::string> split_top(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  bool quote = false;
  std::string cur;
  for (char ch : s) {
    if (ch == '\'') quote = !quote;
    if (!quote) {
      if (ch == '(' || ch == '{') ++depth;
      if (ch == ')' || ch == '}') --depth;
      if (ch == ',' && depth == 0) {
        out.push_back(cur);
        cur.clear();
        continue;
      }
    }
    cur += ch;
  }
  out.push_back(cur);
  std::vector<std::string> trimmed;
  for (auto& p : out) {
    auto b = p.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = p.find_last_not_of(" \t");
    trimmed.push_back(p.substr(b, e - b + 1));
  }
  return trimmed;
}
}  // namespace

Sequent Sequent::of(std::vector<FormulaId> l, std::vector<FormulaId> r) {
  normalize(l);
  normalize(r);
  return {std::move(l), std::move(r)};
}

bool Sequent::in_left(FormulaId f) const { return std::binary_search(left.begin(), left.end(), f); }
bool Sequent::in_right(FormulaId f) const { return std::binary_search(right.begin(), right.end(), f); }

std::size_t SequentHash::operator()(const Sequent& s) const {
  std::size_t h = 1469598103934665603ull;
  for (auto f : s.left) h = (h ^ f) * 1099511628211ull;
  h = (h ^ 0xabcdefu) * 1099511628211ull;
  for (auto f : s.right) h = (h ^ f) * 1099511628211ull;
  return h;
}

std::string print(const SentenceEnv& env, const Sequent& s) {
  auto side = [&](const std::vector<FormulaId>& v) {
    std::vector<std::string> parts;
    for (auto f : v) parts.push_back(print(env, f));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    return out;
  };
  std::string l = side(s.left), r = side(s.right);
  return l + (l.empty() ? "" : " ") + "=>" + (r.empty() ? "" : " ") + r;
}

Sequent parse_sequent(std::string_view text, SentenceEnv& env, const ParseOptions& opts) {
  auto pos = text.find("=>");
  if (pos == std::string_view::npos) throw SyntaxError("sequent needs '=>'", 0);
  std::vector<FormulaId> l, r;
  for (auto& part : split_top(text.substr(0, pos))) l.push_back(parse(part, env, opts));
  for (auto& part : split_top(text.substr(pos + 2))) r.push_back(parse(part, env, opts));
  for (auto f : l)
    if (!env.closed(f)) throw SyntaxError("sequent formulas must be sentences", 0);
  for (auto f : r)
    if (!env.closed(f)) throw SyntaxError("sequent formulas must be sentences", 0);
  return Sequent::of(std::move(l), std::move(r));
}

const char* to_string(Logic l) {
  switch (l) {
    case Logic::K3: return "k3";
    case Logic::N3: return "n3";
    case Logic::K3T: return "k3t";
    case Logic::N3T: return "n3t";
  }
  return "?";
}

Logic parse_logic(std::string_view name) {
  if (name == "k3") return Logic::K3;
  if (name == "n3") return Logic::N3;
  if (name == "k3t") return Logic::K3T;
  if (name == "n3t") return Logic::N3T;
  throw InputError("unknown calculus '" + std::string(name) + "'");
}

const char* to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::Proved: return "proved";
    case ProofStatus::Refuted: return "not-proved";
    default: return "indeterminate";
  }
}

bool is_atomic(const SentenceEnv& env, const Calculus& c, FormulaId f) {
  switch (env.node(f).op) {
    case Op::Ident:
    case Op::Atom:
    case Op::Truth:
    case Op::Falsum:
    case Op::Box:
    case Op::Cop:
      return true;
    case Op::Cond:
      return !c.conditional_rules();
    default:
      return false;
  }
}

bool is_literal(const SentenceEnv& env, const Calculus& c, FormulaId f) {
  if (is_atomic(env, c, f)) return true;
  const FormulaNode& n = env.node(f);
  return n.op == Op::Neg && is_atomic(env, c, n.a);
}

std::size_t ProofTree::size() const {
  std::size_t s = 1;
  for (auto& p : premises) s += p.size();
  return s;
}

std::string render_tree(const SentenceEnv& env, const ProofTree& tree) {
  std::string out;
  auto walk = [&](auto&& self, const ProofTree& t, int depth) -> void {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
    out += print(env, t.sequent) + "   [" + t.rule;
    if (t.principal != kNone) out += ": " + print(env, t.principal);
    out += "]";
    if (!t.note.empty()) out += "  " + t.note;
    out += "\n";
    for (auto& p : t.premises) self(self, p, depth + 1);
  };
  walk(walk, tree, 0);
  return out;
}

}  // namespace sks
