#include <cctype>

#include "sks/syntax.hpp"

namespace sks {

namespace {

enum class Tok {
  End, Ident, LParen, RParen, Comma, Tilde, Amp, Bar, Arrow, Iff, Strict, Cop,
  Box, Eq, Neq, Quote, LBrace, RBrace
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::size_t p = i_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", p});
        return out;
      }
      char c = s_[i_];
      auto two = [&](char n) { return i_ + 1 < s_.size() && s_[i_ + 1] == n; };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
        out.push_back({Tok::Ident, std::string(s_.substr(i_, j - i_)), p});
        i_ = j;
        continue;
      }
      switch (c) {
        case '(': out.push_back({Tok::LParen, "(", p}); ++i_; continue;
        case ')': out.push_back({Tok::RParen, ")", p}); ++i_; continue;
        case ',': out.push_back({Tok::Comma, ",", p}); ++i_; continue;
        case '{': out.push_back({Tok::LBrace, "{", p}); ++i_; continue;
        case '}': out.push_back({Tok::RBrace, "}", p}); ++i_; continue;
        case '&': out.push_back({Tok::Amp, "&", p}); ++i_; continue;
        case '|': out.push_back({Tok::Bar, "|", p}); ++i_; continue;
        case '~':
          if (two('>')) { out.push_back({Tok::Cop, "~>", p}); i_ += 2; }
          else { out.push_back({Tok::Tilde, "~", p}); ++i_; }
          continue;
        case '-':
          if (two('>')) { out.push_back({Tok::Arrow, "->", p}); i_ += 2; continue; }
          break;
        case '<':
          if (i_ + 2 < s_.size() && s_[i_ + 1] == '-' && s_[i_ + 2] == '>') {
            out.push_back({Tok::Iff, "<->", p});
            i_ += 3;
            continue;
          }
          break;
        case '>':
          if (two('>')) { out.push_back({Tok::Strict, ">>", p}); i_ += 2; continue; }
          break;
        case '[':
          if (two(']')) { out.push_back({Tok::Box, "[]", p}); i_ += 2; continue; }
          break;
        case '=':
          if (two('>')) throw SyntaxError("'=>' is reserved", p);
          out.push_back({Tok::Eq, "=", p});
          ++i_;
          continue;
        case '!':
          if (two('=')) { out.push_back({Tok::Neq, "!=", p}); i_ += 2; continue; }
          break;
        case '\'': {
          std::size_t j = s_.find('\'', i_ + 1);
          if (j == std::string_view::npos) throw SyntaxError("unterminated quote", p);
          out.push_back({Tok::Quote, std::string(s_.substr(i_ + 1, j - i_ - 1)), p});
          i_ = j + 1;
          continue;
        }
        default:
          break;
      }
      throw SyntaxError(std::string("unexpected character '") + c + "'", p);
    }
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, SentenceEnv& env, const ParseOptions& opts)
      : toks_(Lexer(text).run()), env_(env), opts_(opts) {}

  FormulaId formula_all() {
    auto f = implication();
    expect(Tok::End, "end of input");
    return f;
  }

  TermId term_all() {
    auto t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(i_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw SyntaxError(std::string("expected ") + what + ", found '" + peek().text + "'", peek().pos);
    return next();
  }

  FormulaId implication() {
    auto lhs = disjunction();
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Arrow: next(); return env_.cond(lhs, implication());
      case Tok::Iff: next(); return env_.iff(lhs, implication());
      case Tok::Strict:
        modal_guard(t);
        next();
        return env_.strict(lhs, implication());
      case Tok::Cop:
        modal_guard(t);
        next();
        return env_.cop(lhs, implication());
      default: return lhs;
    }
  }

  FormulaId disjunction() {
    auto f = conjunction();
    while (accept(Tok::Bar)) f = env_.disj(f, conjunction());
    return f;
  }

  FormulaId conjunction() {
    auto f = unary();
    while (accept(Tok::Amp)) f = env_.conj(f, unary());
    return f;
  }

  void modal_guard(const Token& t) {
    if (!opts_.modal) throw SyntaxError("modal connective '" + t.text + "' not enabled", t.pos);
  }

  FormulaId unary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      next();
      return env_.neg(unary());
    }
    if (t.kind == Tok::Box) {
      modal_guard(t);
      next();
      return env_.box(unary());
    }
    if (t.kind == Tok::Ident && (t.text == "A" || t.text == "E") && peek(1).kind == Tok::Ident) {
      bool universal = t.text == "A";
      next();
      const Token& v = next();
      auto var = env_.variable(v.text);
      bound_.push_back(v.text);
      auto body = unary();
      bound_.pop_back();
      return universal ? env_.forall(var, body) : env_.exists(var, body);
    }
    return primary();
  }

  bool is_bound(const std::string& name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  FormulaId primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      auto f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "false") { next(); return env_.falsum(); }
      if (t.text == "true") { next(); return env_.verum(); }
      if (t.text == "T" && peek(1).kind == Tok::LParen) {
        next();
        next();
        auto arg = term();
        expect(Tok::RParen, "')'");
        return env_.truth(arg);
      }
      if (!is_bound(t.text)) {
        if (auto p = env_.find_predicate(t.text)) return atom(*p);
        if (auto s = env_.find_sentence(t.text)) {
          auto f = env_.slot_formula(*s);
          if (f == kNone) throw SyntaxError("sentence '" + t.text + "' used before its definition", t.pos);
          next();
          return f;
        }
        bool term_like = env_.find_constant(t.text) || env_.find_function(t.text);
        if (!term_like) {
          if (!opts_.lenient) throw SyntaxError("unknown predicate or sentence '" + t.text + "'", t.pos);
          // Lenient mode: an unknown name is a predicate unless an identity follows.
          if (!looks_like_identity()) {
            unsigned arity = 0;
            if (peek(1).kind == Tok::LParen) arity = count_args(i_ + 1);
            return atom(env_.declare_predicate(t.text, arity));
          }
        }
      }
    }
    if (t.kind == Tok::Ident || t.kind == Tok::Quote || t.kind == Tok::LBrace) {
      auto lhs = term();
      const Token& op = peek();
      if (op.kind == Tok::Eq) {
        next();
        return env_.ident(lhs, term());
      }
      if (op.kind == Tok::Neq) {
        next();
        return env_.neg(env_.ident(lhs, term()));
      }
      throw SyntaxError("expected '=' or '!=' after term", op.pos);
    }
    throw SyntaxError("expected a formula, found '" + t.text + "'", t.pos);
  }

  // Scan ahead over a (possibly applied) identifier to see whether '=' follows.
  bool looks_like_identity() const {
    std::size_t j = i_ + 1;
    if (j < toks_.size() && toks_[j].kind == Tok::LParen) {
      int depth = 0;
      for (; j < toks_.size(); ++j) {
        if (toks_[j].kind == Tok::LParen) ++depth;
        if (toks_[j].kind == Tok::RParen && --depth == 0) {
          ++j;
          break;
        }
      }
    }
    return j < toks_.size() && (toks_[j].kind == Tok::Eq || toks_[j].kind == Tok::Neq);
  }

  unsigned count_args(std::size_t lp) const {
    int depth = 0;
    unsigned commas = 0;
    for (std::size_t j = lp; j < toks_.size(); ++j) {
      if (toks_[j].kind == Tok::LParen || toks_[j].kind == Tok::LBrace) ++depth;
      if (toks_[j].kind == Tok::RParen || toks_[j].kind == Tok::RBrace) {
        if (--depth == 0) return j == lp + 1 ? 0 : commas + 1;
      }
      if (toks_[j].kind == Tok::Comma && depth == 1) ++commas;
    }
    return commas + 1;
  }

  FormulaId atom(std::uint32_t pred) {
    const Token& name = next();
    std::vector<TermId> args;
    if (accept(Tok::LParen)) {
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (accept(Tok::Comma)) args.push_back(term());
      }
      expect(Tok::RParen, "')'");
    }
    if (args.size() != env_.predicate(pred).arity)
      throw SyntaxError("arity mismatch for predicate '" + name.text + "'", name.pos);
    return env_.atom(pred, std::move(args));
  }

  TermId term() {
    const Token& t = next();
    if (t.kind == Tok::Quote) {
      auto s = env_.find_sentence(t.text);
      if (!s) throw SyntaxError("unknown sentence name '" + t.text + "'", t.pos);
      return env_.quote(*s);
    }
    if (t.kind == Tok::LBrace) {
      auto saved = std::move(bound_);
      bound_.clear();
      auto f = implication();
      bound_ = std::move(saved);
      expect(Tok::RBrace, "'}'");
      if (!env_.closed(f)) throw SyntaxError("quoted formula is not a sentence", t.pos);
      return env_.quote_of(f);
    }
    if (t.kind != Tok::Ident) throw SyntaxError("expected a term, found '" + t.text + "'", t.pos);
    if (is_bound(t.text)) return env_.var(env_.variable(t.text));
    if (auto f = env_.find_function(t.text)) {
      expect(Tok::LParen, "'(' after function symbol");
      std::vector<TermId> args;
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "')'");
      if (args.size() != env_.function(*f).arity)
        throw SyntaxError("arity mismatch for function '" + t.text + "'", t.pos);
      return env_.func(*f, std::move(args));
    }
    if (auto c = env_.find_constant(t.text)) return env_.constant(*c);
    if (opts_.lenient && peek().kind != Tok::LParen) return env_.constant(env_.declare_constant(t.text));
    throw SyntaxError("unknown constant '" + t.text + "'", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  SentenceEnv& env_;
  ParseOptions opts_;
  std::vector<std::string> bound_;
};

}  // namespace

FormulaId parse(std::string_view text, SentenceEnv& env, const ParseOptions& opts) {
  try {
    return Parser(text, env, opts).formula_all();
  } catch (const InputError& e) {
    throw SyntaxError(e.what(), 0);
  }
}

TermId parse_term(std::string_view text, SentenceEnv& env, const ParseOptions& opts) {
  return Parser(text, env, opts).term_all();
}

}  // namespace sks
