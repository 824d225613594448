#include "sks/syntax.hpp"

namespace sks {

namespace {

// Precedence levels: 0 conditionals, 1 disjunction, 2 conjunction, 3 unary.
class Printer {
 public:
  Printer(const SentenceEnv& env, bool names) : env_(env), names_(names) {}

  void formula(FormulaId f, int level) {
    if (names_) {
      if (auto* name = env_.sentence_name(f)) {
        out_ += *name;
        return;
      }
    }
    const FormulaNode& n = env_.node(f);
    switch (n.op) {
      case Op::Ident:
        term(n.terms[0]);
        out_ += " = ";
        term(n.terms[1]);
        return;
      case Op::Atom:
        out_ += env_.predicate(n.sym).name;
        if (!n.terms.empty()) args(n.terms);
        return;
      case Op::Truth:
        out_ += "T(";
        term(n.terms[0]);
        out_ += ")";
        return;
      case Op::Falsum:
        out_ += "false";
        return;
      case Op::Neg: {
        const FormulaNode& a = env_.node(n.a);
        if (a.op == Op::Ident && !(names_ && env_.sentence_name(n.a))) {
          term(a.terms[0]);
          out_ += " != ";
          term(a.terms[1]);
          return;
        }
        out_ += "~";
        formula(n.a, 3);
        return;
      }
      case Op::Box:
        out_ += "[]";
        formula(n.a, 3);
        return;
      case Op::Forall:
        out_ += "A ";
        out_ += env_.variable_name(n.sym);
        out_ += " ";
        formula(n.a, 3);
        return;
      case Op::And:
        open(level > 2);
        formula(n.a, 2);
        out_ += " & ";
        formula(n.b, 3);
        close(level > 2);
        return;
      case Op::Cond:
      case Op::Cop:
        open(level > 0);
        formula(n.a, 1);
        out_ += n.op == Op::Cond ? " -> " : " ~> ";
        formula(n.b, 0);
        close(level > 0);
        return;
    }
  }

  void term(TermId t) {
    const TermNode& n = env_.term(t);
    switch (n.kind) {
      case TermKind::Var:
        out_ += env_.variable_name(n.sym);
        return;
      case TermKind::Const:
        out_ += env_.constant_name(n.sym);
        return;
      case TermKind::Param:
        out_ += "?" + std::to_string(n.sym);
        return;
      case TermKind::Func:
        out_ += env_.function(n.sym).name;
        args(n.args);
        return;
      case TermKind::Quote:
        if (auto* name = env_.slot_name(n.sym)) {
          out_ += "'" + *name + "'";
        } else {
          out_ += "{";
          formula(env_.slot_formula(n.sym), 0);
          out_ += "}";
        }
        return;
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void args(const std::vector<TermId>& ts) {
    out_ += "(";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) out_ += ", ";
      term(ts[i]);
    }
    out_ += ")";
  }
  void open(bool b) {
    if (b) out_ += "(";
  }
  void close(bool b) {
    if (b) out_ += ")";
  }

  const SentenceEnv& env_;
  bool names_;
  std::string out_;
};

}  // namespace

std::string print(const SentenceEnv& env, FormulaId f) {
  Printer p(env, false);
  p.formula(f, 0);
  return p.take();
}

std::string print_term(const SentenceEnv& env, TermId t) {
  Printer p(env, false);
  p.term(t);
  return p.take();
}

std::string display(const SentenceEnv& env, FormulaId f) {
  Printer p(env, true);
  p.formula(f, 0);
  return p.take();
}

}  // namespace sks
