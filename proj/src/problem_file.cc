#include "bplan/problem_file.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "bplan/error.h"

namespace bplan {
namespace {

struct Token {
  enum Kind { kIdent, kVar, kInt, kPunct, kEnd };
  Kind kind = kEnd;
  std::string text;
  int line = 0, col = 0;
};

struct Loc {
  int line = 0, col = 0;
};

[[noreturn]] void fail_at(Loc l, const std::string& msg) {
  throw InputError(std::to_string(l.line) + ":" + std::to_string(l.col) + ": " + msg);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t k) {
    for (size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') adv(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = std::isupper(static_cast<unsigned char>(c)) ? Token::kVar : Token::kIdent;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::kInt;
    } else {
      static const char* two[] = {"..", "!=", "<=", ">="};
      t.kind = Token::kPunct;
      j = i + 1;
      for (const char* p : two)
        if (src.substr(i, 2) == p) j = i + 2;
      if (j == i + 1 && std::string_view("(){}[],.;|?:-<>=").find(c) == std::string_view::npos)
        fail_at({line, col}, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(src.substr(i, j - i));
    adv(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

void check_header(std::string_view text, const char* header) {
  size_t p = 0;
  while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  size_t e = text.find('\n', p);
  std::string first(text.substr(p, e == std::string_view::npos ? std::string_view::npos : e - p));
  while (!first.empty() && std::isspace(static_cast<unsigned char>(first.back()))) first.pop_back();
  if (first != header) throw InputError("1:1: expected header line '" + std::string(header) + "'");
}

const std::set<std::string> kFormulaOps = {"and", "or", "negation", "implies", "until", "always",
                                           "eventually", "next", "goal", "forall", "exists"};

// A declared fluent or action pattern: one value list per argument.
struct Pattern {
  std::string name;
  std::vector<std::vector<Term>> args;
};

struct Cond {
  Term lhs, rhs;
  std::string op;
};

enum class LawKind { kStatic, kDynamic, kExecutable, kInitially, kGoal };

struct RawLaw {
  LawKind kind;
  Loc loc;
  std::vector<Term> body;  // static body, dynamic pre, executable cond
  Term head;               // static head, dynamic effect, initially/goal literal
  Term action;
  std::vector<Cond> where;
};

struct RawProc {
  Loc loc;
  std::string name;
  std::vector<std::string> params;
  std::vector<std::optional<std::string>> sorts;
  ComplexAction body;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  ProblemFile run() {
    while (peek().kind != Token::kEnd) statement();
    return build();
  }

  // Entry points for parse_formula.
  Formula formula_only(const Signature& sig) {
    Formula f = formula();
    if (peek().kind != Token::kEnd) fail("unexpected '" + peek().text + "'");
    sig_ = sig;
    check_formula(f, loc());
    if (f.is_closed()) check_ground_literals(f, loc());
    return f;
  }

  // Plan files share the lexer.
  PlanFile plan(const Signature& sig) {
    PlanFile pf;
    std::optional<State> pending;
    bool have_state = false;
    while (peek().kind != Token::kEnd) {
      Token kw = next();
      if (kw.text == "state") {
        if (have_state) fail_at({kw.line, kw.col}, "two states in a row");
        State s(sig.num_fluents());
        if (!is_punct(".")) {
          do {
            Loc l = loc();
            Term t = literal_term_parse();
            try {
              s.insert(resolve_literal(sig, t));
            } catch (const InputError& e) {
              fail_at(l, e.what());
            }
          } while (accept(","));
        }
        expect(".");
        pending = s;
        have_state = true;
      } else if (kw.text == "action") {
        Loc l = loc();
        Term a = term();
        expect(".");
        int idx = sig.action_index(a);
        if (idx < 0) fail_at(l, "unknown action " + a.str());
        pf.states.push_back(pending);
        pf.actions.push_back(idx);
        pending.reset();
        have_state = false;
      } else {
        fail_at({kw.line, kw.col}, "unknown keyword '" + kw.text + "'");
      }
    }
    pf.states.push_back(pending);
    return pf;
  }

 private:
  // token helpers
  const Token& peek(size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  Token next() { return t_[p_ < t_.size() - 1 ? p_++ : p_]; }
  Loc loc() const { return {peek().line, peek().col}; }
  [[noreturn]] void fail(const std::string& m) const { fail_at(loc(), m); }
  bool is_punct(const char* s, size_t k = 0) const {
    return peek(k).kind == Token::kPunct && peek(k).text == s;
  }
  bool is_word(const char* s) const { return peek().kind == Token::kIdent && peek().text == s; }
  bool accept(const char* s) {
    if (!is_punct(s)) return false;
    ++p_;
    return true;
  }
  void expect(const char* s) {
    if (!accept(s))
      fail("expected '" + std::string(s) + "' but found '" +
           (peek().kind == Token::kEnd ? std::string("end of input") : peek().text) + "'");
  }
  void expect_word(const char* s) {
    if (!is_word(s)) fail("expected '" + std::string(s) + "'");
    ++p_;
  }
  std::string ident() {
    if (peek().kind != Token::kIdent) fail("expected a name");
    return next().text;
  }

  Term term() {
    const Token& tk = peek();
    if (tk.kind == Token::kVar) return Term::variable(next().text);
    if (tk.kind == Token::kInt) return Term::constant(next().text);
    if (tk.kind != Token::kIdent) fail("expected a term");
    std::string f = next().text;
    if (!accept("(")) return Term::constant(f);
    std::vector<Term> args;
    do args.push_back(term());
    while (accept(","));
    expect(")");
    return Term::compound(f, std::move(args));
  }

  Term literal_term_parse() {
    if (accept("-")) return Term::negated(term());
    return term();
  }

  std::vector<Term> literal_set() {
    expect("{");
    std::vector<Term> out;
    if (!is_punct("}")) {
      do out.push_back(literal_term_parse());
      while (accept(","));
    }
    expect("}");
    return out;
  }

  // {a, b, 0..3} or a sort name
  std::vector<Term> domain() {
    if (peek().kind == Token::kIdent && !is_punct("(", 1)) {
      Loc l = loc();
      std::string s = next().text;
      auto it = sorts_.find(s);
      if (it == sorts_.end()) fail_at(l, "unknown sort " + s);
      return it->second;
    }
    expect("{");
    std::vector<Term> out;
    if (!is_punct("}")) {
      do {
        Loc l = loc();
        Term a = term();
        if (accept("..")) {
          Term b = term();
          if (!a.is_integer() || !b.is_integer()) fail_at(l, "range bounds must be integers");
          for (long v = a.as_integer(); v <= b.as_integer(); ++v) out.push_back(Term::integer(v));
        } else {
          if (!a.is_ground()) fail_at(l, "domain values must be constants");
          out.push_back(a);
        }
      } while (accept(","));
    }
    expect("}");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Formula formula() {
    Loc l = loc();
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    if (accept("-")) return Formula::literal(Term::negated(term()));
    if (peek().kind == Token::kIdent && kFormulaOps.count(peek().text) && is_punct("(", 1)) {
      std::string op = next().text;
      expect("(");
      Formula f;
      if (op == "forall" || op == "exists") {
        if (peek().kind != Token::kVar) fail("expected a variable");
        std::string v = next().text;
        expect(",");
        auto dom = domain();
        expect(",");
        Formula body = formula();
        f = Formula::quantifier(op == "forall" ? Formula::Kind::kForall : Formula::Kind::kExists, v,
                                dom, body);
      } else {
        std::vector<Formula> args;
        do args.push_back(formula());
        while (accept(","));
        auto arity = [&](size_t k) {
          if (args.size() != k)
            fail_at(l, op + " takes " + std::to_string(k) + " argument" + (k > 1 ? "s" : ""));
        };
        using FK = Formula::Kind;
        if (op == "and" || op == "or") {
          if (args.size() < 2) fail_at(l, op + " needs at least two arguments");
          f = args.back();
          for (size_t i = args.size() - 1; i-- > 0;)
            f = Formula::binary(op == "and" ? FK::kAnd : FK::kOr, args[i], f);
        } else if (op == "implies") {
          arity(2);
          f = Formula::implies(args[0], args[1]);
        } else if (op == "until") {
          arity(2);
          f = Formula::binary(FK::kUntil, args[0], args[1]);
        } else {
          arity(1);
          FK k = op == "negation" ? FK::kNegation
                 : op == "always" ? FK::kAlways
                 : op == "eventually" ? FK::kEventually
                 : op == "next" ? FK::kNext
                                : FK::kGoal;
          if (k == FK::kGoal && args[0].kind() != FK::kLiteral)
            fail_at(l, "goal takes a fluent literal");
          try {
            f = Formula::unary(k, args[0]);
          } catch (const InputError& e) {
            fail_at(l, e.what());
          }
        }
      }
      expect(")");
      return f;
    }
    return Formula::literal(term());
  }

  // programs
  ComplexAction program() {
    std::vector<ComplexAction> alts{sequence()};
    while (accept("|")) alts.push_back(sequence());
    return alts.size() == 1 ? alts[0] : ComplexAction::choice(std::move(alts));
  }

  ComplexAction sequence() {
    ComplexAction a = unary();
    if (accept(";")) return ComplexAction::seq(a, sequence());
    return a;
  }

  ComplexAction unary() {
    Loc l = loc();
    if (accept("(")) {
      ComplexAction p = program();
      expect(")");
      return p;
    }
    if (accept("[")) {
      ComplexAction p = program();
      expect("]");
      return p;
    }
    if (accept("?")) return ComplexAction::test(formula());
    if (accept("-")) return ComplexAction::test(Formula::literal(Term::negated(term())));
    if (peek().kind == Token::kIdent && !is_punct("(", 1)) {
      const std::string& w = peek().text;
      if (w == "null") {
        ++p_;
        return ComplexAction::null();
      }
      if (w == "if") {
        ++p_;
        Formula c = formula();
        expect_word("then");
        ComplexAction a = unary();
        ComplexAction b = ComplexAction::null();
        if (is_word("else")) {
          ++p_;
          b = unary();
        }
        return ComplexAction::if_then_else(c, a, b);
      }
      if (w == "while") {
        ++p_;
        Formula c = formula();
        expect_word("do");
        return ComplexAction::while_do(c, unary());
      }
      if (w == "htn") {
        ++p_;
        return htn_block();
      }
    }
    if (is_word("pick") && is_punct("(", 1)) {
      p_ += 2;
      if (peek().kind != Token::kVar) fail("expected a variable");
      std::string v = next().text;
      expect(",");
      auto dom = domain();
      if (dom.empty()) fail_at(l, "pick over an empty domain");
      expect(",");
      ComplexAction body = program();
      expect(")");
      return ComplexAction::pick(v, dom, body);
    }
    if (peek().kind == Token::kIdent && kFormulaOps.count(peek().text) && is_punct("(", 1))
      return ComplexAction::test(formula());
    if (peek().kind != Token::kIdent) fail("expected a program");
    Term t = term();
    bare_locs_.emplace(t.str(), l);
    return ComplexAction::bare(t);
  }

  // After the keyword htn: [name] { items }
  ComplexAction htn_block() {
    HtnNode h;
    if (!is_punct("{")) h.label = term();
    expect("{");
    std::set<std::pair<std::string, std::string>> ordered;
    std::vector<std::pair<HtnConstraint, Loc>> pending_maint;
    int auto_label = 0;
    auto label = [&]() -> Term {
      size_t save = p_;
      if (peek().kind == Token::kIdent || peek().kind == Token::kInt) {
        Term t = term();
        if (accept(":")) return t;
      }
      p_ = save;
      return Term::constant("c" + std::to_string(++auto_label));
    };
    while (!accept("}")) {
      Loc l = loc();
      if (peek().kind != Token::kIdent) fail("expected task or constraint");
      std::string kw = next().text;
      if (kw == "task") {
        size_t save = p_;
        std::optional<Term> lbl;
        if (peek().kind == Token::kIdent) {
          Term t = term();
          if (accept(":"))
            lbl = t;
          else
            p_ = save;
        }
        h.tasks.push_back({lbl, program()});
      } else if (kw == "order") {
        HtnConstraint c;
        c.kind = HtnConstraint::Kind::kOrder;
        c.label = label();
        c.first = term();
        expect("<");
        c.second = term();
        ordered.insert({c.first.str(), c.second.str()});
        h.constraints.push_back(c);
      } else if (kw == "precondition") {
        HtnConstraint c;
        c.kind = HtnConstraint::Kind::kPrecondition;
        c.label = label();
        c.formula = formula();
        expect(",");
        c.first = term();
        h.constraints.push_back(c);
      } else if (kw == "postcondition") {
        HtnConstraint c;
        c.kind = HtnConstraint::Kind::kPostcondition;
        c.label = label();
        c.first = term();
        expect(",");
        c.formula = formula();
        h.constraints.push_back(c);
      } else if (kw == "maintain") {
        HtnConstraint c;
        c.kind = HtnConstraint::Kind::kMaintain;
        c.label = label();
        c.first = term();
        expect(",");
        c.formula = formula();
        expect(",");
        c.second = term();
        h.constraints.push_back(c);
        pending_maint.push_back({c, l});
      } else {
        fail_at(l, "unknown keyword '" + kw + "' in htn block");
      }
      expect(".");
    }
    // maintain between two tasks implies they are ordered
    for (const auto& [c, l] : pending_maint) {
      if (ordered.count({c.first.str(), c.second.str()})) continue;
      HtnConstraint o;
      o.kind = HtnConstraint::Kind::kOrder;
      o.label = Term::compound("ord", {c.label});
      o.first = c.first;
      o.second = c.second;
      ordered.insert({c.first.str(), c.second.str()});
      h.constraints.push_back(o);
    }
    if (h.tasks.empty()) fail("htn block without tasks");
    return ComplexAction::htn(std::move(h));
  }

  std::vector<Cond> where_clause() {
    std::vector<Cond> out;
    if (!is_word("where")) return out;
    ++p_;
    do {
      Cond c;
      c.lhs = term();
      static const char* ops[] = {"!=", "<=", ">=", "=", "<", ">"};
      bool ok = false;
      for (const char* o : ops)
        if (!ok && accept(o)) {
          c.op = o;
          ok = true;
        }
      if (!ok) fail("expected a comparison");
      c.rhs = term();
      out.push_back(c);
    } while (accept(","));
    return out;
  }

  void declaration(std::vector<Pattern>& out) {
    do {
      Loc l = loc();
      Pattern p;
      p.name = ident();
      if (accept("(")) {
        do {
          Loc al = loc();
          Term a = term();
          if (!a.is_ground() || a.arity() != 0) fail_at(al, "declaration arguments are sorts or constants");
          auto it = sorts_.find(a.str());
          p.args.push_back(it != sorts_.end() ? it->second : std::vector<Term>{a});
          if (p.args.back().empty()) fail_at(al, "empty sort " + a.str());
        } while (accept(","));
        expect(")");
      }
      if (kFormulaOps.count(p.name) || p.name == "null" || p.name == "true")
        fail_at(l, "reserved name " + p.name);
      out.push_back(std::move(p));
    } while (accept(","));
  }

  void statement() {
    Loc l = loc();
    if (peek().kind != Token::kIdent) fail("expected a statement");
    std::string kw = next().text;
    if (kw == "sort") {
      std::string name = ident();
      expect("=");
      sorts_[name] = domain();
    } else if (kw == "object") {
      do objects_.push_back(Term::constant(ident()));
      while (accept(","));
    } else if (kw == "fluent") {
      declaration(fluents_);
    } else if (kw == "action") {
      declaration(actions_);
    } else if (kw == "caused") {
      RawLaw r{LawKind::kStatic, l, {}, {}, {}, {}};
      expect("(");
      r.body = literal_set();
      expect(",");
      r.head = literal_term_parse();
      expect(")");
      r.where = where_clause();
      laws_.push_back(r);
    } else if (kw == "causes") {
      RawLaw r{LawKind::kDynamic, l, {}, {}, {}, {}};
      expect("(");
      r.action = term();
      expect(",");
      r.head = literal_term_parse();
      expect(",");
      r.body = literal_set();
      expect(")");
      r.where = where_clause();
      laws_.push_back(r);
    } else if (kw == "executable") {
      RawLaw r{LawKind::kExecutable, l, {}, {}, {}, {}};
      expect("(");
      r.action = term();
      expect(",");
      r.body = literal_set();
      expect(")");
      r.where = where_clause();
      laws_.push_back(r);
    } else if (kw == "initially" || kw == "goal") {
      RawLaw r{kw == "goal" ? LawKind::kGoal : LawKind::kInitially, l, {}, {}, {}, {}};
      expect("(");
      r.head = literal_term_parse();
      expect(")");
      r.where = where_clause();
      laws_.push_back(r);
      if (kw == "goal") has_goal_ = true;
    } else if (kw == "horizon") {
      expect("(");
      if (peek().kind != Token::kInt) fail("horizon takes a non-negative integer");
      horizon_ = std::stoul(next().text);
      expect(")");
    } else if (kw == "temporal") {
      if (temporal_) fail_at(l, "second temporal statement");
      temporal_loc_ = loc();
      temporal_ = formula();
    } else if (kw == "proc") {
      RawProc p;
      p.loc = l;
      p.name = ident();
      if (accept("(")) {
        do {
          if (peek().kind != Token::kVar) fail("procedure parameters are variables");
          p.params.push_back(next().text);
          p.sorts.push_back(accept(":") ? std::optional<std::string>(ident()) : std::nullopt);
        } while (accept(","));
        expect(")");
      }
      expect(":");
      p.body = program();
      procs_.push_back(p);
    } else if (kw == "main") {
      if (main_) fail_at(l, "second main statement");
      main_loc_ = loc();
      main_ = program();
    } else {
      fail_at(l, "unknown keyword '" + kw + "'");
    }
    expect(".");
  }

  // Signature from the declarations.
  static std::vector<Term> expand(const Pattern& p) {
    std::vector<Term> out;
    if (p.args.empty()) return {Term::constant(p.name)};
    std::vector<size_t> idx(p.args.size(), 0);
    while (true) {
      std::vector<Term> a;
      for (size_t i = 0; i < idx.size(); ++i) a.push_back(p.args[i][idx[i]]);
      out.push_back(Term::compound(p.name, a));
      size_t i = idx.size();
      while (i > 0) {
        --i;
        if (++idx[i] < p.args[i].size()) break;
        idx[i] = 0;
        if (i == 0) return out;
      }
    }
  }

  // Domains of variables from argument positions in declared patterns.
  void infer(const Term& t, std::map<std::string, std::vector<Term>>& dom) const {
    Term a = t.is_negation() ? t.args()[0] : t;
    for (const auto* pats : {&fluents_, &actions_})
      for (const auto& p : *pats) {
        if (p.name != a.functor() || p.args.size() != a.arity()) continue;
        for (size_t i = 0; i < a.arity(); ++i) {
          if (!a.args()[i].is_variable()) continue;
          const std::string& v = a.args()[i].str();
          std::vector<Term> vals = p.args[i];
          std::sort(vals.begin(), vals.end());
          auto it = dom.find(v);
          if (it == dom.end()) {
            dom[v] = vals;
          } else {
            std::vector<Term> x;
            std::set_intersection(it->second.begin(), it->second.end(), vals.begin(), vals.end(),
                                  std::back_inserter(x));
            it->second = x;
          }
        }
      }
  }

  static bool compare(const Term& a, const Term& b, const std::string& op) {
    int c;
    if (a.is_integer() && b.is_integer())
      c = a.as_integer() < b.as_integer() ? -1 : (a.as_integer() > b.as_integer() ? 1 : 0);
    else
      c = a.str() < b.str() ? -1 : (a.str() > b.str() ? 1 : 0);
    if (op == "=") return c == 0;
    if (op == "!=") return c != 0;
    if (op == "<") return c < 0;
    if (op == "<=") return c <= 0;
    if (op == ">") return c > 0;
    return c >= 0;
  }

  // Calls f for every assignment of the variables in terms.
  void ground(const std::vector<Term>& terms, const std::vector<Cond>& where,
              const std::function<void(const Subst&)>& f) const {
    std::vector<std::string> vars;
    for (const auto& t : terms) t.collect_variables(vars);
    for (const auto& c : where) {
      c.lhs.collect_variables(vars);
      c.rhs.collect_variables(vars);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::map<std::string, std::vector<Term>> dom;
    for (const auto& t : terms) infer(t, dom);
    std::vector<std::vector<Term>> values;
    for (const auto& v : vars) values.push_back(dom.count(v) ? dom[v] : all_objects_);
    Subst s;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == vars.size()) {
        for (const auto& c : where)
          if (!compare(c.lhs.substitute(s), c.rhs.substitute(s), c.op)) return;
        f(s);
        return;
      }
      for (const auto& val : values[i]) {
        s[vars[i]] = val;
        rec(i + 1);
      }
      s.erase(vars[i]);
    };
    rec(0);
  }

  ProblemFile build() {
    std::set<Term> objs(objects_.begin(), objects_.end());
    for (const auto& [_, vals] : sorts_) objs.insert(vals.begin(), vals.end());
    std::vector<Term> fl, ac;
    for (const auto& p : fluents_)
      for (auto& t : expand(p)) fl.push_back(t);
    for (const auto& p : actions_)
      for (auto& t : expand(p)) ac.push_back(t);
    for (const auto* ts : {&fl, &ac})
      for (const auto& t : *ts)
        for (const auto& a : t.args()) objs.insert(a);
    all_objects_.assign(objs.begin(), objs.end());
    std::vector<std::string> on;
    for (const auto& o : all_objects_) on.push_back(o.str());
    try {
      sig_ = Signature(on, fl, ac);
    } catch (const InputError& e) {
      throw InputError(std::string("declarations: ") + e.what());
    }

    std::vector<StaticLaw> statics;
    std::vector<DynamicLaw> dynamics;
    std::vector<ExecutableLaw> execs;
    InitialState gamma;
    std::vector<Literal> goal;
    for (const auto& r : laws_) {
      std::vector<Term> terms = r.body;
      if (r.kind != LawKind::kExecutable) terms.push_back(r.head);
      if (r.kind == LawKind::kDynamic || r.kind == LawKind::kExecutable) terms.push_back(r.action);
      bool has_vars = false;
      for (const auto& t : terms) has_vars = has_vars || !t.is_ground();
      size_t instances = 0;
      ground(terms, r.where, [&](const Subst& s) {
        auto lit = [&](const Term& t, Literal& out) {
          Term g = t.substitute(s);
          Term a = g.is_negation() ? g.args()[0] : g;
          if (sig_.fluent_index(a) < 0) {
            if (has_vars) return false;
            fail_at(r.loc, "unknown fluent " + a.str());
          }
          out = resolve_literal(sig_, g);
          return true;
        };
        std::vector<Literal> body;
        for (const auto& t : r.body) {
          Literal l;
          if (!lit(t, l)) return;
          body.push_back(l);
        }
        Literal head;
        if (r.kind != LawKind::kExecutable && !lit(r.head, head)) return;
        int act = -1;
        if (r.kind == LawKind::kDynamic || r.kind == LawKind::kExecutable) {
          Term a = r.action.substitute(s);
          act = sig_.action_index(a);
          if (act < 0) {
            if (has_vars) return;
            fail_at(r.loc, "unknown action " + a.str());
          }
        }
        ++instances;
        switch (r.kind) {
          case LawKind::kStatic: statics.push_back({body, head}); break;
          case LawKind::kDynamic: dynamics.push_back({act, head, body}); break;
          case LawKind::kExecutable: execs.push_back({act, body}); break;
          case LawKind::kInitially: gamma.push_back(head); break;
          case LawKind::kGoal: goal.push_back(head); break;
        }
      });
      if (has_vars && instances == 0) fail_at(r.loc, "statement has no well-typed instance");
    }

    ProblemFile pf;
    auto& prob = pf.problem;
    prob.domain = DomainDescription(sig_, statics, dynamics, execs);
    std::sort(gamma.begin(), gamma.end());
    gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
    prob.gamma = gamma;
    if (has_goal_) {
      std::sort(goal.begin(), goal.end());
      goal.erase(std::unique(goal.begin(), goal.end()), goal.end());
      prob.goal = goal;
    }
    pf.has_horizon = horizon_.has_value();
    prob.horizon = horizon_.value_or(0);
    pf.sorts = sorts_;
    if (temporal_ && main_) throw InputError("a problem has either a temporal formula or a main program");
    if (temporal_) {
      check_formula(*temporal_, temporal_loc_);
      if (!temporal_->is_closed())
        fail_at(temporal_loc_, "free variable " + temporal_->free_vars()[0] + " in temporal formula");
      check_ground_literals(*temporal_, temporal_loc_);
      prob.knowledge = PlanningProblem::Knowledge::kTemporal;
      prob.temporal = *temporal_;
    }
    if (main_) {
      GeneralProgram gp;
      for (const auto& rp : procs_) proc_names_.insert({rp.name, rp.params.size()});
      for (const auto& rp : procs_) {
        Procedure p;
        p.name = rp.name;
        p.params = rp.params;
        p.body = resolve(rp.body);
        std::map<std::string, std::vector<Term>> dom;
        collect_program_terms(p.body, [&](const Term& t) { infer(t, dom); });
        for (size_t i = 0; i < rp.params.size(); ++i) {
          if (rp.sorts[i]) {
            auto it = sorts_.find(*rp.sorts[i]);
            if (it == sorts_.end()) fail_at(rp.loc, "unknown sort " + *rp.sorts[i]);
            p.domains.push_back(it->second);
          } else {
            p.domains.push_back(dom.count(rp.params[i]) ? dom[rp.params[i]] : all_objects_);
          }
        }
        try {
          gp.procs.add(std::move(p));
        } catch (const InputError& e) {
          fail_at(rp.loc, e.what());
        }
      }
      gp.main = resolve(*main_);
      try {
        validate_program(sig_, gp);
      } catch (const InputError& e) {
        fail_at(main_loc_, e.what());
      }
      prob.knowledge = PlanningProblem::Knowledge::kProgram;
      prob.program = std::move(gp);
    }
    return pf;
  }

  void check_formula(const Formula& f, Loc l) const {
    if (f.kind() == Formula::Kind::kLiteral) {
      Term a = f.atom().is_negation() ? f.atom().args()[0] : f.atom();
      if (!sig_.is_fluent_name(a.functor(), a.arity())) fail_at(l, "unknown fluent " + a.str());
      return;
    }
    for (size_t i = 0; i < f.num_children(); ++i) check_formula(f.child(i), l);
  }

  // ground literals must name declared fluents, not just known functors
  void check_ground_literals(const Formula& f, Loc l) const {
    try {
      collect_formula_terms(ground_quantifiers(f), [&](const Term& t) { resolve_literal(sig_, t); });
    } catch (const InputError& e) {
      fail_at(l, e.what());
    }
  }

  void collect_formula_terms(const Formula& f, const std::function<void(const Term&)>& out) const {
    if (f.kind() == Formula::Kind::kLiteral) {
      out(f.atom());
      return;
    }
    for (size_t i = 0; i < f.num_children(); ++i) collect_formula_terms(f.child(i), out);
  }

  void collect_program_terms(const ComplexAction& d, const std::function<void(const Term&)>& out) const {
    using CK = ComplexAction::Kind;
    switch (d.kind()) {
      case CK::kAction: out(d.term()); return;
      case CK::kTest:
      case CK::kIf:
      case CK::kWhile: collect_formula_terms(d.formula(), out); break;
      case CK::kHtn:
        for (const auto& t : d.htn_node().tasks) collect_program_terms(t.body, out);
        for (const auto& c : d.htn_node().constraints)
          if (c.kind != HtnConstraint::Kind::kOrder) collect_formula_terms(c.formula, out);
        return;
      default: break;
    }
    for (const auto& k : d.children()) collect_program_terms(k, out);
  }

  // Turns bare names into actions, fluent tests or calls.
  ComplexAction resolve(const ComplexAction& d) {
    using CK = ComplexAction::Kind;
    auto where = [&](const Term& t) {
      auto it = bare_locs_.find(t.str());
      return it != bare_locs_.end() ? it->second : main_loc_;
    };
    switch (d.kind()) {
      case CK::kBare: {
        const Term& t = d.term();
        Term a = t.is_negation() ? t.args()[0] : t;
        bool is_act = sig_.is_action_name(a.functor(), a.arity()) && !t.is_negation();
        bool is_fl = sig_.is_fluent_name(a.functor(), a.arity());
        bool is_proc = !t.is_negation() && proc_names_.count({a.functor(), a.arity()});
        if (is_act + is_fl + is_proc > 1) fail_at(where(t), "ambiguous name " + t.str());
        if (is_act) return ComplexAction::action(t);
        if (is_fl) return ComplexAction::test(Formula::literal(t));
        if (is_proc) return ComplexAction::call(t);
        fail_at(where(t), "unknown action, fluent or procedure " + t.str());
      }
      case CK::kTest: check_formula(d.formula(), main_loc_); return d;
      case CK::kAction:
      case CK::kCall:
      case CK::kNull: return d;
      case CK::kSeq: return ComplexAction::seq(resolve(d.child(0)), resolve(d.child(1)));
      case CK::kChoice: {
        std::vector<ComplexAction> alts;
        for (const auto& k : d.children()) alts.push_back(resolve(k));
        return ComplexAction::choice(std::move(alts));
      }
      case CK::kIf:
        check_formula(d.formula(), main_loc_);
        return ComplexAction::if_then_else(d.formula(), resolve(d.child(0)), resolve(d.child(1)));
      case CK::kWhile:
        check_formula(d.formula(), main_loc_);
        return ComplexAction::while_do(d.formula(), resolve(d.child(0)));
      case CK::kPick: return ComplexAction::pick(d.var(), d.domain(), resolve(d.child(0)));
      case CK::kHtn: {
        HtnNode h = d.htn_node();
        for (auto& t : h.tasks) t.body = resolve(t.body);
        return ComplexAction::htn(std::move(h));
      }
    }
    return d;
  }

  std::vector<Token> t_;
  size_t p_ = 0;
  std::map<std::string, std::vector<Term>> sorts_;
  std::vector<Term> objects_, all_objects_;
  std::vector<Pattern> fluents_, actions_;
  std::vector<RawLaw> laws_;
  std::vector<RawProc> procs_;
  std::set<std::pair<std::string, size_t>> proc_names_;
  std::optional<ComplexAction> main_;
  std::optional<Formula> temporal_;
  Loc main_loc_, temporal_loc_;
  std::optional<size_t> horizon_;
  bool has_goal_ = false;
  std::map<std::string, Loc> bare_locs_;
  Signature sig_;
};

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  check_header(text, kProblemHeader);
  Parser p(lex(text));
  return p.run();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemFile load_problem(const std::string& path) {
  try {
    return parse_problem(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ":" + e.what());
  }
}

Formula parse_formula(const Signature& sig, std::string_view text) {
  Parser p(lex(text));
  return p.formula_only(sig);
}

PlanFile parse_plan(const Signature& sig, std::string_view text) {
  check_header(text, kPlanHeader);
  Parser p(lex(text));
  return p.plan(sig);
}

std::string write_plan(const Signature& sig, const Trajectory& t) {
  std::string out = std::string(kPlanHeader) + "\n";
  auto state = [&](const State& s) {
    std::string line = "state ";
    bool first = true;
    for (auto l : s.literals()) {
      line += (first ? "" : ", ") + literal_name(sig, l);
      first = false;
    }
    return line + ".\n";
  };
  for (size_t i = 0; i < t.actions.size(); ++i) {
    out += state(t.states[i]);
    out += "action " + sig.actions()[t.actions[i]].str() + ".\n";
  }
  out += state(t.states.back());
  return out;
}

}  // namespace bplan
