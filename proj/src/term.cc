#include "bplan/term.h"

#include <cctype>

#include "bplan/error.h"

namespace bplan {

Term::Term() : Term(constant("").node_) {}

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->text = name;
  n->functor = std::move(name);
  return Term(std::move(n));
}

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->text = name;
  n->functor = std::move(name);
  n->variable = true;
  n->ground = false;
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return constant(std::move(functor));
  auto n = std::make_shared<Node>();
  if (functor == "-" && args.size() == 1) {
    n->text = "-" + args[0].str();
  } else {
    n->text = functor + "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) n->text += ",";
      n->text += args[i].str();
    }
    n->text += ")";
  }
  for (const auto& a : args) n->ground = n->ground && a.is_ground();
  n->functor = std::move(functor);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_integer() const {
  const std::string& f = node_->functor;
  if (!node_->args.empty() || node_->variable || f.empty()) return false;
  for (char c : f)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

long Term::as_integer() const { return std::stol(node_->functor); }

Term Term::substitute(const Subst& s) const {
  if (is_ground()) return *this;
  if (is_variable()) {
    auto it = s.find(functor());
    return it == s.end() ? *this : it->second;
  }
  std::vector<Term> a;
  a.reserve(arity());
  for (const auto& t : args()) a.push_back(t.substitute(s));
  return compound(functor(), std::move(a));
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (is_ground()) return;
  if (is_variable()) {
    for (const auto& v : out)
      if (v == functor()) return;
    out.push_back(functor());
    return;
  }
  for (const auto& t : args()) t.collect_variables(out);
}

namespace {

struct GroundParser {
  std::string_view s;
  size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw InputError("bad term '" + std::string(s) + "': " + what + " at offset " +
                     std::to_string(i));
  }
  Term term() {
    ws();
    if (i < s.size() && s[i] == '-') {
      ++i;
      return Term::negated(term());
    }
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (start == i) fail("expected identifier");
    std::string name(s.substr(start, i - start));
    ws();
    if (i < s.size() && s[i] == '(') {
      ++i;
      std::vector<Term> args;
      for (;;) {
        args.push_back(term());
        ws();
        if (i < s.size() && s[i] == ',') {
          ++i;
          continue;
        }
        if (i < s.size() && s[i] == ')') {
          ++i;
          break;
        }
        fail("expected ',' or ')'");
      }
      return Term::compound(name, std::move(args));
    }
    return Term::constant(name);
  }
};

}  // namespace

Term parse_ground_term(std::string_view text) {
  GroundParser p{text};
  Term t = p.term();
  p.ws();
  if (p.i != text.size()) p.fail("trailing input");
  return t;
}

}  // namespace bplan
