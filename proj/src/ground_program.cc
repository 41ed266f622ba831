#include "bplan/ground_program.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "bplan/error.h"
#include "bplan/term.h"

namespace bplan {

AtomId GroundProgram::atom(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  AtomId id = static_cast<AtomId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

AtomId GroundProgram::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void GroundProgram::add_fact(const std::string& head, const std::string& tag) {
  add_rule(head, {}, {}, tag);
}

void GroundProgram::add_rule(const std::string& head, const std::vector<std::string>& pos,
                             const std::vector<std::string>& neg, const std::string& tag) {
  GroundRule r;
  r.head = {atom(head)};
  for (const auto& p : pos) r.pos.push_back(atom(p));
  for (const auto& n : neg) r.neg.push_back(atom(n));
  r.tag = tag;
  rules_.push_back(std::move(r));
}

void GroundProgram::add_constraint(const std::vector<std::string>& pos,
                                   const std::vector<std::string>& neg, const std::string& tag) {
  GroundRule r;
  r.kind = GroundRule::Kind::kConstraint;
  for (const auto& p : pos) r.pos.push_back(atom(p));
  for (const auto& n : neg) r.neg.push_back(atom(n));
  r.tag = tag;
  rules_.push_back(std::move(r));
}

void GroundProgram::add_choice(int lower, int upper, const std::vector<std::string>& heads,
                               const std::vector<std::string>& pos,
                               const std::vector<std::string>& neg, const std::string& tag) {
  if (upper != 1 || lower < 0 || lower > 1)
    throw InputError("choice bounds must be 0..1 or 1..1");
  GroundRule r;
  r.kind = GroundRule::Kind::kChoice;
  r.lower = lower;
  r.upper = upper;
  for (const auto& h : heads) r.head.push_back(atom(h));
  for (const auto& p : pos) r.pos.push_back(atom(p));
  for (const auto& n : neg) r.neg.push_back(atom(n));
  r.tag = tag;
  rules_.push_back(std::move(r));
}

size_t GroundProgram::remove_tag(const std::string& tag) {
  size_t before = rules_.size();
  rules_.erase(std::remove_if(rules_.begin(), rules_.end(),
                              [&](const GroundRule& r) { return r.tag == tag; }),
               rules_.end());
  return before - rules_.size();
}

std::string GroundProgram::rule_text(const GroundRule& r) const {
  std::string s;
  if (r.kind == GroundRule::Kind::kNormal) {
    s = names_[r.head[0]];
  } else if (r.kind == GroundRule::Kind::kChoice) {
    s = std::to_string(r.lower) + " {";
    for (size_t i = 0; i < r.head.size(); ++i) s += (i ? "; " : "") + names_[r.head[i]];
    s += "} " + std::to_string(r.upper);
  }
  bool first = true;
  auto sep = [&]() {
    s += first ? (s.empty() ? ":- " : " :- ") : ", ";
    first = false;
  };
  for (AtomId a : r.pos) {
    sep();
    s += names_[a];
  }
  for (AtomId a : r.neg) {
    sep();
    s += "not " + names_[a];
  }
  return s + ".";
}

std::string GroundProgram::to_text() const {
  std::set<std::pair<std::string, std::string>> lines;
  std::set<std::string> seen;
  for (const auto& r : rules_) {
    std::string t = rule_text(r);
    if (seen.insert(t).second) lines.emplace(r.tag, std::move(t));
  }
  std::string out = std::string(kGroundHeader) + "\n";
  for (const auto& [tag, text] : lines) out += text + "  % [" + tag + "]\n";
  return out;
}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::string canon(const std::string& atom, size_t line) {
  try {
    return parse_ground_term(atom).str();
  } catch (const InputError& e) {
    throw InputError("line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

GroundProgram GroundProgram::parse(std::string_view text) {
  GroundProgram p;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string tag = "input";
    size_t pct = line.find('%');
    if (pct != std::string::npos) {
      std::string comment = line.substr(pct);
      if (lineno == 1 && comment.rfind("% bplan-ground", 0) == 0 && comment != kGroundHeader)
        throw InputError("unsupported ground program version: " + comment);
      size_t lb = comment.find('['), rb = comment.find(']');
      if (lb != std::string::npos && rb != std::string::npos && rb > lb)
        tag = comment.substr(lb + 1, rb - lb - 1);
      line = line.substr(0, pct);
    }
    std::string stmt = trim(line);
    if (stmt.empty()) continue;
    auto where = [&](const std::string& msg) {
      return InputError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (stmt.back() != '.') throw where("rule must end with '.'");
    stmt.pop_back();
    std::string head, body;
    size_t arrow = stmt.find(":-");
    if (arrow == std::string::npos) {
      head = trim(stmt);
    } else {
      head = trim(stmt.substr(0, arrow));
      body = trim(stmt.substr(arrow + 2));
    }
    GroundRule r;
    r.tag = tag;
    if (!body.empty()) {
      for (const auto& lit : split_top(body, ',')) {
        if (lit.empty()) throw where("empty body literal");
        if (lit.rfind("not ", 0) == 0)
          r.neg.push_back(p.atom(canon(trim(lit.substr(4)), lineno)));
        else
          r.pos.push_back(p.atom(canon(lit, lineno)));
      }
    }
    if (head.empty()) {
      r.kind = GroundRule::Kind::kConstraint;
    } else if (head.find('{') != std::string::npos) {
      size_t lb = head.find('{'), rb = head.rfind('}');
      if (rb == std::string::npos || rb < lb) throw where("unbalanced choice head");
      std::string lo = trim(head.substr(0, lb)), hi = trim(head.substr(rb + 1));
      r.kind = GroundRule::Kind::kChoice;
      try {
        r.lower = lo.empty() ? 0 : std::stoi(lo);
        r.upper = hi.empty() ? 1 : std::stoi(hi);
      } catch (const std::exception&) {
        throw where("bad choice bounds");
      }
      if (r.upper != 1 || r.lower < 0 || r.lower > 1) throw where("choice bounds must be 0..1 or 1..1");
      for (const auto& a : split_top(head.substr(lb + 1, rb - lb - 1), ';')) {
        if (a.empty()) throw where("empty choice element");
        r.head.push_back(p.atom(canon(a, lineno)));
      }
    } else {
      r.head = {p.atom(canon(head, lineno))};
    }
    p.rules_.push_back(std::move(r));
  }
  return p;
}

}  // namespace bplan
