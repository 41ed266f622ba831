#include "bplan/solver.h"

#include <algorithm>
#include <numeric>

#include "bplan/error.h"

namespace bplan {

using RK = GroundRule::Kind;

namespace {

std::vector<char> indicator(size_t n, const AnswerSet& s) {
  std::vector<char> in(n, 0);
  for (AtomId a : s) in[a] = 1;
  return in;
}

bool all_in(const std::vector<AtomId>& atoms, const std::vector<char>& in) {
  for (AtomId a : atoms)
    if (!in[a]) return false;
  return true;
}

bool none_in(const std::vector<AtomId>& atoms, const std::vector<char>& in) {
  for (AtomId a : atoms)
    if (in[a]) return false;
  return true;
}

// Fixpoint of the definite rules (pos body -> head). Returns indicator.
std::vector<char> fixpoint(size_t n, const std::vector<std::pair<AtomId, std::vector<AtomId>>>& rules) {
  std::vector<char> in(n, 0);
  std::vector<std::vector<int>> watch(n);
  std::vector<size_t> missing(rules.size());
  std::vector<AtomId> queue;
  for (size_t i = 0; i < rules.size(); ++i) {
    missing[i] = rules[i].second.size();
    for (AtomId a : rules[i].second) watch[a].push_back(static_cast<int>(i));
    if (missing[i] == 0 && !in[rules[i].first]) {
      in[rules[i].first] = 1;
      queue.push_back(rules[i].first);
    }
  }
  while (!queue.empty()) {
    AtomId a = queue.back();
    queue.pop_back();
    for (int r : watch[a]) {
      if (--missing[r] == 0 && !in[rules[r].first]) {
        in[rules[r].first] = 1;
        queue.push_back(rules[r].first);
      }
    }
  }
  return in;
}

}  // namespace

GroundProgram reduct(const GroundProgram& p, const AnswerSet& s) {
  std::vector<char> in = indicator(p.num_atoms(), s);
  GroundProgram out = p;
  auto& rules = out.mutable_rules();
  std::vector<GroundRule> kept;
  for (const auto& r : rules) {
    if (r.kind == RK::kChoice) throw InputError("reduct: expand choice rules first");
    if (!none_in(r.neg, in)) continue;
    GroundRule c = r;
    c.neg.clear();
    kept.push_back(std::move(c));
  }
  rules = std::move(kept);
  return out;
}

std::optional<AnswerSet> least_model(const GroundProgram& p) {
  std::vector<std::pair<AtomId, std::vector<AtomId>>> defs;
  for (const auto& r : p.rules()) {
    if (!r.neg.empty() || r.kind == RK::kChoice)
      throw InputError("least_model needs a positive program");
    if (r.kind == RK::kNormal) defs.emplace_back(r.head[0], r.pos);
  }
  std::vector<char> in = fixpoint(p.num_atoms(), defs);
  for (const auto& r : p.rules())
    if (r.kind == RK::kConstraint && all_in(r.pos, in)) return std::nullopt;
  AnswerSet m;
  for (size_t a = 0; a < in.size(); ++a)
    if (in[a]) m.push_back(static_cast<AtomId>(a));
  return m;
}

namespace {

// Stability of a candidate given as an indicator, choice rules native.
bool stable(const GroundProgram& p, const std::vector<char>& in) {
  std::vector<std::pair<AtomId, std::vector<AtomId>>> defs;
  for (const auto& r : p.rules()) {
    if (!none_in(r.neg, in)) continue;
    if (r.kind == RK::kNormal) {
      defs.emplace_back(r.head[0], r.pos);
    } else if (r.kind == RK::kChoice) {
      for (AtomId h : r.head)
        if (in[h]) defs.emplace_back(h, r.pos);
    }
  }
  std::vector<char> lm = fixpoint(p.num_atoms(), defs);
  if (lm != in) return false;
  for (const auto& r : p.rules()) {
    bool body = all_in(r.pos, in) && none_in(r.neg, in);
    if (!body) continue;
    if (r.kind == RK::kConstraint) return false;
    if (r.kind == RK::kChoice) {
      int chosen = 0;
      for (AtomId h : r.head) chosen += in[h];
      if (chosen < r.lower || chosen > r.upper) return false;
    }
  }
  return true;
}

}  // namespace

bool is_answer_set(const GroundProgram& p, const AnswerSet& s) {
  for (AtomId a : s)
    if (a < 0 || static_cast<size_t>(a) >= p.num_atoms()) return false;
  return stable(p, indicator(p.num_atoms(), s));
}

std::vector<GroundRule> expand_choice(GroundProgram& p, const GroundRule& r, size_t index) {
  if (r.kind != RK::kChoice) return {r};
  if (r.upper != 1 || r.lower < 0 || r.lower > 1)
    throw InputError("choice rule bounds outside {0,1}..1: " + p.rule_text(r));
  std::vector<GroundRule> out;
  AtomId aux = -1;
  if (r.lower == 0) aux = p.atom("aux_none(" + std::to_string(index) + ")");
  for (size_t i = 0; i < r.head.size(); ++i) {
    GroundRule n;
    n.kind = RK::kNormal;
    n.head = {r.head[i]};
    n.pos = r.pos;
    n.neg = r.neg;
    for (size_t j = 0; j < r.head.size(); ++j)
      if (j != i) n.neg.push_back(r.head[j]);
    if (aux >= 0) n.neg.push_back(aux);
    n.tag = r.tag;
    out.push_back(std::move(n));
  }
  if (aux >= 0) {
    GroundRule n;
    n.kind = RK::kNormal;
    n.head = {aux};
    n.pos = r.pos;
    n.neg = r.neg;
    for (AtomId h : r.head) n.neg.push_back(h);
    n.tag = r.tag;
    out.push_back(std::move(n));
  }
  return out;
}

GroundProgram expand_choices(const GroundProgram& p) {
  GroundProgram out = p;
  std::vector<GroundRule> rules;
  size_t idx = 0;
  for (const auto& r : p.rules()) {
    if (r.kind == RK::kChoice) {
      for (auto& n : expand_choice(out, r, idx++)) rules.push_back(std::move(n));
    } else {
      rules.push_back(r);
    }
  }
  out.mutable_rules() = std::move(rules);
  return out;
}

std::vector<std::string> atom_names(const GroundProgram& p, const AnswerSet& s) {
  std::vector<std::string> out;
  for (AtomId a : s) out.push_back(p.name(a));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct BodyLit {
  AtomId atom;
  bool positive;
};

struct Rule {
  RK kind;
  std::vector<AtomId> head;
  int lower, upper;
  std::vector<BodyLit> body;
};

class Search {
 public:
  Search(const GroundProgram& p, const SolveConfig& cfg, SolveStats& stats)
      : p_(p), cfg_(cfg), stats_(stats), n_(p.num_atoms()) {
    body_occ_.resize(n_);
    head_occ_.resize(n_);
    for (const auto& r : p.rules()) {
      Rule q{r.kind, r.head, r.lower, r.upper, {}};
      for (AtomId a : r.pos) q.body.push_back({a, true});
      for (AtomId a : r.neg) q.body.push_back({a, false});
      int idx = static_cast<int>(rules_.size());
      for (const auto& l : q.body) body_occ_[l.atom].push_back(idx);
      for (AtomId h : q.head) head_occ_[h].push_back(idx);
      rules_.push_back(std::move(q));
    }
    for (auto* occ : {&body_occ_, &head_occ_})
      for (auto& v : *occ) v.erase(std::unique(v.begin(), v.end()), v.end());
    val_.assign(n_, 0);
    compute_tightness();
    build_order();
  }

  std::vector<AnswerSet> run() {
    bool ok = true;
    for (size_t r = 0; r < rules_.size() && ok; ++r) ok = examine(static_cast<int>(r));
    for (size_t a = 0; a < n_ && ok; ++a) ok = support(static_cast<AtomId>(a));
    if (ok) dfs(0, false);
    return std::move(models_);
  }

 private:
  enum class Res { kContinue, kStop, kFound };

  void compute_tightness() {
    // Tarjan over the positive dependency graph head -> positive body atom.
    std::vector<std::vector<AtomId>> g(n_);
    for (const auto& r : rules_)
      for (AtomId h : r.head)
        for (const auto& l : r.body)
          if (l.positive) g[h].push_back(l.atom);
    std::vector<int> index(n_, -1), low(n_, 0);
    std::vector<char> on(n_, 0);
    std::vector<AtomId> stack;
    int counter = 0;
    bool tight = true;
    struct Frame {
      AtomId v;
      size_t next;
    };
    for (size_t s = 0; s < n_ && tight; ++s) {
      if (index[s] >= 0) continue;
      std::vector<Frame> call{{static_cast<AtomId>(s), 0}};
      index[s] = low[s] = counter++;
      stack.push_back(static_cast<AtomId>(s));
      on[s] = 1;
      while (!call.empty() && tight) {
        Frame& f = call.back();
        if (f.next < g[f.v].size()) {
          AtomId w = g[f.v][f.next++];
          if (w == f.v) tight = false;
          if (index[w] < 0) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on[w] = 1;
            call.push_back({w, 0});
          } else if (on[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
        } else {
          AtomId v = f.v;
          call.pop_back();
          if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
          if (low[v] == index[v]) {
            size_t size = 0;
            AtomId w;
            do {
              w = stack.back();
              stack.pop_back();
              on[w] = 0;
              ++size;
            } while (w != v);
            if (size > 1) tight = false;
          }
        }
      }
    }
    tight_ = tight;
    stats_.tight = tight;
  }

  void build_order() {
    std::vector<long> prio(n_, 0);
    if (cfg_.priority)
      for (size_t a = 0; a < n_; ++a) prio[a] = cfg_.priority(p_.name(static_cast<AtomId>(a)));
    std::vector<char> proj(n_, 0);
    for (AtomId a : cfg_.project) proj[a] = 1;
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](AtomId a, AtomId b) {
      if (proj[a] != proj[b]) return proj[a] > proj[b];
      if (prio[a] != prio[b]) return prio[a] < prio[b];
      return p_.name(a) < p_.name(b);
    });
    nproj_ = 0;
    for (size_t a = 0; a < n_; ++a) nproj_ += proj[a];
  }

  bool assign(AtomId a, int8_t v) {
    if (val_[a] == v) return true;
    if (val_[a] != 0) return false;
    val_[a] = v;
    trail_.push_back(a);
    return true;
  }

  bool lit_true(const BodyLit& l) const { return val_[l.atom] == (l.positive ? 1 : -1); }
  bool lit_false(const BodyLit& l) const { return val_[l.atom] == (l.positive ? -1 : 1); }
  bool make_lit(const BodyLit& l, bool truth) {
    return assign(l.atom, (l.positive == truth) ? 1 : -1);
  }

  struct BodyState {
    int nfalse = 0, nfree = 0;
    const BodyLit* last_free = nullptr;
  };

  BodyState body_state(const Rule& r) const {
    BodyState b;
    for (const auto& l : r.body) {
      if (lit_false(l)) {
        ++b.nfalse;
        return b;
      }
      if (!lit_true(l)) {
        ++b.nfree;
        b.last_free = &l;
      }
    }
    return b;
  }

  bool examine(int ri) {
    const Rule& r = rules_[ri];
    BodyState b = body_state(r);
    bool bfalse = b.nfalse > 0;
    bool btrue = !bfalse && b.nfree == 0;
    switch (r.kind) {
      case RK::kNormal: {
        AtomId h = r.head[0];
        if (btrue) return assign(h, 1);
        if (bfalse) return support(h);
        if (b.nfree == 1 && val_[h] == -1) return make_lit(*b.last_free, false);
        return true;
      }
      case RK::kConstraint:
        if (btrue) return false;
        if (!bfalse && b.nfree == 1) return make_lit(*b.last_free, false);
        return true;
      case RK::kChoice: {
        int ht = 0, hfree = 0;
        AtomId free_head = -1;
        for (AtomId h : r.head) {
          if (val_[h] == 1) ++ht;
          if (val_[h] == 0) {
            ++hfree;
            free_head = h;
          }
        }
        if (bfalse) {
          for (AtomId h : r.head)
            if (!support(h)) return false;
          return true;
        }
        if (btrue) {
          if (ht > r.upper) return false;
          if (ht == r.upper && hfree > 0)
            for (AtomId h : r.head)
              if (val_[h] == 0 && !assign(h, -1)) return false;
          if (r.lower == 1 && ht == 0) {
            if (hfree == 0) return false;
            if (hfree == 1) return assign(free_head, 1);
          }
          return true;
        }
        if (r.lower == 1 && ht == 0 && hfree == 0 && b.nfree == 1)
          return make_lit(*b.last_free, false);
        return true;
      }
    }
    return true;
  }

  bool support(AtomId a) {
    if (val_[a] == -1) return true;
    int count = 0, which = -1;
    for (int ri : head_occ_[a]) {
      if (body_state(rules_[ri]).nfalse == 0) {
        ++count;
        which = ri;
        if (count > 1) break;
      }
    }
    if (count == 0) return assign(a, -1);
    if (count == 1 && val_[a] == 1) {
      for (const auto& l : rules_[which].body)
        if (!lit_true(l) && !make_lit(l, true)) return false;
    }
    return true;
  }

  bool unit_propagate() {
    while (qhead_ < trail_.size()) {
      AtomId x = trail_[qhead_++];
      for (int ri : body_occ_[x])
        if (!examine(ri)) return false;
      for (int ri : head_occ_[x])
        if (!examine(ri)) return false;
      if (val_[x] == 1 && !support(x)) return false;
    }
    return true;
  }

  // Atoms that cannot be derived from rules whose bodies are not false are
  // unfounded and must be false.
  bool unfounded_propagate() {
    std::vector<std::pair<AtomId, std::vector<AtomId>>> defs;
    for (const auto& r : rules_) {
      if (r.kind == RK::kConstraint) continue;
      bool possible = true;
      std::vector<AtomId> pos;
      for (const auto& l : r.body) {
        if (lit_false(l)) {
          possible = false;
          break;
        }
        if (l.positive) pos.push_back(l.atom);
      }
      if (!possible) continue;
      for (AtomId h : r.head)
        if (val_[h] != -1) defs.emplace_back(h, pos);
    }
    std::vector<char> derivable = fixpoint(n_, defs);
    for (size_t a = 0; a < n_; ++a)
      if (!derivable[a] && !assign(static_cast<AtomId>(a), -1)) return false;
    return true;
  }

  bool propagate() {
    for (;;) {
      if (!unit_propagate()) return false;
      if (tight_) return true;
      size_t before = trail_.size();
      if (!unfounded_propagate()) return false;
      if (trail_.size() == before) return true;
    }
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = 0;
      trail_.pop_back();
    }
    qhead_ = mark;
  }

  Res dfs(size_t start, bool completing) {
    if (!propagate()) {
      ++stats_.conflicts;
      return Res::kContinue;
    }
    size_t pos = start;
    while (pos < n_ && val_[order_[pos]] != 0) ++pos;
    if (pos == n_) {
      std::vector<char> in(n_, 0);
      for (size_t a = 0; a < n_; ++a) in[a] = val_[a] == 1;
      if (!stable(p_, in)) {
        ++stats_.conflicts;
        return Res::kContinue;
      }
      AnswerSet m;
      for (size_t a = 0; a < n_; ++a)
        if (in[a]) m.push_back(static_cast<AtomId>(a));
      models_.push_back(std::move(m));
      if (cfg_.limit && models_.size() >= cfg_.limit) return Res::kStop;
      return completing ? Res::kFound : Res::kContinue;
    }
    if (!completing && nproj_ > 0 && pos >= nproj_) {
      Res r = dfs(pos, true);
      return r == Res::kStop ? Res::kStop : Res::kContinue;
    }
    AtomId a = order_[pos];
    for (int8_t v : {int8_t(-1), int8_t(1)}) {
      if (++stats_.decisions > cfg_.max_decisions)
        throw CapExceeded("solver decision budget of " + std::to_string(cfg_.max_decisions) +
                          " exhausted");
      size_t mark = trail_.size();
      Res r = Res::kContinue;
      if (assign(a, v)) r = dfs(pos + 1, completing);
      undo(mark);
      if (r != Res::kContinue) return r;
    }
    return Res::kContinue;
  }

  const GroundProgram& p_;
  const SolveConfig& cfg_;
  SolveStats& stats_;
  size_t n_;
  std::vector<Rule> rules_;
  std::vector<std::vector<int>> body_occ_, head_occ_;
  std::vector<int8_t> val_;
  std::vector<AtomId> trail_;
  size_t qhead_ = 0;
  std::vector<AtomId> order_;
  size_t nproj_ = 0;
  bool tight_ = true;
  std::vector<AnswerSet> models_;
};

std::vector<AnswerSet> exhaustive(const GroundProgram& p, const SolveConfig& cfg) {
  size_t n = p.num_atoms();
  if (n > cfg.exhaustive_max_atoms)
    throw CapExceeded("exhaustive scan refuses " + std::to_string(n) + " atoms (cap " +
                      std::to_string(cfg.exhaustive_max_atoms) + ")");
  std::vector<AnswerSet> out;
  std::vector<std::vector<AtomId>> seen_proj;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    std::vector<char> in(n, 0);
    for (size_t a = 0; a < n; ++a) in[a] = (mask >> a) & 1;
    if (!stable(p, in)) continue;
    AnswerSet m;
    for (size_t a = 0; a < n; ++a)
      if (in[a]) m.push_back(static_cast<AtomId>(a));
    if (!cfg.project.empty()) {
      std::vector<AtomId> key;
      for (AtomId a : cfg.project)
        if (in[a]) key.push_back(a);
      std::sort(key.begin(), key.end());
      if (std::find(seen_proj.begin(), seen_proj.end(), key) != seen_proj.end()) continue;
      seen_proj.push_back(key);
    }
    out.push_back(std::move(m));
    if (cfg.limit && out.size() >= cfg.limit) break;
  }
  return out;
}

}  // namespace

std::vector<AnswerSet> enumerate(const GroundProgram& p, const SolveConfig& cfg, SolveStats* stats) {
  SolveStats local;
  SolveStats& st = stats ? *stats : local;
  for (const auto& r : p.rules())
    if (r.kind == RK::kChoice && (r.upper != 1 || r.lower < 0 || r.lower > 1))
      throw InputError("choice rule bounds outside {0,1}..1: " + p.rule_text(r));
  if (cfg.choice_mode == SolveConfig::ChoiceMode::kExpand) {
    GroundProgram ex = expand_choices(p);
    SolveConfig c2 = cfg;
    c2.choice_mode = SolveConfig::ChoiceMode::kNative;
    auto models = enumerate(ex, c2, &st);
    size_t n = p.num_atoms();
    for (auto& m : models)
      m.erase(std::remove_if(m.begin(), m.end(), [&](AtomId a) { return a >= static_cast<AtomId>(n); }),
              m.end());
    return models;
  }
  if (cfg.strategy == SolveConfig::Strategy::kExhaustive) return exhaustive(p, cfg);
  Search s(p, cfg, st);
  return s.run();
}

}  // namespace bplan
