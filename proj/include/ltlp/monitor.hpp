// ltlp/monitor.hpp — deterministic finite-state recognizers.
//
// PastMonitor decides a pure-past formula at the last position of a finite
// word.  Its state carries, per past operator in the closure, the one bit
// the update recurrences need (operand value for Y/Z, own value for S),
// plus the root's current value:
//
//     val'(Y a)   = val(a)                 at the previous position
//     val'(Z a)   = val(a)                 (true at position 0)
//     val'(a S b) = val'(b) | (val'(a) & val(a S b))
//
// SafetyMonitor decides membership of an infinite word in a safety
// language: transitions are total, reject states are absorbing, and a word
// is accepted iff its run never enters reject.  Two constructions exist:
//
//  - the term machine for canonical formulas (and G-alpha): one status per
//    term (pending/violated/settled), a saturating step counter for the
//    X-offsets, and a joint past tracker for the payloads.  Term truths
//    only ever fall, so the and/or tree over optimistic term values is
//    monotone and the run enters reject exactly when it turns false;
//  - obligation progression for any formula whose negated normal form has
//    no U and no F (SafetyLTL plus pure-past subformulas).  States are
//    antichains of obligation sets; a violated branch dies at the exact
//    position its obligation is falsified, so emptiness of the antichain
//    marks the bad prefix.
//
// Containment uses the viability construction: a state is viable when
// reject can be avoided forever from it; L(A) is not a subset of L(B) iff
// the synchronous product reaches a pair with B rejecting and A viable.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "ltlp/canonical.hpp"
#include "ltlp/eval.hpp"

namespace ltlp {

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_alphabet_size(const Alphabet& a) {
  if (a.size() > 16)
    throw ResourceLimitError("explicit monitors support at most 16 propositions");
}

// Joint forward tracker for a list of pure-past formulas (shortcuts already
// expanded).  Nodes are kept in child-first order; the memory holds one bit
// per Y/Z/S node.
class PastTracker {
 public:
  PastTracker(const Alphabet& alphabet, const std::vector<Formula>& roots) {
    for (const auto& r : roots) {
      if (contains_future(r))
        throw std::invalid_argument("past tracker requires pure past formulas");
      kept_.push_back(expand_shortcuts(r));
      root_index_.push_back(intern(kept_.back(), alphabet));
    }
  }

  std::size_t memory_bits() const { return slots_; }
  std::size_t root_count() const { return root_index_.size(); }

  std::vector<char> initial_memory() const { return std::vector<char>(slots_, 0); }

  // advances one letter; mem is updated in place, cur receives per-node
  // values at the new position
  void step(std::vector<char>& mem, bool started, Letter letter,
            std::vector<char>& cur) const {
    cur.assign(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const NodeInfo& n = nodes_[i];
      switch (n.op) {
        case Op::True: cur[i] = 1; break;
        case Op::False: cur[i] = 0; break;
        case Op::Prop: cur[i] = (letter >> n.prop_bit) & 1; break;
        case Op::Not: cur[i] = !cur[n.kid0]; break;
        case Op::And: cur[i] = cur[n.kid0] && cur[n.kid1]; break;
        case Op::Or: cur[i] = cur[n.kid0] || cur[n.kid1]; break;
        case Op::Yesterday: cur[i] = started ? mem[n.slot] : 0; break;
        case Op::WeakYesterday: cur[i] = started ? mem[n.slot] : 1; break;
        case Op::Since:
          cur[i] = cur[n.kid1] || (cur[n.kid0] && (started ? mem[n.slot] : 0));
          break;
        default:
          throw std::logic_error("unexpected operator in past tracker");
      }
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const NodeInfo& n = nodes_[i];
      if (n.slot < 0) continue;
      mem[n.slot] = (n.op == Op::Since) ? cur[i] : cur[n.kid0];
    }
  }

  bool root_value(const std::vector<char>& cur, std::size_t root) const {
    return cur[root_index_[root]] != 0;
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct NodeInfo {
    Op op;
    int kid0 = -1, kid1 = -1;
    int prop_bit = -1;
    int slot = -1;
  };

  int intern(const Formula& f, const Alphabet& alphabet) {
    auto it = index_.find(f.id());
    if (it != index_.end()) return it->second;
    NodeInfo n;
    n.op = f.op();
    if (f.arity() >= 1) n.kid0 = intern(f.child(0), alphabet);
    if (f.arity() >= 2) n.kid1 = intern(f.child(1), alphabet);
    if (f.op() == Op::Prop)
      n.prop_bit = static_cast<int>(alphabet.index_of(f.name()));
    if (f.op() == Op::Yesterday || f.op() == Op::WeakYesterday || f.op() == Op::Since)
      n.slot = static_cast<int>(slots_++);
    int idx = static_cast<int>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(f.id(), idx);
    return idx;
  }

  std::vector<Formula> kept_;
  std::vector<NodeInfo> nodes_;
  std::unordered_map<const Formula::Node*, int> index_;
  std::vector<int> root_index_;
  std::size_t slots_ = 0;
};

}  // namespace detail

// ── past monitor ────────────────────────────────────────────────────────────

struct PastMonitor {
  Alphabet alphabet;
  Formula root;
  std::uint32_t initial = 0;
  std::vector<std::vector<std::uint32_t>> delta;  // [state][letter]
  std::vector<char> output;                       // truth at the last position
  std::size_t past_subformula_count = 0;

  std::size_t state_count() const { return delta.size(); }

  bool run(const FiniteWord& w) const {
    std::uint32_t s = initial;
    for (Letter l : w.letters) s = delta[s][l];
    return output[s] != 0;
  }

  std::string to_dot() const {
    std::string out = "digraph past_monitor {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < delta.size(); ++s) {
      out += "  s" + std::to_string(s) + " [shape=" +
             (output[s] ? "doublecircle" : "circle") + "];\n";
    }
    out += "  init [shape=point];\n  init -> s" + std::to_string(initial) + ";\n";
    for (std::size_t s = 0; s < delta.size(); ++s)
      for (std::size_t l = 0; l < delta[s].size(); ++l)
        out += "  s" + std::to_string(s) + " -> s" + std::to_string(delta[s][l]) +
               " [label=\"" + letter_to_string(static_cast<Letter>(l), alphabet) +
               "\"];\n";
    out += "}\n";
    return out;
  }
};

inline PastMonitor compile_past(const Alphabet& alphabet, const Formula& alpha) {
  if (contains_future(alpha))
    throw std::invalid_argument("compile_past requires a pure past formula");
  detail::check_alphabet_size(alphabet);
  detail::PastTracker tracker(alphabet, {alpha});

  PastMonitor m;
  m.alphabet = alphabet;
  m.root = alpha;
  m.past_subformula_count = tracker.memory_bits();

  struct StateData {
    std::vector<char> mem;
    bool started;
    bool out;
  };
  auto key_of = [](const StateData& s) {
    std::string k(s.mem.begin(), s.mem.end());
    k.push_back(s.started ? 2 : 3);
    k.push_back(s.out ? 1 : 0);
    return k;
  };

  std::vector<StateData> states;
  std::map<std::string, std::uint32_t> index;
  auto add = [&](StateData s) {
    std::string k = key_of(s);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(states.size());
    states.push_back(std::move(s));
    index.emplace(std::move(k), id);
    m.output.push_back(states[id].out);
    return id;
  };

  std::size_t nl = alphabet.letter_count();
  m.initial = add({tracker.initial_memory(), false, false});
  std::deque<std::uint32_t> queue{m.initial};
  std::vector<char> cur;
  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    if (m.delta.size() <= s) m.delta.resize(states.size());
    m.delta[s].assign(nl, 0);
    for (std::size_t l = 0; l < nl; ++l) {
      StateData nxt{states[s].mem, true, false};
      tracker.step(nxt.mem, states[s].started, static_cast<Letter>(l), cur);
      nxt.out = tracker.root_value(cur, 0);
      std::size_t before = states.size();
      std::uint32_t t = add(std::move(nxt));
      if (states.size() > before) queue.push_back(t);
      m.delta[s][l] = t;
    }
  }
  m.delta.resize(states.size());
  for (auto& row : m.delta)
    if (row.empty()) row.assign(nl, 0);  // unreachable safety net
  return m;
}

// Truth of a pure-past formula at every position of a finite run, by the
// same recurrences the monitors use.
inline std::vector<char> past_profile(const Alphabet& alphabet, const Formula& alpha,
                                      const std::vector<Letter>& letters) {
  detail::PastTracker tracker(alphabet, {alpha});
  auto mem = tracker.initial_memory();
  std::vector<char> cur, out;
  bool started = false;
  for (Letter l : letters) {
    tracker.step(mem, started, l, cur);
    started = true;
    out.push_back(tracker.root_value(cur, 0));
  }
  return out;
}

// ── safety monitor ──────────────────────────────────────────────────────────

enum class TermStatus : std::uint8_t { Pending = 0, Violated = 1, Settled = 2 };

struct SafetyMonitor {
  Alphabet alphabet;
  std::uint32_t initial = 0;
  std::vector<std::vector<std::uint32_t>> delta;  // [state][letter]
  std::vector<char> reject;                       // absorbing
  // term machine only: per state, one status per canonical term
  std::vector<std::vector<std::uint8_t>> term_status;

  std::size_t state_count() const { return delta.size(); }

  std::uint32_t step(std::uint32_t s, Letter l) const { return delta[s][l]; }

  bool accepts(const LassoWord& w) const {
    std::uint32_t s = initial;
    for (Letter l : w.stem) {
      s = delta[s][l];
      if (reject[s]) return false;
    }
    std::set<std::uint32_t> seen;
    while (seen.insert(s).second) {
      for (Letter l : w.loop) {
        s = delta[s][l];
        if (reject[s]) return false;
      }
    }
    return true;
  }

  std::string to_dot() const {
    std::string out = "digraph safety_monitor {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < delta.size(); ++s)
      out += "  s" + std::to_string(s) + " [shape=" +
             (reject[s] ? "box" : "circle") + "];\n";
    out += "  init [shape=point];\n  init -> s" + std::to_string(initial) + ";\n";
    for (std::size_t s = 0; s < delta.size(); ++s)
      for (std::size_t l = 0; l < delta[s].size(); ++l)
        out += "  s" + std::to_string(s) + " -> s" + std::to_string(delta[s][l]) +
               " [label=\"" + letter_to_string(static_cast<Letter>(l), alphabet) +
               "\"];\n";
    out += "}\n";
    return out;
  }
};

namespace detail {

constexpr std::size_t kDefaultMaxStates = 200000;

}  // namespace detail

// term machine for a canonical formula
inline SafetyMonitor compile_safety(const Alphabet& alphabet, const CanonicalFormula& c,
                                    std::size_t max_states = detail::kDefaultMaxStates) {
  detail::check_alphabet_size(alphabet);

  std::vector<CanonicalTerm> terms;
  c.for_each_term([&](const CanonicalTerm& t) { terms.push_back(t); });

  std::vector<Formula> payloads;
  std::vector<std::pair<int, int>> payload_of(terms.size(), {-1, -1});
  for (std::size_t i = 0; i < terms.size(); ++i) {
    payload_of[i].first = static_cast<int>(payloads.size());
    payloads.push_back(terms[i].alpha);
    if (terms[i].kind == TermKind::Release) {
      payload_of[i].second = static_cast<int>(payloads.size());
      payloads.push_back(terms[i].beta);
    }
  }
  detail::PastTracker tracker(alphabet, payloads);

  // optimistic and/or tree over term statuses
  std::function<bool(const CanonicalFormula::Node*, const std::vector<std::uint8_t>&,
                     std::size_t&)>
      tree_val = [&](const CanonicalFormula::Node* n,
                     const std::vector<std::uint8_t>& st, std::size_t& next) -> bool {
    if (n->kind == CanonicalFormula::Node::Term)
      return st[next++] != static_cast<std::uint8_t>(TermStatus::Violated);
    bool l = tree_val(n->left.get(), st, next);
    bool r = tree_val(n->right.get(), st, next);
    return n->kind == CanonicalFormula::Node::And ? (l && r) : (l || r);
  };
  auto tree_alive = [&](const std::vector<std::uint8_t>& st) {
    std::size_t i = 0;
    return tree_val(&c.root(), st, i);
  };

  std::size_t cmax = c.max_offset();

  struct StateData {
    std::uint32_t counter;  // saturates at cmax+1
    std::vector<std::uint8_t> status;
    std::vector<char> mem;
    bool started;
  };
  auto key_of = [](const StateData& s) {
    std::string k;
    k.push_back(static_cast<char>(s.started ? 1 : 0));
    k += std::to_string(s.counter);
    k.push_back('#');
    k.append(reinterpret_cast<const char*>(s.status.data()), s.status.size());
    k.append(s.mem.begin(), s.mem.end());
    return k;
  };

  SafetyMonitor m;
  m.alphabet = alphabet;

  std::vector<StateData> states;
  std::map<std::string, std::uint32_t> index;
  auto add = [&](StateData s, bool rej) {
    std::string k = rej ? std::string("!reject") : key_of(s);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (states.size() >= max_states)
      throw ResourceLimitError("safety monitor exceeded the state limit");
    std::uint32_t id = static_cast<std::uint32_t>(states.size());
    states.push_back(std::move(s));
    index.emplace(std::move(k), id);
    m.reject.push_back(rej);
    m.term_status.push_back(rej ? std::vector<std::uint8_t>(
                                      terms.size(),
                                      static_cast<std::uint8_t>(TermStatus::Violated))
                                : states[id].status);
    return id;
  };

  std::size_t nl = alphabet.letter_count();
  m.initial = add(
      {0,
       std::vector<std::uint8_t>(terms.size(),
                                 static_cast<std::uint8_t>(TermStatus::Pending)),
       tracker.initial_memory(), false},
      false);
  std::deque<std::uint32_t> queue{m.initial};
  std::vector<char> cur;
  std::optional<std::uint32_t> sink;
  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    if (m.delta.size() <= s) m.delta.resize(states.size());
    if (!m.delta[s].empty()) continue;
    m.delta[s].assign(nl, 0);
    if (m.reject[s]) {
      for (std::size_t l = 0; l < nl; ++l) m.delta[s][l] = s;  // absorbing
      continue;
    }
    for (std::size_t l = 0; l < nl; ++l) {
      StateData nxt = states[s];
      tracker.step(nxt.mem, nxt.started, static_cast<Letter>(l), cur);
      nxt.started = true;
      std::size_t n = states[s].counter;  // position of this letter
      for (std::size_t t = 0; t < terms.size(); ++t) {
        if (nxt.status[t] != static_cast<std::uint8_t>(TermStatus::Pending)) continue;
        const CanonicalTerm& term = terms[t];
        if (n < term.offset) continue;
        bool a = tracker.root_value(cur, static_cast<std::size_t>(payload_of[t].first));
        switch (term.kind) {
          case TermKind::Point:
            if (n == term.offset)
              nxt.status[t] = static_cast<std::uint8_t>(a ? TermStatus::Settled
                                                          : TermStatus::Violated);
            break;
          case TermKind::Always:
            if (!a) nxt.status[t] = static_cast<std::uint8_t>(TermStatus::Violated);
            break;
          case TermKind::Release: {
            bool b = tracker.root_value(cur,
                                        static_cast<std::size_t>(payload_of[t].second));
            if (!b)
              nxt.status[t] = static_cast<std::uint8_t>(TermStatus::Violated);
            else if (a)
              nxt.status[t] = static_cast<std::uint8_t>(TermStatus::Settled);
            break;
          }
        }
      }
      nxt.counter = static_cast<std::uint32_t>(
          std::min<std::size_t>(n + 1, cmax + 1));
      bool alive = tree_alive(nxt.status);
      std::uint32_t t_state;
      if (!alive) {
        if (!sink) {
          std::size_t before = states.size();
          sink = add(std::move(nxt), true);
          if (states.size() > before) queue.push_back(*sink);
        }
        t_state = *sink;
      } else {
        std::size_t before = states.size();
        t_state = add(std::move(nxt), false);
        if (states.size() > before) queue.push_back(t_state);
      }
      m.delta[s][l] = t_state;
    }
  }
  m.delta.resize(states.size());
  for (auto& row : m.delta)
    if (row.empty()) row.assign(nl, 0);
  return m;
}

// ── formula recognition for the term machine ───────────────────────────────

inline std::optional<CanonicalTerm> term_from_formula(const Formula& f) {
  std::size_t offset = 0;
  const Formula* g = &f;
  while (g->op() == Op::Next) {
    ++offset;
    g = &g->child(0);
  }
  if (g->op() == Op::Globally && is_pure_past(g->child(0)))
    return CanonicalTerm::always_term(offset, g->child(0));
  if (g->op() == Op::Release && is_pure_past(g->lhs()) && is_pure_past(g->rhs()))
    return CanonicalTerm::release_term(offset, g->lhs(), g->rhs());
  if (is_pure_past(*g)) return CanonicalTerm::point(offset, *g);
  return std::nullopt;
}

// Def. 2.4 shape (and/or tree over the three term shapes, pure-past payloads)
inline std::optional<CanonicalFormula> canonical_from_formula(const Formula& f) {
  if (auto t = term_from_formula(f)) return CanonicalFormula::term(std::move(*t));
  if (f.op() == Op::And || f.op() == Op::Or) {
    auto l = canonical_from_formula(f.lhs());
    if (!l) return std::nullopt;
    auto r = canonical_from_formula(f.rhs());
    if (!r) return std::nullopt;
    return f.op() == Op::And
               ? CanonicalFormula::conj(std::move(*l), std::move(*r))
               : CanonicalFormula::disj(std::move(*l), std::move(*r));
  }
  return std::nullopt;
}

// Term machine for a formula already in canonical / G-alpha shape.
inline SafetyMonitor compile_safety(const Alphabet& alphabet, const Formula& f,
                                    std::size_t max_states = detail::kDefaultMaxStates) {
  auto c = canonical_from_formula(f);
  if (!c)
    throw std::invalid_argument(
        "compile_safety requires a canonical formula or G over a pure past body");
  return compile_safety(alphabet, *c, max_states);
}

// ── obligation progression (general syntactically-safe formulas) ────────────

inline SafetyMonitor compile_progression(const Alphabet& alphabet, const Formula& input,
                                         std::size_t max_states = detail::kDefaultMaxStates) {
  detail::check_alphabet_size(alphabet);
  Formula f = nnf(expand_shortcuts(input));
  if (contains_op(f, Op::Until) || contains_op(f, Op::Eventually))
    throw std::invalid_argument(
        "progression monitor requires a formula whose negated normal form has no U/F");

  // maximal pure-past subformulas become tracked atoms
  std::vector<Formula> atoms;
  std::unordered_map<Formula, int, FormulaHash> atom_index;
  std::function<void(const Formula&)> collect = [&](const Formula& g) {
    if (is_pure_past(g)) {
      if (atom_index.emplace(g, static_cast<int>(atoms.size())).second)
        atoms.push_back(g);
      return;
    }
    if (is_past_op(g.op()))
      throw std::invalid_argument(
          "past operator over a future operand is not monitorable here");
    for (std::size_t i = 0; i < g.arity(); ++i) collect(g.child(i));
  };
  collect(f);
  detail::PastTracker tracker(alphabet, atoms);

  // obligations are formula nodes, interned structurally
  std::vector<Formula> obligations;
  std::unordered_map<Formula, int, FormulaHash> ob_index;
  auto ob = [&](const Formula& g) {
    auto it = ob_index.find(g);
    if (it != ob_index.end()) return it->second;
    int id = static_cast<int>(obligations.size());
    obligations.push_back(g);
    ob_index.emplace(g, id);
    return id;
  };

  using Branch = std::vector<int>;  // sorted obligation ids, conjunctive
  using Dnf = std::vector<Branch>;  // union of branches

  auto branch_and = [](const Branch& x, const Branch& y) {
    Branch out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
  };
  auto minimize = [](Dnf d) {
    std::sort(d.begin(), d.end(), [](const Branch& x, const Branch& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    Dnf out;
    for (const auto& b : d) {
      bool subsumed = false;
      for (const auto& kept : out) {
        if (std::includes(b.begin(), b.end(), kept.begin(), kept.end())) {
          subsumed = true;
          break;
        }
      }
      if (!subsumed) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto dnf_or = [&](Dnf a, const Dnf& b) {
    a.insert(a.end(), b.begin(), b.end());
    return minimize(std::move(a));
  };
  auto dnf_and = [&](const Dnf& a, const Dnf& b) {
    Dnf out;
    if (a.size() * b.size() > 4096)
      throw ResourceLimitError("progression branch blowup");
    for (const auto& x : a)
      for (const auto& y : b) out.push_back(branch_and(x, y));
    return minimize(std::move(out));
  };
  const Dnf kTop = {{}};
  const Dnf kBottom = {};

  // `g` is taken by value: interning below may grow the obligation vector,
  // which would invalidate references into it
  std::function<Dnf(Formula, const std::vector<char>&)> prog =
      [&](Formula g, const std::vector<char>& atom_vals) -> Dnf {
    auto at = atom_index.find(g);
    if (at != atom_index.end())
      return atom_vals[static_cast<std::size_t>(at->second)] ? kTop : kBottom;
    switch (g.op()) {
      case Op::And: return dnf_and(prog(g.lhs(), atom_vals), prog(g.rhs(), atom_vals));
      case Op::Or: return dnf_or(prog(g.lhs(), atom_vals), prog(g.rhs(), atom_vals));
      case Op::Next: return Dnf{{ob(g.child(0))}};
      case Op::Globally:
        return dnf_and(prog(g.child(0), atom_vals), Dnf{{ob(g)}});
      case Op::Release:
        return dnf_and(prog(g.rhs(), atom_vals),
                       dnf_or(prog(g.lhs(), atom_vals), Dnf{{ob(g)}}));
      default:
        throw std::logic_error("unexpected operator in progression");
    }
  };

  struct StateData {
    Dnf antichain;
    std::vector<char> mem;
    bool started;
  };
  auto key_of = [](const StateData& s) {
    std::string k(s.started ? "1" : "0");
    for (const auto& b : s.antichain) {
      k += '[';
      for (int o : b) k += std::to_string(o) + ',';
      k += ']';
    }
    k += '#';
    k.append(s.mem.begin(), s.mem.end());
    return k;
  };

  SafetyMonitor m;
  m.alphabet = alphabet;
  std::vector<StateData> states;
  std::map<std::string, std::uint32_t> index;
  auto add = [&](StateData s, bool rej) {
    std::string k = rej ? std::string("!reject") : key_of(s);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (states.size() >= max_states)
      throw ResourceLimitError("safety monitor exceeded the state limit");
    std::uint32_t id = static_cast<std::uint32_t>(states.size());
    states.push_back(std::move(s));
    index.emplace(std::move(k), id);
    m.reject.push_back(rej);
    return id;
  };

  std::size_t nl = alphabet.letter_count();
  m.initial = add({Dnf{{ob(f)}}, tracker.initial_memory(), false}, false);
  std::deque<std::uint32_t> queue{m.initial};
  std::vector<char> cur;
  std::optional<std::uint32_t> sink;
  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    if (m.delta.size() <= s) m.delta.resize(states.size());
    if (!m.delta[s].empty()) continue;
    m.delta[s].assign(nl, 0);
    if (m.reject[s]) {
      for (std::size_t l = 0; l < nl; ++l) m.delta[s][l] = s;
      continue;
    }
    for (std::size_t l = 0; l < nl; ++l) {
      StateData nxt;
      nxt.mem = states[s].mem;
      tracker.step(nxt.mem, states[s].started, static_cast<Letter>(l), cur);
      nxt.started = true;
      std::vector<char> atom_vals(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i)
        atom_vals[i] = tracker.root_value(cur, i);
      Dnf next_anti;
      for (const Branch& b : states[s].antichain) {
        Dnf branch_result = kTop;
        for (int o : b) {
          branch_result =
              dnf_and(branch_result, prog(obligations[static_cast<std::size_t>(o)],
                                          atom_vals));
          if (branch_result.empty()) break;
        }
        next_anti = dnf_or(std::move(next_anti), branch_result);
      }
      std::uint32_t t_state;
      if (next_anti.empty()) {
        if (!sink) {
          std::size_t before = states.size();
          sink = add({Dnf{}, {}, true}, true);
          if (states.size() > before) queue.push_back(*sink);
        }
        t_state = *sink;
      } else {
        nxt.antichain = std::move(next_anti);
        std::size_t before = states.size();
        t_state = add(std::move(nxt), false);
        if (states.size() > before) queue.push_back(t_state);
      }
      m.delta[s][l] = t_state;
    }
  }
  m.delta.resize(states.size());
  for (auto& row : m.delta)
    if (row.empty()) row.assign(nl, 0);
  return m;
}

// Monitor for any supported formula: the term machine when the input is
// already canonical / G-alpha, the canonicalizer route for LTLEBR+P, and
// obligation progression for the remaining syntactically-safe formulas.
inline SafetyMonitor monitor_for(const Alphabet& alphabet, const Formula& f,
                                 std::size_t max_states = detail::kDefaultMaxStates) {
  if (canonical_from_formula(f)) return compile_safety(alphabet, f, max_states);
  if (is_ltlebrp(f))
    return compile_safety(alphabet, canonicalize(f).canonical, max_states);
  return compile_progression(alphabet, f, max_states);
}

// ── containment and equivalence ─────────────────────────────────────────────

struct Counterexample {
  LassoWord word;
  enum class Side { Left, Right } holds_in;
};

struct ContainsResult {
  bool contained = false;
  std::optional<Counterexample> cex;
};

struct EquivResult {
  bool equivalent = false;
  std::optional<Counterexample> cex;
};

// states from which reject is avoidable forever (greatest fixpoint)
inline std::vector<char> viable_states(const SafetyMonitor& m) {
  std::vector<char> viable(m.state_count());
  for (std::size_t s = 0; s < m.state_count(); ++s) viable[s] = !m.reject[s];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < m.state_count(); ++s) {
      if (!viable[s]) continue;
      bool ok = false;
      for (std::uint32_t t : m.delta[s])
        if (viable[t]) {
          ok = true;
          break;
        }
      if (!ok) {
        viable[s] = false;
        changed = true;
      }
    }
  }
  return viable;
}

// L(A) subset of L(B)?
inline ContainsResult contains(const SafetyMonitor& A, const SafetyMonitor& B) {
  if (A.alphabet != B.alphabet)
    throw std::invalid_argument("containment requires a common alphabet");
  std::vector<char> viable = viable_states(A);
  std::size_t nl = A.alphabet.letter_count();

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::pair<std::uint32_t, Letter>> parent;  // BFS tree
  auto add = [&](std::uint32_t a, std::uint32_t b, std::uint32_t from, Letter via) {
    auto it = index.find({a, b});
    if (it != index.end()) return std::pair<std::uint32_t, bool>{it->second, false};
    std::uint32_t id = static_cast<std::uint32_t>(pairs.size());
    index.emplace(std::make_pair(a, b), id);
    pairs.emplace_back(a, b);
    parent.emplace_back(from, via);
    return std::pair<std::uint32_t, bool>{id, true};
  };

  auto [root, fresh] = add(A.initial, B.initial, 0, 0);
  (void)fresh;
  std::deque<std::uint32_t> queue{root};
  while (!queue.empty()) {
    std::uint32_t id = queue.front();
    queue.pop_front();
    auto [a, b] = pairs[id];
    if (B.reject[b] && viable[a]) {
      // stem: letters from the BFS tree
      std::vector<Letter> stem;
      for (std::uint32_t at = id; at != root; at = parent[at].first)
        stem.push_back(parent[at].second);
      std::reverse(stem.begin(), stem.end());
      // extend through viable successors of A until a state repeats
      std::vector<Letter> walk;
      std::map<std::uint32_t, std::size_t> seen;
      std::uint32_t cur = a;
      while (!seen.count(cur)) {
        seen[cur] = walk.size();
        for (std::size_t l = 0; l < nl; ++l) {
          if (viable[A.delta[cur][l]]) {
            walk.push_back(static_cast<Letter>(l));
            cur = A.delta[cur][l];
            break;
          }
        }
      }
      std::size_t k = seen[cur];
      stem.insert(stem.end(), walk.begin(), walk.begin() + static_cast<long>(k));
      std::vector<Letter> loop(walk.begin() + static_cast<long>(k), walk.end());
      ContainsResult r;
      r.contained = false;
      r.cex = Counterexample{LassoWord(A.alphabet, std::move(stem), std::move(loop)),
                             Counterexample::Side::Left};
      return r;
    }
    if (A.reject[a] && B.reject[b]) continue;  // both absorbing, nothing new
    for (std::size_t l = 0; l < nl; ++l) {
      auto [nid, added] =
          add(A.delta[a][l], B.delta[b][l], id, static_cast<Letter>(l));
      if (added) queue.push_back(nid);
    }
  }
  return {true, std::nullopt};
}

inline EquivResult equivalent(const SafetyMonitor& A, const SafetyMonitor& B) {
  ContainsResult ab = contains(A, B);
  if (!ab.contained) return {false, ab.cex};  // word holds on the left only
  ContainsResult ba = contains(B, A);
  if (!ba.contained) {
    ba.cex->holds_in = Counterexample::Side::Right;
    return {false, ba.cex};
  }
  return {true, std::nullopt};
}

}  // namespace ltlp
