// ltlp/formula.hpp — abstract syntax for LTL with past.
//
// Formulas are immutable trees with subtree sharing.  Structural equality
// and hashing are the identity used everywhere (generator dedup, memo
// tables), so every node caches its hash at construction.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlp {

enum class Op : std::uint8_t {
  // atoms
  True,
  False,
  Prop,
  // boolean connectives
  Not,
  And,
  Or,
  Implies,
  // future temporal operators
  Next,
  Until,
  Release,
  Eventually,
  Globally,
  BoundedUntil,
  // past temporal operators
  Yesterday,
  WeakYesterday,
  Since,
  Triggered,
  Once,
  Historically,
  BoundedSince,
};

inline const char* op_name(Op op) {
  switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Prop: return "prop";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Next: return "X";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::Eventually: return "F";
    case Op::Globally: return "G";
    case Op::BoundedUntil: return "U[]";
    case Op::Yesterday: return "Y";
    case Op::WeakYesterday: return "Z";
    case Op::Since: return "S";
    case Op::Triggered: return "T";
    case Op::Once: return "O";
    case Op::Historically: return "H";
    case Op::BoundedSince: return "S[]";
  }
  return "?";
}

inline bool is_unary(Op op) {
  switch (op) {
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::Once:
    case Op::Historically:
      return true;
    default:
      return false;
  }
}

inline bool is_binary(Op op) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::Release:
    case Op::BoundedUntil:
    case Op::Since:
    case Op::Triggered:
    case Op::BoundedSince:
      return true;
    default:
      return false;
  }
}

inline bool is_future_op(Op op) {
  switch (op) {
    case Op::Next:
    case Op::Until:
    case Op::Release:
    case Op::Eventually:
    case Op::Globally:
    case Op::BoundedUntil:
      return true;
    default:
      return false;
  }
}

inline bool is_past_op(Op op) {
  switch (op) {
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::Since:
    case Op::Triggered:
    case Op::Once:
    case Op::Historically:
    case Op::BoundedSince:
      return true;
    default:
      return false;
  }
}

inline bool is_bounded_op(Op op) {
  return op == Op::BoundedUntil || op == Op::BoundedSince;
}

class Formula {
 public:
  struct Node {
    Op op;
    std::string name;               // Prop only
    std::uint32_t lo = 0, hi = 0;   // BoundedUntil/BoundedSince only
    std::vector<Formula> kids;
    std::size_t hash = 0;
  };

  Formula() = default;  // empty handle; only valid after assignment

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  std::uint32_t lo() const { return node_->lo; }
  std::uint32_t hi() const { return node_->hi; }
  std::size_t arity() const { return node_->kids.size(); }
  const Formula& child(std::size_t i) const { return node_->kids[i]; }
  const Formula& lhs() const { return node_->kids[0]; }
  const Formula& rhs() const { return node_->kids[1]; }
  std::size_t hash() const { return node_->hash; }
  const Node* id() const { return node_.get(); }
  bool valid() const { return node_ != nullptr; }

  bool operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    return equal(*node_, *other.node_);
  }
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // node count
  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& k : node_->kids) n += k.size();
    return n;
  }

  static Formula make(Op op, std::vector<Formula> kids, std::string name = {},
                      std::uint32_t lo = 0, std::uint32_t hi = 0) {
    if (is_bounded_op(op) && lo > hi)
      throw std::invalid_argument("malformed bound: lower bound exceeds upper bound");
    auto node = std::make_shared<Node>();
    node->op = op;
    node->name = std::move(name);
    node->lo = lo;
    node->hi = hi;
    node->kids = std::move(kids);
    std::size_t h = static_cast<std::size_t>(op) * 0x9e3779b97f4a7c15ull;
    h = mix(h, std::hash<std::string>{}(node->name));
    h = mix(h, node->lo);
    h = mix(h, node->hi);
    for (const auto& k : node->kids) h = mix(h, k.hash());
    node->hash = h;
    return Formula(std::move(node));
  }

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  }

  static bool equal(const Node& a, const Node& b) {
    if (a.hash != b.hash || a.op != b.op || a.lo != b.lo || a.hi != b.hi ||
        a.name != b.name || a.kids.size() != b.kids.size())
      return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
      if (a.kids[i] != b.kids[i]) return false;
    return true;
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ── factories ───────────────────────────────────────────────────────────────

inline Formula tt() {
  static const Formula f = Formula::make(Op::True, {});
  return f;
}
inline Formula ff() {
  static const Formula f = Formula::make(Op::False, {});
  return f;
}
inline Formula prop(std::string name) {
  return Formula::make(Op::Prop, {}, std::move(name));
}
inline Formula lnot(Formula a) { return Formula::make(Op::Not, {std::move(a)}); }
inline Formula land(Formula a, Formula b) {
  return Formula::make(Op::And, {std::move(a), std::move(b)});
}
inline Formula lor(Formula a, Formula b) {
  return Formula::make(Op::Or, {std::move(a), std::move(b)});
}
inline Formula implies(Formula a, Formula b) {
  return Formula::make(Op::Implies, {std::move(a), std::move(b)});
}
inline Formula next(Formula a) { return Formula::make(Op::Next, {std::move(a)}); }
inline Formula until(Formula a, Formula b) {
  return Formula::make(Op::Until, {std::move(a), std::move(b)});
}
inline Formula release(Formula a, Formula b) {
  return Formula::make(Op::Release, {std::move(a), std::move(b)});
}
inline Formula eventually(Formula a) {
  return Formula::make(Op::Eventually, {std::move(a)});
}
inline Formula always(Formula a) {
  return Formula::make(Op::Globally, {std::move(a)});
}
inline Formula bounded_until(std::uint32_t lo, std::uint32_t hi, Formula a, Formula b) {
  return Formula::make(Op::BoundedUntil, {std::move(a), std::move(b)}, {}, lo, hi);
}
inline Formula yesterday(Formula a) {
  return Formula::make(Op::Yesterday, {std::move(a)});
}
inline Formula weak_yesterday(Formula a) {
  return Formula::make(Op::WeakYesterday, {std::move(a)});
}
inline Formula since_(Formula a, Formula b) {
  return Formula::make(Op::Since, {std::move(a), std::move(b)});
}
inline Formula triggered(Formula a, Formula b) {
  return Formula::make(Op::Triggered, {std::move(a), std::move(b)});
}
inline Formula once(Formula a) { return Formula::make(Op::Once, {std::move(a)}); }
inline Formula historically(Formula a) {
  return Formula::make(Op::Historically, {std::move(a)});
}
inline Formula bounded_since(std::uint32_t lo, std::uint32_t hi, Formula a, Formula b) {
  return Formula::make(Op::BoundedSince, {std::move(a), std::move(b)}, {}, lo, hi);
}

inline Formula next_n(std::size_t n, Formula a) {
  for (std::size_t i = 0; i < n; ++i) a = next(std::move(a));
  return a;
}
inline Formula yesterday_n(std::size_t n, Formula a) {
  for (std::size_t i = 0; i < n; ++i) a = yesterday(std::move(a));
  return a;
}

// ── traversal helpers ───────────────────────────────────────────────────────

template <typename Fn>
void for_each_node(const Formula& f, Fn&& fn) {
  fn(f);
  for (std::size_t i = 0; i < f.arity(); ++i) for_each_node(f.child(i), fn);
}

inline bool contains_op(const Formula& f, Op op) {
  if (f.op() == op) return true;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (contains_op(f.child(i), op)) return true;
  return false;
}

inline bool contains_past(const Formula& f) {
  if (is_past_op(f.op())) return true;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (contains_past(f.child(i))) return true;
  return false;
}

inline bool contains_future(const Formula& f) {
  if (is_future_op(f.op())) return true;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (contains_future(f.child(i))) return true;
  return false;
}

// max nesting of X
inline std::size_t next_depth(const Formula& f) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < f.arity(); ++i)
    m = std::max(m, next_depth(f.child(i)));
  return f.op() == Op::Next ? m + 1 : m;
}

// ── printer ─────────────────────────────────────────────────────────────────
//
// Emits the concrete grammar with minimal parentheses.  parse(print(f)) is
// structurally equal to f; associativity decides parenthesization on the
// ambiguous side (& | left-associative, -> U R S T right-associative).

namespace detail {

inline int precedence(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until:
    case Op::Release:
    case Op::Since:
    case Op::Triggered:
    case Op::BoundedUntil:
    case Op::BoundedSince: return 4;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::Once:
    case Op::Historically: return 5;
    default: return 6;
  }
}

inline bool right_assoc(Op op) { return precedence(op) == 4 || op == Op::Implies; }

inline void print_rec(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Prop: out += f.name(); return;
    default: break;
  }
  if (is_unary(f.op())) {
    const char* sym = "";
    switch (f.op()) {
      case Op::Not: sym = "!"; break;
      case Op::Next: sym = "X"; break;
      case Op::Eventually: sym = "F"; break;
      case Op::Globally: sym = "G"; break;
      case Op::Yesterday: sym = "Y"; break;
      case Op::WeakYesterday: sym = "Z"; break;
      case Op::Once: sym = "O"; break;
      case Op::Historically: sym = "H"; break;
      default: break;
    }
    out += sym;
    out += ' ';
    const Formula& c = f.child(0);
    bool atomic_child = c.op() == Op::Prop || c.op() == Op::True || c.op() == Op::False;
    if (atomic_child) {
      print_rec(c, out);
    } else {
      out += '(';
      print_rec(c, out);
      out += ')';
    }
    return;
  }
  // binary infix
  int p = precedence(f.op());
  bool ra = right_assoc(f.op());
  auto side = [&](const Formula& c, bool assoc_side) {
    int cp = precedence(c.op());
    bool need = assoc_side ? cp < p : cp <= p;
    if (need) out += '(';
    print_rec(c, out);
    if (need) out += ')';
  };
  side(f.lhs(), /*assoc_side=*/!ra);
  out += ' ';
  switch (f.op()) {
    case Op::And: out += '&'; break;
    case Op::Or: out += '|'; break;
    case Op::Implies: out += "->"; break;
    case Op::Until: out += 'U'; break;
    case Op::Release: out += 'R'; break;
    case Op::Since: out += 'S'; break;
    case Op::Triggered: out += 'T'; break;
    case Op::BoundedUntil:
      out += "U[" + std::to_string(f.lo()) + ',' + std::to_string(f.hi()) + ']';
      break;
    case Op::BoundedSince:
      out += "S[" + std::to_string(f.lo()) + ',' + std::to_string(f.hi()) + ']';
      break;
    default: break;
  }
  out += ' ';
  side(f.rhs(), /*assoc_side=*/ra);
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_rec(f, out);
  return out;
}

}  // namespace ltlp
