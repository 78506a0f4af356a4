// ltlp/canonical.hpp — canonical form and the G-alpha route.
//
// A canonical formula is an and/or tree whose leaves are the three term
// shapes
//
//     X^i a          point term
//     X^i G a        always term
//     X^i (a R b)    release term
//
// with pure-past payloads.  canonicalize() rewrites any formula accepted by
// the LTLEBR+P layering into this shape, language-preserving; the rewrite
// count stays linear because every step either pastifies a bounded-future
// formula in place or moves an X across the tree.
//
// Payload boundedness: pastification introduces only yesterday chains, so a
// past-free input yields bounded-past payloads except through the
// nested-release rule, whose payload needs unbounded lookback (an
// O/S-encoded release point).  CanonicalFormula::bounded_payloads() reports
// which of the two restrictions the result satisfies.

#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "ltlp/eval.hpp"
#include "ltlp/fragments.hpp"

namespace ltlp {

enum class TermKind { Point, Always, Release };

struct CanonicalTerm {
  TermKind kind;
  std::size_t offset = 0;  // X-prefix length
  Formula alpha;
  Formula beta;  // Release only

  static CanonicalTerm point(std::size_t i, Formula a) {
    check_payload(a);
    return {TermKind::Point, i, std::move(a), {}};
  }
  static CanonicalTerm always_term(std::size_t i, Formula a) {
    check_payload(a);
    return {TermKind::Always, i, std::move(a), {}};
  }
  static CanonicalTerm release_term(std::size_t i, Formula a, Formula b) {
    check_payload(a);
    check_payload(b);
    return {TermKind::Release, i, std::move(a), std::move(b)};
  }

  bool bounded() const {
    if (!is_bounded_past(alpha)) return false;
    return kind != TermKind::Release || is_bounded_past(beta);
  }

  Formula to_formula() const {
    switch (kind) {
      case TermKind::Point: return next_n(offset, alpha);
      case TermKind::Always: return next_n(offset, always(alpha));
      case TermKind::Release: return next_n(offset, release(alpha, beta));
    }
    throw std::logic_error("bad term kind");
  }

 private:
  static void check_payload(const Formula& p) {
    if (!is_pure_past(p))
      throw std::invalid_argument("canonical term payload must be pure past");
  }
};

class CanonicalFormula {
 public:
  struct Node {
    enum Kind { Term, And, Or } kind;
    CanonicalTerm term{TermKind::Point, 0, {}, {}};
    std::shared_ptr<const Node> left, right;
  };

  static CanonicalFormula term(CanonicalTerm t) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Term;
    n->term = std::move(t);
    return CanonicalFormula(std::move(n));
  }
  static CanonicalFormula conj(CanonicalFormula a, CanonicalFormula b) {
    return combine(Node::And, std::move(a), std::move(b));
  }
  static CanonicalFormula disj(CanonicalFormula a, CanonicalFormula b) {
    return combine(Node::Or, std::move(a), std::move(b));
  }
  // view over an existing subtree
  static CanonicalFormula over(std::shared_ptr<const Node> n) {
    return CanonicalFormula(std::move(n));
  }

  const Node& root() const { return *root_; }

  template <typename Fn>
  void for_each_term(Fn&& fn) const {
    walk(root_.get(), fn);
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for_each_term([&](const CanonicalTerm&) { ++n; });
    return n;
  }

  // true when every payload is bounded past (the canLTLEBR restriction)
  bool bounded_payloads() const {
    bool ok = true;
    for_each_term([&](const CanonicalTerm& t) { ok = ok && t.bounded(); });
    return ok;
  }

  std::size_t max_offset() const {
    std::size_t m = 0;
    for_each_term([&](const CanonicalTerm& t) { m = std::max(m, t.offset); });
    return m;
  }

  Formula to_formula() const {
    std::function<Formula(const Node*)> rec = [&](const Node* n) -> Formula {
      switch (n->kind) {
        case Node::Term: return n->term.to_formula();
        case Node::And: return land(rec(n->left.get()), rec(n->right.get()));
        case Node::Or: return lor(rec(n->left.get()), rec(n->right.get()));
      }
      throw std::logic_error("bad canonical node");
    };
    return rec(root_.get());
  }

  // increment every term offset (X distributes over the and/or tree)
  CanonicalFormula shifted(std::size_t by) const {
    std::function<std::shared_ptr<Node>(const Node*)> rec =
        [&](const Node* n) -> std::shared_ptr<Node> {
      auto out = std::make_shared<Node>(*n);
      if (n->kind == Node::Term) {
        out->term.offset += by;
      } else {
        out->left = rec(n->left.get());
        out->right = rec(n->right.get());
      }
      return out;
    };
    return CanonicalFormula(rec(root_.get()));
  }

 private:
  explicit CanonicalFormula(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static CanonicalFormula combine(Node::Kind k, CanonicalFormula a, CanonicalFormula b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->left = a.root_;
    n->right = b.root_;
    return CanonicalFormula(std::move(n));
  }

  template <typename Fn>
  static void walk(const Node* n, Fn& fn) {
    if (n->kind == Node::Term) {
      fn(n->term);
    } else {
      walk(n->left.get(), fn);
      walk(n->right.get(), fn);
    }
  }

  std::shared_ptr<const Node> root_;
};

inline std::string to_string(const CanonicalFormula& c) { return to_string(c.to_formula()); }

// ── pastification ───────────────────────────────────────────────────────────

namespace detail {

// Core rules on an expanded bounded-future formula.  shift is the number of
// positions the evaluation point moves forward; every rule keeps the
// invariant  eval(w, t+shift, out) = eval(w, t, in)  for t >= 0.
inline Formula pastify_core(const Formula& f, std::size_t shift) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Prop:
      return yesterday_n(shift, f);
    case Op::Not:
      return lnot(pastify_core(f.child(0), shift));
    case Op::And:
      return land(pastify_core(f.lhs(), shift), pastify_core(f.rhs(), shift));
    case Op::Or:
      return lor(pastify_core(f.lhs(), shift), pastify_core(f.rhs(), shift));
    case Op::Next:
      if (shift == 0) throw std::logic_error("pastify shift exhausted below an X");
      return pastify_core(f.child(0), shift - 1);
    default:
      if (is_pure_past(f)) return yesterday_n(shift, f);
      throw std::invalid_argument("pastify requires a bounded-future formula");
  }
}

}  // namespace detail

// Rewrites a bounded-future-layer formula into a pure-past one that holds
// at t+k exactly when the input holds at t.  Requires k >= next_depth.
inline Formula pastify(const Formula& f, std::size_t k) {
  Formula e = expand_shortcuts(f);
  if (k < next_depth(e))
    throw std::invalid_argument("pastify shift is smaller than the next-operator depth");
  if (!is_bounded_future_layer(e))
    throw std::invalid_argument("pastify requires a bounded-future-layer formula");
  return detail::pastify_core(e, k);
}

// ── canonicalization ────────────────────────────────────────────────────────

struct CanonicalizeResult {
  CanonicalFormula canonical;
  std::vector<std::string> trace;  // applied rules, in application order
};

namespace detail {

class Canonicalizer {
 public:
  CanonicalizeResult run(const Formula& input) {
    if (!is_ltlebrp(input))
      throw std::invalid_argument("canonicalize requires an LTLEBR+P formula");
    Formula e = expand_shortcuts(input);
    note("expand-shortcuts", e);
    CanonicalFormula c = chi(e);
    return {std::move(c), std::move(trace_)};
  }

 private:
  void note(const std::string& rule, const Formula& at) {
    trace_.push_back(rule + ": " + to_string(at));
  }
  void note(const std::string& rule) { trace_.push_back(rule); }

  // term constructors with constant folding; degenerate payloads collapse
  // to plain point terms so that trivial releases never survive
  static std::optional<bool> const_value(const CanonicalFormula& c) {
    if (c.root().kind != CanonicalFormula::Node::Term) return std::nullopt;
    const CanonicalTerm& t = c.root().term;
    if (t.kind != TermKind::Point) return std::nullopt;
    if (t.alpha.op() == Op::True) return true;
    if (t.alpha.op() == Op::False) return false;
    return std::nullopt;
  }
  static CanonicalFormula make_point(std::size_t i, Formula a) {
    a = fold_constants(a);
    if (a.op() == Op::True || a.op() == Op::False) i = 0;
    return CanonicalFormula::term(CanonicalTerm::point(i, std::move(a)));
  }
  static CanonicalFormula make_always(std::size_t i, Formula a) {
    a = fold_constants(a);
    if (a.op() == Op::True || a.op() == Op::False)
      return make_point(0, std::move(a));
    return CanonicalFormula::term(CanonicalTerm::always_term(i, std::move(a)));
  }
  static CanonicalFormula make_release(std::size_t i, Formula a, Formula b) {
    a = fold_constants(a);
    b = fold_constants(b);
    if (b.op() == Op::True || b.op() == Op::False) return make_point(0, std::move(b));
    if (a.op() == Op::False) return make_always(i, std::move(b));
    // when the right side forces the left, the release fires at position i
    // or not at all: a R b == b
    if (a.op() == Op::True || pointwise_valid(implies(b, a)))
      return make_point(i, std::move(b));
    // when the left excludes the right, the release can never fire before
    // the first b-failure: a R b == G b
    if (pointwise_valid(implies(a, lnot(b)))) return make_always(i, std::move(b));
    return CanonicalFormula::term(
        CanonicalTerm::release_term(i, std::move(a), std::move(b)));
  }
  static CanonicalFormula conj_s(CanonicalFormula a, CanonicalFormula b) {
    if (auto va = const_value(a)) return *va ? b : a;
    if (auto vb = const_value(b)) return *vb ? a : b;
    return CanonicalFormula::conj(std::move(a), std::move(b));
  }
  static CanonicalFormula disj_s(CanonicalFormula a, CanonicalFormula b) {
    if (auto va = const_value(a)) return *va ? a : b;
    if (auto vb = const_value(b)) return *vb ? b : a;
    return CanonicalFormula::disj(std::move(a), std::move(b));
  }

  // boolean layer: and/or tree over future-layer formulas
  CanonicalFormula chi(const Formula& f) {
    if (!is_future_layer(f) && (f.op() == Op::And || f.op() == Op::Or)) {
      CanonicalFormula l = chi(f.lhs());
      CanonicalFormula r = chi(f.rhs());
      return f.op() == Op::And ? conj_s(std::move(l), std::move(r))
                               : disj_s(std::move(l), std::move(r));
    }
    return phi(f);
  }

  // future layer: produces an and-tree of terms
  CanonicalFormula phi(const Formula& f) {
    if (is_bounded_future_layer(f)) {
      std::size_t m = next_depth(f);
      note("point(pastify " + std::to_string(m) + ")", f);
      return make_point(m, detail::pastify_core(f, m));
    }
    switch (f.op()) {
      case Op::And: {
        CanonicalFormula l = phi(f.lhs());
        CanonicalFormula r = phi(f.rhs());
        return conj_s(std::move(l), std::move(r));
      }
      case Op::Next: {
        note("X-distribution", f);
        return phi(f.child(0)).shifted(1);
      }
      case Op::Globally:
        return apply_globally(phi(f.child(0)), f);
      case Op::Release:
        return apply_release(f.lhs(), phi(f.rhs()), f);
      default:
        throw std::invalid_argument("formula outside the LTLEBR+P future layer");
    }
  }

  // G over an and-tree of terms
  CanonicalFormula apply_globally(const CanonicalFormula& c, const Formula& at) {
    const auto& n = c.root();
    if (n.kind == CanonicalFormula::Node::And) {
      note("G-and-distribution", at);
      return conj_s(apply_globally(wrap(n.left), at),
                    apply_globally(wrap(n.right), at));
    }
    if (n.kind == CanonicalFormula::Node::Or)
      throw std::logic_error("disjunction below G cannot come from the future layer");
    const CanonicalTerm& t = n.term;
    switch (t.kind) {
      case TermKind::Point:
        note("G-point -> always");
        return make_always(t.offset, t.alpha);
      case TermKind::Always:
        note("G-always absorbed");
        return CanonicalFormula::term(t);
      case TermKind::Release:
        // G X^i (a R b) == X^i G b: a release demanded at every point pins
        // its right side at every point
        note("G-release -> always of the right side");
        return make_always(t.offset, t.beta);
    }
    throw std::logic_error("bad term kind");
  }

  // psi R <canonical and-tree>
  CanonicalFormula apply_release(const Formula& left, const CanonicalFormula& c,
                                 const Formula& at) {
    Formula left_e = fold_constants(expand_shortcuts(left));
    if (left_e.op() == Op::True) {
      // true R x == x
      note("R-left-true dropped", at);
      return c;
    }
    if (left_e.op() == Op::False) {
      // false R x == G x
      note("R-left-false -> G", at);
      return apply_globally(c, at);
    }
    const auto& n = c.root();
    if (n.kind == CanonicalFormula::Node::And) {
      note("R-and-distribution", at);
      return conj_s(apply_release(left, wrap(n.left), at),
                    apply_release(left, wrap(n.right), at));
    }
    if (n.kind == CanonicalFormula::Node::Or)
      throw std::logic_error("disjunction below R cannot come from the future layer");
    const CanonicalTerm& t = n.term;
    std::size_t m = next_depth(left_e);
    switch (t.kind) {
      case TermKind::Point: {
        // psi R X^i a == X^M (pastify(psi,M) R Y^{M-i} a), M = max(m, i)
        std::size_t big = std::max(m, t.offset);
        note("R-point(shift " + std::to_string(big) + ")", at);
        return make_release(big, detail::pastify_core(left_e, big),
                            yesterday_n(big - t.offset, t.alpha));
      }
      case TermKind::Always:
        // psi R X^i G a == X^i G a: the instance at the first point already
        // demands the right side, which then holds from every later point
        note("R-always absorbed");
        return CanonicalFormula::term(t);
      case TermKind::Release: {
        // psi R X^i (a R b): shift everything past the X-prefix, giving
        // a R' (b R' c) with co-anchored pure-past payloads, whose release
        // point is the first b-position with an a at or before it
        std::size_t big = t.offset + m;
        Formula a = fold_constants(detail::pastify_core(left_e, big));
        Formula b = fold_constants(yesterday_n(m, t.alpha));
        Formula cc = fold_constants(yesterday_n(m, t.beta));
        // a point where b holds already carries the a-history
        if (b == a || pointwise_valid(implies(b, a))) {
          note("R-nested: inner left subsumes the outer", at);
          return make_release(big, b, cc);
        }
        // every a-point is itself a release point of the inner release
        if (pointwise_valid(implies(a, b))) {
          note("R-nested: outer left subsumes the inner", at);
          return make_release(big, a, cc);
        }
        // when c forces a, any b before the first a sits at a c-violation
        // of both sides, so the outer release changes nothing
        if (pointwise_valid(implies(cc, a))) {
          note("R-nested: right side forces the outer left", at);
          return make_release(big, b, cc);
        }
        note("R-nested(shift " + std::to_string(big) + ")", at);
        return make_always(big, nested_release_payload(a, b, cc, big));
      }
    }
    throw std::logic_error("bad term kind");
  }

  // Truth at every position of every word, decided by enumerating all
  // windows up to the formula's depth.  Bounded-past formulas only; a
  // conservative "false" otherwise or when the window space is too large.
  static bool pointwise_valid(const Formula& f) {
    if (!is_bounded_past(f)) return false;
    std::size_t d = temporal_depth(f);
    std::vector<std::string> names;
    for_each_node(f, [&](const Formula& g) {
      if (g.op() == Op::Prop &&
          std::find(names.begin(), names.end(), g.name()) == names.end())
        names.push_back(g.name());
    });
    if ((d + 1) * std::max<std::size_t>(names.size(), 1) > 14) return false;
    Alphabet a(names);
    std::size_t nl = a.letter_count();
    std::vector<Letter> word;
    std::function<bool(std::size_t)> sweep = [&](std::size_t len) {
      if (word.size() == len)
        return evalfin(FiniteWord(a, word), f);
      for (std::size_t l = 0; l < nl; ++l) {
        word.push_back(static_cast<Letter>(l));
        bool ok = sweep(len);
        word.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    for (std::size_t len = 1; len <= d + 1; ++len)
      if (!sweep(len)) return false;
    return true;
  }

  // a R (b R c), anchored at position `anchor` (inside an X^anchor
  // prefix), equals G(c | !P) from that position on, where P holds at l
  // iff some j in [anchor, l] has no a in [anchor, j) and no b in [j, l):
  //   Q = !(Y O A)             "no a-event since the anchor, before now"
  //   P = Q | Y(!B S (Q & !B))
  // A and the !B-chain are guarded with Y^anchor true so that no history
  // scan reaches below the anchor, where the shifted payloads mean nothing.
  static Formula nested_release_payload(const Formula& a, const Formula& b,
                                        const Formula& c, std::size_t anchor) {
    Formula reach = yesterday_n(anchor, tt());
    Formula a_event = anchor == 0 ? a : land(a, reach);
    Formula not_b = anchor == 0 ? lnot(b) : land(lnot(b), reach);
    Formula q = lnot(yesterday(once(a_event)));
    Formula p = lor(q, yesterday(since_(not_b, land(q, not_b))));
    return lor(c, lnot(p));
  }

  static CanonicalFormula wrap(const std::shared_ptr<const CanonicalFormula::Node>& n) {
    return CanonicalFormula::over(n);
  }

  std::vector<std::string> trace_;
};

}  // namespace detail

inline CanonicalizeResult canonicalize(const Formula& f) {
  return detail::Canonicalizer().run(f);
}

// ── G-alpha normal form ─────────────────────────────────────────────────────

namespace detail {

// true exactly at position i
inline Formula at_exactly(std::size_t i) { return yesterday_n(i, weak_yesterday(ff())); }
// true exactly at positions >= i
inline Formula at_least(std::size_t i) { return yesterday_n(i, tt()); }

inline Formula galpha_body(const CanonicalFormula::Node* n) {
  switch (n->kind) {
    case CanonicalFormula::Node::Term: {
      const CanonicalTerm& t = n->term;
      switch (t.kind) {
        case TermKind::Point:
          return implies(at_exactly(t.offset), t.alpha);
        case TermKind::Always:
          return t.offset == 0 ? t.alpha : implies(at_least(t.offset), t.alpha);
        case TermKind::Release: {
          // released if some earlier m >= i had alpha with beta on [i, m]
          Formula anchored = since_(t.beta, land(t.beta, at_exactly(t.offset)));
          Formula released = yesterday(once(land(t.alpha, anchored)));
          Formula body = lor(t.beta, released);
          return t.offset == 0 ? body : implies(at_least(t.offset), body);
        }
      }
      throw std::logic_error("bad term kind");
    }
    case CanonicalFormula::Node::And:
      // G a1 & G a2 == G(a1 & a2)
      return land(galpha_body(n->left.get()), galpha_body(n->right.get()));
    case CanonicalFormula::Node::Or:
      // G a1 | G a2 == G(H a1 | H a2): whichever side fails first, take the
      // later failure point and both prefixes are falsified there
      return lor(historically(galpha_body(n->left.get())),
                 historically(galpha_body(n->right.get())));
  }
  throw std::logic_error("bad canonical node");
}

}  // namespace detail

// A single globally over a pure-past body, language-equal to the input.
inline Formula to_galpha(const CanonicalFormula& c) {
  Formula body = detail::galpha_body(&c.root());
  if (!is_pure_past(body)) throw std::logic_error("G-alpha body must be pure past");
  return always(body);
}

}  // namespace ltlp
