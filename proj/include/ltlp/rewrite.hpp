// ltlp/rewrite.hpp — derived-operator expansion and negation normal form.

#pragma once

#include "ltlp/formula.hpp"

namespace ltlp {

namespace detail {

// one BoundedUntil/BoundedSince node, children already expanded
inline Formula expand_bounded(Op op, std::uint32_t lo, std::uint32_t hi, Formula f,
                              Formula g) {
  auto step = [&](std::size_t n, Formula x) {
    return op == Op::BoundedUntil ? next_n(n, std::move(x)) : yesterday_n(n, std::move(x));
  };
  Formula out;
  for (std::uint32_t i = lo; i <= hi; ++i) {
    Formula term = step(i, g);
    for (std::uint32_t j = 0; j < i; ++j) term = land(std::move(term), step(j, f));
    out = (i == lo) ? std::move(term) : lor(std::move(out), std::move(term));
  }
  return out;
}

}  // namespace detail

// Removes BoundedUntil, BoundedSince, F, O, H, T, and Implies.  The operator
// set afterwards is {true, false, prop, !, &, |, X, U, R, G, Y, Z, S}.
inline Formula expand_shortcuts(const Formula& f) {
  std::vector<Formula> kids;
  kids.reserve(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(expand_shortcuts(f.child(i)));
  switch (f.op()) {
    case Op::BoundedUntil:
    case Op::BoundedSince:
      return detail::expand_bounded(f.op(), f.lo(), f.hi(), std::move(kids[0]),
                                    std::move(kids[1]));
    case Op::Eventually:
      return until(tt(), std::move(kids[0]));
    case Op::Once:
      return since_(tt(), std::move(kids[0]));
    case Op::Historically:
      return lnot(since_(tt(), lnot(std::move(kids[0]))));
    case Op::Triggered:
      return lnot(since_(lnot(std::move(kids[0])), lnot(std::move(kids[1]))));
    case Op::Implies:
      return lor(lnot(std::move(kids[0])), std::move(kids[1]));
    default:
      return Formula::make(f.op(), std::move(kids), f.name(), f.lo(), f.hi());
  }
}

// Bottom-up constant folding.  Only identities valid at every position of
// every word: note Y true and Z false are not constants (they code the
// word start) and stay untouched.
inline Formula fold_constants(const Formula& f) {
  std::vector<Formula> kids;
  kids.reserve(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(fold_constants(f.child(i)));
  auto is_t = [](const Formula& g) { return g.op() == Op::True; };
  auto is_f = [](const Formula& g) { return g.op() == Op::False; };
  switch (f.op()) {
    case Op::Not:
      if (is_t(kids[0])) return ff();
      if (is_f(kids[0])) return tt();
      if (kids[0].op() == Op::Not) return kids[0].child(0);
      break;
    case Op::And:
      if (is_f(kids[0]) || is_f(kids[1])) return ff();
      if (is_t(kids[0])) return kids[1];
      if (is_t(kids[1])) return kids[0];
      break;
    case Op::Or:
      if (is_t(kids[0]) || is_t(kids[1])) return tt();
      if (is_f(kids[0])) return kids[1];
      if (is_f(kids[1])) return kids[0];
      break;
    case Op::Implies:
      if (is_f(kids[0]) || is_t(kids[1])) return tt();
      if (is_t(kids[0])) return kids[1];
      if (is_f(kids[1])) return fold_constants(lnot(kids[0]));
      break;
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
    case Op::Once:
    case Op::Historically:
      if (is_t(kids[0]) || is_f(kids[0])) return kids[0];
      break;
    case Op::Yesterday:
      if (is_f(kids[0])) return ff();
      break;
    case Op::WeakYesterday:
      if (is_t(kids[0])) return tt();
      break;
    case Op::Until:
    case Op::Since:
      if (is_t(kids[1])) return tt();
      if (is_f(kids[1])) return ff();
      break;
    case Op::Release:
    case Op::Triggered:
      if (is_t(kids[1])) return tt();
      if (is_f(kids[1])) return ff();
      break;
    default:
      break;
  }
  return Formula::make(f.op(), std::move(kids), f.name(), f.lo(), f.hi());
}

namespace detail {

inline Formula nnf_pos(const Formula& f);
inline Formula nnf_neg(const Formula& f);

inline Formula nnf_pos(const Formula& f) {
  switch (f.op()) {
    case Op::Not:
      return nnf_neg(f.child(0));
    case Op::Implies:
      return lor(nnf_neg(f.lhs()), nnf_pos(f.rhs()));
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.arity());
      for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(nnf_pos(f.child(i)));
      return Formula::make(f.op(), std::move(kids), f.name(), f.lo(), f.hi());
    }
  }
}

inline Formula nnf_neg(const Formula& f) {
  switch (f.op()) {
    case Op::True: return ff();
    case Op::False: return tt();
    case Op::Prop: return lnot(f);
    case Op::Not: return nnf_pos(f.child(0));
    case Op::And: return lor(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case Op::Or: return land(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case Op::Implies: return land(nnf_pos(f.lhs()), nnf_neg(f.rhs()));
    // X is self-dual on infinite words
    case Op::Next: return next(nnf_neg(f.child(0)));
    case Op::Until: return release(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case Op::Release: return until(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case Op::Eventually: return always(nnf_neg(f.child(0)));
    case Op::Globally: return eventually(nnf_neg(f.child(0)));
    case Op::Yesterday: return weak_yesterday(nnf_neg(f.child(0)));
    case Op::WeakYesterday: return yesterday(nnf_neg(f.child(0)));
    case Op::Since: return triggered(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case Op::Triggered: return since_(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case Op::Once: return historically(nnf_neg(f.child(0)));
    case Op::Historically: return once(nnf_neg(f.child(0)));
    // no dual node exists; expand then push the negation through
    case Op::BoundedUntil:
    case Op::BoundedSince:
      return nnf_neg(expand_bounded(f.op(), f.lo(), f.hi(), f.lhs(), f.rhs()));
  }
  return lnot(f);
}

}  // namespace detail

// Negations pushed onto propositions via the operator duals.  Positive
// bounded operators are kept; negated ones are expanded first.
inline Formula nnf(const Formula& f) { return detail::nnf_pos(f); }

}  // namespace ltlp
