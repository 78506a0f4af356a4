// ltlp/fragments.hpp — syntactic fragment membership.
//
// The layered grammar:
//
//   eta  ::= p | !eta | eta|eta | Y eta | eta S eta        pure past layer
//   psi  ::= eta | !psi | psi|psi | X psi | psi U[a,b] psi bounded future layer
//   phi  ::= psi | phi&phi | X phi | G phi | psi R phi     future layer
//   chi  ::= phi | chi|chi | chi&chi                       boolean layer
//
// Classification runs on the raw AST.  Operators derivable inside a layer
// are accepted as sugar (&, ->, constants everywhere; Z, O, H, T, S[a,b]
// inside eta; they are all definable from !, |, Y, S).  G and R are never
// derivable inside psi and stay rejected there.

#pragma once

#include <unordered_map>
#include <unordered_set>

#include "ltlp/rewrite.hpp"

namespace ltlp {

// LTLFP: every temporal operator is a past operator
inline bool is_pure_past(const Formula& f) { return !contains_future(f); }

// LTLBP: boolean combinations of atoms, Y/Z and bounded since
inline bool is_bounded_past(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Prop:
      return true;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::BoundedSince: {
      for (std::size_t i = 0; i < f.arity(); ++i)
        if (!is_bounded_past(f.child(i))) return false;
      return true;
    }
    default:
      return false;
  }
}

// Temporal depth D of a bounded-past formula: the lookback in
// yesterday-steps.  D(p)=0, D(!a)=D(a), booleans take the max,
// D(Y a)=D(Z a)=1+D(a), D(a S[l,u] b)=u+max(D(a),D(b)).
inline std::size_t temporal_depth(const Formula& f) {
  if (!is_bounded_past(f))
    throw std::invalid_argument("temporal depth is defined on bounded-past formulas");
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Prop:
      return 0;
    case Op::Yesterday:
    case Op::WeakYesterday:
      return 1 + temporal_depth(f.child(0));
    case Op::BoundedSince:
      return f.hi() + std::max(temporal_depth(f.lhs()), temporal_depth(f.rhs()));
    default: {
      std::size_t d = 0;
      for (std::size_t i = 0; i < f.arity(); ++i)
        d = std::max(d, temporal_depth(f.child(i)));
      return d;
    }
  }
}

// max of D over the maximal bounded-past subformulas; 0 when there are none
inline std::size_t past_temporal_depth(const Formula& f) {
  if (is_bounded_past(f)) return temporal_depth(f);
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i)
    d = std::max(d, past_temporal_depth(f.child(i)));
  return d;
}

struct SyntacticMetrics {
  std::size_t next_depth = 0;
  std::size_t past_temporal_depth = 0;
  std::size_t size = 0;
};

inline SyntacticMetrics metrics(const Formula& f) {
  return {next_depth(f), past_temporal_depth(f), f.size()};
}

// ── layered membership ──────────────────────────────────────────────────────

namespace detail {

class LayerAnalyzer {
 public:
  explicit LayerAnalyzer(bool allow_past) : allow_past_(allow_past) {}

  bool eta(const Formula& f) {
    return memoized(eta_, f, [&] {
      if (allow_past_) return is_pure_past(f);
      // propositional only
      switch (f.op()) {
        case Op::True:
        case Op::False:
        case Op::Prop:
          return true;
        case Op::Not:
        case Op::And:
        case Op::Or:
        case Op::Implies:
          for (std::size_t i = 0; i < f.arity(); ++i)
            if (!eta(f.child(i))) return false;
          return true;
        default:
          return false;
      }
    });
  }

  bool psi(const Formula& f) {
    return memoized(psi_, f, [&] {
      if (eta(f)) return true;
      switch (f.op()) {
        case Op::Not:
        case Op::And:
        case Op::Or:
        case Op::Implies:
          for (std::size_t i = 0; i < f.arity(); ++i)
            if (!psi(f.child(i))) return false;
          return true;
        case Op::Next:
          return psi(f.child(0));
        case Op::BoundedUntil:
          return psi(f.lhs()) && psi(f.rhs());
        default:
          return false;
      }
    });
  }

  bool phi(const Formula& f) {
    return memoized(phi_, f, [&] {
      if (psi(f)) return true;
      switch (f.op()) {
        case Op::And:
          return phi(f.lhs()) && phi(f.rhs());
        case Op::Next:
        case Op::Globally:
          return phi(f.child(0));
        case Op::Release:
          // the left argument of a release must stay in the bounded layer
          return psi(f.lhs()) && phi(f.rhs());
        default:
          return false;
      }
    });
  }

  bool chi(const Formula& f) {
    return memoized(chi_, f, [&] {
      if (phi(f)) return true;
      switch (f.op()) {
        case Op::And:
        case Op::Or:
          return chi(f.lhs()) && chi(f.rhs());
        case Op::Implies:
          // sugar: a -> b is !a | b, so the premise must sit in psi
          return psi(f.lhs()) && chi(f.rhs());
        default:
          return false;
      }
    });
  }

 private:
  template <typename Fn>
  bool memoized(std::unordered_map<const Formula::Node*, bool>& cache, const Formula& f,
                Fn&& fn) {
    auto it = cache.find(f.id());
    if (it != cache.end()) return it->second;
    bool v = fn();
    cache.emplace(f.id(), v);
    return v;
  }

  bool allow_past_;
  std::unordered_map<const Formula::Node*, bool> eta_, psi_, phi_, chi_;
};

}  // namespace detail

inline bool is_bounded_future_layer(const Formula& f) {
  return detail::LayerAnalyzer(true).psi(f);
}
inline bool is_future_layer(const Formula& f) {
  return detail::LayerAnalyzer(true).phi(f);
}
inline bool is_ltlebrp(const Formula& f) { return detail::LayerAnalyzer(true).chi(f); }
inline bool is_ltlebr(const Formula& f) { return detail::LayerAnalyzer(false).chi(f); }

// SafetyLTL: future-only, and the negated normal form has no U and no F
inline bool is_safetyltl(const Formula& f) {
  if (contains_past(f)) return false;
  Formula n = nnf(f);
  return !contains_op(n, Op::Until) && !contains_op(n, Op::Eventually);
}

// ── canonical shape ─────────────────────────────────────────────────────────
//
// And/or tree whose leaves are X^i a, X^i G a, or X^i (a R b).  The payload
// predicate selects the restriction: pure past for the general canonical
// form, bounded past for canLTLEBR.

template <typename PayloadPred>
bool is_canonical_term(const Formula& f, PayloadPred&& payload) {
  const Formula* g = &f;
  while (g->op() == Op::Next) g = &g->child(0);
  switch (g->op()) {
    case Op::Globally:
      return payload(g->child(0));
    case Op::Release:
      return payload(g->lhs()) && payload(g->rhs());
    default:
      return payload(*g);
  }
}

template <typename PayloadPred>
bool is_canonical_shape(const Formula& f, PayloadPred&& payload) {
  if (f.op() == Op::And || f.op() == Op::Or)
    return is_canonical_shape(f.lhs(), payload) && is_canonical_shape(f.rhs(), payload);
  return is_canonical_term(f, payload);
}

// canLTLEBR: canonical shape with bounded-past payloads
inline bool is_canonical(const Formula& f) {
  return is_canonical_shape(f, [](const Formula& p) { return is_bounded_past(p); });
}

// Def. 2.4 shape: canonical with pure-past payloads
inline bool is_canonical_pure_past(const Formula& f) {
  return is_canonical_shape(f, [](const Formula& p) { return is_pure_past(p); });
}

// ── classification report ───────────────────────────────────────────────────

struct FragmentReport {
  bool is_ltlp = true;
  bool is_pure_past = false;
  bool is_bounded_past = false;
  bool is_bounded_future_layer = false;
  bool is_future_layer = false;
  bool is_ltlebr = false;
  bool is_ltlebrp = false;
  bool is_safetyltl = false;
  bool is_canonical = false;
  // per distinct subformula, the innermost accepting layer (or "none")
  std::vector<std::pair<std::string, std::string>> layer_trace;
};

inline FragmentReport classify(const Formula& f) {
  FragmentReport r;
  r.is_pure_past = is_pure_past(f);
  r.is_bounded_past = is_bounded_past(f);
  detail::LayerAnalyzer with_past(true);
  r.is_bounded_future_layer = with_past.psi(f);
  r.is_future_layer = with_past.phi(f);
  r.is_ltlebrp = with_past.chi(f);
  r.is_ltlebr = is_ltlebr(f);
  r.is_safetyltl = is_safetyltl(f);
  r.is_canonical = is_canonical(f);

  std::unordered_set<Formula, FormulaHash> seen;
  auto trace = [&](const Formula& g, auto&& self) -> void {
    for (std::size_t i = 0; i < g.arity(); ++i) self(g.child(i), self);
    if (!seen.insert(g).second) return;
    const char* layer = with_past.eta(g)   ? "pure-past"
                        : with_past.psi(g) ? "bounded-future"
                        : with_past.phi(g) ? "future"
                        : with_past.chi(g) ? "boolean"
                                           : "none";
    r.layer_trace.emplace_back(to_string(g), layer);
  };
  trace(f, trace);
  return r;
}

}  // namespace ltlp
