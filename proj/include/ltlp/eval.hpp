// ltlp/eval.hpp — satisfaction over lasso words and finite words.
//
// Every LTL+P subformula has an eventually-periodic truth sequence on an
// ultimately-periodic word.  The evaluator represents each subformula as
// (preperiod, values) with period equal to the loop length: values holds
// the first `pre + L` truths and the tail repeats the last L entries.
//
//   - propositions read the word directly (pre = |stem|);
//   - boolean connectives and X are pointwise;
//   - past operators run their forward recurrence; one extra loop round
//     past the operand preperiods is enough for the single-bit state to
//     lock onto the period (the loop map is monotone on {0,1});
//   - U/R/G/F evaluate the loop by value iteration to the fixpoint, then
//     propagate backwards through the prefix.

#pragma once

#include <unordered_map>

#include "ltlp/rewrite.hpp"
#include "ltlp/words.hpp"

namespace ltlp {

namespace detail {

class LassoEvaluator {
 public:
  explicit LassoEvaluator(const LassoWord& w)
      : w_(w), L_(w.loop.size()), stem_(w.stem.size()) {}

  bool at(const Formula& f, std::size_t n) {
    const Seq& s = compute(f);
    return value(s, n);
  }

 private:
  struct Seq {
    std::size_t pre = 0;
    std::vector<char> vals;  // size pre + L
  };

  bool value(const Seq& s, std::size_t n) const {
    if (n < s.pre) return s.vals[n] != 0;
    return s.vals[s.pre + (n - s.pre) % L_] != 0;
  }

  const Seq& compute(const Formula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    Seq s = build(f);
    return memo_.emplace(f.id(), std::move(s)).first->second;
  }

  Seq make(std::size_t pre) const {
    Seq s;
    s.pre = pre;
    s.vals.assign(pre + L_, 0);
    return s;
  }

  Seq build(const Formula& f) {
    switch (f.op()) {
      case Op::True:
      case Op::False: {
        Seq s = make(0);
        for (auto& v : s.vals) v = (f.op() == Op::True);
        return s;
      }
      case Op::Prop: {
        std::size_t bit = w_.alphabet.index_of(f.name());
        Seq s = make(stem_);
        for (std::size_t n = 0; n < s.vals.size(); ++n)
          s.vals[n] = (w_.at(n) >> bit) & 1;
        return s;
      }
      case Op::Not: {
        const Seq& a = compute(f.child(0));
        Seq s = make(a.pre);
        for (std::size_t n = 0; n < s.vals.size(); ++n) s.vals[n] = !value(a, n);
        return s;
      }
      case Op::And:
      case Op::Or:
      case Op::Implies: {
        const Seq& a = compute(f.lhs());
        const Seq& b = compute(f.rhs());
        Seq s = make(std::max(a.pre, b.pre));
        for (std::size_t n = 0; n < s.vals.size(); ++n) {
          bool x = value(a, n), y = value(b, n);
          s.vals[n] = f.op() == Op::And ? (x && y)
                      : f.op() == Op::Or ? (x || y)
                                         : (!x || y);
        }
        return s;
      }
      case Op::Next: {
        const Seq& a = compute(f.child(0));
        Seq s = make(a.pre);
        for (std::size_t n = 0; n < s.vals.size(); ++n) s.vals[n] = value(a, n + 1);
        return s;
      }
      case Op::Yesterday:
      case Op::WeakYesterday: {
        const Seq& a = compute(f.child(0));
        Seq s = make(a.pre + 1);
        s.vals[0] = (f.op() == Op::WeakYesterday);
        for (std::size_t n = 1; n < s.vals.size(); ++n) s.vals[n] = value(a, n - 1);
        return s;
      }
      case Op::Since:
      case Op::Triggered: {
        const Seq& a = compute(f.lhs());
        const Seq& b = compute(f.rhs());
        Seq s = make(std::max(a.pre, b.pre) + L_);
        bool prev = (f.op() == Op::Triggered);  // S starts from false, T from true
        for (std::size_t n = 0; n < s.vals.size(); ++n) {
          bool x = value(a, n), y = value(b, n);
          bool cur = f.op() == Op::Since ? (y || (x && prev)) : (y && (x || prev));
          s.vals[n] = cur;
          prev = cur;
        }
        return s;
      }
      case Op::Once:
      case Op::Historically: {
        const Seq& a = compute(f.child(0));
        Seq s = make(a.pre + L_);
        bool prev = (f.op() == Op::Historically);
        for (std::size_t n = 0; n < s.vals.size(); ++n) {
          bool x = value(a, n);
          bool cur = f.op() == Op::Once ? (x || prev) : (x && prev);
          s.vals[n] = cur;
          prev = cur;
        }
        return s;
      }
      case Op::Until:
      case Op::Release:
        return fixpoint(f);
      case Op::Globally:
      case Op::Eventually: {
        const Seq& a = compute(f.child(0));
        Seq s = make(a.pre);
        bool all = true, any = false;
        for (std::size_t t = 0; t < L_; ++t) {
          bool x = value(a, s.pre + t);
          all = all && x;
          any = any || x;
        }
        bool cyc = f.op() == Op::Globally ? all : any;
        for (std::size_t t = 0; t < L_; ++t) s.vals[s.pre + t] = cyc;
        for (std::size_t n = s.pre; n-- > 0;) {
          bool x = value(a, n);
          bool nxt = s.vals[n + 1] != 0;
          s.vals[n] = f.op() == Op::Globally ? (x && nxt) : (x || nxt);
        }
        return s;
      }
      case Op::BoundedUntil:
      case Op::BoundedSince: {
        // keep the expansion alive: the memo is keyed by node address
        Formula expanded =
            detail::expand_bounded(f.op(), f.lo(), f.hi(), f.lhs(), f.rhs());
        retained_.push_back(expanded);
        return build(expanded);
      }
    }
    throw std::logic_error("unhandled operator in evaluator");
  }

  // least fixpoint for U, greatest for R, iterated on the loop cycle
  Seq fixpoint(const Formula& f) {
    const Seq& a = compute(f.lhs());
    const Seq& b = compute(f.rhs());
    Seq s = make(std::max(a.pre, b.pre));
    std::vector<char> cur(L_), nxt(L_);
    for (std::size_t t = 0; t < L_; ++t) cur[t] = value(b, s.pre + t);
    for (;;) {
      bool changed = false;
      for (std::size_t t = 0; t < L_; ++t) {
        bool x = value(a, s.pre + t), y = value(b, s.pre + t);
        bool succ = cur[(t + 1) % L_] != 0;
        bool v = f.op() == Op::Until ? (y || (x && succ)) : (y && (x || succ));
        nxt[t] = v;
        changed = changed || (v != (cur[t] != 0));
      }
      cur.swap(nxt);
      if (!changed) break;
    }
    for (std::size_t t = 0; t < L_; ++t) s.vals[s.pre + t] = cur[t];
    for (std::size_t n = s.pre; n-- > 0;) {
      bool x = value(a, n), y = value(b, n);
      bool succ = s.vals[n + 1] != 0;
      s.vals[n] = f.op() == Op::Until ? (y || (x && succ)) : (y && (x || succ));
    }
    return s;
  }

  const LassoWord& w_;
  std::size_t L_;
  std::size_t stem_;
  std::vector<Formula> retained_;
  std::unordered_map<const Formula::Node*, Seq> memo_;
};

}  // namespace detail

// σ,i ⊨ φ
inline bool eval_at(const LassoWord& w, std::size_t i, const Formula& f) {
  detail::LassoEvaluator ev(w);
  return ev.at(f, i);
}

// σ ⊨ φ
inline bool eval(const LassoWord& w, const Formula& f) { return eval_at(w, 0, f); }

// Evaluates many positions of one formula on one word with shared tables.
class Evaluation {
 public:
  Evaluation(const LassoWord& w, Formula f) : ev_(w), f_(std::move(f)) {}
  bool at(std::size_t i) { return ev_.at(f_, i); }

 private:
  detail::LassoEvaluator ev_;
  Formula f_;
};

// ── finite words (pure past) ────────────────────────────────────────────────

namespace detail {

class FiniteEvaluator {
 public:
  explicit FiniteEvaluator(const FiniteWord& w) : w_(w) {}

  const std::vector<char>& compute(const Formula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    std::size_t n = w_.size();
    std::vector<char> col(n, 0);
    switch (f.op()) {
      case Op::True:
        col.assign(n, 1);
        break;
      case Op::False:
        break;
      case Op::Prop: {
        std::size_t bit = w_.alphabet.index_of(f.name());
        for (std::size_t p = 0; p < n; ++p) col[p] = (w_.at(p) >> bit) & 1;
        break;
      }
      case Op::Not: {
        const auto& a = compute(f.child(0));
        for (std::size_t p = 0; p < n; ++p) col[p] = !a[p];
        break;
      }
      case Op::And:
      case Op::Or: {
        const auto& a = compute(f.lhs());
        const auto& b = compute(f.rhs());
        for (std::size_t p = 0; p < n; ++p)
          col[p] = f.op() == Op::And ? (a[p] && b[p]) : (a[p] || b[p]);
        break;
      }
      case Op::Yesterday:
      case Op::WeakYesterday: {
        const auto& a = compute(f.child(0));
        col[0] = (f.op() == Op::WeakYesterday);
        for (std::size_t p = 1; p < n; ++p) col[p] = a[p - 1];
        break;
      }
      case Op::Since: {
        const auto& a = compute(f.lhs());
        const auto& b = compute(f.rhs());
        bool prev = false;
        for (std::size_t p = 0; p < n; ++p) {
          prev = b[p] || (a[p] && prev);
          col[p] = prev;
        }
        break;
      }
      default:
        throw std::logic_error("unexpected operator in finite evaluation");
    }
    return memo_.emplace(f.id(), std::move(col)).first->second;
  }

 private:
  const FiniteWord& w_;
  std::unordered_map<const Formula::Node*, std::vector<char>> memo_;
};

}  // namespace detail

// Truth of a pure-past formula at the last position of a finite word.
inline bool evalfin(const FiniteWord& w, const Formula& f) {
  if (contains_future(f))
    throw std::invalid_argument("evalfin requires a pure past formula");
  Formula core = expand_shortcuts(f);
  detail::FiniteEvaluator ev(w);
  return ev.compute(core)[w.size() - 1] != 0;
}

}  // namespace ltlp
