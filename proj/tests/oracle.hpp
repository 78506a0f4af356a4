// tests/oracle.hpp — reference semantics by brute force.
//
// Evaluates the satisfaction relation literally (quantifiers as loops) on an
// unrolling of the lasso.  Every unbounded future quantifier searches a
// window of stem + (size(f)+2)*loop positions past its own position; by
// then every subformula's truth sequence has gone periodic, so any witness
// or violation beyond the window has an equivalent one inside it.  Test-only:
// the independent check for the production evaluator, the rewriters and the
// monitors.  Deliberately shares no code with ltlp/eval.hpp.

#pragma once

#include <unordered_map>
#include <vector>

#include "ltlp/formula.hpp"
#include "ltlp/words.hpp"

namespace ltlp::oracle {

class Brute {
 public:
  Brute(const LassoWord& w, const Formula& f)
      : w_(w), window_(w.stem.size() + (f.size() + 2) * w.loop.size()) {}

  std::size_t window() const { return window_; }

  bool holds(const Formula& f, std::size_t n) {
    auto& col = memo_[f.id()];
    if (col.empty()) col.assign(window_ + f.size() + 2, -1);
    if (n >= col.size()) col.resize(n + 1, -1);
    if (col[n] >= 0) return col[n] != 0;
    bool v = compute(f, n);
    col[n] = v ? 1 : 0;
    return v;
  }

 private:
  bool compute(const Formula& f, std::size_t n) {
    switch (f.op()) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Prop:
        return (w_.at(n) >> w_.alphabet.index_of(f.name())) & 1;
      case Op::Not: return !holds(f.child(0), n);
      case Op::And: return holds(f.lhs(), n) && holds(f.rhs(), n);
      case Op::Or: return holds(f.lhs(), n) || holds(f.rhs(), n);
      case Op::Implies: return !holds(f.lhs(), n) || holds(f.rhs(), n);
      case Op::Next: return holds(f.child(0), n + 1);
      case Op::Until: {
        for (std::size_t j = n; j < n + window_; ++j) {
          if (holds(f.rhs(), j)) {
            bool ok = true;
            for (std::size_t k = n; k < j && ok; ++k) ok = holds(f.lhs(), k);
            if (ok) return true;
          }
        }
        return false;
      }
      case Op::Release: {
        for (std::size_t j = n; j < n + window_; ++j) {
          if (!holds(f.rhs(), j)) {
            bool released = false;
            for (std::size_t k = n; k < j && !released; ++k)
              released = holds(f.lhs(), k);
            if (!released) return false;
          }
        }
        return true;
      }
      case Op::Eventually: {
        for (std::size_t j = n; j < n + window_; ++j)
          if (holds(f.child(0), j)) return true;
        return false;
      }
      case Op::Globally: {
        for (std::size_t j = n; j < n + window_; ++j)
          if (!holds(f.child(0), j)) return false;
        return true;
      }
      case Op::BoundedUntil: {
        for (std::uint32_t i = f.lo(); i <= f.hi(); ++i) {
          if (holds(f.rhs(), n + i)) {
            bool ok = true;
            for (std::uint32_t j = 0; j < i && ok; ++j) ok = holds(f.lhs(), n + j);
            if (ok) return true;
          }
        }
        return false;
      }
      case Op::Yesterday: return n > 0 && holds(f.child(0), n - 1);
      case Op::WeakYesterday: return n == 0 || holds(f.child(0), n - 1);
      case Op::Since: {
        for (std::size_t j = n + 1; j-- > 0;) {
          if (holds(f.rhs(), j)) {
            bool ok = true;
            for (std::size_t k = j + 1; k <= n && ok; ++k) ok = holds(f.lhs(), k);
            if (ok) return true;
          }
        }
        return false;
      }
      case Op::Triggered: {
        for (std::size_t j = n + 1; j-- > 0;) {
          if (!holds(f.rhs(), j)) {
            bool released = false;
            for (std::size_t k = j + 1; k <= n && !released; ++k)
              released = holds(f.lhs(), k);
            if (!released) return false;
          }
        }
        return true;
      }
      case Op::Once: {
        for (std::size_t j = 0; j <= n; ++j)
          if (holds(f.child(0), j)) return true;
        return false;
      }
      case Op::Historically: {
        for (std::size_t j = 0; j <= n; ++j)
          if (!holds(f.child(0), j)) return false;
        return true;
      }
      case Op::BoundedSince: {
        for (std::uint32_t i = f.lo(); i <= f.hi(); ++i) {
          if (i > n) break;
          if (holds(f.rhs(), n - i)) {
            bool ok = true;
            for (std::uint32_t j = 0; j < i && ok; ++j) ok = holds(f.lhs(), n - j);
            if (ok) return true;
          }
        }
        return false;
      }
    }
    return false;
  }

  const LassoWord& w_;
  std::size_t window_;
  std::unordered_map<const Formula::Node*, std::vector<signed char>> memo_;
};

inline bool holds(const LassoWord& w, std::size_t n, const Formula& f) {
  Brute b(w, f);
  return b.holds(f, n);
}

// pure-past brute force at the last position of a finite word, straight from
// the satisfaction table (no recurrences)
inline bool holds_fin(const FiniteWord& w, std::size_t n, const Formula& f) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Prop: return (w.at(n) >> w.alphabet.index_of(f.name())) & 1;
    case Op::Not: return !holds_fin(w, n, f.child(0));
    case Op::And: return holds_fin(w, n, f.lhs()) && holds_fin(w, n, f.rhs());
    case Op::Or: return holds_fin(w, n, f.lhs()) || holds_fin(w, n, f.rhs());
    case Op::Implies: return !holds_fin(w, n, f.lhs()) || holds_fin(w, n, f.rhs());
    case Op::Yesterday: return n > 0 && holds_fin(w, n - 1, f.child(0));
    case Op::WeakYesterday: return n == 0 || holds_fin(w, n - 1, f.child(0));
    case Op::Since: {
      for (std::size_t j = n + 1; j-- > 0;) {
        if (holds_fin(w, j, f.rhs())) {
          bool ok = true;
          for (std::size_t k = j + 1; k <= n && ok; ++k) ok = holds_fin(w, k, f.lhs());
          if (ok) return true;
        }
      }
      return false;
    }
    case Op::Triggered: {
      for (std::size_t j = n + 1; j-- > 0;) {
        if (!holds_fin(w, j, f.rhs())) {
          bool released = false;
          for (std::size_t k = j + 1; k <= n && !released; ++k)
            released = holds_fin(w, k, f.lhs());
          if (!released) return false;
        }
      }
      return true;
    }
    case Op::Once: {
      for (std::size_t j = 0; j <= n; ++j)
        if (holds_fin(w, j, f.child(0))) return true;
      return false;
    }
    case Op::Historically: {
      for (std::size_t j = 0; j <= n; ++j)
        if (!holds_fin(w, j, f.child(0))) return false;
      return true;
    }
    case Op::BoundedSince: {
      for (std::uint32_t i = f.lo(); i <= f.hi(); ++i) {
        if (i > n) break;
        if (holds_fin(w, n - i, f.rhs())) {
          bool ok = true;
          for (std::uint32_t j = 0; j < i && ok; ++j) ok = holds_fin(w, n - j, f.lhs());
          if (ok) return true;
        }
      }
      return false;
    }
    default:
      throw std::invalid_argument("future operator in finite-word oracle");
  }
}

inline bool holds_fin(const FiniteWord& w, const Formula& f) {
  return holds_fin(w, w.size() - 1, f);
}

}  // namespace ltlp::oracle
