// ltlp/separation.hpp — the expressiveness-separation experiments.
//
// The word family: sigma(i,k,j) over {p1,p2} carries {p1} at positions i
// and k, {p2} at position j, and {p1,p2} everywhere else.  The flagship
// safety formula G(p1 | G p2) holds on sigma(i,k,j) exactly when both i<j
// and k<j, while canonical formulas with bounded-past payloads cannot tell
// sigma(i,i,j) from sigma(i,k,j) once the three indices are separated
// widely enough relative to the payload depth.
//
// The interval correspondence underlying that fact matches sliding windows
// of the last max(d,1) letters between the two words: with the index
// margins i >= d, j >= i+d, k >= j+d every window is one of three shapes
// (all filler, one {p1}, one {p2}) and both words realize the same window
// multiset.  Note the window is d letters, not d+1: a window that reaches
// one position further can straddle two special positions at the minimal
// margins and the correspondence genuinely fails there (see the margin
// notes in run_indistinguishability).

#pragma once

#include <functional>
#include <random>

#include "ltlp/canonical.hpp"
#include "ltlp/eval.hpp"

namespace ltlp {

inline Alphabet sigma_alphabet() { return Alphabet({"p1", "p2"}); }

// G(p1 | G p2): holds iff no position lacking p1 is followed (weakly) by a
// position lacking p2
inline Formula phi_g() {
  return always(lor(prop("p1"), always(prop("p2"))));
}

struct SigmaWord {
  std::size_t i = 0, k = 0, j = 0;
  LassoWord realized;
};

inline SigmaWord make_sigma(std::size_t i, std::size_t k, std::size_t j) {
  if (i == j || k == j)
    throw std::invalid_argument("sigma word requires i != j and k != j");
  Alphabet a = sigma_alphabet();
  const Letter both = 3, only_p1 = 1, only_p2 = 2;
  std::size_t stem_len = std::max({i, k, j}) + 1;
  std::vector<Letter> stem(stem_len, both);
  stem[i] = only_p1;
  stem[k] = only_p1;
  stem[j] = only_p2;
  return SigmaWord{i, k, j, LassoWord(a, std::move(stem), {both})};
}

// Membership of the sigma word in L(G(p1 | G p2)); checks the evaluated
// truth against the closed-form predicate i<j && k<j.
inline bool check_membership(const SigmaWord& w) {
  bool value = eval(w.realized, phi_g());
  bool predicted = w.i < w.j && w.k < w.j;
  if (value != predicted)
    throw std::logic_error("sigma-word membership diverged from the closed form");
  return value;
}

// ── interval correspondence ─────────────────────────────────────────────────

struct IntervalCheckResult {
  bool property1 = false;  // every window of sigma(i,k,j) occurs in sigma(i,i,j)
  bool property2 = false;  // and conversely
  std::size_t type1 = 0, type2 = 0, type3 = 0;  // window shape counts
  bool ok() const { return property1 && property2; }
};

namespace detail {

inline std::vector<Letter> window_at(const LassoWord& w, std::size_t n, std::size_t d) {
  std::size_t len = std::max<std::size_t>(d, 1);
  std::size_t from = n + 1 >= len ? n + 1 - len : 0;
  std::vector<Letter> out;
  for (std::size_t p = from; p <= n; ++p) out.push_back(w.at(p));
  return out;
}

// 1: all filler; 2: one {p1}, rest filler; 3: one {p2}, rest filler; 0: other
inline int window_type(const std::vector<Letter>& win) {
  int n1 = 0, n2 = 0;
  for (Letter l : win) {
    if (l == 1) ++n1;
    else if (l == 2) ++n2;
    else if (l != 3) return 0;
  }
  if (n1 == 0 && n2 == 0) return 1;
  if (n1 == 1 && n2 == 0) return 2;
  if (n1 == 0 && n2 == 1) return 3;
  return 0;
}

}  // namespace detail

// Lemma-4.2-style window matching for sigma(i,i,j) versus sigma(i,k,j),
// exhaustive over positions 0..k+d+1 (beyond that every window is the
// all-filler window, which has already occurred).
inline IntervalCheckResult check_interval_correspondence(std::size_t d, std::size_t i,
                                                         std::size_t j, std::size_t k) {
  if (!(i >= d && j >= i + d && k >= j + d))
    throw std::invalid_argument(
        "interval correspondence requires i >= d, j >= i+d, k >= j+d");
  SigmaWord ii = make_sigma(i, i, j);
  SigmaWord ik = make_sigma(i, k, j);

  std::size_t horizon = k + d + 1;
  auto windows = [&](const LassoWord& w) {
    std::vector<std::vector<Letter>> out;
    for (std::size_t n = 0; n <= horizon; ++n)
      out.push_back(detail::window_at(w, n, d));
    return out;
  };
  auto wins_ii = windows(ii.realized);
  auto wins_ik = windows(ik.realized);

  // the horizon is saturated: one step further repeats the last window
  if (detail::window_at(ii.realized, horizon + 1, d) != wins_ii.back() ||
      detail::window_at(ik.realized, horizon + 1, d) != wins_ik.back())
    throw std::logic_error("window horizon did not saturate");

  IntervalCheckResult r;
  for (const auto& win : wins_ik) {
    int t = detail::window_type(win);
    if (t == 0) return r;  // unexpected shape: both properties stay false
    (t == 1 ? r.type1 : t == 2 ? r.type2 : r.type3) += 1;
  }
  for (const auto& win : wins_ii)
    if (detail::window_type(win) == 0) return r;

  auto subset = [](const std::vector<std::vector<Letter>>& xs,
                   const std::vector<std::vector<Letter>>& ys) {
    for (const auto& x : xs)
      if (std::find(ys.begin(), ys.end(), x) == ys.end()) return false;
    return true;
  };
  r.property1 = subset(wins_ik, wins_ii);
  r.property2 = subset(wins_ii, wins_ik);
  return r;
}

// ── canonical formula generation ────────────────────────────────────────────

// Structurally deduplicated bounded-past payload pool over the alphabet,
// in deterministic (generation) order: atoms first, then single negations,
// yesterday/weak-yesterday wraps, binary boolean combinations and bounded
// since, breadth-first while the depth budget allows.
inline std::vector<Formula> bounded_past_pool(const Alphabet& alphabet,
                                              std::size_t max_depth,
                                              std::size_t limit) {
  std::vector<Formula> pool;
  std::unordered_set<Formula, FormulaHash> seen;
  auto push = [&](const Formula& f) {
    if (pool.size() >= limit) return;
    if (temporal_depth(f) > max_depth) return;
    if (seen.insert(f).second) pool.push_back(f);
  };
  push(tt());
  push(ff());
  for (const auto& name : alphabet.names()) push(prop(name));
  for (std::size_t round = 0; round < 3 && pool.size() < limit; ++round) {
    std::size_t snapshot = pool.size();
    for (std::size_t x = 0; x < snapshot && pool.size() < limit; ++x) {
      push(lnot(pool[x]));
      if (max_depth > 0) {
        push(yesterday(pool[x]));
        push(weak_yesterday(pool[x]));
      }
    }
    for (std::size_t x = 0; x < snapshot && pool.size() < limit; ++x)
      for (std::size_t y = 0; y < snapshot && pool.size() < limit; ++y) {
        push(land(pool[x], pool[y]));
        push(lor(pool[x], pool[y]));
        if (max_depth > 0)
          push(bounded_since(0, 1, pool[x], pool[y]));
      }
  }
  return pool;
}

// All canonical formulas with offsets <= max_next, payload depth <= max_d,
// payloads from the deduplicated pool, and/or trees with at most
// leaf_budget terms; deterministic order, structurally duplicate-free,
// truncated at limit.
inline std::vector<CanonicalFormula> enumerate_canonical(std::size_t max_next,
                                                         std::size_t max_d,
                                                         const Alphabet& alphabet,
                                                         std::size_t leaf_budget = 2,
                                                         std::size_t limit = 2000) {
  std::vector<Formula> pool = bounded_past_pool(alphabet, max_d, 40);
  std::vector<CanonicalFormula> singles;
  for (std::size_t off = 0; off <= max_next; ++off) {
    for (const auto& a : pool) {
      singles.push_back(CanonicalFormula::term(CanonicalTerm::point(off, a)));
      singles.push_back(CanonicalFormula::term(CanonicalTerm::always_term(off, a)));
    }
    for (const auto& a : pool)
      for (const auto& b : pool)
        singles.push_back(
            CanonicalFormula::term(CanonicalTerm::release_term(off, a, b)));
  }
  std::vector<CanonicalFormula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  auto push = [&](const CanonicalFormula& c) {
    if (out.size() >= limit) return;
    if (seen.insert(c.to_formula()).second) out.push_back(c);
  };
  for (const auto& c : singles) push(c);
  if (leaf_budget >= 2) {
    for (std::size_t x = 0; x < singles.size() && out.size() < limit; ++x)
      for (std::size_t y = x + 1; y < singles.size() && out.size() < limit; ++y) {
        push(CanonicalFormula::conj(singles[x], singles[y]));
        push(CanonicalFormula::disj(singles[x], singles[y]));
      }
  }
  return out;
}

// Seeded random canonical formulas drawn from the same pool; the same seed
// regenerates the identical sequence.
inline std::vector<CanonicalFormula> sample_canonical(std::size_t count,
                                                      std::uint32_t seed,
                                                      std::size_t max_next,
                                                      std::size_t max_d,
                                                      const Alphabet& alphabet,
                                                      std::size_t leaf_budget = 3) {
  std::vector<Formula> pool = bounded_past_pool(alphabet, max_d, 64);
  std::mt19937 rng(seed);
  auto pick_pool = [&]() {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };
  auto pick_term = [&]() {
    std::size_t off =
        std::uniform_int_distribution<std::size_t>(0, max_next)(rng);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: return CanonicalFormula::term(CanonicalTerm::point(off, pick_pool()));
      case 1:
        return CanonicalFormula::term(CanonicalTerm::always_term(off, pick_pool()));
      default:
        return CanonicalFormula::term(
            CanonicalTerm::release_term(off, pick_pool(), pick_pool()));
    }
  };
  std::vector<CanonicalFormula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  while (out.size() < count) {
    std::size_t leaves =
        std::uniform_int_distribution<std::size_t>(1, leaf_budget)(rng);
    CanonicalFormula c = pick_term();
    for (std::size_t l = 1; l < leaves; ++l) {
      CanonicalFormula t = pick_term();
      c = std::uniform_int_distribution<int>(0, 1)(rng)
              ? CanonicalFormula::conj(std::move(c), std::move(t))
              : CanonicalFormula::disj(std::move(c), std::move(t));
    }
    if (seen.insert(c.to_formula()).second) out.push_back(std::move(c));
  }
  return out;
}

// ── the indistinguishability experiment ─────────────────────────────────────

struct MarginRule {
  // anchors: i = m+d, j = i+d+dj, k = j+d+dk for every (dj, dk)
  std::vector<std::pair<std::size_t, std::size_t>> grid;

  static MarginRule default_grid() {
    MarginRule r;
    for (std::size_t dj = 0; dj <= 2; ++dj)
      for (std::size_t dk = 0; dk <= 2; ++dk) r.grid.emplace_back(dj, dk);
    return r;
  }
  // the corrected margins: both separations strictly exceed the depth
  static MarginRule strict_grid() {
    MarginRule r;
    for (std::size_t dj = 1; dj <= 3; ++dj)
      for (std::size_t dk = 1; dk <= 3; ++dk) r.grid.emplace_back(dj, dk);
    return r;
  }
};

struct PairResult {
  std::size_t i = 0, j = 0, k = 0;
  bool value_ii = false;
  bool value_ik = false;
  bool agree() const { return value_ii == value_ik; }
};

struct FormulaVerdict {
  std::string formula;
  std::size_t next_depth = 0;      // m: maximal X-offset
  std::size_t payload_depth = 0;   // d: maximal payload temporal depth
  std::vector<PairResult> pairs;
  std::size_t disagreements = 0;
  bool phi_g_separates_every_pair = false;
};

struct SeparationReport {
  std::string source;  // "enumerated", "sampled", or "mixed"
  std::uint32_t seed = 0;
  std::size_t max_next = 0;
  std::size_t max_d = 0;
  std::vector<std::pair<std::size_t, std::size_t>> margin_grid;
  std::vector<FormulaVerdict> verdicts;  // sorted by formula text
  std::size_t formulas_checked = 0;
  std::size_t total_disagreements = 0;
  bool phi_g_witness_ok = false;  // phi_g separated every tested pair
};

// Evaluates each canonical formula on sigma(i,i,j) versus sigma(i,k,j)
// over the margin grid anchored at its own depths, and checks that the
// flagship formula separates every pair.  Degenerate j == i or k == j
// anchor points are bumped by one to stay inside the word family.
inline SeparationReport run_indistinguishability(
    const std::vector<CanonicalFormula>& formulas,
    const MarginRule& margins = MarginRule::default_grid()) {
  SeparationReport report;
  report.margin_grid = margins.grid;
  Formula witness = phi_g();
  bool witness_ok = true;

  for (const auto& c : formulas) {
    if (!c.bounded_payloads())
      throw std::invalid_argument(
          "indistinguishability experiment requires bounded-past payloads");
    Formula f = c.to_formula();
    FormulaVerdict v;
    v.formula = to_string(f);
    v.next_depth = c.max_offset();
    std::size_t d = 0;
    c.for_each_term([&](const CanonicalTerm& t) {
      d = std::max(d, temporal_depth(t.alpha));
      if (t.kind == TermKind::Release) d = std::max(d, temporal_depth(t.beta));
    });
    v.payload_depth = d;

    std::size_t m = v.next_depth;
    for (auto [dj, dk] : margins.grid) {
      std::size_t i = m + d;
      std::size_t j = i + d + dj;
      if (j == i) j = i + 1;
      std::size_t k = j + d + dk;
      if (k == j) k = j + 1;
      SigmaWord wii = make_sigma(i, i, j);
      SigmaWord wik = make_sigma(i, k, j);
      PairResult pr;
      pr.i = i;
      pr.j = j;
      pr.k = k;
      pr.value_ii = eval(wii.realized, f);
      pr.value_ik = eval(wik.realized, f);
      if (!pr.agree()) ++v.disagreements;
      v.pairs.push_back(pr);

      bool w_ii = eval(wii.realized, witness);
      bool w_ik = eval(wik.realized, witness);
      if (!(w_ii && !w_ik)) witness_ok = false;
    }
    v.phi_g_separates_every_pair = witness_ok;
    report.total_disagreements += v.disagreements;
    report.verdicts.push_back(std::move(v));
  }
  std::sort(report.verdicts.begin(), report.verdicts.end(),
            [](const FormulaVerdict& a, const FormulaVerdict& b) {
              return a.formula < b.formula;
            });
  report.formulas_checked = report.verdicts.size();
  report.phi_g_witness_ok = witness_ok;
  return report;
}

}  // namespace ltlp
