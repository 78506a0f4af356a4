#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "ltlp/canonical.hpp"
#include "ltlp/fragments.hpp"
#include "ltlp/parser.hpp"

using namespace ltlp;

namespace {
Formula P(const std::string& s) { return parse(s); }
}  // namespace

TEST_CASE("classify the running examples") {
  FragmentReport g = classify(P("G(p1 | G p2)"));
  CHECK(g.is_safetyltl);
  CHECK_FALSE(g.is_ltlebr);
  CHECK_FALSE(g.is_ltlebrp);

  FragmentReport h = classify(P("G(!p2 -> H p1)"));
  CHECK(h.is_ltlebrp);
  CHECK_FALSE(h.is_ltlebr);
  CHECK_FALSE(h.is_pure_past);

  FragmentReport r = classify(P("G p2 | ((X G p2) R p1)"));
  CHECK_FALSE(r.is_ltlebr);
  CHECK_FALSE(r.is_ltlebrp);
  CHECK(r.is_safetyltl);
}

TEST_CASE("release may nest on the right, never on the left") {
  CHECK(is_future_layer(P("p1 R (p2 R p3)")));
  CHECK(is_ltlebr(P("p1 R (p2 R p3)")));
  CHECK_FALSE(is_ltlebrp(P("(p1 R p2) R p3")));
}

TEST_CASE("derived closures inside layers") {
  // conjunction and implication are sugar inside the bounded layer
  CHECK(is_bounded_future_layer(P("X p1 & (p2 -> X X p1)")));
  // G never enters the bounded layer
  CHECK_FALSE(is_bounded_future_layer(P("X G p1")));
  // O/H/T/Z are derivable in the pure past layer
  CHECK(is_ltlebrp(P("G(O p1 & H p2)")));
  CHECK(is_pure_past(P("(Z p1) T (O p2)")));
  // bounded until is native to the bounded layer
  CHECK(is_ltlebr(P("G(p1 U[0,2] p2)")));
  // until and eventually stay out
  CHECK_FALSE(is_ltlebrp(P("p1 U p2")));
  CHECK_FALSE(is_ltlebrp(P("G F p1")));
}

TEST_CASE("pure past and bounded past") {
  CHECK(is_pure_past(P("p1 S p2")));
  CHECK_FALSE(is_bounded_past(P("p1 S p2")));
  CHECK(is_bounded_past(P("p1 S[0,3] p2")));
  CHECK(is_bounded_past(P("Y p1 & Z (p2 -> p1)")));
  CHECK_FALSE(is_bounded_past(P("O p1")));
  CHECK_FALSE(is_pure_past(P("X p1")));
}

TEST_CASE("safetyltl membership") {
  CHECK(is_safetyltl(P("G p1")));
  CHECK(is_safetyltl(P("! (p1 U p2)")));     // nnf turns this into a release
  CHECK_FALSE(is_safetyltl(P("! (p1 R p2)")));
  CHECK_FALSE(is_safetyltl(P("F p1")));
  CHECK(is_safetyltl(P("p1 U[0,2] p2")));    // bounded until is universal
  CHECK_FALSE(is_safetyltl(P("G(Y p1)")));   // past modalities excluded
}

TEST_CASE("canonical recognizer") {
  CHECK(is_canonical(P("X X G(p | Y p | Y Y p)")));
  CHECK(is_canonical(P("G p1 & (p1 R p2)")));
  CHECK(is_canonical(P("X p1 | G(p1 S[0,2] p2)")));
  CHECK_FALSE(is_canonical(P("G(O p1)")));        // unbounded payload
  CHECK(is_canonical_pure_past(P("G(O p1)")));
  CHECK_FALSE(is_canonical(P("X (G p1 & p2)")));  // X over a tree is not a term
  CHECK_FALSE(is_canonical(P("p1 U p2")));
}

TEST_CASE("layer trace names the innermost layer") {
  FragmentReport r = classify(P("G(!p2 -> H p1)"));
  bool saw_pure_past = false, saw_future = false;
  for (const auto& [text, layer] : r.layer_trace) {
    if (text == "! p2 -> H p1") CHECK(layer == "pure-past");
    if (layer == "pure-past") saw_pure_past = true;
    if (layer == "future") saw_future = true;
  }
  CHECK(saw_pure_past);
  CHECK(saw_future);
}

TEST_CASE("hierarchy over generated formulas") {
  gen::FormulaGen g(71, {"p1", "p2"});
  for (int i = 0; i < 1500; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 9));
    FragmentReport r = classify(f);
    if (r.is_ltlebr) CHECK(r.is_ltlebrp);
    if (r.is_ltlebr) CHECK(r.is_safetyltl);
    if (r.is_canonical) CHECK(r.is_ltlebrp);
    if (r.is_bounded_past) CHECK(r.is_pure_past);
    if (r.is_pure_past) CHECK(r.is_ltlebrp);
    if (r.is_canonical && !contains_past(f)) CHECK(r.is_ltlebr);
    if (r.is_bounded_future_layer) CHECK(r.is_future_layer);
    if (r.is_future_layer) CHECK(r.is_ltlebrp);
  }
}

TEST_CASE("canonicalize output is recognized as canonical") {
  gen::EbrGen g(5, {"p1", "p2"});
  int n = 0;
  for (int i = 0; i < 300 && n < 120; ++i) {
    Formula f = g.chi(1 + static_cast<std::size_t>(i % 9));
    if (!is_ltlebrp(f)) continue;
    ++n;
    CanonicalizeResult r = canonicalize(f);
    Formula out = r.canonical.to_formula();
    CHECK(is_canonical_pure_past(out));
    CHECK(is_ltlebrp(out));
  }
  CHECK(n == 120);
}
