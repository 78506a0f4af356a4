#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "ltlp/eval.hpp"
#include "ltlp/fragments.hpp"
#include "ltlp/parser.hpp"
#include "oracle.hpp"

using namespace ltlp;

namespace {

Alphabet ab12() { return Alphabet({"p1", "p2"}); }

}  // namespace

TEST_CASE("parse basics") {
  Alphabet a = ab12();
  Formula f = parse("G(p1 | G p2)", a);
  CHECK(f == always(lor(prop("p1"), always(prop("p2")))));
  CHECK(parse("p1", a) == prop("p1"));
  CHECK_THROWS_AS(parse("p1 U[2,1] p2", a), ParseError);
  CHECK_THROWS_AS(parse("q7", a), ParseError);
  CHECK_THROWS_AS(parse("p1 &", a), ParseError);
  CHECK_THROWS_AS(parse("(p1 | p2", a), ParseError);
}

TEST_CASE("parse reports line and column") {
  Alphabet a = ab12();
  try {
    parse("p1 &\n q9", a);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column >= 2);
  }
}

TEST_CASE("parse precedence and associativity") {
  Alphabet a = ab12();
  // unary > U/R/S/T (right-assoc) > & > | > ->
  CHECK(parse("p1 U p2 U p1", a) ==
        until(prop("p1"), until(prop("p2"), prop("p1"))));
  CHECK(parse("p1 & p2 | p1", a) == lor(land(prop("p1"), prop("p2")), prop("p1")));
  CHECK(parse("p1 -> p2 -> p1", a) ==
        implies(prop("p1"), implies(prop("p2"), prop("p1"))));
  CHECK(parse("! X p1 U p2", a) == until(lnot(next(prop("p1"))), prop("p2")));
  CHECK(parse("p1 U p2 R p1", a) ==
        until(prop("p1"), release(prop("p2"), prop("p1"))));
  CHECK(parse("p1 S[0,2] p2", a) == bounded_since(0, 2, prop("p1"), prop("p2")));
}

TEST_CASE("print examples") {
  CHECK(to_string(always(lor(prop("p1"), always(prop("p2"))))) == "G (p1 | G p2)");
  CHECK(to_string(lnot(yesterday(prop("p")))) == "! (Y p)");
  CHECK(to_string(bounded_until(1, 2, prop("p"), prop("q"))) == "p U[1,2] q");
}

TEST_CASE("parse after print is the identity") {
  Alphabet a = ab12();
  gen::FormulaGen g(7, {"p1", "p2"});
  for (int i = 0; i < 500; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 12));
    Formula back = parse(to_string(f), a);
    CHECK(back == f);
  }
}

TEST_CASE("expand_shortcuts base cases") {
  Formula p = prop("p"), q = prop("q");
  CHECK(expand_shortcuts(bounded_until(0, 0, p, q)) == q);
  CHECK(expand_shortcuts(bounded_until(1, 1, p, q)) == land(next(q), p));
  CHECK(expand_shortcuts(once(p)) == since_(tt(), p));
  CHECK(expand_shortcuts(eventually(p)) == until(tt(), p));
  CHECK(expand_shortcuts(implies(p, q)) == lor(lnot(p), q));
}

TEST_CASE("expand_shortcuts removes every shortcut operator") {
  gen::FormulaGen g(11, {"p1", "p2"});
  for (int i = 0; i < 400; ++i) {
    Formula f = expand_shortcuts(g.sized(1 + static_cast<std::size_t>(i % 10)));
    for_each_node(f, [](const Formula& n) {
      Op op = n.op();
      CHECK(op != Op::BoundedUntil);
      CHECK(op != Op::BoundedSince);
      CHECK(op != Op::Eventually);
      CHECK(op != Op::Once);
      CHECK(op != Op::Historically);
      CHECK(op != Op::Triggered);
      CHECK(op != Op::Implies);
    });
  }
}

TEST_CASE("nnf base cases") {
  Formula p = prop("p");
  CHECK(nnf(lnot(always(p))) == eventually(lnot(p)));
  CHECK(nnf(lnot(yesterday(p))) == weak_yesterday(lnot(p)));
  CHECK(nnf(p) == p);
}

TEST_CASE("nnf leaves negations only on propositions") {
  gen::FormulaGen g(23, {"p1", "p2"});
  for (int i = 0; i < 400; ++i) {
    Formula f = nnf(g.sized(1 + static_cast<std::size_t>(i % 10)));
    for_each_node(f, [](const Formula& n) {
      if (n.op() == Op::Not) CHECK(n.child(0).op() == Op::Prop);
      CHECK(n.op() != Op::Implies);
    });
  }
}

TEST_CASE("expand_shortcuts and nnf preserve evaluation everywhere") {
  Alphabet a = ab12();
  auto words = gen::all_lassos(a, 3, 2);
  gen::FormulaGen g(31, {"p1", "p2"});
  for (int i = 0; i < 60; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 8));
    Formula e = expand_shortcuts(f);
    Formula n = nnf(f);
    for (const auto& w : words) {
      std::size_t limit = w.stem.size() + 2 * w.loop.size();
      Evaluation evf(w, f), eve(w, e), evn(w, n);
      for (std::size_t pos = 0; pos <= limit; ++pos) {
        bool expect = evf.at(pos);
        CHECK(eve.at(pos) == expect);
        CHECK(evn.at(pos) == expect);
      }
    }
  }
}

TEST_CASE("metrics") {
  Formula p = prop("p"), q = prop("q");
  CHECK(temporal_depth(yesterday(p)) == 1);
  CHECK(temporal_depth(bounded_since(2, 5, p, q)) == 5);
  Formula f = next(next(always(lor(lor(p, yesterday(p)), yesterday(yesterday(p))))));
  SyntacticMetrics m = metrics(f);
  CHECK(m.next_depth == 2);
  CHECK(m.past_temporal_depth == 2);
  CHECK(m.size == f.size());
  CHECK(metrics(prop("p")).past_temporal_depth == 0);
  CHECK(metrics(always(p)).next_depth == 0);
}

TEST_CASE("temporal depth extends to weak yesterday") {
  CHECK(temporal_depth(weak_yesterday(yesterday(prop("p")))) == 2);
}

TEST_CASE("bounded-past window property") {
  // for bounded-past a with depth d, truth at n only depends on the last
  // d+1 letters
  Alphabet a = ab12();
  auto words = gen::all_lassos(a, 3, 2);
  gen::FormulaGen g(47, {"p1", "p2"});
  g.with_future = false;
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 8));
    if (!is_bounded_past(f)) continue;
    ++checked;
    std::size_t d = temporal_depth(f);
    for (std::size_t wi = 0; wi < words.size(); wi += 7) {
      const auto& w = words[wi];
      std::size_t limit = w.stem.size() + 2 * w.loop.size();
      Evaluation ev(w, f);
      for (std::size_t n = 0; n <= limit; ++n) {
        FiniteWord window =
            interval(w, static_cast<long long>(n) - static_cast<long long>(d),
                     static_cast<long long>(n));
        CHECK(ev.at(n) == evalfin(window, f));
      }
    }
  }
  CHECK(checked > 20);
}
