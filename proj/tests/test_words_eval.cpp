#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "ltlp/eval.hpp"
#include "ltlp/parser.hpp"
#include "oracle.hpp"

using namespace ltlp;

namespace {

Alphabet ab1() { return Alphabet({"p"}); }
Alphabet ab12() { return Alphabet({"p1", "p2"}); }

}  // namespace

TEST_CASE("interval clamps negative starts") {
  Alphabet a = ab1();
  LassoWord w(a, {1, 0, 1}, {0});
  FiniteWord s = interval(w, -2, 1);
  CHECK(s.size() == 2);
  CHECK(s.at(0) == 1);
  CHECK(s.at(1) == 0);
  FiniteWord t = interval(w, 3, 3);
  CHECK(t.size() == 1);
}

TEST_CASE("interval unrolls the loop") {
  Alphabet a = ab1();
  LassoWord w(a, {1}, {0});
  FiniteWord s = interval(w, 0, 2);
  CHECK(s.letters == std::vector<Letter>({1, 0, 0}));
}

TEST_CASE("interval end past a finite word is an error") {
  Alphabet a = ab1();
  FiniteWord w(a, {1, 0});
  CHECK_THROWS_AS(interval(w, 0, 2), std::out_of_range);
  CHECK(interval(w, -5, 1).size() == 2);
}

TEST_CASE("word literals") {
  Alphabet a = ab12();
  LassoWord w = parse_lasso("{p1 p2}{p1};{p1 p2}", a);
  CHECK(w.stem.size() == 2);
  CHECK(w.loop.size() == 1);
  CHECK(w.stem[0] == 3);
  CHECK(w.stem[1] == 1);
  CHECK(w.loop[0] == 3);
  CHECK(to_string(w) == "{p1 p2}{p1};{p1 p2}");
  LassoWord e = parse_lasso(";{}", a);
  CHECK(e.stem.empty());
  CHECK(e.loop[0] == 0);
  CHECK_THROWS(parse_lasso("{p1}", a));
}

TEST_CASE("eval base cases from the satisfaction table") {
  Alphabet a = ab1();
  LassoWord empty(a, {}, {0});
  CHECK_FALSE(eval_at(empty, 0, yesterday(tt())));
  CHECK(eval_at(empty, 1, yesterday(tt())));
  CHECK(eval_at(empty, 0, weak_yesterday(ff())));
  CHECK_FALSE(eval_at(empty, 1, weak_yesterday(ff())));

  LassoWord w(a, {1}, {0});
  CHECK_FALSE(eval_at(w, 0, always(prop("p"))));
  CHECK(eval_at(w, 0, eventually(prop("p"))));
}

TEST_CASE("eval at the first state") {
  Alphabet a = ab12();
  CHECK(eval(LassoWord(a, {}, {0}), tt()));
  Formula phi_g = parse("G(p1 | G p2)", a);
  CHECK(eval(LassoWord(a, {}, {3}), phi_g));
  CHECK_FALSE(eval(LassoWord(a, {2}, {1}), phi_g));
}

TEST_CASE("evalfin") {
  Alphabet a = ab12();
  Alphabet ap({"p"});
  Alphabet aq({"p", "q"});
  CHECK(evalfin(FiniteWord(ap, {1}), prop("p")));
  CHECK(evalfin(FiniteWord(ap, {1, 0}), yesterday(prop("p"))));
  CHECK(evalfin(FiniteWord(aq, {0, 2}), since_(prop("p"), prop("q"))));
  CHECK_THROWS_AS(evalfin(FiniteWord(ap, {1}), next(prop("p"))),
                  std::invalid_argument);
}

TEST_CASE("evalfin agrees with the finite-word oracle") {
  Alphabet a = ab12();
  auto words = gen::all_finite_words(a, 4);
  gen::FormulaGen g(5, {"p1", "p2"});
  g.with_future = false;
  for (int i = 0; i < 120; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 8));
    for (std::size_t wi = 0; wi < words.size(); wi += 5)
      CHECK(evalfin(words[wi], f) == oracle::holds_fin(words[wi], f));
  }
}

TEST_CASE("evaluator agrees with the brute-force oracle") {
  Alphabet a = ab12();
  auto words = gen::all_lassos(a, 2, 2);
  gen::FormulaGen g(97, {"p1", "p2"});
  for (int i = 0; i < 150; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 7));
    for (std::size_t wi = 0; wi < words.size(); wi += 3) {
      const auto& w = words[wi];
      oracle::Brute b(w, f);
      Evaluation ev(w, f);
      std::size_t limit = w.stem.size() + 2 * w.loop.size();
      for (std::size_t pos = 0; pos <= limit; ++pos)
        CHECK(ev.at(pos) == b.holds(f, pos));
    }
  }
}

TEST_CASE("representation stutter: unrolled loops and extended stems") {
  Alphabet a = ab12();
  gen::FormulaGen g(13, {"p1", "p2"});
  auto words = gen::all_lassos(a, 2, 2);
  for (int i = 0; i < 60; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 7));
    for (std::size_t wi = 0; wi < words.size(); wi += 11) {
      const auto& w = words[wi];
      // loop doubled
      std::vector<Letter> loop2 = w.loop;
      loop2.insert(loop2.end(), w.loop.begin(), w.loop.end());
      LassoWord unrolled(a, w.stem, loop2);
      // one loop copy moved into the stem
      std::vector<Letter> stem2 = w.stem;
      stem2.insert(stem2.end(), w.loop.begin(), w.loop.end());
      LassoWord extended(a, stem2, w.loop);
      std::size_t limit = w.stem.size() + 2 * w.loop.size();
      Evaluation e0(w, f), e1(unrolled, f), e2(extended, f);
      for (std::size_t pos = 0; pos <= limit; ++pos) {
        bool expect = e0.at(pos);
        CHECK(e1.at(pos) == expect);
        CHECK(e2.at(pos) == expect);
      }
    }
  }
}

TEST_CASE("duality and decomposition laws") {
  Alphabet a = ab12();
  gen::FormulaGen g(41, {"p1", "p2"});
  auto words = gen::all_lassos(a, 2, 1);
  for (int i = 0; i < 50; ++i) {
    Formula f = g.sized(1 + static_cast<std::size_t>(i % 6));
    Formula gg = g.sized(1 + static_cast<std::size_t>((i * 7) % 6));
    Formula unt = until(f, gg);
    Formula snc = since_(f, gg);
    for (std::size_t wi = 0; wi < words.size(); wi += 9) {
      const auto& w = words[wi];
      std::size_t limit = w.stem.size() + 2 * w.loop.size();
      for (std::size_t pos = 0; pos <= limit; ++pos) {
        CHECK(eval_at(w, pos, lnot(f)) == !eval_at(w, pos, f));
        CHECK(eval_at(w, pos, next(f)) == eval_at(w, pos + 1, f));
        // expansion laws
        CHECK(eval_at(w, pos, unt) ==
              eval_at(w, pos, lor(gg, land(f, next(unt)))));
        CHECK(eval_at(w, pos, snc) ==
              eval_at(w, pos, lor(gg, land(f, yesterday(snc)))));
      }
    }
  }
}
