// ltlp/words.hpp — finite and ultimately-periodic word models.
//
// A letter is a bitmask over the alphabet's propositions (bit i set iff
// proposition i holds).  A lasso word is stem + loop; position n maps to
// stem[n] for n < |stem| and to loop[(n - |stem|) mod |loop|] otherwise.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlp/alphabet.hpp"

namespace ltlp {

using Letter = std::uint32_t;

struct FiniteWord {
  Alphabet alphabet;
  std::vector<Letter> letters;

  FiniteWord(Alphabet a, std::vector<Letter> ls)
      : alphabet(std::move(a)), letters(std::move(ls)) {
    if (letters.empty())
      throw std::invalid_argument("finite word must be nonempty");
  }

  std::size_t size() const { return letters.size(); }
  Letter at(std::size_t n) const { return letters.at(n); }
};

struct LassoWord {
  Alphabet alphabet;
  std::vector<Letter> stem;  // may be empty
  std::vector<Letter> loop;  // nonempty

  LassoWord(Alphabet a, std::vector<Letter> stem_, std::vector<Letter> loop_)
      : alphabet(std::move(a)), stem(std::move(stem_)), loop(std::move(loop_)) {
    if (loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  }

  Letter at(std::size_t n) const {
    if (n < stem.size()) return stem[n];
    return loop[(n - stem.size()) % loop.size()];
  }
};

// σ_[i,j] with the negative-start clamp: positions max(i,0)..j materialized.
inline FiniteWord interval(const LassoWord& w, long long i, long long j) {
  if (j < 0 || i > j) throw std::invalid_argument("interval requires 0 <= j and i <= j");
  std::vector<Letter> out;
  for (long long n = std::max<long long>(i, 0); n <= j; ++n)
    out.push_back(w.at(static_cast<std::size_t>(n)));
  return FiniteWord(w.alphabet, std::move(out));
}

inline FiniteWord interval(const FiniteWord& w, long long i, long long j) {
  if (j < 0 || i > j) throw std::invalid_argument("interval requires 0 <= j and i <= j");
  if (static_cast<std::size_t>(j) >= w.size())
    throw std::out_of_range("interval end beyond finite word length");
  std::vector<Letter> out;
  for (long long n = std::max<long long>(i, 0); n <= j; ++n)
    out.push_back(w.at(static_cast<std::size_t>(n)));
  return FiniteWord(w.alphabet, std::move(out));
}

// ── word literals ───────────────────────────────────────────────────────────
//
// Text syntax: `{p1 p2}{p1};{p1 p2}`: brace groups are letters, `;`
// separates stem from loop.  A lasso requires the `;`; a finite word is just
// a sequence of brace groups.

namespace detail {

inline std::vector<Letter> parse_letters(const std::string& text, std::size_t& pos,
                                         const Alphabet& alphabet) {
  std::vector<Letter> letters;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip();
  while (pos < text.size() && text[pos] == '{') {
    ++pos;
    Letter l = 0;
    for (;;) {
      skip();
      if (pos >= text.size()) throw std::invalid_argument("unterminated letter in word");
      if (text[pos] == '}') {
        ++pos;
        break;
      }
      std::size_t end = pos;
      while (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) ||
                                   text[end] == '_'))
        ++end;
      if (end == pos) throw std::invalid_argument("expected proposition in word letter");
      std::string name = text.substr(pos, end - pos);
      pos = end;
      l |= Letter{1} << alphabet.index_of(name);
    }
    letters.push_back(l);
    skip();
  }
  return letters;
}

}  // namespace detail

inline LassoWord parse_lasso(const std::string& text, const Alphabet& alphabet) {
  auto sep = text.find(';');
  if (sep == std::string::npos)
    throw std::invalid_argument("lasso word needs ';' between stem and loop");
  std::size_t pos = 0;
  std::string stem_part = text.substr(0, sep);
  std::string loop_part = text.substr(sep + 1);
  auto stem = detail::parse_letters(stem_part, pos, alphabet);
  if (pos != stem_part.size() &&
      stem_part.find_first_not_of(" \t", pos) != std::string::npos)
    throw std::invalid_argument("unexpected input in word stem");
  pos = 0;
  auto loop = detail::parse_letters(loop_part, pos, alphabet);
  if (pos != loop_part.size() &&
      loop_part.find_first_not_of(" \t", pos) != std::string::npos)
    throw std::invalid_argument("unexpected input in word loop");
  return LassoWord(alphabet, std::move(stem), std::move(loop));
}

inline FiniteWord parse_finite_word(const std::string& text, const Alphabet& alphabet) {
  std::size_t pos = 0;
  auto letters = detail::parse_letters(text, pos, alphabet);
  if (text.find_first_not_of(" \t", pos) != std::string::npos)
    throw std::invalid_argument("unexpected input in word");
  return FiniteWord(alphabet, std::move(letters));
}

inline std::string letter_to_string(Letter l, const Alphabet& alphabet) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (l & (Letter{1} << i)) {
      if (!first) out += ' ';
      out += alphabet.name(i);
      first = false;
    }
  }
  out += '}';
  return out;
}

inline std::string to_string(const LassoWord& w) {
  std::string out;
  for (Letter l : w.stem) out += letter_to_string(l, w.alphabet);
  out += ';';
  for (Letter l : w.loop) out += letter_to_string(l, w.alphabet);
  return out;
}

inline std::string to_string(const FiniteWord& w) {
  std::string out;
  for (Letter l : w.letters) out += letter_to_string(l, w.alphabet);
  return out;
}

}  // namespace ltlp
