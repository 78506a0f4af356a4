// ltlp/parser.hpp — recursive-descent parser for the concrete grammar.
//
// Grammar (ASCII):
//   atoms        identifiers (letter then letters/digits/underscore)
//   constants    true false
//   unary        ! X Y Z F G O H
//   binary       & | -> U R S T and bounded U[a,b] S[a,b]
//   precedence   unary > U/R/S/T (right-assoc) > & > | > ->
//
// The reserved single-letter operator names (X, Y, Z, F, G, O, H, U, R, S, T)
// are not usable as propositions.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ltlp/alphabet.hpp"
#include "ltlp/formula.hpp"

namespace ltlp {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                           std::to_string(column_)),
        line(line_),
        column(column_) {}
};

namespace detail {

inline bool reserved_word(const std::string& s) {
  if (s == "true" || s == "false") return true;
  if (s.size() != 1) return false;
  switch (s[0]) {
    case 'X': case 'Y': case 'Z': case 'F': case 'G': case 'O': case 'H':
    case 'U': case 'R': case 'S': case 'T':
      return true;
    default:
      return false;
  }
}

class Parser {
 public:
  Parser(const std::string& text, const Alphabet* alphabet, Alphabet* collect)
      : text_(text), alphabet_(alphabet), collect_(collect) {}

  Formula run() {
    Formula f = parse_implies();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, static_cast<int>(pos_ - line_start_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        line_start_ = pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::optional<std::string> peek_word() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    if (!std::isalpha(static_cast<unsigned char>(text_[pos_]))) return std::nullopt;
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::uint32_t parse_nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 1000000) fail("bound too large");
      ++pos_;
    }
    return static_cast<std::uint32_t>(v);
  }

  // -> (right-assoc, lowest precedence)
  Formula parse_implies() {
    Formula left = parse_or();
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return implies(std::move(left), parse_implies());
    }
    return left;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek('|')) {
      eat('|');
      f = lor(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_temporal();
    while (peek('&')) {
      eat('&');
      f = land(std::move(f), parse_temporal());
    }
    return f;
  }

  // U R S T and bounded forms, right-assoc
  Formula parse_temporal() {
    Formula left = parse_unary();
    auto word = peek_word();
    if (!word || word->size() != 1) return left;
    char op = (*word)[0];
    if (op != 'U' && op != 'R' && op != 'S' && op != 'T') return left;
    pos_ += 1;
    bool bounded = false;
    std::uint32_t lo = 0, hi = 0;
    if (pos_ < text_.size() && text_[pos_] == '[') {
      if (op != 'U' && op != 'S') fail("bounds are only allowed on U and S");
      ++pos_;
      lo = parse_nat();
      if (!eat(',')) fail("expected ',' in bound");
      hi = parse_nat();
      if (!eat(']')) fail("expected ']' in bound");
      if (lo > hi) fail("malformed bound: lower bound exceeds upper bound");
      bounded = true;
    }
    Formula right = parse_temporal();
    switch (op) {
      case 'U':
        return bounded ? bounded_until(lo, hi, std::move(left), std::move(right))
                       : until(std::move(left), std::move(right));
      case 'R': return release(std::move(left), std::move(right));
      case 'S':
        return bounded ? bounded_since(lo, hi, std::move(left), std::move(right))
                       : since_(std::move(left), std::move(right));
      case 'T': return triggered(std::move(left), std::move(right));
    }
    fail("unreachable");
  }

  Formula parse_unary() {
    skip_ws();
    if (eat('!')) return lnot(parse_unary());
    auto word = peek_word();
    if (word) {
      if (*word == "true") {
        pos_ += 4;
        return tt();
      }
      if (*word == "false") {
        pos_ += 5;
        return ff();
      }
      if (word->size() == 1) {
        switch ((*word)[0]) {
          case 'X': pos_ += 1; return next(parse_unary());
          case 'Y': pos_ += 1; return yesterday(parse_unary());
          case 'Z': pos_ += 1; return weak_yesterday(parse_unary());
          case 'F': pos_ += 1; return eventually(parse_unary());
          case 'G': pos_ += 1; return always(parse_unary());
          case 'O': pos_ += 1; return once(parse_unary());
          case 'H': pos_ += 1; return historically(parse_unary());
          default: break;
        }
      }
      if (reserved_word(*word)) fail("operator '" + *word + "' needs an operand");
      // proposition
      std::string name = *word;
      pos_ += name.size();
      if (alphabet_ && !alphabet_->contains(name))
        fail("unknown proposition '" + name + "'");
      if (collect_) collect_->add(name);
      return prop(std::move(name));
    }
    if (eat('(')) {
      Formula f = parse_implies();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    fail("expected formula");
  }

  const std::string& text_;
  const Alphabet* alphabet_;
  Alphabet* collect_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
};

}  // namespace detail

// Parse against a declared alphabet; identifiers outside it are errors.
inline Formula parse(const std::string& text, const Alphabet& alphabet) {
  return detail::Parser(text, &alphabet, nullptr).run();
}

// Parse and collect propositions into `alphabet` in first-occurrence order.
inline Formula parse_collect(const std::string& text, Alphabet& alphabet) {
  return detail::Parser(text, nullptr, &alphabet).run();
}

// Parse with an inferred alphabet (first-occurrence order).
inline Formula parse(const std::string& text) {
  Alphabet a;
  return parse_collect(text, a);
}

}  // namespace ltlp
