#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "layrel/error.hpp"

namespace layrel::detail {

/// Token stream shared by every text grammar in the library: integers,
/// identifiers, the two-character symbols `->`, `<=`, `>=`, and single
/// punctuation characters. Whitespace is insignificant.
class Lexer {
public:
  enum class Kind { End, Int, Ident, Symbol };

  struct Token {
    Kind kind = Kind::End;
    std::string_view text;
    std::size_t pos = 0;
  };

  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token &peek() const noexcept { return tok_; }
  std::size_t pos() const noexcept { return tok_.pos; }
  bool at_end() const noexcept { return tok_.kind == Kind::End; }

  bool is(std::string_view sym) const noexcept {
    return (tok_.kind == Kind::Symbol || tok_.kind == Kind::Ident) &&
           tok_.text == sym;
  }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  bool accept(std::string_view sym) {
    if (!is(sym))
      return false;
    advance();
    return true;
  }

  void expect(std::string_view sym) {
    if (!accept(sym))
      fail("expected '" + std::string(sym) + "'");
  }

  std::int64_t expect_int() {
    if (tok_.kind != Kind::Int)
      fail("expected an integer");
    std::int64_t v = 0;
    for (char ch : tok_.text) {
      if (__builtin_mul_overflow(v, 10, &v) ||
          __builtin_add_overflow(v, ch - '0', &v))
        fail("integer literal out of range");
    }
    advance();
    return v;
  }

  /// Optionally signed integer literal.
  std::int64_t expect_signed_int() {
    bool neg = accept("-");
    std::int64_t v = expect_int();
    return neg ? -v : v;
  }

  std::string_view expect_ident() {
    if (tok_.kind != Kind::Ident)
      fail("expected an identifier");
    return next().text;
  }

  void expect_end() {
    if (!at_end())
      fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string &what) const {
    std::string found = tok_.kind == Kind::End
                            ? std::string("end of input")
                            : "'" + std::string(tok_.text) + "'";
    throw ParseError(what + ", found " + found, tok_.pos);
  }

private:
  void advance() {
    while (i_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[i_])))
      ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Kind::End;
      tok_.text = {};
      return;
    }
    const std::size_t start = i_;
    const char ch = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[i_])))
        ++i_;
      tok_.kind = Kind::Int;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
              src_[i_] == '_'))
        ++i_;
      tok_.kind = Kind::Ident;
    } else {
      ++i_;
      if (i_ < src_.size()) {
        const char nx = src_[i_];
        if ((ch == '-' && nx == '>') || (ch == '<' && nx == '=') ||
            (ch == '>' && nx == '='))
          ++i_;
      }
      tok_.kind = Kind::Symbol;
    }
    tok_.text = src_.substr(start, i_ - start);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_;
};

} // namespace layrel::detail
