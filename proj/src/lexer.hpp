#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "abc/diagnostics.hpp"

namespace abc::detail {

enum class Tok {
  End,
  Ident,
  Int,
  Float,
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Assign,  // :=
  Eq,      // =
  Ne,      // !=
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  At,
  Dot,
  Bar,     // |
  OrOr,    // ||
  AndAnd,  // &&
  Bang,    // !
  Arrow,   // ->
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t intValue = 0;
  double floatValue = 0.0;
  SourceSpan span;
};

const char* tokName(Tok t);

/// Tokenizes `.abc` source. `#` starts a line comment. An integer or float
/// literal followed by `%` becomes the float value / 100.
std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diags);

}  // namespace abc::detail
