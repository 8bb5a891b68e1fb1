#include "lexer.hpp"

#include <cctype>
#include <charconv>

namespace abc::detail {

const char* tokName(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Float: return "float";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::At: return "'@'";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::OrOr: return "'||'";
    case Tok::AndAnd: return "'&&'";
    case Tok::Bang: return "'!'";
    case Tok::Arrow: return "'->'";
  }
  return "?";
}

namespace {

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      if (pos_ >= src_.size()) break;
      const std::uint32_t line = line_, col = col_;
      Token t;
      if (!next(t)) continue;
      t.span = SourceSpan{line, col, line_, col_ > 1 ? col_ - 1 : col_};
      out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.span = SourceSpan{line_, col_, line_, col_};
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skipTrivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == '#') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void error(const std::string& msg, std::uint32_t line, std::uint32_t col) {
    diags_.push_back(Diagnostic{Severity::Error, SourceSpan{line, col, line, col}, "E-LEX", msg});
  }

  bool next(Token& t) {
    const std::uint32_t line = line_, col = col_;
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') t.text += advance();
      return true;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(t, line, col);
    if (c == '"') return string(t, line, col);
    advance();
    auto two = [&](char expect, Tok yes, Tok no) {
      if (peek() == expect) {
        advance();
        t.kind = yes;
      } else {
        t.kind = no;
      }
      return true;
    };
    switch (c) {
      case '{': t.kind = Tok::LBrace; return true;
      case '}': t.kind = Tok::RBrace; return true;
      case '(': t.kind = Tok::LParen; return true;
      case ')': t.kind = Tok::RParen; return true;
      case '[': t.kind = Tok::LBracket; return true;
      case ']': t.kind = Tok::RBracket; return true;
      case ',': t.kind = Tok::Comma; return true;
      case ';': t.kind = Tok::Semi; return true;
      case ':': return two('=', Tok::Assign, Tok::Colon);
      case '=': t.kind = Tok::Eq; return true;
      case '!': return two('=', Tok::Ne, Tok::Bang);
      case '<': return two('=', Tok::Le, Tok::Lt);
      case '>': return two('=', Tok::Ge, Tok::Gt);
      case '+': t.kind = Tok::Plus; return true;
      case '-': return two('>', Tok::Arrow, Tok::Minus);
      case '*': t.kind = Tok::Star; return true;
      case '/': t.kind = Tok::Slash; return true;
      case '@': t.kind = Tok::At; return true;
      case '.': t.kind = Tok::Dot; return true;
      case '|': return two('|', Tok::OrOr, Tok::Bar);
      case '&':
        if (peek() == '&') {
          advance();
          t.kind = Tok::AndAnd;
          return true;
        }
        error("stray '&' (did you mean '&&'?)", line, col);
        return false;
      default:
        error(std::string("unexpected character '") + c + "'", line, col);
        return false;
    }
  }

  bool number(Token& t, std::uint32_t line, std::uint32_t col) {
    std::string digits;
    bool isFloat = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      isFloat = true;
      digits += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      isFloat = true;
      digits += advance();
      if (peek() == '+' || peek() == '-') digits += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
    }
    const bool percent = peek() == '%';
    if (percent) advance();
    t.text = digits;
    if (isFloat || percent) {
      double v = 0;
      auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (res.ec != std::errc{}) {
        error("malformed number '" + digits + "'", line, col);
        return false;
      }
      t.kind = Tok::Float;
      t.floatValue = percent ? v / 100.0 : v;
      return true;
    }
    std::int64_t v = 0;
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (res.ec != std::errc{}) {
      error("integer literal '" + digits + "' out of range", line, col);
      return false;
    }
    t.kind = Tok::Int;
    t.intValue = v;
    return true;
  }

  bool string(Token& t, std::uint32_t line, std::uint32_t col) {
    advance();  // opening quote
    t.kind = Tok::String;
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n') {
        error("unterminated string literal", line, col);
        return false;
      }
      char c = advance();
      if (c == '"') return true;
      if (c == '\\') {
        if (pos_ >= src_.size()) continue;
        char e = advance();
        switch (e) {
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          case '"': t.text += '"'; break;
          case '\\': t.text += '\\'; break;
          default:
            error(std::string("unknown escape '\\") + e + "'", line_, col_ - 1);
            t.text += e;
        }
        continue;
      }
      t.text += c;
    }
  }

  std::string_view src_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diags) {
  return Lexer(source, diags).run();
}

}  // namespace abc::detail
