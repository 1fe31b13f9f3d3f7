#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace m2c {

enum class LexKind {
  Identifier,
  Keyword,
  Operator,
  Separator,
  StringLit,
  CharLit,
  NumberLit,
  Comment,
};

struct LexToken {
  LexKind kind;
  std::string text;  // verbatim source text
  int line = 1;      // 1-based
  int col = 1;       // 1-based, bytes
};

class LexError : public std::runtime_error {
 public:
  enum Kind { UnterminatedString, UnterminatedComment };

  LexError(Kind kind, int line)
      : std::runtime_error(kind == UnterminatedString
                               ? "unterminated string literal at line " + std::to_string(line)
                               : "unterminated comment at line " + std::to_string(line)),
        kind_(kind),
        line_(line) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

inline const std::set<std::string>& java_keywords() {
  static const std::set<std::string> kw = {
      "abstract", "assert",     "boolean",  "break",      "byte",    "case",
      "catch",    "char",       "class",    "const",      "continue", "default",
      "do",       "double",     "else",     "enum",       "extends", "final",
      "finally",  "float",      "for",      "goto",       "if",      "implements",
      "import",   "instanceof", "int",      "interface",  "long",    "native",
      "new",      "package",    "private",  "protected",  "public",  "return",
      "short",    "static",     "strictfp", "super",      "switch",  "synchronized",
      "this",     "throw",      "throws",   "transient",  "try",     "void",
      "volatile", "while",      "true",     "false",      "null"};
  return kw;
}

inline bool is_primitive_type_keyword(std::string_view s) {
  static const std::set<std::string, std::less<>> prims = {
      "boolean", "byte", "char", "double", "float", "int", "long", "short", "void"};
  return prims.count(s) > 0;
}

// Tokenizes Java-like source. Comments are kept as tokens; whitespace is
// skipped. Concatenating token texts plus the skipped whitespace reproduces
// the input.
inline std::vector<LexToken> lex(std::string_view src) {
  std::vector<LexToken> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  const std::size_t n = src.size();

  auto peek = [&](std::size_t off = 0) -> char {
    return i + off < n ? src[i + off] : '\0';
  };
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto emit = [&](LexKind kind, std::size_t begin, int tl, int tc) {
    out.push_back({kind, std::string(src.substr(begin, i - begin)), tl, tc});
  };

  auto is_id_head = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_id_tail = [&](char c) { return is_id_head(c) || is_digit(c); };

  static const char* multi_ops[] = {">>>=", "<<=", ">>=", ">>>", "->", "::", "++", "--",
                                    "<<",  ">>",  "<=",  ">=",  "==", "!=", "&&", "||",
                                    "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^="};

  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      advance(1);
      continue;
    }
    std::size_t begin = i;
    int tl = line, tc = col;

    if (c == '/' && peek(1) == '/') {
      while (i < n && src[i] != '\n') advance(1);
      emit(LexKind::Comment, begin, tl, tc);
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      advance(2);
      bool closed = false;
      while (i < n) {
        if (src[i] == '*' && peek(1) == '/') {
          advance(2);
          closed = true;
          break;
        }
        advance(1);
      }
      if (!closed) throw LexError(LexError::UnterminatedComment, tl);
      emit(LexKind::Comment, begin, tl, tc);
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      advance(1);
      bool closed = false;
      while (i < n) {
        if (src[i] == '\\' && i + 1 < n) {
          advance(2);
          continue;
        }
        if (src[i] == quote) {
          advance(1);
          closed = true;
          break;
        }
        advance(1);
      }
      if (!closed) throw LexError(LexError::UnterminatedString, tl);
      emit(quote == '"' ? LexKind::StringLit : LexKind::CharLit, begin, tl, tc);
      continue;
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
      advance(1);
      while (i < n) {
        char d = src[i];
        if (is_id_tail(d)) {
          advance(1);
        } else if (d == '.' && is_digit(peek(1))) {
          advance(1);
        } else if ((d == '+' || d == '-') && i > begin &&
                   (src[i - 1] == 'e' || src[i - 1] == 'E' || src[i - 1] == 'p' ||
                    src[i - 1] == 'P')) {
          advance(1);
        } else {
          break;
        }
      }
      emit(LexKind::NumberLit, begin, tl, tc);
      continue;
    }
    if (is_id_head(c)) {
      while (i < n && is_id_tail(src[i])) advance(1);
      std::string text(src.substr(begin, i - begin));
      out.push_back({java_keywords().count(text) ? LexKind::Keyword : LexKind::Identifier,
                     text, tl, tc});
      continue;
    }
    if (std::string_view("()[]{};,.@").find(c) != std::string_view::npos) {
      advance(1);
      emit(LexKind::Separator, begin, tl, tc);
      continue;
    }
    {
      bool matched = false;
      for (const char* op : multi_ops) {
        std::size_t len = std::string_view(op).size();
        if (src.substr(i, len) == op) {
          advance(len);
          emit(LexKind::Operator, begin, tl, tc);
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    advance(1);
    emit(LexKind::Operator, begin, tl, tc);
  }
  return out;
}

}  // namespace m2c
