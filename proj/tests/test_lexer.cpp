#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "m2c/lexer.hpp"
#include "m2c/text.hpp"

using namespace m2c;

namespace {

std::vector<std::string> texts(const std::vector<LexToken>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.text);
  return out;
}

}  // namespace

TEST_CASE("lexes a dotted call") {
  auto toks = lex("a.b(c)");
  REQUIRE(texts(toks) == std::vector<std::string>{"a", ".", "b", "(", "c", ")"});
  CHECK(toks[0].kind == LexKind::Identifier);
  CHECK(toks[1].kind == LexKind::Separator);
  CHECK(toks[2].kind == LexKind::Identifier);
  CHECK(toks[4].kind == LexKind::Identifier);
}

TEST_CASE("lexes a full invocation statement") {
  // view . setVisibility ( View . VISIBLE ) ;
  auto toks = lex("view.setVisibility(View.VISIBLE);");
  REQUIRE(toks.size() == 9);
  std::vector<std::string> idents;
  for (const auto& t : toks)
    if (t.kind == LexKind::Identifier) idents.push_back(t.text);
  CHECK(idents == std::vector<std::string>{"view", "setVisibility", "View", "VISIBLE"});
}

TEST_CASE("reports unterminated string with its line") {
  try {
    lex("x = \"un");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.kind() == LexError::UnterminatedString);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("reports unterminated block comment") {
  try {
    lex("int a;\n/* no close");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.kind() == LexError::UnterminatedComment);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("keeps comments as tokens") {
  auto toks = lex("// note\nint x; /* b */");
  REQUIRE(toks.size() >= 2);
  CHECK(toks.front().kind == LexKind::Comment);
  CHECK(toks.front().text == "// note");
  CHECK(toks.back().kind == LexKind::Comment);
  CHECK(toks.back().text == "/* b */");
}

TEST_CASE("classifies keywords literals and operators") {
  auto toks = lex("while (x >>= 3) { y = 1.5e-3f + 'a' + \"s\"; }");
  CHECK(toks[0].kind == LexKind::Keyword);
  bool saw_shift = false, saw_float = false, saw_char = false, saw_str = false;
  for (const auto& t : toks) {
    if (t.text == ">>=") saw_shift = (t.kind == LexKind::Operator);
    if (t.text == "1.5e-3f") saw_float = (t.kind == LexKind::NumberLit);
    if (t.text == "'a'") saw_char = (t.kind == LexKind::CharLit);
    if (t.text == "\"s\"") saw_str = (t.kind == LexKind::StringLit);
  }
  CHECK(saw_shift);
  CHECK(saw_float);
  CHECK(saw_char);
  CHECK(saw_str);
}

TEST_CASE("numbers stop before member access") {
  auto toks = lex("f(1).g()");
  REQUIRE(texts(toks) == std::vector<std::string>{"f", "(", "1", ")", ".", "g", "(", ")"});
  CHECK(toks[2].kind == LexKind::NumberLit);
}

TEST_CASE("identifier grammar holds for every identifier token") {
  auto toks = lex("int $x_1 = _y2 + z$;\nString a = b.c(d);");
  for (const auto& t : toks)
    if (t.kind == LexKind::Identifier) CHECK(is_identifier(t.text));
}

// Token texts plus skipped whitespace reconstruct the input byte for byte.
TEST_CASE("token stream reconstructs the input") {
  std::mt19937 rng(20240817);
  const std::vector<std::string> pieces = {
      "foo",  ".",    "bar", "(",       ")",  ";",  "\n",  " ", "\t", "123",
      "0x1F", "\"s\"", "'c'", "/* c */", "++", "<=", "int", "{", "}",  "// l\n",
      "+",    "View", "_v2", ",",       "new", "[", "]",   "3.5"};
  for (int round = 0; round < 50; ++round) {
    std::string src;
    int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) src += pieces[rng() % pieces.size()] + " ";

    std::vector<LexToken> toks = lex(src);

    // Line starts let us recover each token's byte offset from (line, col).
    std::vector<std::size_t> line_starts = {0};
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i] == '\n') line_starts.push_back(i + 1);

    std::size_t prev_end = 0;
    for (const auto& t : toks) {
      std::size_t off = line_starts[t.line - 1] + t.col - 1;
      REQUIRE(src.substr(off, t.text.size()) == t.text);
      for (std::size_t i = prev_end; i < off; ++i)
        CHECK(std::string(" \t\r\n\f").find(src[i]) != std::string::npos);
      prev_end = off + t.text.size();
    }
    for (std::size_t i = prev_end; i < src.size(); ++i)
      CHECK(std::string(" \t\r\n\f").find(src[i]) != std::string::npos);
  }
}
