#include <gtest/gtest.h>

#include "weave/lexer.hpp"

namespace weave {
namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

TEST(Lexer, SplitsWordsPunctuationAndNumbers) {
  auto tokens = tokenize("attach a::p to b::q // trailing\nattr x = -1.5e3");
  EXPECT_EQ(texts(tokens), (std::vector<std::string>{"attach", "a", "::", "p", "to", "b", "::",
                                                     "q", "attr", "x", "=", "-1.5e3", ""}));
  EXPECT_EQ(tokens[11].kind, TokenKind::number);
  EXPECT_EQ(tokens.back().kind, TokenKind::end);
}

TEST(Lexer, TracksLineAndColumn) {
  auto tokens = tokenize("a\n  bb");
  EXPECT_EQ(tokens[1].pos.line, 2);
  EXPECT_EQ(tokens[1].pos.column, 3);
}

TEST(Lexer, DecodesStringEscapes) {
  auto tokens = tokenize(R"("a\tb\n\"c\"\\")");
  ASSERT_EQ(tokens[0].kind, TokenKind::string);
  EXPECT_EQ(tokens[0].text, "a\tb\n\"c\"\\");
}

TEST(Lexer, QuoteStringInvertsDecoding) {
  std::string raw = "tab\there \"q\" back\\ nl\n";
  auto tokens = tokenize(quote_string(raw));
  EXPECT_EQ(tokens[0].text, raw);
}

TEST(Lexer, RejectsUnterminatedString) {
  EXPECT_THROW(tokenize("\"abc"), ParseError);
  EXPECT_THROW(tokenize("\"abc\ndef\""), ParseError);
}

TEST(Lexer, RejectsUnknownEscapeAndCharacter) {
  EXPECT_THROW(tokenize(R"("\q")"), ParseError);
  try {
    tokenize("a #");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position().line, 1);
    EXPECT_EQ(e.position().column, 3);
  }
}

TEST(Lexer, RejectsNumberRunningIntoWord) { EXPECT_THROW(tokenize("12ab"), ParseError); }

TEST(Lexer, PlaceholdersAndGlobsAreWords) {
  auto tokens = tokenize("FT_$target Queue* ${name}_x");
  EXPECT_EQ(texts(tokens), (std::vector<std::string>{"FT_$target", "Queue*", "${name}_x", ""}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(tokens[i].kind, TokenKind::word);
}

TEST(Lexer, RejectsMalformedBracedPlaceholder) {
  EXPECT_THROW(tokenize("${}"), ParseError);
  EXPECT_THROW(tokenize("${name"), ParseError);
}

TEST(Lexer, RenderTokensIsRelexable) {
  std::string source = "component X { port p: provides T attr s = \"a b\" } attach a::p to b::q";
  auto tokens = tokenize(source);
  auto again = tokenize(render_tokens(tokens));
  EXPECT_EQ(tokens, again);
}

TEST(Lexer, IdentifierAndGlobClassification) {
  EXPECT_TRUE(is_identifier("b_1"));
  EXPECT_FALSE(is_identifier("1b"));
  EXPECT_FALSE(is_identifier("a*"));
  EXPECT_FALSE(is_identifier(""));
  EXPECT_TRUE(is_glob("Queue*"));
  EXPECT_TRUE(is_glob("*"));
  EXPECT_FALSE(is_glob("a$b"));
}

}  // namespace
}  // namespace weave
