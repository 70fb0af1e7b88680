#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weave/error.hpp"

namespace weave {

enum class TokenKind { word, number, string, punct, end };

/// A word is any run of `[A-Za-z0-9_$*]` starting with a letter, `_`, `$`
/// or `*`; the parser decides whether it is an identifier, a glob or a
/// template placeholder.
struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  SourcePos pos;

  bool is_word(std::string_view w) const { return kind == TokenKind::word && text == w; }
  bool is_punct(std::string_view p) const { return kind == TokenKind::punct && text == p; }

  // Positions are not part of a token's identity.
  bool operator==(const Token& other) const {
    return kind == other.kind && text == other.text;
  }
};

/// Tokenizes DSL source. `//` comments run to end of line. The result always
/// ends with a single `end` token.
std::vector<Token> tokenize(std::string_view source);

/// Renders tokens back to lexable text (strings re-quoted and escaped).
std::string render_tokens(std::span<const Token> tokens);

std::string quote_string(std::string_view raw);
bool is_identifier(std::string_view text);
bool is_glob(std::string_view text);

}  // namespace weave
