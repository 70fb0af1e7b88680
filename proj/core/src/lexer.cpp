#include "weave/lexer.hpp"

#include <cctype>

namespace weave {
namespace {

bool word_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '*';
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '*';
}

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      tokens.push_back(next_token());
    }
    tokens.push_back(Token{TokenKind::end, "", pos_});
    return tokens;
  }

 private:
  bool at_end() const { return offset_ >= src_.size(); }
  char peek(std::size_t k = 0) const {
    return offset_ + k < src_.size() ? src_[offset_ + k] : '\0';
  }

  char advance() {
    char c = src_[offset_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    SourcePos start = pos_;
    char c = peek();
    if (word_start(c)) {
      std::string text;
      while (!at_end()) {
        if (peek() == '$' && peek(1) == '{') {
          braced_placeholder(text);
        } else if (word_char(peek())) {
          text.push_back(advance());
        } else {
          break;
        }
      }
      return {TokenKind::word, std::move(text), start};
    }
    if (digit(c) || (c == '-' && digit(peek(1)))) return number(start);
    if (c == '"') return string(start);

    static constexpr std::string_view kTwoChar[] = {"::", "->", ">=", "<="};
    for (auto op : kTwoChar) {
      if (peek() == op[0] && peek(1) == op[1]) {
        advance();
        advance();
        return {TokenKind::punct, std::string(op), start};
      }
    }
    static constexpr std::string_view kOneChar = "{}():;,=";
    if (kOneChar.find(c) != std::string_view::npos) {
      advance();
      return {TokenKind::punct, std::string(1, c), start};
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

  // `${name}` inside a word, so a placeholder can be followed by name
  // characters.
  void braced_placeholder(std::string& text) {
    SourcePos start = pos_;
    text.push_back(advance());
    text.push_back(advance());
    std::size_t length = 0;
    while (!at_end() && word_char(peek()) && peek() != '$' && peek() != '*') {
      text.push_back(advance());
      ++length;
    }
    if (length == 0 || peek() != '}') throw ParseError(start, "malformed placeholder in '" + text + "'");
    text.push_back(advance());
  }

  Token number(SourcePos start) {
    std::string text;
    if (peek() == '-') text.push_back(advance());
    while (digit(peek())) text.push_back(advance());
    if (peek() == '.' && digit(peek(1))) {
      text.push_back(advance());
      while (digit(peek())) text.push_back(advance());
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2))))) {
      text.push_back(advance());
      if (peek() == '+' || peek() == '-') text.push_back(advance());
      while (digit(peek())) text.push_back(advance());
    }
    if (word_char(peek())) {
      throw ParseError(pos_, "malformed number '" + text + peek() + "'");
    }
    return {TokenKind::number, std::move(text), start};
  }

  Token string(SourcePos start) {
    advance();  // opening quote
    std::string text;
    while (true) {
      if (at_end() || peek() == '\n') throw ParseError(start, "unterminated string literal");
      char c = advance();
      if (c == '"') break;
      if (c != '\\') {
        text.push_back(c);
        continue;
      }
      if (at_end()) throw ParseError(start, "unterminated string literal");
      char e = advance();
      switch (e) {
        case 'n': text.push_back('\n'); break;
        case 't': text.push_back('\t'); break;
        case '"': text.push_back('"'); break;
        case '\\': text.push_back('\\'); break;
        default:
          throw ParseError(pos_, std::string("unknown escape '\\") + e + "'");
      }
    }
    return {TokenKind::string, std::move(text), start};
  }

  std::string_view src_;
  std::size_t offset_ = 0;
  SourcePos pos_{1, 1};
};

bool glue_before(const Token& t) {
  return t.is_punct("::") || t.is_punct(":") || t.is_punct(",") || t.is_punct(")") ||
         t.is_punct(";") || t.is_punct("(");
}

bool glue_after(const Token& t) { return t.is_punct("::") || t.is_punct("("); }

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string quote_string(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string render_tokens(std::span<const Token> tokens) {
  std::string out;
  const Token* prev = nullptr;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::end) break;
    if (prev != nullptr && !glue_before(t) && !glue_after(*prev)) out.push_back(' ');
    out += t.kind == TokenKind::string ? quote_string(t.text) : t.text;
    prev = &t;
  }
  return out;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_')) return false;
  for (char c : text) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

bool is_glob(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*')) return false;
  }
  return true;
}

}  // namespace weave
