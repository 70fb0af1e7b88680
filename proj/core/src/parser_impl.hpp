#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "weave/document.hpp"
#include "weave/error.hpp"
#include "weave/lexer.hpp"
#include "weave/model.hpp"
#include "weave/template.hpp"

namespace weave::detail {

/// Recursive-descent cursor over a token vector. Keywords are contextual:
/// they are only recognized where a statement may start.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens);
  explicit Parser(std::string_view source) : Parser(tokenize(source)) {}

  const Token& peek(std::size_t k = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::end; }
  bool at_word(std::string_view w) const { return peek().is_word(w); }
  bool at_punct(std::string_view p) const { return peek().is_punct(p); }
  bool accept_punct(std::string_view p);
  bool accept_word(std::string_view w);

  void expect_punct(std::string_view p);
  void expect_word(std::string_view w);
  std::string expect_identifier(std::string_view what = "identifier");
  std::string expect_glob();
  double expect_number();
  long expect_integer();
  std::string expect_string();
  void expect_end();

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) const;
  [[noreturn]] void fail_expected(std::vector<std::string> expected) const;

  ElementPath parse_path();
  PropertyExpr parse_property();
  Scalar parse_scalar();
  void parse_attr_into(Attributes& attributes, const std::string& owner);
  Component parse_component();
  Connector parse_connector();
  Attachment parse_attach();
  std::vector<std::string> parse_types_block();
  ElementKind parse_element_kind();

  /// `{ [types {...}] (component|connector|attach)* }`
  Fragment parse_fragment_block();
  /// Fragment items until the end of input.
  Fragment parse_fragment_items();

  /// Balanced `{ ... }` captured as a template; `foreach` opens a loop.
  TemplateSeq parse_template_block();
  /// Template statements until a `}` at depth zero (not consumed) or until
  /// a word in `stop_words` at depth zero.
  TemplateSeq parse_template_until(const std::vector<std::string_view>& stop_words);

  ModelDocument parse_document();

 private:
  TemplateNode parse_foreach();
  ArchitectureModel parse_architecture_body(std::string name);
  QosPattern parse_qos_body(std::string name);
  PlatformModel parse_platform_body(std::string name);
  MappingModel parse_mapping_body(std::string name);
  ResourceModel parse_resources_body(std::string name);

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

/// Throws ModelError for the first structural violation, citing every
/// violation in the message.
void require_valid(const ArchitectureModel& arch);

/// Validates a fragment in isolation against the enclosing model's types.
void require_valid_fragment(const Fragment& fragment, const std::vector<std::string>& outer_types,
                            std::string_view context);

}  // namespace weave::detail
