#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "weave/lexer.hpp"

namespace weave {

/// A token tree with `$placeholder` words and `foreach` loops. Templates are
/// expanded to plain text and then parsed by the ordinary grammar.
///
///   foreach $var in generator(arg, ...) { ... }
struct TemplateNode {
  Token token;                      // literal, when !is_loop()
  std::string variable;             // loop variable including `$`
  std::string generator;
  std::vector<Token> arguments;
  std::vector<TemplateNode> body;

  bool is_loop() const { return !variable.empty(); }
  bool operator==(const TemplateNode&) const = default;
};

using TemplateSeq = std::vector<TemplateNode>;

using Substitutions = std::map<std::string, std::string, std::less<>>;

/// Produces the values a `foreach` iterates over, given its generator name and
/// already-substituted argument texts.
using GeneratorFn =
    std::function<std::vector<std::string>(std::string_view, const std::vector<std::string>&)>;

/// Replaces every `$name` (or `${name}`) occurrence inside words. `$name` is
/// greedy over `[A-Za-z0-9_]`. Unknown placeholders are left untouched.
std::string substitute(std::string_view word, const Substitutions& values);

/// Collects the placeholder names (without `$`) referenced by a word.
std::vector<std::string> placeholders_in(std::string_view word);

/// Unrolls loops and substitutes placeholders; returns lexable text.
std::string expand_template(const TemplateSeq& seq, const Substitutions& values,
                            const GeneratorFn& generators);

/// Throws ModelError(unbound_parameter) naming the first placeholder that is
/// neither in `declared` nor bound by an enclosing loop.
void check_placeholders(const TemplateSeq& seq, const std::vector<std::string>& declared,
                        std::string_view context);

enum class TemplateStyle {
  declarations,  // component/connector bodies: one member per line
  statements,    // pattern bodies: one action/ensures per line
};

/// Pretty-prints a template at the given indentation. Every line, including
/// the last, is terminated by '\n'.
std::string print_template(const TemplateSeq& seq, int indent, TemplateStyle style);

}  // namespace weave
