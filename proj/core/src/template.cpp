#include "weave/template.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "weave/error.hpp"

namespace weave {
namespace {

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Calls fn(name, begin, end) for every placeholder in `word`; [begin, end)
// spans the whole reference including `$` and braces.
template <typename Fn>
void scan_placeholders(std::string_view word, Fn&& fn) {
  std::size_t i = 0;
  while (i < word.size()) {
    if (word[i] != '$') {
      ++i;
      continue;
    }
    std::size_t begin = i;
    if (i + 1 < word.size() && word[i + 1] == '{') {
      auto close = word.find('}', i + 2);
      if (close == std::string_view::npos) {
        ++i;
        continue;
      }
      fn(word.substr(i + 2, close - i - 2), begin, close + 1);
      i = close + 1;
      continue;
    }
    std::size_t j = i + 1;
    while (j < word.size() && name_char(word[j])) ++j;
    if (j > i + 1) fn(word.substr(i + 1, j - i - 1), begin, j);
    i = j;
  }
}

void expand_into(const TemplateSeq& seq, Substitutions& values, const GeneratorFn& generators,
                 std::vector<Token>& out) {
  for (const auto& node : seq) {
    if (!node.is_loop()) {
      Token t = node.token;
      if (t.kind == TokenKind::word) t.text = substitute(t.text, values);
      out.push_back(std::move(t));
      continue;
    }
    std::vector<std::string> args;
    args.reserve(node.arguments.size());
    for (const auto& a : node.arguments) {
      args.push_back(a.kind == TokenKind::word ? substitute(a.text, values) : a.text);
    }
    auto items = generators(node.generator, args);
    std::string key = node.variable.substr(1);
    auto saved = values.find(key) != values.end() ? std::optional<std::string>(values[key])
                                                  : std::nullopt;
    for (const auto& item : items) {
      values[key] = item;
      expand_into(node.body, values, generators, out);
    }
    if (saved) {
      values[key] = *saved;
    } else {
      values.erase(key);
    }
  }
}

void check_into(const TemplateSeq& seq, std::set<std::string, std::less<>>& scope,
                std::string_view context) {
  auto check_word = [&](const Token& t) {
    if (t.kind != TokenKind::word) return;
    for (const auto& name : placeholders_in(t.text)) {
      if (!scope.contains(name)) {
        throw ModelError(ErrorKind::unbound_parameter,
                         std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) +
                             ": undeclared parameter '$" + name + "' in " + std::string(context));
      }
    }
  };
  for (const auto& node : seq) {
    if (!node.is_loop()) {
      check_word(node.token);
      continue;
    }
    for (const auto& a : node.arguments) check_word(a);
    std::string key = node.variable.substr(1);
    bool inserted = scope.insert(key).second;
    check_into(node.body, scope, context);
    if (inserted) scope.erase(key);
  }
}

// ---- pretty printing -------------------------------------------------------

bool glue_before(const Token& t) {
  return t.is_punct("::") || t.is_punct(":") || t.is_punct(",") || t.is_punct(")") ||
         t.is_punct(";") || t.is_punct("(");
}

bool glue_after(const Token& t) { return t.is_punct("::") || t.is_punct("("); }

bool is_break_word(const Token& t, TemplateStyle style) {
  if (t.kind != TokenKind::word) return false;
  if (style == TemplateStyle::statements) return t.text == "action" || t.text == "ensures";
  static constexpr std::string_view kDecl[] = {"component", "connector", "port", "role",
                                               "attr",      "attach",    "types"};
  return std::find(std::begin(kDecl), std::end(kDecl), t.text) != std::end(kDecl);
}

class TemplatePrinter {
 public:
  explicit TemplatePrinter(TemplateStyle style) : style_(style) {}

  std::string run(const TemplateSeq& seq, int indent) {
    print(seq, indent);
    end_line();
    return std::move(out_);
  }

 private:
  void end_line() {
    if (!at_line_start_) {
      out_.push_back('\n');
      at_line_start_ = true;
    }
    prev_ = nullptr;
  }

  void write(const Token& t, int indent) {
    if (at_line_start_) {
      out_.append(static_cast<std::size_t>(indent), ' ');
      at_line_start_ = false;
    } else if (prev_ != nullptr && !glue_before(t) && !glue_after(*prev_)) {
      out_.push_back(' ');
    }
    out_ += t.kind == TokenKind::string ? quote_string(t.text) : t.text;
    prev_ = &t;
  }

  bool breaks_before(const TemplateSeq& seq, std::size_t i) const {
    const Token& t = seq[i].token;
    if (at_line_start_ || prev_ == nullptr) return false;
    // `x -> path` port-map entries start on their own line.
    if (i + 1 < seq.size() && !seq[i + 1].is_loop() && seq[i + 1].token.is_punct("->")) {
      return true;
    }
    if (!is_break_word(t, style_)) return false;
    // A keyword in name position (`attr port = 1`) stays on the line.
    if (is_break_word(*prev_, style_)) return false;
    return !(prev_->is_punct("::") || prev_->is_punct("->") || prev_->is_punct("=") ||
             prev_->is_punct(":") || prev_->is_word("to"));
  }

  void print(const TemplateSeq& seq, int indent) {
    int inline_depth = 0;  // braces kept on one line (`types { A; B }`)
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto& node = seq[i];
      if (node.is_loop()) {
        end_line();
        out_.append(static_cast<std::size_t>(indent), ' ');
        std::string args;
        for (const auto& a : node.arguments) args += (args.empty() ? "" : ", ") + a.text;
        out_ += "foreach " + node.variable + " in " + node.generator + "(" + args + ") {\n";
        at_line_start_ = true;
        print(node.body, indent + 2);
        end_line();
        out_.append(static_cast<std::size_t>(indent), ' ');
        out_ += "}\n";
        continue;
      }
      const Token& t = node.token;
      if (inline_depth > 0) {
        write(t, indent);
        if (t.is_punct("{")) ++inline_depth;
        if (t.is_punct("}")) --inline_depth;
        continue;
      }
      if (t.is_punct("{")) {
        if (prev_ != nullptr && prev_->is_word("types")) {
          write(t, indent);
          ++inline_depth;
          continue;
        }
        write(t, indent);
        end_line();
        indent += 2;
        continue;
      }
      if (t.is_punct("}")) {
        end_line();
        indent -= 2;
        write(t, indent);
        end_line();
        continue;
      }
      if (breaks_before(seq, i)) end_line();
      write(t, indent);
    }
  }

  TemplateStyle style_;
  std::string out_;
  bool at_line_start_ = true;
  const Token* prev_ = nullptr;
};

}  // namespace

std::string substitute(std::string_view word, const Substitutions& values) {
  std::string out;
  std::size_t last = 0;
  scan_placeholders(word, [&](std::string_view name, std::size_t begin, std::size_t end) {
    auto it = values.find(name);
    if (it == values.end()) return;
    out.append(word.substr(last, begin - last));
    out += it->second;
    last = end;
  });
  out.append(word.substr(last));
  return out;
}

std::vector<std::string> placeholders_in(std::string_view word) {
  std::vector<std::string> names;
  scan_placeholders(word, [&](std::string_view name, std::size_t, std::size_t) {
    names.emplace_back(name);
  });
  return names;
}

std::string expand_template(const TemplateSeq& seq, const Substitutions& values,
                            const GeneratorFn& generators) {
  Substitutions scope = values;
  std::vector<Token> tokens;
  expand_into(seq, scope, generators, tokens);
  return render_tokens(tokens);
}

void check_placeholders(const TemplateSeq& seq, const std::vector<std::string>& declared,
                        std::string_view context) {
  std::set<std::string, std::less<>> scope(declared.begin(), declared.end());
  check_into(seq, scope, context);
}

std::string print_template(const TemplateSeq& seq, int indent, TemplateStyle style) {
  return TemplatePrinter(style).run(seq, indent);
}

}  // namespace weave
