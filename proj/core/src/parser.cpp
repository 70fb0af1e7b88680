#include <charconv>
#include <cmath>
#include <set>

#include "parser_impl.hpp"
#include "weave/adl.hpp"

namespace weave {
namespace detail {
namespace {

std::string describe_token(const Token& t) {
  switch (t.kind) {
    case TokenKind::end: return "end of input";
    case TokenKind::string: return "string " + quote_string(t.text);
    case TokenKind::number: return "number " + t.text;
    default: return "'" + t.text + "'";
  }
}

std::string at(SourcePos pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
}

constexpr std::string_view kTemplatePlaceholders[] = {"name",  "kind",  "ports",
                                                      "attrs", "stage", "platform"};

// `{identifier}` references in mapping templates. Braces not enclosing an
// identifier are literal text.
std::vector<std::string> mapping_placeholders(std::string_view text) {
  std::vector<std::string> names;
  std::size_t i = 0;
  while ((i = text.find('{', i)) != std::string_view::npos) {
    auto close = text.find('}', i + 1);
    if (close == std::string_view::npos) break;
    auto inner = text.substr(i + 1, close - i - 1);
    if (is_identifier(inner)) {
      names.emplace_back(inner);
      i = close + 1;
    } else {
      ++i;
    }
  }
  return names;
}

// Name of the first element declared in a fragment template, if literal.
std::optional<std::string> fragment_template_name(const TemplateSeq& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const auto& t = seq[i];
    if (t.is_loop()) continue;
    if ((t.token.is_word("component") || t.token.is_word("connector")) && !seq[i + 1].is_loop()) {
      return seq[i + 1].token.text;
    }
  }
  return std::nullopt;
}

bool template_contains_word(const TemplateSeq& seq, std::string_view word) {
  for (const auto& node : seq) {
    if (node.is_loop()) {
      if (template_contains_word(node.body, word)) return true;
    } else if (node.token.is_word(word)) {
      return true;
    }
  }
  return false;
}

}  // namespace

Parser::Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::end) {
    SourcePos pos = tokens_.empty() ? SourcePos{1, 1} : tokens_.back().pos;
    tokens_.push_back(Token{TokenKind::end, "", pos});
  }
}

const Token& Parser::peek(std::size_t k) const {
  return tokens_[std::min(index_ + k, tokens_.size() - 1)];
}

Token Parser::next() {
  Token t = peek();
  if (index_ < tokens_.size() - 1) ++index_;
  return t;
}

bool Parser::accept_punct(std::string_view p) {
  if (!at_punct(p)) return false;
  next();
  return true;
}

bool Parser::accept_word(std::string_view w) {
  if (!at_word(w)) return false;
  next();
  return true;
}

void Parser::fail(const std::string& message, std::vector<std::string> expected) const {
  throw ParseError(peek().pos, message, std::move(expected));
}

void Parser::fail_expected(std::vector<std::string> expected) const {
  fail("syntax error: unexpected " + describe_token(peek()), std::move(expected));
}

void Parser::expect_punct(std::string_view p) {
  if (!accept_punct(p)) fail_expected({"'" + std::string(p) + "'"});
}

void Parser::expect_word(std::string_view w) {
  if (!accept_word(w)) fail_expected({"'" + std::string(w) + "'"});
}

std::string Parser::expect_identifier(std::string_view what) {
  if (peek().kind != TokenKind::word || !is_identifier(peek().text)) {
    fail_expected({std::string(what)});
  }
  return next().text;
}

std::string Parser::expect_glob() {
  if (peek().kind != TokenKind::word || !is_glob(peek().text)) fail_expected({"name pattern"});
  return next().text;
}

double Parser::expect_number() {
  if (peek().kind != TokenKind::number) fail_expected({"number"});
  const Token& t = peek();
  double value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || !std::isfinite(value)) {
    fail("number out of range: " + t.text);
  }
  next();
  return value;
}

long Parser::expect_integer() {
  if (peek().kind != TokenKind::number) fail_expected({"integer"});
  const Token& t = peek();
  long value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    fail("expected an integer, found " + t.text);
  }
  next();
  return value;
}

std::string Parser::expect_string() {
  if (peek().kind != TokenKind::string) fail_expected({"string"});
  return next().text;
}

void Parser::expect_end() {
  if (!at_end()) fail_expected({"end of input"});
}

ElementPath Parser::parse_path() {
  ElementPath path;
  path.segments.push_back(expect_identifier("path"));
  while (accept_punct("::")) path.segments.push_back(expect_identifier("path segment"));
  return path;
}

ElementKind Parser::parse_element_kind() {
  if (accept_word("component")) return ElementKind::component;
  if (accept_word("connector")) return ElementKind::connector;
  fail_expected({"'component'", "'connector'"});
}

PropertyExpr Parser::parse_property() {
  if (accept_word("allPortsConnected")) return AllPortsConnected{};
  if (accept_word("typeClosed")) return TypeClosed{};
  if (accept_word("exists")) {
    ExistsElement p;
    p.kind = parse_element_kind();
    p.glob = expect_glob();
    return p;
  }
  if (accept_word("replication")) {
    MinReplication p;
    expect_punct("(");
    p.base = expect_identifier("element name");
    expect_punct(")");
    expect_punct(">=");
    SourcePos pos = peek().pos;
    p.minimum = expect_integer();
    if (p.minimum < 1) throw ParseError(pos, "replication bound must be at least 1");
    return p;
  }
  if (accept_word("connected")) {
    Connected p;
    expect_punct("(");
    p.a = parse_path();
    expect_punct(",");
    p.b = parse_path();
    expect_punct(")");
    return p;
  }
  if (accept_word("attrSum")) {
    AttrSumBound p;
    expect_punct("(");
    p.attribute = expect_identifier("attribute name");
    expect_punct(")");
    expect_punct("<=");
    p.bound = expect_number();
    return p;
  }
  fail_expected({"'allPortsConnected'", "'typeClosed'", "'exists'", "'replication'",
                 "'connected'", "'attrSum'"});
}

Scalar Parser::parse_scalar() {
  if (peek().kind == TokenKind::number) return expect_number();
  if (peek().kind == TokenKind::string) return expect_string();
  fail_expected({"number", "string"});
}

void Parser::parse_attr_into(Attributes& attributes, const std::string& owner) {
  SourcePos pos = peek().pos;
  std::string key = expect_identifier("attribute name");
  expect_punct("=");
  Scalar value = parse_scalar();
  if (!attributes.emplace(key, std::move(value)).second) {
    throw ModelError(ErrorKind::duplicate_name,
                     at(pos) + "duplicate attribute " + key + " on " + owner);
  }
}

Component Parser::parse_component() {
  Component c;
  c.name = expect_identifier("component name");
  expect_punct("{");
  while (!accept_punct("}")) {
    if (accept_word("port")) {
      Port p;
      p.name = expect_identifier("port name");
      expect_punct(":");
      if (accept_word("provides")) {
        p.direction = PortDirection::provided;
      } else if (accept_word("requires")) {
        p.direction = PortDirection::required;
      } else {
        fail_expected({"'provides'", "'requires'"});
      }
      p.message_type = expect_identifier("message type");
      c.ports.push_back(std::move(p));
    } else if (accept_word("attr")) {
      parse_attr_into(c.attributes, c.name);
    } else {
      fail_expected({"'port'", "'attr'", "'}'"});
    }
  }
  return c;
}

Connector Parser::parse_connector() {
  Connector k;
  k.name = expect_identifier("connector name");
  expect_punct("{");
  while (!accept_punct("}")) {
    if (accept_word("role")) {
      Role r;
      r.name = expect_identifier("role name");
      expect_punct(":");
      if (accept_word("accepts")) {
        r.direction = RoleDirection::accepts;
      } else if (accept_word("emits")) {
        r.direction = RoleDirection::emits;
      } else {
        fail_expected({"'accepts'", "'emits'"});
      }
      r.message_type = expect_identifier("message type");
      k.roles.push_back(std::move(r));
    } else if (accept_word("attr")) {
      parse_attr_into(k.attributes, k.name);
    } else {
      fail_expected({"'role'", "'attr'", "'}'"});
    }
  }
  return k;
}

Attachment Parser::parse_attach() {
  Attachment a;
  a.from = parse_path();
  expect_word("to");
  a.to = parse_path();
  return a;
}

std::vector<std::string> Parser::parse_types_block() {
  std::vector<std::string> types;
  expect_punct("{");
  if (accept_punct("}")) return types;
  types.push_back(expect_identifier("type name"));
  while (accept_punct(";")) types.push_back(expect_identifier("type name"));
  expect_punct("}");
  return types;
}

Fragment Parser::parse_fragment_items() {
  Fragment f;
  if (accept_word("types")) f.types = parse_types_block();
  while (!at_end() && !at_punct("}")) {
    if (accept_word("component")) {
      f.components.push_back(parse_component());
    } else if (accept_word("connector")) {
      f.connectors.push_back(parse_connector());
    } else if (accept_word("attach")) {
      f.attachments.push_back(parse_attach());
    } else {
      fail_expected({"'component'", "'connector'", "'attach'"});
    }
  }
  return f;
}

Fragment Parser::parse_fragment_block() {
  expect_punct("{");
  Fragment f = parse_fragment_items();
  expect_punct("}");
  return f;
}

TemplateNode Parser::parse_foreach() {
  TemplateNode loop;
  expect_word("foreach");
  if (peek().kind != TokenKind::word || peek().text.size() < 2 || peek().text[0] != '$' ||
      !is_identifier(std::string_view(peek().text).substr(1))) {
    fail_expected({"loop variable ($name)"});
  }
  loop.variable = next().text;
  expect_word("in");
  loop.generator = expect_identifier("generator name");
  expect_punct("(");
  if (!at_punct(")")) {
    do {
      if (peek().kind != TokenKind::word && peek().kind != TokenKind::number) {
        fail_expected({"generator argument"});
      }
      loop.arguments.push_back(next());
    } while (accept_punct(","));
  }
  expect_punct(")");
  expect_punct("{");
  loop.body = parse_template_until({});
  expect_punct("}");
  return loop;
}

TemplateSeq Parser::parse_template_until(const std::vector<std::string_view>& stop_words) {
  TemplateSeq seq;
  int depth = 0;
  while (true) {
    if (at_end()) fail_expected({"'}'"});
    if (depth == 0) {
      if (at_punct("}")) break;
      bool stop = false;
      for (auto w : stop_words) stop = stop || at_word(w);
      if (stop) break;
    }
    if (at_word("foreach")) {
      seq.push_back(parse_foreach());
      continue;
    }
    if (at_punct("{")) ++depth;
    if (at_punct("}")) --depth;
    TemplateNode node;
    node.token = next();
    seq.push_back(std::move(node));
  }
  return seq;
}

TemplateSeq Parser::parse_template_block() {
  expect_punct("{");
  TemplateSeq seq = parse_template_until({});
  expect_punct("}");
  return seq;
}

ArchitectureModel Parser::parse_architecture_body(std::string name) {
  ArchitectureModel arch;
  arch.name = std::move(name);
  if (accept_word("types")) arch.types = parse_types_block();
  bool stage_seen = false;
  while (!accept_punct("}")) {
    if (accept_word("component")) {
      arch.components.push_back(parse_component());
    } else if (accept_word("connector")) {
      arch.connectors.push_back(parse_connector());
    } else if (accept_word("attach")) {
      arch.attachments.push_back(parse_attach());
    } else if (accept_word("property")) {
      arch.properties.push_back(parse_property());
    } else if (accept_word("attr")) {
      parse_attr_into(arch.attributes, arch.name);
    } else if (at_word("stage")) {
      if (stage_seen) fail("duplicate stage declaration");
      next();
      stage_seen = true;
      if (accept_word("GEIM")) {
        arch.stage = Stage::geim;
      } else if (accept_word("intermediate")) {
        arch.stage = Stage::intermediate;
      } else if (accept_word("GESM")) {
        arch.stage = Stage::gesm;
      } else {
        fail_expected({"'GEIM'", "'intermediate'", "'GESM'"});
      }
    } else {
      fail_expected({"'component'", "'connector'", "'attach'", "'property'", "'attr'",
                     "'stage'", "'}'"});
    }
  }
  require_valid(arch);
  return arch;
}

QosPattern Parser::parse_qos_body(std::string name) {
  QosPattern pattern;
  pattern.name = std::move(name);
  SourcePos start = peek().pos;
  std::set<std::string, std::less<>> param_names;
  while (!accept_punct("}")) {
    if (accept_word("param")) {
      SourcePos pos = peek().pos;
      PatternParam param;
      param.name = expect_identifier("parameter name");
      expect_punct(":");
      if (accept_word("element")) {
        param.kind = ParamKind::element;
      } else if (accept_word("integer")) {
        param.kind = ParamKind::integer;
      } else if (accept_word("number")) {
        param.kind = ParamKind::number;
      } else {
        fail_expected({"'element'", "'integer'", "'number'"});
      }
      if (!param_names.insert(param.name).second) {
        throw ModelError(ErrorKind::duplicate_name, at(pos) + "duplicate parameter " + param.name);
      }
      pattern.params.push_back(std::move(param));
    } else if (accept_word("fragment")) {
      pattern.fragments.push_back(parse_template_block());
    } else if (at_word("action") || at_word("ensures") || at_word("foreach")) {
      auto chunk = parse_template_until({"param", "fragment"});
      pattern.body.insert(pattern.body.end(), chunk.begin(), chunk.end());
    } else {
      fail_expected({"'param'", "'fragment'", "'action'", "'ensures'", "'foreach'", "'}'"});
    }
  }

  if (!template_contains_word(pattern.body, "action")) {
    throw ModelError(ErrorKind::empty_pattern,
                     at(start) + "empty pattern " + pattern.name + ": no actions declared");
  }
  std::vector<std::string> declared(param_names.begin(), param_names.end());
  std::set<std::string, std::less<>> fragment_names;
  for (const auto& fragment : pattern.fragments) {
    check_placeholders(fragment, declared, "fragment of " + pattern.name);
    auto fname = fragment_template_name(fragment);
    if (!fname) {
      throw ModelError(ErrorKind::malformed_fragment,
                       "fragment in " + pattern.name + " declares no component or connector");
    }
    if (!fragment_names.insert(*fname).second) {
      throw ModelError(ErrorKind::duplicate_name,
                       "duplicate fragment " + *fname + " in " + pattern.name);
    }
  }
  check_placeholders(pattern.body, declared, pattern.name);
  return pattern;
}

PlatformModel Parser::parse_platform_body(std::string name) {
  PlatformModel platform;
  platform.name = std::move(name);
  std::set<std::pair<ElementKind, std::string>> rewrite_keys;
  while (!accept_punct("}")) {
    if (accept_word("requires")) {
      platform.conformance.push_back(parse_property());
    } else if (accept_word("adapter")) {
      SourcePos pos = peek().pos;
      Fragment adapter = parse_fragment_block();
      if (adapter.element_count() == 0 || !adapter.attachments.empty()) {
        throw ModelError(ErrorKind::malformed_fragment,
                         at(pos) + "adapter of " + platform.name +
                             " must declare elements and no attachments");
      }
      require_valid_fragment(adapter, {}, "adapter of " + platform.name);
      platform.adapters.push_back(std::move(adapter));
    } else if (accept_word("rewrite")) {
      SourcePos pos = peek().pos;
      RewriteRule rule;
      rule.match_kind = parse_element_kind();
      rule.glob = expect_glob();
      expect_punct("->");
      expect_word("fragment");
      rule.replacement = parse_template_block();
      expect_word("portmap");
      rule.port_map = parse_template_block();
      std::string context = "rewrite " + std::string(to_string(rule.match_kind)) + " " + rule.glob;
      check_placeholders(rule.replacement, {"name"}, context);
      check_placeholders(rule.port_map, {"name"}, context);
      if (!rewrite_keys.emplace(rule.match_kind, rule.glob).second) {
        throw ModelError(ErrorKind::duplicate_name, at(pos) + "duplicate " + context);
      }
      platform.rewrites.push_back(std::move(rule));
    } else {
      fail_expected({"'requires'", "'adapter'", "'rewrite'", "'}'"});
    }
  }
  return platform;
}

MappingModel Parser::parse_mapping_body(std::string name) {
  MappingModel mapping;
  mapping.name = std::move(name);
  while (!accept_punct("}")) {
    if (accept_word("manifest")) {
      SourcePos pos = peek().pos;
      mapping.manifest_name = expect_string();
      if (mapping.manifest_name.empty()) throw ParseError(pos, "manifest name must not be empty");
    } else if (accept_word("strict")) {
      mapping.strict = true;
    } else if (accept_word("rule")) {
      SourcePos pos = peek().pos;
      MappingRule rule;
      rule.match_kind = parse_element_kind();
      rule.glob = expect_glob();
      expect_punct("->");
      rule.output_pattern = expect_string();
      expect_word("template");
      rule.template_text = expect_string();
      for (const auto* text : {&rule.output_pattern, &rule.template_text}) {
        for (const auto& placeholder : mapping_placeholders(*text)) {
          if (std::find(std::begin(kTemplatePlaceholders), std::end(kTemplatePlaceholders),
                        placeholder) == std::end(kTemplatePlaceholders)) {
            throw ParseError(pos, "unknown template placeholder {" + placeholder + "}");
          }
        }
      }
      if (rule.output_pattern.find("{name}") == std::string::npos) {
        throw ParseError(pos, "output path pattern must contain {name}");
      }
      mapping.rules.push_back(std::move(rule));
    } else {
      fail_expected({"'manifest'", "'strict'", "'rule'", "'}'"});
    }
  }
  return mapping;
}

ResourceModel Parser::parse_resources_body(std::string name) {
  ResourceModel resources;
  resources.name = std::move(name);
  std::set<std::string, std::less<>> names;
  while (!accept_punct("}")) {
    if (!accept_word("node")) fail_expected({"'node'", "'}'"});
    SourcePos pos = peek().pos;
    ResourceNode node;
    node.name = expect_identifier("node name");
    expect_punct("{");
    bool has_capacity = false;
    while (!accept_punct("}")) {
      if (accept_word("capacity")) {
        if (has_capacity) fail("duplicate capacity for node " + node.name);
        SourcePos cpos = peek().pos;
        node.capacity = expect_number();
        if (!(node.capacity > 0)) throw ParseError(cpos, "capacity must be positive");
        has_capacity = true;
      } else if (accept_word("attr")) {
        parse_attr_into(node.attributes, node.name);
      } else {
        fail_expected({"'capacity'", "'attr'", "'}'"});
      }
    }
    if (!has_capacity) throw ParseError(pos, "node " + node.name + " declares no capacity");
    if (!names.insert(node.name).second) {
      throw ModelError(ErrorKind::duplicate_name, at(pos) + "duplicate name " + node.name);
    }
    resources.nodes.push_back(std::move(node));
  }
  return resources;
}

ModelDocument Parser::parse_document() {
  ModelDocument doc;
  if (accept_word("architecture")) {
    auto name = expect_identifier("model name");
    expect_punct("{");
    doc.payload = parse_architecture_body(std::move(name));
  } else if (accept_word("qos_pattern")) {
    auto name = expect_identifier("model name");
    expect_punct("{");
    doc.payload = parse_qos_body(std::move(name));
  } else if (accept_word("platform")) {
    auto name = expect_identifier("model name");
    expect_punct("{");
    doc.payload = parse_platform_body(std::move(name));
  } else if (accept_word("mapping")) {
    auto name = expect_identifier("model name");
    expect_punct("{");
    doc.payload = parse_mapping_body(std::move(name));
  } else if (accept_word("resources")) {
    auto name = expect_identifier("model name");
    expect_punct("{");
    doc.payload = parse_resources_body(std::move(name));
  } else {
    fail_expected({"'architecture'", "'qos_pattern'", "'platform'", "'mapping'", "'resources'"});
  }
  expect_end();
  return doc;
}

namespace {

ErrorKind error_kind_for(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_name:
    case ViolationKind::duplicate_type:
    case ViolationKind::duplicate_attachment: return ErrorKind::duplicate_name;
    case ViolationKind::undeclared_type: return ErrorKind::undeclared_type;
    case ViolationKind::unresolved_endpoint: return ErrorKind::unresolved;
    case ViolationKind::direction:
    case ViolationKind::type_mismatch:
    case ViolationKind::invalid_name: return ErrorKind::invalid_structure;
  }
  return ErrorKind::invalid_structure;
}

std::string join_messages(const std::vector<Violation>& violations) {
  std::string message;
  for (const auto& v : violations) {
    if (!message.empty()) message += "; ";
    message += v.message;
  }
  return message;
}

}  // namespace

void require_valid(const ArchitectureModel& arch) {
  auto report = validate_structure(arch);
  if (report.ok()) return;
  throw ModelError(error_kind_for(report.violations.front().kind),
                   join_messages(report.violations));
}

void require_valid_fragment(const Fragment& fragment, const std::vector<std::string>& outer_types,
                            std::string_view context) {
  ArchitectureModel probe;
  probe.types = outer_types;
  for (const auto& t : fragment.types) {
    if (!probe.has_type(t)) probe.types.push_back(t);
  }
  probe.components = fragment.components;
  probe.connectors = fragment.connectors;
  probe.attachments = fragment.attachments;
  auto report = validate_structure(probe);
  if (report.ok()) return;
  throw ModelError(ErrorKind::malformed_fragment,
                   "malformed fragment in " + std::string(context) + ": " +
                       join_messages(report.violations));
}

}  // namespace detail

ModelDocument parse_model(std::string_view source) {
  return detail::Parser(source).parse_document();
}

namespace {

template <typename T>
T parse_as(std::string_view source, DocumentKind kind) {
  auto doc = parse_model(source);
  if (doc.kind() != kind) {
    throw ModelError(ErrorKind::invalid_argument, "expected a " + std::string(to_string(kind)) +
                                                      " document, found " +
                                                      std::string(to_string(doc.kind())));
  }
  return std::get<T>(std::move(doc.payload));
}

}  // namespace

ArchitectureModel parse_architecture(std::string_view source) {
  return parse_as<ArchitectureModel>(source, DocumentKind::architecture);
}

QosPattern parse_qos_pattern(std::string_view source) {
  return parse_as<QosPattern>(source, DocumentKind::qos_pattern);
}

PlatformModel parse_platform(std::string_view source) {
  return parse_as<PlatformModel>(source, DocumentKind::platform);
}

MappingModel parse_mapping(std::string_view source) {
  return parse_as<MappingModel>(source, DocumentKind::mapping);
}

ResourceModel parse_resources(std::string_view source) {
  return parse_as<ResourceModel>(source, DocumentKind::resources);
}

PropertyExpr parse_property(std::string_view source) {
  detail::Parser parser(source);
  auto property = parser.parse_property();
  parser.expect_end();
  return property;
}

Fragment parse_fragment(std::string_view source) {
  detail::Parser parser(source);
  auto fragment = parser.parse_fragment_items();
  parser.expect_end();
  return fragment;
}

}  // namespace weave
