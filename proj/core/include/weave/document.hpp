#pragma once

#include <string>
#include <variant>
#include <vector>

#include "weave/model.hpp"
#include "weave/template.hpp"

namespace weave {

enum class ParamKind { element, integer, number };
std::string_view to_string(ParamKind kind);

struct PatternParam {
  std::string name;
  ParamKind kind = ParamKind::element;
  bool operator==(const PatternParam&) const = default;
};

/// QoS pattern (GECM). Fragments and the body are templates over the
/// declared parameters.
struct QosPattern {
  std::string name;
  std::vector<PatternParam> params;
  std::vector<TemplateSeq> fragments;
  TemplateSeq body;

  bool operator==(const QosPattern&) const = default;
};

/// Replaces every element of `match_kind` whose name matches `glob`. The
/// replacement and port map are templates over `$name`, the matched name.
struct RewriteRule {
  ElementKind match_kind = ElementKind::connector;
  std::string glob;
  TemplateSeq replacement;
  TemplateSeq port_map;

  bool operator==(const RewriteRule&) const = default;
};

/// Platform model (GETM).
struct PlatformModel {
  std::string name;
  std::vector<PropertyExpr> conformance;
  std::vector<Fragment> adapters;
  std::vector<RewriteRule> rewrites;

  bool operator==(const PlatformModel&) const = default;
};

struct MappingRule {
  ElementKind match_kind = ElementKind::component;
  std::string glob;
  std::string output_pattern;
  std::string template_text;

  bool operator==(const MappingRule&) const = default;
};

/// Mapping model (GEMM): ordered translation rules, first match wins.
struct MappingModel {
  std::string name;
  std::string manifest_name = "MANIFEST";
  bool strict = false;
  std::vector<MappingRule> rules;

  bool operator==(const MappingModel&) const = default;
};

struct ResourceNode {
  std::string name;
  double capacity = 0;
  Attributes attributes;

  bool operator==(const ResourceNode&) const = default;
};

/// Resource model (GERM).
struct ResourceModel {
  std::string name;
  std::vector<ResourceNode> nodes;

  bool operator==(const ResourceModel&) const = default;
};

enum class DocumentKind { architecture, qos_pattern, platform, mapping, resources };
std::string_view to_string(DocumentKind kind);

struct ModelDocument {
  std::variant<ArchitectureModel, QosPattern, PlatformModel, MappingModel, ResourceModel> payload;

  DocumentKind kind() const { return static_cast<DocumentKind>(payload.index()); }
  const std::string& name() const;

  bool operator==(const ModelDocument&) const = default;
};

}  // namespace weave
