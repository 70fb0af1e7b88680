#include <sstream>

#include "weave/adl.hpp"

namespace weave {
namespace {

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent), ' '); }

void print_types(std::ostream& out, const std::vector<std::string>& types, int indent) {
  out << pad(indent) << "types {";
  for (std::size_t i = 0; i < types.size(); ++i) {
    out << (i == 0 ? " " : "; ") << types[i];
  }
  out << " }\n";
}

void print_attributes(std::ostream& out, const Attributes& attributes, int indent) {
  for (const auto& [key, value] : attributes) {
    out << pad(indent) << "attr " << key << " = " << format_scalar(value) << '\n';
  }
}

void print_component(std::ostream& out, const Component& c, int indent) {
  if (c.ports.empty() && c.attributes.empty()) {
    out << pad(indent) << "component " << c.name << " { }\n";
    return;
  }
  out << pad(indent) << "component " << c.name << " {\n";
  for (const auto& p : c.ports) {
    out << pad(indent + 2) << "port " << p.name << ": " << to_string(p.direction) << ' '
        << p.message_type << '\n';
  }
  print_attributes(out, c.attributes, indent + 2);
  out << pad(indent) << "}\n";
}

void print_connector(std::ostream& out, const Connector& k, int indent) {
  if (k.roles.empty() && k.attributes.empty()) {
    out << pad(indent) << "connector " << k.name << " { }\n";
    return;
  }
  out << pad(indent) << "connector " << k.name << " {\n";
  for (const auto& r : k.roles) {
    out << pad(indent + 2) << "role " << r.name << ": " << to_string(r.direction) << ' '
        << r.message_type << '\n';
  }
  print_attributes(out, k.attributes, indent + 2);
  out << pad(indent) << "}\n";
}

void print_attachments(std::ostream& out, const std::vector<Attachment>& attachments, int indent) {
  for (const auto& a : attachments) {
    out << pad(indent) << "attach " << a.from.str() << " to " << a.to.str() << '\n';
  }
}

void print_fragment_into(std::ostream& out, const Fragment& f, int indent) {
  if (!f.types.empty()) print_types(out, f.types, indent);
  for (const auto& c : f.components) print_component(out, c, indent);
  for (const auto& k : f.connectors) print_connector(out, k, indent);
  print_attachments(out, f.attachments, indent);
}

struct DocumentPrinter {
  std::ostringstream& out;

  void operator()(const ArchitectureModel& arch) const {
    out << "architecture " << arch.name << " {\n";
    print_types(out, arch.types, 2);
    if (arch.stage != Stage::geim) out << "  stage " << to_string(arch.stage) << '\n';
    for (const auto& c : arch.components) print_component(out, c, 2);
    for (const auto& k : arch.connectors) print_connector(out, k, 2);
    print_attachments(out, arch.attachments, 2);
    for (const auto& p : arch.properties) out << "  property " << to_string(p) << '\n';
    print_attributes(out, arch.attributes, 2);
    out << "}\n";
  }

  void operator()(const QosPattern& pattern) const {
    out << "qos_pattern " << pattern.name << " {\n";
    for (const auto& param : pattern.params) {
      out << "  param " << param.name << ": " << to_string(param.kind) << '\n';
    }
    for (const auto& fragment : pattern.fragments) {
      out << "  fragment {\n"
          << print_template(fragment, 4, TemplateStyle::declarations) << "  }\n";
    }
    out << print_template(pattern.body, 2, TemplateStyle::statements);
    out << "}\n";
  }

  void operator()(const PlatformModel& platform) const {
    out << "platform " << platform.name << " {\n";
    for (const auto& p : platform.conformance) out << "  requires " << to_string(p) << '\n';
    for (const auto& adapter : platform.adapters) {
      out << "  adapter {\n";
      print_fragment_into(out, adapter, 4);
      out << "  }\n";
    }
    for (const auto& rule : platform.rewrites) {
      out << "  rewrite " << to_string(rule.match_kind) << ' ' << rule.glob
          << " -> fragment {\n"
          << print_template(rule.replacement, 4, TemplateStyle::declarations)
          << "  } portmap {\n"
          << print_template(rule.port_map, 4, TemplateStyle::declarations) << "  }\n";
    }
    out << "}\n";
  }

  void operator()(const MappingModel& mapping) const {
    out << "mapping " << mapping.name << " {\n";
    out << "  manifest " << quote_string(mapping.manifest_name) << '\n';
    if (mapping.strict) out << "  strict\n";
    for (const auto& rule : mapping.rules) {
      out << "  rule " << to_string(rule.match_kind) << ' ' << rule.glob << " -> "
          << quote_string(rule.output_pattern) << " template " << quote_string(rule.template_text)
          << '\n';
    }
    out << "}\n";
  }

  void operator()(const ResourceModel& resources) const {
    out << "resources " << resources.name << " {\n";
    for (const auto& node : resources.nodes) {
      out << "  node " << node.name << " {\n";
      out << "    capacity " << format_number(node.capacity) << '\n';
      print_attributes(out, node.attributes, 4);
      out << "  }\n";
    }
    out << "}\n";
  }
};

}  // namespace

std::string print_model(const ModelDocument& doc) {
  std::ostringstream out;
  std::visit(DocumentPrinter{out}, doc.payload);
  return out.str();
}

std::string print_model(const ArchitectureModel& arch) {
  std::ostringstream out;
  DocumentPrinter{out}(arch);
  return out.str();
}

std::string print_fragment(const Fragment& fragment, int indent) {
  std::ostringstream out;
  print_fragment_into(out, fragment, indent);
  return out.str();
}

}  // namespace weave
