#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "weave/adl.hpp"

namespace weave {
namespace {

using testing::fixture_path;
using testing::library_path;
using testing::read_text;

ErrorKind kind_of(std::string_view source) {
  try {
    parse_model(source);
  } catch (const ModelError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << source;
  return ErrorKind::io;
}

TEST(Parser, ReferenceFixture) {
  auto arch = parse_architecture(read_text(fixture_path("grid_app.adl")));
  EXPECT_EQ(arch.name, "GridApp");
  EXPECT_EQ(arch.types, (std::vector<std::string>{"Job", "Result"}));
  ASSERT_EQ(arch.components.size(), 3u);
  ASSERT_EQ(arch.connectors.size(), 1u);
  EXPECT_EQ(arch.attachments.size(), 4u);
  EXPECT_EQ(arch.properties.size(), 6u);
  EXPECT_EQ(arch.stage, Stage::geim);
  const auto* b = arch.find_component("b");
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->ports[1].direction, PortDirection::required);
  EXPECT_EQ(numeric_attribute(b->attributes, "cost"), 4.0);
  EXPECT_EQ(arch.attachments[2], (Attachment{ElementPath{"b", "p"}, ElementPath{"s", "q"}}));
}

TEST(Parser, PropertySurfaceSyntax) {
  EXPECT_EQ(parse_property("allPortsConnected"), PropertyExpr{AllPortsConnected{}});
  EXPECT_EQ(parse_property("exists component Sched*"),
            PropertyExpr(ExistsElement{ElementKind::component, "Sched*"}));
  EXPECT_EQ(parse_property("replication(b) >= 2"), PropertyExpr(MinReplication{"b", 2}));
  EXPECT_EQ(parse_property("connected(a, b)"),
            PropertyExpr(Connected{ElementPath{"a"}, ElementPath{"b"}}));
  EXPECT_EQ(parse_property("attrSum(cost) <= 10"), PropertyExpr(AttrSumBound{"cost", 10}));
  EXPECT_EQ(parse_property("typeClosed"), PropertyExpr{TypeClosed{}});
}

TEST(Parser, PropertyBoundsAreChecked) {
  EXPECT_THROW(parse_property("replication(b) >= 0"), ParseError);
  EXPECT_THROW(parse_property("replication(b) >= 1.5"), ParseError);
  EXPECT_THROW(parse_property("attrSum(cost) <= 1e999"), ParseError);
  EXPECT_THROW(parse_property("exists component a$"), ParseError);
}

TEST(Parser, SyntaxErrorsCarryPositionAndExpectations) {
  try {
    parse_model("architecture A {\n  component x { port p provides T }\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position().line, 2);
    EXPECT_EQ(e.position().column, 24);
    EXPECT_EQ(e.expected(), std::vector<std::string>{"':'"});
    EXPECT_NE(std::string(e.what()).find("2:24:"), std::string::npos);
  }
}

TEST(Parser, StructuralErrorsAreTyped) {
  EXPECT_EQ(kind_of("architecture A { types { T } component x { } component x { } }"),
            ErrorKind::duplicate_name);
  EXPECT_EQ(kind_of("architecture A { types { T } component x { port p: provides U } }"),
            ErrorKind::undeclared_type);
  EXPECT_EQ(kind_of("architecture A { types { T } component x { port p: provides T } "
                    "attach x::p to y::q }"),
            ErrorKind::unresolved);
  EXPECT_EQ(kind_of("architecture A { types { T; T } }"), ErrorKind::duplicate_name);
  EXPECT_EQ(kind_of("architecture A { component x { attr a = 1 attr a = 2 } }"),
            ErrorKind::duplicate_name);
  EXPECT_EQ(kind_of("architecture A { stage GESM stage GEIM }"), ErrorKind::syntax);
  EXPECT_EQ(kind_of("architecture A { } trailing"), ErrorKind::syntax);
}

TEST(Parser, AttachmentDirectionAndTypeAreValidated) {
  const char* wrong_direction =
      "architecture A { types { T } component x { port p: provides T } "
      "component y { port q: provides T } attach x::p to y::q }";
  EXPECT_EQ(kind_of(wrong_direction), ErrorKind::invalid_structure);
  const char* wrong_type =
      "architecture A { types { T; U } component x { port p: requires T } "
      "component y { port q: provides U } attach x::p to y::q }";
  EXPECT_EQ(kind_of(wrong_type), ErrorKind::invalid_structure);
}

TEST(Parser, TypesBlockIsOptional) {
  auto arch = parse_architecture("architecture Empty { }");
  EXPECT_TRUE(arch.types.empty());
  EXPECT_EQ(arch.element_count(), 0u);
}

TEST(Parser, StageItem) {
  auto arch = parse_architecture("architecture A { stage GESM }");
  EXPECT_EQ(arch.stage, Stage::gesm);
}

TEST(Parser, WrongDocumentKindForTypedEntryPoint) {
  EXPECT_THROW(parse_architecture("resources R { }"), ModelError);
}

TEST(Parser, QosPatternStructure) {
  auto pattern = parse_qos_pattern(read_text(library_path("patterns/fault_tolerance.qos")));
  EXPECT_EQ(pattern.name, "fault_tolerance");
  ASSERT_EQ(pattern.params.size(), 2u);
  EXPECT_EQ(pattern.params[1].kind, ParamKind::integer);
  EXPECT_EQ(pattern.fragments.size(), 1u);
  EXPECT_FALSE(pattern.body.empty());
}

TEST(Parser, QosPatternWithoutActionsIsEmptyPattern) {
  EXPECT_EQ(kind_of("qos_pattern p { param limit: number ensures attrSum(cost) <= $limit }"),
            ErrorKind::empty_pattern);
}

TEST(Parser, QosPatternPlaceholdersMustBeDeclared) {
  try {
    parse_model("qos_pattern p { param target: element action replicate $target $replicas }");
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unbound_parameter);
    EXPECT_NE(std::string(e.what()).find("replicas"), std::string::npos);
  }
}

TEST(Parser, QosPatternLoopVariablesAreScoped) {
  EXPECT_NO_THROW(parse_model("qos_pattern p { param t: element foreach $x in replicas($t, 2) "
                              "{ action exclude $x } }"));
  EXPECT_EQ(kind_of("qos_pattern p { param t: element foreach $x in replicas($t, 2) "
                    "{ action exclude $x } action exclude $x }"),
            ErrorKind::unbound_parameter);
}

TEST(Parser, QosPatternFragmentNamesUnique) {
  EXPECT_EQ(kind_of("qos_pattern p { param t: element fragment { component A_$t { } } "
                    "fragment { component A_$t { } } action include A_$t }"),
            ErrorKind::duplicate_name);
  EXPECT_EQ(kind_of("qos_pattern p { param t: element param t: integer action exclude $t }"),
            ErrorKind::duplicate_name);
}

TEST(Parser, PlatformStructure) {
  auto platform = parse_platform(read_text(library_path("platforms/platformB.plat")));
  EXPECT_EQ(platform.conformance.size(), 2u);
  ASSERT_EQ(platform.adapters.size(), 1u);
  EXPECT_EQ(platform.adapters[0].components[0].name, "Gatekeeper");
  ASSERT_EQ(platform.rewrites.size(), 1u);
  EXPECT_EQ(platform.rewrites[0].match_kind, ElementKind::connector);
  EXPECT_EQ(platform.rewrites[0].glob, "Queue*");
}

TEST(Parser, PlatformRewriteKeysAreDistinct) {
  const char* twice =
      "platform P { rewrite connector Q* -> fragment { component A_$name { } } portmap { } "
      "rewrite connector Q* -> fragment { component B_$name { } } portmap { } }";
  EXPECT_EQ(kind_of(twice), ErrorKind::duplicate_name);
}

TEST(Parser, PlatformTemplatesOnlySeeName) {
  EXPECT_EQ(kind_of("platform P { rewrite component x -> fragment { component A_$other { } } "
                    "portmap { } }"),
            ErrorKind::unbound_parameter);
}

TEST(Parser, AdapterMustBeSelfContained) {
  EXPECT_EQ(kind_of("platform P { adapter { component G { port p: provides Undeclared } } }"),
            ErrorKind::malformed_fragment);
  EXPECT_EQ(kind_of("platform P { adapter { } }"), ErrorKind::malformed_fragment);
}

TEST(Parser, MappingRulesAndPlaceholders) {
  auto mapping = parse_mapping(read_text(fixture_path("mappings/strict.map")));
  EXPECT_TRUE(mapping.strict);
  EXPECT_EQ(mapping.manifest_name, "index.txt");
  ASSERT_EQ(mapping.rules.size(), 2u);
  EXPECT_EQ(mapping.rules[0].glob, "b_*");

  EXPECT_EQ(kind_of(R"(mapping M { rule component * -> "{name}" template "{bogus}" })"),
            ErrorKind::syntax);
  EXPECT_EQ(kind_of(R"(mapping M { rule component * -> "fixed.txt" template "x" })"),
            ErrorKind::syntax);
  EXPECT_NO_THROW(parse_model(R"(mapping M { rule component * -> "{name}" template "{ } {1}" })"));
}

TEST(Parser, ResourceInvariants) {
  auto resources = parse_resources(read_text(fixture_path("resources/grid.res")));
  ASSERT_EQ(resources.nodes.size(), 3u);
  EXPECT_EQ(resources.nodes[1].capacity, 4.5);
  EXPECT_EQ(kind_of("resources R { node a { capacity 0 } }"), ErrorKind::syntax);
  EXPECT_EQ(kind_of("resources R { node a { capacity -1 } }"), ErrorKind::syntax);
  EXPECT_EQ(kind_of("resources R { node a { } }"), ErrorKind::syntax);
  EXPECT_EQ(kind_of("resources R { node a { capacity 1 } node a { capacity 2 } }"),
            ErrorKind::duplicate_name);
}

TEST(Parser, FragmentEntryPoint) {
  auto fragment = parse_fragment("types { X } component a { port p: requires X } "
                                 "component b { port q: provides X } attach a::p to b::q");
  EXPECT_EQ(fragment.types, std::vector<std::string>{"X"});
  EXPECT_EQ(fragment.element_count(), 2u);
  EXPECT_EQ(fragment.attachments.size(), 1u);
}

}  // namespace
}  // namespace weave
