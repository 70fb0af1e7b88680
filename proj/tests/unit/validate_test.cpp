#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_models.hpp"
#include "weave/adl.hpp"

namespace weave {
namespace {

ArchitectureModel reference() {
  return parse_architecture(testing::read_text(testing::fixture_path("grid_app.adl")));
}

std::vector<ViolationKind> kinds(const ValidationReport& report) {
  std::vector<ViolationKind> out;
  for (const auto& v : report.violations) out.push_back(v.kind);
  return out;
}

TEST(Validate, ReferenceFixtureIsValid) { EXPECT_TRUE(validate_structure(reference()).ok()); }

TEST(Validate, ReportsEveryViolation) {
  auto arch = reference();
  arch.components[1].ports[0].message_type = "Ghost";
  arch.attachments.push_back(arch.attachments[0]);
  arch.attachments.push_back({ElementPath{"client", "collect"}, ElementPath{"s", "q"}});
  auto report = validate_structure(arch);
  auto found = kinds(report);
  EXPECT_NE(std::find(found.begin(), found.end(), ViolationKind::undeclared_type), found.end());
  EXPECT_NE(std::find(found.begin(), found.end(), ViolationKind::duplicate_attachment), found.end());
  EXPECT_NE(std::find(found.begin(), found.end(), ViolationKind::direction), found.end());
  EXPECT_NE(std::find(found.begin(), found.end(), ViolationKind::type_mismatch), found.end());
}

TEST(Validate, UndeclaredTypeCitesThePort) {
  auto arch = reference();
  arch.types = {"Job"};
  auto report = validate_structure(arch);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations[0].kind, ViolationKind::undeclared_type);
  EXPECT_EQ(report.violations[0].path, (ElementPath{"client", "collect"}));
}

TEST(Validate, AgreesWithIndependentCheckOnMutations) {
  testing::Rng rng(7);
  for (int i = 0; i < 400; ++i) {
    auto arch = testing::random_model(rng);
    ASSERT_EQ(testing::structural_problem(arch), "");
    ASSERT_TRUE(validate_structure(arch).ok());
    // Flip one attachment around; validity must agree with the oracle.
    if (!arch.attachments.empty()) {
      auto& a = arch.attachments[static_cast<std::size_t>(i) % arch.attachments.size()];
      std::swap(a.from, a.to);
      EXPECT_EQ(validate_structure(arch).ok(), testing::structural_problem(arch).empty());
    }
  }
}

TEST(ResolvePath, ElementsMembersAndConnections) {
  auto arch = reference();
  EXPECT_EQ(resolve_path(arch, ElementPath{"Queue"}).kind, EntityKind::connector);
  auto port = resolve_path(arch, ElementPath{"b", "p"});
  EXPECT_EQ(port.kind, EntityKind::port);
  EXPECT_EQ(port.member, 1u);
  EXPECT_EQ(resolve_path(arch, ElementPath{"Queue", "out"}).kind, EntityKind::role);
  auto set = resolve_path(arch, ElementPath{"b", "p", "connection"});
  EXPECT_EQ(set.kind, EntityKind::attachment_set);
  EXPECT_EQ(set.attachments, std::vector<std::size_t>{2});
}

TEST(ResolvePath, UnresolvedSegmentIsNamed) {
  auto arch = reference();
  try {
    resolve_path(arch, ElementPath{"b", "x"});
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unresolved);
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
  }
  EXPECT_THROW(resolve_path(arch, ElementPath{"b", "p", "other"}), ModelError);
  EXPECT_THROW(resolve_path(arch, ElementPath{"nobody"}), ModelError);
}

}  // namespace
}  // namespace weave
