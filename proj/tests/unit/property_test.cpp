#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_models.hpp"
#include "weave/adl.hpp"
#include "weave/property.hpp"
#include "weave/refinement.hpp"

namespace weave {
namespace {

ArchitectureModel reference() {
  return parse_architecture(testing::read_text(testing::fixture_path("grid_app.adl")));
}

TEST(Evaluate, AllPortsConnectedIsVacuousWithoutComponents) {
  auto arch = parse_architecture("architecture A { types { } }");
  auto r = evaluate(arch, AllPortsConnected{});
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Evaluate, ReplicationAfterReplicateNamesReplicas) {
  auto arch = apply_replicate(reference(), ElementPath{"b"}, 2);
  auto r = evaluate(arch, MinReplication{"b", 2});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.witnesses, (std::vector<ElementPath>{ElementPath{"b_1"}, ElementPath{"b_2"}}));
}

TEST(Evaluate, AttrSumReportsTheSum) {
  auto arch = reference();
  ASSERT_EQ(testing::direct_sum(arch, "cost"), 12.0);
  auto r = evaluate(arch, AttrSumBound{"cost", 10});
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.detail, "sum=12");
  EXPECT_TRUE(evaluate(arch, AttrSumBound{"cost", 12}).holds);
}

TEST(Evaluate, UnattachedPortIsTheWitness) {
  auto arch = parse_architecture(testing::read_text(testing::fixture_path("unattached_port.adl")));
  auto r = evaluate(arch, AllPortsConnected{});
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witnesses, std::vector<ElementPath>{(ElementPath{"audit", "feed"})});
}

TEST(Evaluate, ExistsMatchesGlobs) {
  auto arch = reference();
  auto r = evaluate(arch, ExistsElement{ElementKind::connector, "Q*"});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.witnesses, std::vector<ElementPath>{ElementPath{"Queue"}});
  EXPECT_FALSE(evaluate(arch, ExistsElement{ElementKind::component, "Queue"}).holds);
}

TEST(Evaluate, ConnectedFollowsAttachmentsUndirected) {
  auto arch = reference();
  EXPECT_TRUE(evaluate(arch, Connected{ElementPath{"s"}, ElementPath{"Queue"}}).holds);
  arch.attachments.erase(arch.attachments.begin() + 2);  // b::p -> s::q
  arch.attachments.pop_back();                           // s::done -> client::collect
  auto r = evaluate(arch, Connected{ElementPath{"client"}, ElementPath{"s"}});
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witnesses.size(), 2u);
  EXPECT_THROW(evaluate(arch, Connected{ElementPath{"client"}, ElementPath{"missing"}}), ModelError);
}

TEST(EvaluateAll, EmptyListGivesEmptyResults) {
  EXPECT_TRUE(evaluate_all(reference(), {}).empty());
}

TEST(EvaluateAll, FullyAttachedFixtureSatisfiesClosureProperties) {
  auto arch = reference();
  std::vector<PropertyExpr> props{TypeClosed{}, AllPortsConnected{}};
  auto results = evaluate_all(arch, props);
  ASSERT_EQ(results.size(), 2u);
  for (std::size_t i = 0; i < props.size(); ++i) {
    EXPECT_TRUE(results[i].holds);
    EXPECT_TRUE(testing::oracle_holds(arch, props[i]));
  }
}

TEST(EvaluateAll, UnresolvedPathIsRecordedPerEntry) {
  std::vector<PropertyExpr> props{TypeClosed{},
                                  Connected{ElementPath{"client"}, ElementPath{"missing"}},
                                  AllPortsConnected{}};
  auto results = evaluate_all(reference(), props);
  ASSERT_EQ(results.size(), 3u);
  EXPECT_TRUE(results[0].holds);
  EXPECT_FALSE(results[1].holds);
  ASSERT_TRUE(results[1].error.has_value());
  EXPECT_NE(results[1].error->find("missing"), std::string::npos);
  EXPECT_TRUE(results[2].holds);
}

TEST(Preservation, VacuousWithoutParentProperties) {
  auto parent = reference();
  parent.properties.clear();
  auto child = parse_architecture("architecture Other { types { } }");
  EXPECT_TRUE(check_preservation(parent, child).preserved);
}

TEST(Preservation, ReplicasCountForTheBase) {
  auto parent = parse_architecture(
      "architecture A { types { } component b { } property replication(b) >= 1 }");
  auto child = apply_replicate(parent, ElementPath{"b"}, 2);
  EXPECT_TRUE(check_preservation(parent, child).preserved);
}

TEST(Preservation, NewUnattachedPortIsTheCounterexample) {
  auto parent = reference();
  auto child = apply_include(parent, parse_fragment("component audit { port feed: requires Job }"));
  auto report = check_preservation(parent, child);
  EXPECT_FALSE(report.preserved);
  const auto& apc = report.results[0];
  EXPECT_FALSE(apc.holds);
  EXPECT_EQ(apc.witnesses, std::vector<ElementPath>{(ElementPath{"audit", "feed"})});
}

TEST(Glob, AgreesWithRegexOracle) {
  const std::vector<std::string> globs{"*", "b", "b*", "*_1", "W*B*", "a*b*c", "", "**"};
  const std::vector<std::string> names{"", "b", "b_1", "WorkloadBroker_Queue", "abc", "ab",
                                       "xb_1", "a.b"};
  for (const auto& g : globs) {
    for (const auto& n : names) {
      EXPECT_EQ(glob_match(g, n), testing::oracle_glob(g, n)) << g << " vs " << n;
    }
  }
}

TEST(ReplicaNames, BaseAndNumberedSuffixes) {
  EXPECT_TRUE(is_replica_name("b", "b"));
  EXPECT_TRUE(is_replica_name("b_12", "b"));
  EXPECT_FALSE(is_replica_name("b_", "b"));
  EXPECT_FALSE(is_replica_name("b_x", "b"));
  EXPECT_FALSE(is_replica_name("bb_1", "b"));
  EXPECT_EQ(replica_name("b", 3), "b_3");
}

// Random models: every property agrees with the first-principles oracle.
TEST(EvaluateProperty, AgreesWithOracleOnRandomModels) {
  testing::Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    auto arch = testing::random_model(rng);
    for (const auto& p : testing::random_properties(rng, arch)) {
      auto results = evaluate_all(arch, std::vector<PropertyExpr>{p});
      ASSERT_EQ(results[0].holds, testing::oracle_holds(arch, p)) << to_string(p);
    }
  }
}

TEST(EvaluateProperty, ConnectedIsSymmetric) {
  testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto arch = testing::random_model(rng);
    for (const auto& a : arch.components) {
      for (const auto& c : arch.connectors) {
        ElementPath x{a.name}, y{c.name};
        EXPECT_EQ(evaluate(arch, Connected{x, y}).holds, evaluate(arch, Connected{y, x}).holds);
      }
    }
  }
}

TEST(EvaluateProperty, ExistsIsMonotoneUnderInclude) {
  testing::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto arch = testing::random_model(rng);
    auto grown = apply_include(arch, parse_fragment("component zz { }"));
    for (const auto& g : {"c*", "k*", "z*", "*", "c0"}) {
      for (auto kind : {ElementKind::component, ElementKind::connector}) {
        ExistsElement p{kind, g};
        if (evaluate(arch, p).holds) {
          EXPECT_TRUE(evaluate(grown, p).holds);
        }
      }
    }
  }
}

}  // namespace
}  // namespace weave
