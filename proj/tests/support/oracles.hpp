#pragma once

// Reference implementations used to cross-check the library. They share no
// code with core/ and favour obviousness over speed.

#include <string>
#include <vector>

#include "weave/model.hpp"

namespace weave::testing {

/// Glob via std::regex, `*` -> `.*`.
bool oracle_glob(const std::string& glob, const std::string& text);

/// Every simple path between two elements of the undirected attachment
/// multigraph, found by exhaustive DFS. Exponential; keep models small.
std::size_t count_simple_paths(const ArchitectureModel& arch, const std::string& a,
                               const std::string& b);

/// Sum of a numeric attribute over every component and connector.
double direct_sum(const ArchitectureModel& arch, const std::string& attribute);

/// Truth value of any property, recomputed from first principles. Connected
/// endpoints that do not resolve count as false.
bool oracle_holds(const ArchitectureModel& arch, const PropertyExpr& property);

/// Structural invariants re-checked independently of validate_structure:
/// unique element names, unique member names, declared types, resolvable
/// endpoints, out -> in direction, matching types, no duplicate attachment.
/// Returns the first problem found, or an empty string.
std::string structural_problem(const ArchitectureModel& arch);

/// True when some assignment places every item on a node without exceeding
/// any capacity. Enumerates all nodes^items assignments.
bool feasible_assignment_exists(const std::vector<double>& loads,
                                const std::vector<double>& capacities);

}  // namespace weave::testing
