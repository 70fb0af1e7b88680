#pragma once

#include <span>

#include <json.hpp>

#include "weave/codegen.hpp"
#include "weave/property.hpp"
#include "weave/refinement.hpp"

namespace weave::cli {

using Json = nlohmann::ordered_json;

Json to_json(const PropertyResult& result);
Json to_json(std::span<const PropertyResult> results);
Json to_json(const RefinementTrace& trace);
Json to_json(const StepFailure& failure);
Json to_json(const DeploymentPlan& plan);
Json error_json(ErrorKind kind, std::string_view message);

}  // namespace weave::cli
