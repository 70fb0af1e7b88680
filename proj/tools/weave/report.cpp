#include "weave/report.hpp"

namespace weave::cli {

Json to_json(const PropertyResult& result) {
  Json j;
  j["property"] = to_string(result.property);
  j["holds"] = result.holds;
  Json witnesses = Json::array();
  for (const auto& w : result.witnesses) witnesses.push_back(w.str());
  j["witnesses"] = std::move(witnesses);
  j["detail"] = result.detail;
  if (result.error) j["error"] = *result.error;
  return j;
}

Json to_json(std::span<const PropertyResult> results) {
  Json out = Json::array();
  for (const auto& r : results) out.push_back(to_json(r));
  return out;
}

namespace {

Json check_json(const CheckResult& check) {
  Json j;
  j["status"] = to_string(check.status);
  if (!check.detail.empty()) j["detail"] = check.detail;
  return j;
}

}  // namespace

Json to_json(const RefinementTrace& trace) {
  Json j;
  j["origin"] = trace.origin().str();
  Json entries = Json::array();
  for (const auto& e : trace.entries()) {
    Json entry;
    entry["index"] = e.index;
    entry["action"] = e.action;
    Json args = Json::object();
    for (const auto& [k, v] : e.arguments) args[k] = v;
    entry["arguments"] = std::move(args);
    entry["pre"] = check_json(e.pre);
    entry["post"] = check_json(e.post);
    entry["preserved"] = check_json(e.preserved);
    if (!e.fingerprint.empty()) entry["fingerprint"] = e.fingerprint;
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const StepFailure& failure) {
  Json j = error_json(failure.kind, failure.message);
  j["action_index"] = failure.action_index;
  if (!failure.violated.empty()) j["violated"] = to_json(failure.violated);
  return j;
}

Json to_json(const DeploymentPlan& plan) {
  Json j;
  Json assignments = Json::array();
  for (const auto& [component, node] : plan.assignments) {
    assignments.push_back(Json{{"component", component}, {"node", node}});
  }
  j["assignments"] = std::move(assignments);
  j["unplaced"] = plan.unplaced;
  return j;
}

Json error_json(ErrorKind kind, std::string_view message) {
  return Json{{"kind", to_string(kind)}, {"message", message}};
}

}  // namespace weave::cli
