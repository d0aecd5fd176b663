#pragma once

#include <json.hpp>

#include "credo/compatibility.hpp"
#include "credo/elicitation.hpp"
#include "credo/interactive.hpp"
#include "credo/scenario.hpp"

namespace credo {

/// Key order is preserved so that files and reports are stable.
using Json = nlohmann::ordered_json;

Json to_json(const Fraction& f);
Fraction fraction_from_json(const Json& j);

/// Finite values as numbers, infinities as "inf" / "-inf".
Json real_to_json(double x);
double real_from_json(const Json& j);

Json to_json(const EventExpr& e);
EventExpr event_from_json(const Json& j);

Json to_json(const OutcomeSpace& s);
OutcomeSpace space_from_json(const Json& j);

Json to_json(const ReferenceSet& r);
ReferenceSet reference_set_from_json(const Json& j);

Json to_json(const Law& law);
Law law_from_json(const Json& j);

Json to_json(const Distribution& d);
Distribution distribution_from_json(const Json& j);

Json to_json(const AgentCalibration& c);
AgentCalibration calibration_from_json(const Json& j);

Json to_json(const AgentSpec& a);
AgentSpec agent_from_json(const Json& j);

Json to_json(const ReasoningProcess& p);
ReasoningProcess process_from_json(const Json& j);

Json to_json(const FamilyParams& p);
FamilyParams family_params_from_json(const Json& j);

Json to_json(const Proposer& p);
Proposer proposer_from_json(const Json& j);

Json to_json(const Expectation& e);
Expectation expectation_from_json(const Json& j);

Json to_json(const ScenarioBundle& b);
ScenarioBundle bundle_from_json(const Json& j);

Json to_json(const JudgmentQuery& q);
JudgmentQuery query_from_json(const Json& j);

Json to_json(const SimilarityValue& v);
Json to_json(const SideExtremum& s);
Json to_json(const StrengthVerdict& v);
Json to_json(const ChoiceResult& c);
Json to_json(const EvenSimilarity& e);
Json to_json(const AlphaResult& a);
Json to_json(const CompatibilityResult& c);
Json to_json(const TraceEntry& t);
Json to_json(const ElicitationResult& r);
Json to_json(const SweepTable& t);
Json to_json(const ScenarioReport& r);

}  // namespace credo
