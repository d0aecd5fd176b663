#pragma once

#include <memory>
#include <string>

#include "credo/session.hpp"

namespace credo {

/// Where requests get their ids resolved and, for interactive requests,
/// their judgments. In replay mode interactive requests are answered from
/// the log alone.
struct ExecutionContext {
    Catalog* catalog = nullptr;
    std::shared_ptr<JudgmentLog> log = std::make_shared<JudgmentLog>();
    Responder responder;
    bool replay = false;
};

/// `request` has every default filled in, so that executing it again under
/// the same catalog reproduces `result` exactly.
struct Execution {
    Json request;
    Json result;
    bool passed = true;  // false only for scenario runs with failed expectations
    std::string text;    // rendering for terminals
};

/// Request objects carry "op" (scenario, compare, choose, even, alpha,
/// compat, sweep, elicit) and op-specific fields; see README.
Execution execute(const Json& request, ExecutionContext& ctx);

/// The parts of an elicit request, for callers that drive an Elicitor
/// step by step.
struct ElicitPlan {
    Json request;
    Distribution initial;
    Proposer proposer;
    Fraction lambda;
    ReferenceSet reference = ReferenceSet::continuous("wheel");
    SourcePtr source;
    FamilyParams params;
};

ElicitPlan plan_elicit(const Json& request, ExecutionContext& ctx);

/// Re-executes every recorded request of a session. Returns the report and
/// whether every result matched the recorded one byte for byte.
struct ReplayReport {
    std::string text;
    std::size_t entries = 0;
    std::size_t mismatches = 0;
    std::size_t skipped = 0;  // open elicitation runs
};

ReplayReport replay_session(const Session& session);

/// Ids of the interactive source used by executed requests.
inline constexpr const char* kInteractiveSourceId = "interactive";

}  // namespace credo
