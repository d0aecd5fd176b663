#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "credo/agent.hpp"
#include "credo/elicitation.hpp"
#include "credo/reference_set.hpp"
#include "credo/space.hpp"

namespace credo {

struct AgentSpec {
    std::string id;
    std::map<std::string, SpaceBelief> beliefs;
    AgentCalibration calibration;

    [[nodiscard]] std::shared_ptr<SimulatedAgent> make() const;
    friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

struct ElicitationSetup {
    std::string initial;    // distribution id
    std::string target;     // distribution id the agent secretly holds, for checking
    std::string reference;  // reference set id
    Fraction lambda{1, 2};
    Proposer proposer;
    std::string agent;
};

/// One annotated claim. `kind` is one of internal, external, general,
/// choose, even, alpha, compatibility, family-size, identical,
/// sup-distance, near-maximal, sweep-agreement, elicitation.
/// `expected` holds the relation / choice / status / count to match, or
/// "any" to accept every outcome.
struct Expectation {
    std::string kind;
    std::string label;
    std::vector<std::string> subjects;  // distribution or reference-set ids
    std::string reference;
    std::vector<Fraction> lambdas;
    std::vector<std::string> processes_f;
    std::vector<std::string> processes_g;
    std::string agent;  // empty: the bundle's first agent
    std::string expected;
    std::optional<double> bound;
};

struct ScenarioBundle {
    std::string id;
    std::string description;
    std::vector<OutcomeSpace> spaces;
    std::vector<ReferenceSet> reference_sets;
    std::vector<Distribution> distributions;
    std::vector<AgentSpec> agents;
    std::optional<ElicitationSetup> elicitation;
    std::vector<Expectation> expectations;

    [[nodiscard]] const Distribution& distribution(const std::string& id) const;
    [[nodiscard]] const ReferenceSet& reference_set(const std::string& id) const;
    [[nodiscard]] const AgentSpec& agent(const std::string& id) const;  // "" -> first

    /// Throws not_found when an id used anywhere does not resolve.
    void validate() const;
};

std::vector<std::string> scenario_names();

/// Throws not_found for an unknown name.
ScenarioBundle build_scenario(const std::string& name);

/// The normal-mean apparatus for given data: D(mu), D(mu|x), C(mu|x), the
/// flat-limit posterior, the tau2 = 1e8 posterior and an informative
/// posterior I(mu|x).
std::vector<Distribution> normal_mean_distributions(double xbar, double sigma2, int n);

struct RunOptions {
    std::optional<AgentCalibration> calibration;  // applied to every bundle agent
    SourcePtr source;                             // replaces the bundle agents entirely
};

struct ExpectationOutcome {
    std::string label;
    std::string kind;
    std::string expected;
    std::string observed;
    bool passed = false;
    std::vector<std::string> details;  // witnesses and scores, one per line
};

struct ScenarioReport {
    std::string scenario;
    std::vector<ExpectationOutcome> outcomes;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t failures() const;
};

ScenarioReport run_scenario(const ScenarioBundle& bundle, const RunOptions& options = {});

/// Plain-text rendering used by the CLI and replay.
std::string format_report(const ScenarioReport& report);

}  // namespace credo
