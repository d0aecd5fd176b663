#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace credo {

enum class ProcessKind { direct_evaluation, bayesian, fiducial, custom };

/// A method by which the extremal similarities of a distribution function
/// are assessed. It acts on simulated agents by assigning ambiguity to the
/// event classes it can justify.
///
/// Direct evaluation applies to every class and only overrides the classes
/// listed in its map. Other processes apply only to listed classes.
struct ReasoningProcess {
    ProcessKind kind = ProcessKind::direct_evaluation;
    std::string name = "direct-evaluation";
    std::map<std::string, double> ambiguity;

    [[nodiscard]] bool applies_to(const std::string& event_class) const;
    /// Ambiguity for the class, or nullopt when the agent's own applies.
    [[nodiscard]] std::optional<double> ambiguity_for(const std::string& event_class) const;

    friend bool operator==(const ReasoningProcess&, const ReasoningProcess&) = default;
};

// Calibration constants for the built-in processes. These are model
// settings for simulated agents, not measured quantities.
inline constexpr double kDiffusePriorAmbiguity = 0.9;
inline constexpr double kBayesianPosteriorAmbiguity = 0.85;
inline constexpr double kInformativePosteriorAmbiguity = 0.7;
inline constexpr double kFiducialPrimaryAmbiguity = 0.05;
inline constexpr double kPhysicalAmbiguity = 0.0;

ReasoningProcess direct_evaluation();
ReasoningProcess bayesian_reasoning();
ReasoningProcess fiducial_reasoning();
ReasoningProcess custom_process(std::string name, std::map<std::string, double> ambiguity);

/// Built-in process by name: "direct-evaluation", "bayesian", "fiducial".
ReasoningProcess process_by_name(const std::string& name);

std::string to_string(ProcessKind kind);

}  // namespace credo
