#include "credo/process.hpp"

#include "credo/error.hpp"

namespace credo {

bool ReasoningProcess::applies_to(const std::string& event_class) const
{
    return kind == ProcessKind::direct_evaluation || ambiguity.count(event_class) > 0;
}

std::optional<double> ReasoningProcess::ambiguity_for(const std::string& event_class) const
{
    auto it = ambiguity.find(event_class);
    if (it == ambiguity.end()) return std::nullopt;
    return it->second;
}

ReasoningProcess direct_evaluation()
{
    return {ProcessKind::direct_evaluation, "direct-evaluation", {{"diffuse-prior", kDiffusePriorAmbiguity}}};
}

ReasoningProcess bayesian_reasoning()
{
    return {ProcessKind::bayesian,
            "bayesian",
            {{"bayesian-posterior", kBayesianPosteriorAmbiguity},
             {"informative-posterior", kInformativePosteriorAmbiguity},
             {"physical", kPhysicalAmbiguity}}};
}

ReasoningProcess fiducial_reasoning()
{
    return {ProcessKind::fiducial, "fiducial",
            {{"fiducial-primary", kFiducialPrimaryAmbiguity}, {"physical", kPhysicalAmbiguity}}};
}

ReasoningProcess custom_process(std::string name, std::map<std::string, double> ambiguity)
{
    for (const auto& [cls, a] : ambiguity) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw Error(Errc::invalid_parameter, "ambiguity for class '" + cls + "' must lie in [0,1]");
        }
    }
    return {ProcessKind::custom, std::move(name), std::move(ambiguity)};
}

ReasoningProcess process_by_name(const std::string& name)
{
    if (name == "direct-evaluation" || name == "direct") return direct_evaluation();
    if (name == "bayesian") return bayesian_reasoning();
    if (name == "fiducial") return fiducial_reasoning();
    throw Error(Errc::not_found, "unknown reasoning process '" + name + "'");
}

std::string to_string(ProcessKind kind)
{
    switch (kind) {
    case ProcessKind::direct_evaluation: return "direct-evaluation";
    case ProcessKind::bayesian: return "bayesian";
    case ProcessKind::fiducial: return "fiducial";
    case ProcessKind::custom: return "custom";
    }
    return "custom";
}

}  // namespace credo
