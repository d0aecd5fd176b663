#pragma once

#include <map>
#include <optional>
#include <string>

#include "credo/reference_set.hpp"
#include "credo/similarity.hpp"

namespace credo {

/// What a simulated agent believes about one variable.
struct SpaceBelief {
    std::optional<Law> latent;  // nullopt: adopts whatever distribution is being evaluated
    double ambiguity = 0.0;

    friend bool operator==(const SpaceBelief&, const SpaceBelief&) = default;
};

/// Strictly increasing maps applied to raw scores. Verdicts must not
/// depend on the choice.
enum class ScoreTransform { identity, square, sqrt, exp };

std::string to_string(ScoreTransform t);
ScoreTransform score_transform_from_string(const std::string& s);

struct AgentCalibration {
    double w1 = 1.0;  // probability discrepancy weight
    double w2 = 0.5;  // ambiguity penalty weight
    ScoreTransform transform = ScoreTransform::identity;
    double default_ambiguity = 0.0;

    friend bool operator==(const AgentCalibration&, const AgentCalibration&) = default;
};

/// Parametric judge:
///   score(A,B) = max(0, 1 - w1 |p(A) - p(B)| - w2 max(amb(A), amb(B)))
/// with p computed from the latent laws (scaling tags are independent
/// uniforms) and amb(E) the largest ambiguity among E's leaves. A two-branch
/// scaling mixture (A ∩ L(a)^c) ∪ (C ∩ L(a)) instead gets the weighted
/// ambiguity (1-a) amb(A) + a amb(C), which keeps mixture scores continuous
/// and monotone in a.
class SimulatedAgent : public SimilaritySource {
public:
    SimulatedAgent(std::string id, std::map<std::string, SpaceBelief> beliefs, AgentCalibration calibration = {});

    [[nodiscard]] std::string id() const override { return id_; }
    [[nodiscard]] SimilarityValue judge(const EventExpr& a, const EventExpr& b) const override;
    [[nodiscard]] Ordering order(const SimilarityValue& x, const SimilarityValue& y) const override;
    [[nodiscard]] bool totally_comparable() const override { return true; }
    [[nodiscard]] SourcePtr under(std::span<const SpaceView> views) const override;

    [[nodiscard]] double probability(const EventExpr& e) const;
    [[nodiscard]] double ambiguity(const EventExpr& e) const;
    [[nodiscard]] double raw_score(const EventExpr& a, const EventExpr& b) const;
    [[nodiscard]] double score(const EventExpr& a, const EventExpr& b) const;

    [[nodiscard]] const std::map<std::string, SpaceBelief>& beliefs() const { return beliefs_; }
    [[nodiscard]] const AgentCalibration& calibration() const { return calibration_; }

    /// Copy with a different calibration (same id, same beliefs).
    [[nodiscard]] std::shared_ptr<SimulatedAgent> recalibrated(const AgentCalibration& c) const;

private:
    std::string id_;
    std::map<std::string, SpaceBelief> beliefs_;
    AgentCalibration calibration_;
};

double apply_transform(ScoreTransform t, double raw);

/// The law a reference set's outcome space follows: uniform over the k balls
/// or uniform on (0,1).
Law reference_law(const ReferenceSet& r);

/// View that introduces the reference set's space to a source which has not
/// declared a belief about it.
SpaceView reference_view(const ReferenceSet& r);

}  // namespace credo
