#include "credo/agent.hpp"

#include <algorithm>
#include <cmath>

#include "credo/error.hpp"
#include "credo/probability.hpp"

namespace credo {

std::string to_string(ScoreTransform t)
{
    switch (t) {
    case ScoreTransform::identity: return "identity";
    case ScoreTransform::square: return "square";
    case ScoreTransform::sqrt: return "sqrt";
    case ScoreTransform::exp: return "exp";
    }
    return "identity";
}

ScoreTransform score_transform_from_string(const std::string& s)
{
    if (s == "identity") return ScoreTransform::identity;
    if (s == "square") return ScoreTransform::square;
    if (s == "sqrt") return ScoreTransform::sqrt;
    if (s == "exp") return ScoreTransform::exp;
    throw Error(Errc::invalid_parameter, "unknown score transform '" + s + "'");
}

double apply_transform(ScoreTransform t, double raw)
{
    switch (t) {
    case ScoreTransform::identity: return raw;
    case ScoreTransform::square: return raw * raw;
    case ScoreTransform::sqrt: return std::sqrt(raw);
    case ScoreTransform::exp: return std::exp(raw);
    }
    return raw;
}

SimulatedAgent::SimulatedAgent(std::string id, std::map<std::string, SpaceBelief> beliefs,
                               AgentCalibration calibration)
    : id_(std::move(id)), beliefs_(std::move(beliefs)), calibration_(calibration)
{
    if (!(calibration_.w1 >= 0) || !(calibration_.w2 >= 0)) {
        throw Error(Errc::invalid_parameter, "agent weights must be nonnegative");
    }
    auto in_unit = [](double a) { return a >= 0.0 && a <= 1.0; };
    if (!in_unit(calibration_.default_ambiguity)) throw Error(Errc::invalid_parameter, "ambiguity must lie in [0,1]");
    for (const auto& [space, b] : beliefs_) {
        if (!in_unit(b.ambiguity)) {
            throw Error(Errc::invalid_parameter, "ambiguity for space '" + space + "' must lie in [0,1]");
        }
    }
}

double SimulatedAgent::probability(const EventExpr& e) const
{
    return credo::probability(e, [this](const std::string& space) -> const Law* {
        auto it = beliefs_.find(space);
        if (it == beliefs_.end()) {
            throw Error(Errc::domain_mismatch, "agent '" + id_ + "' has no belief about space '" + space + "'");
        }
        if (!it->second.latent) {
            throw Error(Errc::domain_mismatch,
                        "agent '" + id_ + "' holds no law for space '" + space + "' and none is under evaluation");
        }
        return &*it->second.latent;
    });
}

double SimulatedAgent::ambiguity(const EventExpr& e) const
{
    if (auto m = match_scaling_mixture(e)) {
        const double a = to_double(m->alpha);
        return (1.0 - a) * ambiguity(m->weak) + a * ambiguity(m->strong);
    }
    switch (e.kind()) {
    case EventExpr::Kind::never:
    case EventExpr::Kind::always:
    case EventExpr::Kind::scaling:
        return 0.0;
    case EventExpr::Kind::atom:
    case EventExpr::Kind::interval: {
        auto it = beliefs_.find(e.space());
        if (it == beliefs_.end()) {
            throw Error(Errc::domain_mismatch, "agent '" + id_ + "' has no belief about space '" + e.space() + "'");
        }
        return it->second.ambiguity;
    }
    default: {
        double out = 0.0;
        for (const auto& c : e.children()) out = std::max(out, ambiguity(c));
        return out;
    }
    }
}

double SimulatedAgent::raw_score(const EventExpr& a, const EventExpr& b) const
{
    const double s = 1.0 - calibration_.w1 * std::abs(probability(a) - probability(b)) -
                     calibration_.w2 * std::max(ambiguity(a), ambiguity(b));
    return std::max(0.0, s);
}

double SimulatedAgent::score(const EventExpr& a, const EventExpr& b) const
{
    return apply_transform(calibration_.transform, raw_score(a, b));
}

SimilarityValue SimulatedAgent::judge(const EventExpr& a, const EventExpr& b) const
{
    return SimilarityValue{id_, a, b, score(a, b), false, shared_from_this()};
}

Ordering SimulatedAgent::order(const SimilarityValue& x, const SimilarityValue& y) const
{
    if (!x.score || !y.score) return Ordering::incomparable;
    return compare(x, y);
}

SourcePtr SimulatedAgent::under(std::span<const SpaceView> views) const
{
    auto beliefs = beliefs_;
    for (const auto& v : views) {
        auto [it, inserted] = beliefs.try_emplace(v.space);
        auto& b = it->second;
        if (inserted) b.ambiguity = v.fallback_ambiguity.value_or(calibration_.default_ambiguity);
        if (!b.latent && v.law) b.latent = v.law;
        if (v.ambiguity) b.ambiguity = *v.ambiguity;
    }
    return std::make_shared<SimulatedAgent>(id_, std::move(beliefs), calibration_);
}

std::shared_ptr<SimulatedAgent> SimulatedAgent::recalibrated(const AgentCalibration& c) const
{
    return std::make_shared<SimulatedAgent>(id_, beliefs_, c);
}

Law reference_law(const ReferenceSet& r)
{
    if (!r.is_discrete()) return ContinuousDF::uniform(0.0, 1.0);
    const auto k = r.k();
    return DiscretePMF(r.base().labels, std::vector<Fraction>(static_cast<std::size_t>(k), Fraction(1, k)));
}

SpaceView reference_view(const ReferenceSet& r)
{
    return SpaceView{r.base().id, reference_law(r), std::nullopt, r.ambiguity()};
}

}  // namespace credo
