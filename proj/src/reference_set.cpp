#include "credo/reference_set.hpp"

#include <algorithm>

#include "credo/error.hpp"

namespace credo {

ReferenceSet::ReferenceSet(std::string id, OutcomeSpace base, double ambiguity)
    : id_(std::move(id)), base_(std::move(base)), ambiguity_(ambiguity)
{
}

ReferenceSet ReferenceSet::discrete(std::string id, int k, double ambiguity)
{
    if (k < 2) throw Error(Errc::invalid_parameter, "a discrete reference set needs k >= 2, got " + std::to_string(k));
    if (ambiguity < 0.0 || ambiguity > 1.0) throw Error(Errc::invalid_parameter, "ambiguity outside [0,1]");
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) labels.push_back("O" + std::to_string(i));
    auto provenance = ambiguity == 0.0 ? Provenance::physical : Provenance::subjective;
    auto space = OutcomeSpace::discrete(id, std::move(labels), provenance);
    return ReferenceSet(std::move(id), std::move(space), ambiguity);
}

ReferenceSet ReferenceSet::continuous(std::string id, double ambiguity)
{
    if (ambiguity < 0.0 || ambiguity > 1.0) throw Error(Errc::invalid_parameter, "ambiguity outside [0,1]");
    auto provenance = ambiguity == 0.0 ? Provenance::physical : Provenance::subjective;
    auto space = OutcomeSpace::continuous_unit(id, provenance);
    return ReferenceSet(std::move(id), std::move(space), ambiguity);
}

bool ReferenceSet::contains(const Fraction& lambda) const
{
    if (lambda <= Fraction(0) || lambda >= Fraction(1)) return false;
    if (!is_discrete()) return true;
    return (lambda * Fraction(k())).denominator() == 1;
}

EventExpr ReferenceSet::event(const Fraction& lambda) const
{
    if (!contains(lambda)) {
        throw Error(Errc::resolution_not_available,
                    "lambda = " + format_fraction(lambda) + " is not in the resolution set of " + id_);
    }
    if (!is_discrete()) return EventExpr::interval(base_.id, 0.0, to_double(lambda));

    const auto count = (lambda * Fraction(k())).numerator();
    if (count == 1) return EventExpr::atom(base_.id, base_.labels.front());
    std::vector<EventExpr> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) atoms.push_back(EventExpr::atom(base_.id, base_.labels[i]));
    return EventExpr::any_of(std::move(atoms));
}

std::vector<Fraction> ReferenceSet::grid() const
{
    std::vector<Fraction> out;
    if (!is_discrete()) return out;
    for (int i = 1; i < k(); ++i) out.emplace_back(i, k());
    return out;
}

ReferenceSet build_discrete_reference_set(int k, double ambiguity)
{
    auto prefix = ambiguity > 0.0 ? std::string("unknown-urn-") : std::string("urn-");
    return ReferenceSet::discrete(prefix + std::to_string(k), k, ambiguity);
}

ReferenceSet build_continuous_reference_set(double ambiguity)
{
    return ReferenceSet::continuous(ambiguity > 0.0 ? "ambiguous-wheel" : "wheel", ambiguity);
}

EventExpr reference_event(const ReferenceSet& r, const Fraction& lambda) { return r.event(lambda); }

std::vector<Fraction> shared_grid(const ReferenceSet& r0, const ReferenceSet& r1)
{
    if (!r0.is_discrete() && !r1.is_discrete()) {
        std::vector<Fraction> deciles;
        for (int i = 1; i < 10; ++i) deciles.emplace_back(i, 10);
        return deciles;
    }
    const auto& finite = r0.is_discrete() ? r0 : r1;
    const auto& other = r0.is_discrete() ? r1 : r0;
    std::vector<Fraction> out;
    for (const auto& l : finite.grid()) {
        if (other.contains(l)) out.push_back(l);
    }
    return out;
}

ReferenceSet parse_reference_spec(const std::string& spec)
{
    if (spec == "wheel") return build_continuous_reference_set();
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw Error(Errc::parse_error, "unknown reference set '" + spec + "'");
    auto kind = spec.substr(0, colon);
    int k = 0;
    try {
        k = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw Error(Errc::parse_error, "bad urn size in '" + spec + "'");
    }
    if (kind == "urn") return build_discrete_reference_set(k, 0.0);
    if (kind == "unknown-urn") return build_discrete_reference_set(k, 1.0);
    throw Error(Errc::parse_error, "unknown reference set '" + spec + "'");
}

}  // namespace credo
