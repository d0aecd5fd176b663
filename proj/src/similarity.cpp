#include "credo/similarity.hpp"

#include <cmath>

#include "credo/error.hpp"

namespace credo {

std::string to_string(Ordering o)
{
    switch (o) {
    case Ordering::greater: return "greater";
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::incomparable: return "incomparable";
    }
    return "incomparable";
}

Ordering compare(const SimilarityValue& x, const SimilarityValue& y)
{
    if (x.source_id != y.source_id) return Ordering::incomparable;
    if (x.floor || y.floor) {
        if (x.floor && y.floor) return Ordering::equal;
        return x.floor ? Ordering::less : Ordering::greater;
    }
    if (x.score && y.score) {
        const double d = *x.score - *y.score;
        if (std::abs(d) <= kEqualityTolerance) return Ordering::equal;
        return d > 0 ? Ordering::greater : Ordering::less;
    }
    const auto& origin = x.origin ? x.origin : y.origin;
    if (!origin) return Ordering::incomparable;
    return origin->order(x, y);
}

SimilarityValue SimilaritySource::floor_value(const EventExpr& a, const EventExpr& b) const
{
    SimilarityValue v{id(), a, b, std::nullopt, true, weak_from_this().lock()};
    return v;
}

namespace {

// Sequential tournament: the incumbent is challenged by each member in
// enumeration order and only replaced on a strict win, so ties keep the
// earliest member. Every comparison shares `ref` in second position.
Extremum scan(const SimilaritySource& source, const EventFamily& family, const EventExpr& ref, Ordering wins)
{
    if (family.members.empty()) throw Error(Errc::invalid_parameter, "empty event family");
    Extremum best{family.members.front(), source.judge(family.members.front(), ref), 0};
    for (std::size_t i = 1; i < family.members.size(); ++i) {
        auto v = source.judge(family.members[i], ref);
        const auto o = compare(v, best.value);
        if (o == Ordering::incomparable) {
            throw Error(Errc::judgment_unavailable, "source could not order two members against the reference");
        }
        if (o == wins) best = Extremum{family.members[i], std::move(v), i};
    }
    return best;
}

}  // namespace

Extremum min_similarity(const SimilaritySource& source, const EventFamily& family, const EventExpr& ref)
{
    return scan(source, family, ref, Ordering::less);
}

Extremum max_similarity(const SimilaritySource& source, const EventFamily& family, const EventExpr& ref)
{
    return scan(source, family, ref, Ordering::greater);
}

}  // namespace credo
