#include "credo/compatibility.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "credo/agent.hpp"
#include "credo/error.hpp"

namespace credo {

std::string to_string(CompatStatus s)
{
    switch (s) {
    case CompatStatus::compatible: return "compatible";
    case CompatStatus::incompatible: return "incompatible";
    case CompatStatus::vacuous: return "vacuous";
    }
    return "vacuous";
}

namespace {

// Wheel events at every grid point would make the battery quadratic in the
// grid size; deciles are used whenever the grid contains them.
std::vector<Fraction> battery_wheel_points(const std::vector<Fraction>& grid)
{
    std::vector<Fraction> deciles;
    for (const auto& l : grid) {
        if ((l * Fraction(10)).denominator() == 1) deciles.push_back(l);
    }
    return deciles.empty() ? grid : deciles;
}

}  // namespace

CompatibilityBattery default_battery(const ReferenceSet& r0, const ReferenceSet& r1)
{
    const std::string known = "battery-urn";
    const std::string unknown = "battery-unknown-urn";
    const std::string wheel = "battery-wheel";
    const DiscretePMF half({"red", "black"}, {Fraction(1, 2), Fraction(1, 2)});

    CompatibilityBattery b;
    b.grid = shared_grid(r0, r1);
    b.context = {
        SpaceView{known, Law{half}, std::nullopt, 0.0},
        SpaceView{unknown, Law{half}, std::nullopt, 1.0},
        SpaceView{wheel, Law{ContinuousDF::uniform(0.0, 1.0)}, std::nullopt, 0.0},
    };

    std::vector<EventExpr> pool{
        EventExpr::atom(known, "red"),
        EventExpr::atom(known, "black"),
        EventExpr::atom(unknown, "red"),
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (const auto& l : battery_wheel_points(b.grid)) {
        pool.push_back(EventExpr::interval(wheel, -inf, to_double(l)));
        pool.push_back(EventExpr::interval(wheel, to_double(l), inf));
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) b.pairs.emplace_back(pool[i], pool[j]);
    }
    return b;
}

CompatibilityResult check_compatibility(const ReferenceSet& r0, const ReferenceSet& r1,
                                        const SimilaritySource& source, const CompatibilityBattery& battery)
{
    CompatibilityResult out;
    out.grid = battery.grid.empty() ? shared_grid(r0, r1) : battery.grid;
    if (out.grid.empty()) return out;
    for (const auto& l : out.grid) {
        if (!r0.contains(l) || !r1.contains(l)) {
            throw Error(Errc::invalid_parameter,
                        "battery resolution " + format_fraction(l) + " is not shared by " + r0.id() + " and " + r1.id());
        }
    }
    if (battery.pairs.empty()) throw Error(Errc::invalid_parameter, "empty compatibility battery");

    auto views = battery.context;
    views.push_back(reference_view(r0));
    views.push_back(reference_view(r1));
    const auto judge = source.under(views);

    out.status = CompatStatus::compatible;
    for (const auto& l : out.grid) {
        const auto ref0 = r0.event(l);
        const auto ref1 = r1.event(l);
        // Each battery event is judged once per reference event.
        std::map<std::string, std::pair<SimilarityValue, SimilarityValue>> values;
        auto value = [&](const EventExpr& e) -> const std::pair<SimilarityValue, SimilarityValue>& {
            auto it = values.find(e.key());
            if (it == values.end()) {
                it = values.emplace(e.key(), std::pair{judge->judge(e, ref0), judge->judge(e, ref1)}).first;
            }
            return it->second;
        };
        for (const auto& [e0, e1] : battery.pairs) {
            const auto& v0 = value(e0);
            const auto& v1 = value(e1);
            const auto o0 = compare(v1.first, v0.first);
            const auto o1 = compare(v1.second, v0.second);
            ++out.checks;
            if (o0 == Ordering::incomparable || o1 == Ordering::incomparable) {
                throw Error(Errc::judgment_unavailable, "source could not order a battery pair");
            }
            if (o0 != o1) {
                out.status = CompatStatus::incompatible;
                out.witness = CompatibilityWitness{e0, e1, l, o0, o1};
                return out;
            }
        }
    }
    return out;
}

}  // namespace credo
