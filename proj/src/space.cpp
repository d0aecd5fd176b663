#include "credo/space.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "credo/error.hpp"

namespace credo {

OutcomeSpace OutcomeSpace::discrete(std::string id, std::vector<std::string> labels, Provenance provenance)
{
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw Error(Errc::invalid_parameter, "duplicate labels in space " + id);
    if (labels.empty()) throw Error(Errc::invalid_parameter, "discrete space " + id + " has no labels");
    return OutcomeSpace{std::move(id), SpaceKind::discrete, std::move(labels), {}, provenance};
}

OutcomeSpace OutcomeSpace::continuous_unit(std::string id, Provenance provenance)
{
    return OutcomeSpace{std::move(id), SpaceKind::continuous_unit, {}, {}, provenance};
}

OutcomeSpace OutcomeSpace::continuous_line(std::string id, std::string unit, Provenance provenance)
{
    return OutcomeSpace{std::move(id), SpaceKind::continuous_line, {}, std::move(unit), provenance};
}

std::optional<std::size_t> OutcomeSpace::index_of(const std::string& label) const
{
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

double OutcomeSpace::lower() const
{
    return kind == SpaceKind::continuous_unit ? 0.0 : -std::numeric_limits<double>::infinity();
}

double OutcomeSpace::upper() const
{
    return kind == SpaceKind::continuous_unit ? 1.0 : std::numeric_limits<double>::infinity();
}

std::string to_string(SpaceKind kind)
{
    switch (kind) {
    case SpaceKind::discrete: return "discrete";
    case SpaceKind::continuous_unit: return "continuous-unit";
    case SpaceKind::continuous_line: return "continuous-line";
    }
    return "discrete";
}

std::string to_string(Provenance provenance)
{
    return provenance == Provenance::physical ? "well-understood-physical" : "subjective";
}

}  // namespace credo
