#pragma once

#include <optional>
#include <string>
#include <vector>

namespace credo {

enum class SpaceKind { discrete, continuous_unit, continuous_line };

/// Whether a space is the outcome of a well-understood physical experiment
/// (urn draw, wheel spin, carefully built generator) or a matter of opinion.
/// Declared by whoever builds the scenario; never inferred.
enum class Provenance { physical, subjective };

struct OutcomeSpace {
    std::string id;
    SpaceKind kind = SpaceKind::discrete;
    std::vector<std::string> labels;  // discrete only
    std::string unit;                 // continuous-line only
    Provenance provenance = Provenance::subjective;

    static OutcomeSpace discrete(std::string id, std::vector<std::string> labels,
                                 Provenance provenance = Provenance::subjective);
    static OutcomeSpace continuous_unit(std::string id, Provenance provenance = Provenance::physical);
    static OutcomeSpace continuous_line(std::string id, std::string unit,
                                        Provenance provenance = Provenance::subjective);

    [[nodiscard]] bool is_discrete() const { return kind == SpaceKind::discrete; }
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const;

    /// Support bounds; the unit space is (0,1), a line is the whole real axis.
    [[nodiscard]] double lower() const;
    [[nodiscard]] double upper() const;

    friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;
};

std::string to_string(SpaceKind kind);
std::string to_string(Provenance provenance);

}  // namespace credo
