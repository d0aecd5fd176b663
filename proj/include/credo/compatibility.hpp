#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "credo/reference_set.hpp"
#include "credo/similarity.hpp"

namespace credo {

/// Finite stand-in for "all conceivable pairs of events". `context` declares
/// the spaces the battery events live on, for sources that need it.
struct CompatibilityBattery {
    std::vector<std::pair<EventExpr, EventExpr>> pairs;
    std::vector<Fraction> grid;  // empty: use the shared grid of the two sets
    std::vector<SpaceView> context;
};

/// Every pair drawn from: the red and black balls of a known 50/50 urn, the
/// red ball of an urn of unknown composition, and wheel events {W < l} and
/// {W > l} for l at the deciles of the shared grid of r0 and r1 (or every
/// grid point when it has no deciles).
CompatibilityBattery default_battery(const ReferenceSet& r0, const ReferenceSet& r1);

enum class CompatStatus { compatible, incompatible, vacuous };

std::string to_string(CompatStatus s);

struct CompatibilityWitness {
    EventExpr e0;
    EventExpr e1;
    Fraction lambda;
    Ordering under_r0 = Ordering::equal;  // S(e1, R0(l)) vs S(e0, R0(l))
    Ordering under_r1 = Ordering::equal;  // S(e1, R1(l)) vs S(e0, R1(l))
};

struct CompatibilityResult {
    CompatStatus status = CompatStatus::vacuous;
    std::optional<CompatibilityWitness> witness;
    std::vector<Fraction> grid;
    std::size_t checks = 0;
};

/// Compatible iff every battery pair is ordered the same way against R0(l)
/// as against R1(l), for every l in the grid. Stops at the first mismatch.
CompatibilityResult check_compatibility(const ReferenceSet& r0, const ReferenceSet& r1,
                                        const SimilaritySource& source, const CompatibilityBattery& battery);

}  // namespace credo
