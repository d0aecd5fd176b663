#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credo/distribution.hpp"
#include "credo/event.hpp"
#include "credo/fraction.hpp"

namespace credo {

/// Search-space knobs for event families.
struct FamilyParams {
    int m_intervals = 1;  // continuous: unions of at most this many intervals (1..3)
    int q_grid = 20;      // continuous: quantile lattice {0, 1/q, ..., 1}
    int cap = 15;         // discrete: largest support enumerated exhaustively

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

enum class Construction { continuous_grid, discrete_enumeration };

/// An event ∪_{i∈whole} {X=x_i} ∪ (L(b) ∩ {X=x_j}) with at most one
/// fractional coefficient b ∈ (0,1).
struct ScaledAtomEvent {
    std::vector<std::size_t> whole;
    std::optional<std::size_t> fractional;
    Fraction coefficient{0};

    friend bool operator==(const ScaledAtomEvent&, const ScaledAtomEvent&) = default;
    friend auto operator<=>(const ScaledAtomEvent& a, const ScaledAtomEvent& b)
    {
        if (auto c = a.whole <=> b.whole; c != 0) return c;
        if (auto c = a.fractional <=> b.fractional; c != 0) return c;
        if (a.coefficient < b.coefficient) return std::strong_ordering::less;
        if (b.coefficient < a.coefficient) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

/// Union of quantile-level intervals (u_lo, u_hi) ⊂ [0,1].
struct QuantileUnion {
    std::vector<std::pair<Fraction, Fraction>> pieces;
};

/// Events of probability lambda under a distribution function.
struct EventFamily {
    Fraction lambda;
    std::string space;
    Construction construction = Construction::discrete_enumeration;
    FamilyParams params;
    std::vector<EventExpr> members;
    std::vector<ScaledAtomEvent> atoms;       // discrete construction, parallel to members
    std::vector<QuantileUnion> quantiles;     // continuous construction, parallel to members

    [[nodiscard]] std::size_t size() const { return members.size(); }
};

/// Unions of at most m disjoint intervals with quantile-lattice endpoints and
/// total mass lambda; the last endpoint is moved off the lattice when needed.
/// Lattice level 0 maps to -inf and level 1 to +inf.
EventFamily event_family_continuous(const ContinuousDF& f, const std::string& space, const Fraction& lambda,
                                    int m_intervals, int q_grid);

/// Every ScaledAtomEvent of mass lambda. Each member gets its own scaling
/// tag `<tag_prefix>/<index>`.
EventFamily event_family_discrete(const DiscretePMF& f, const std::string& space, const Fraction& lambda,
                                  int cap = 15, const std::string& tag_prefix = "L");

EventFamily event_family(const Distribution& dist, const Fraction& lambda, const FamilyParams& params,
                         const std::string& tag_prefix = "L");

EventExpr materialize(const DiscretePMF& f, const std::string& space, const ScaledAtomEvent& s,
                      const std::string& tag);

}  // namespace credo
