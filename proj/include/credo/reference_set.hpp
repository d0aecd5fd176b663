#pragma once

#include <string>
#include <vector>

#include "credo/event.hpp"
#include "credo/fraction.hpp"
#include "credo/space.hpp"

namespace credo {

/// Family of benchmark events R(lambda).
///
/// Discrete sets are an urn of k distinctly labelled balls O1..Ok with
/// Lambda = {1/k, ..., (k-1)/k} and R(i/k) = O1 ∪ ... ∪ Oi. Continuous sets
/// are a wheel spin V on (0,1) with Lambda = (0,1) and R(lambda) = {V < lambda}.
/// `ambiguity` is 0 for a urn of known composition or a wheel, up to 1 for an
/// urn whose composition is entirely unknown.
class ReferenceSet {
public:
    static ReferenceSet discrete(std::string id, int k, double ambiguity = 0.0);
    static ReferenceSet continuous(std::string id, double ambiguity = 0.0);

    [[nodiscard]] const std::string& id() const { return id_; }
    [[nodiscard]] const OutcomeSpace& base() const { return base_; }
    [[nodiscard]] bool is_discrete() const { return base_.is_discrete(); }
    [[nodiscard]] int k() const { return static_cast<int>(base_.labels.size()); }
    [[nodiscard]] double ambiguity() const { return ambiguity_; }

    /// Exact membership lambda ∈ Lambda.
    [[nodiscard]] bool contains(const Fraction& lambda) const;

    /// R(lambda); throws resolution_not_available when lambda ∉ Lambda.
    [[nodiscard]] EventExpr event(const Fraction& lambda) const;

    /// The finite grid of a discrete set; empty for a continuous set.
    [[nodiscard]] std::vector<Fraction> grid() const;

    friend bool operator==(const ReferenceSet&, const ReferenceSet&) = default;

private:
    ReferenceSet(std::string id, OutcomeSpace base, double ambiguity);

    std::string id_;
    OutcomeSpace base_;
    double ambiguity_ = 0.0;
};

ReferenceSet build_discrete_reference_set(int k, double ambiguity = 0.0);
ReferenceSet build_continuous_reference_set(double ambiguity = 0.0);
EventExpr reference_event(const ReferenceSet& r, const Fraction& lambda);

/// Lambda0 ∩ Lambda1. Two continuous sets share all of (0,1); that case
/// returns the decile grid {1/10, ..., 9/10}.
std::vector<Fraction> shared_grid(const ReferenceSet& r0, const ReferenceSet& r1);

/// Parses "urn:K", "unknown-urn:K" and "wheel".
ReferenceSet parse_reference_spec(const std::string& spec);

}  // namespace credo
