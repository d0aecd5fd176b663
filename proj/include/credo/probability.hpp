#pragma once

#include <functional>
#include <string>

#include "credo/distribution.hpp"
#include "credo/event.hpp"

namespace credo {

/// Law of the variable named by a space id, or nullptr if unknown.
using LawLookup = std::function<const Law*(const std::string& space)>;

/// Probability of an event when every referenced space is independent with
/// the law given by `lookup` and every scaling tag is an independent uniform
/// spinner. Computed by enumerating the joint cells induced by the event's
/// own breakpoints, so it is exact up to floating-point summation.
/// Throws domain_mismatch for a space the lookup does not know.
double probability(const EventExpr& e, const LawLookup& lookup);

/// Exact version; every referenced space must be discrete.
Fraction probability_exact(const EventExpr& e, const LawLookup& lookup);

/// Probability of `a` under `dist`, which must be the only space `a` uses
/// besides scaling events.
double probability_of(const Distribution& dist, const EventExpr& a);
Fraction exact_probability_of(const Distribution& dist, const EventExpr& a);

}  // namespace credo
