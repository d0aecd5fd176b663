#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "credo/fraction.hpp"

namespace credo {

/// Probability mass function over labelled atoms with exact rational masses.
class DiscretePMF {
public:
    DiscretePMF() = default;
    /// Masses must be nonnegative and sum to exactly one; labels distinct.
    DiscretePMF(std::vector<std::string> labels, std::vector<Fraction> masses);

    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::vector<Fraction>& masses() const { return masses_; }
    [[nodiscard]] std::size_t size() const { return labels_.size(); }
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const;
    [[nodiscard]] Fraction mass(const std::string& label) const;

    friend bool operator==(const DiscretePMF&, const DiscretePMF&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<Fraction> masses_;
};

/// Named parametric origin of a discretized continuous law, kept so that
/// session files can store "normal(mean, sd)" instead of 2001 knots.
struct NamedFamily {
    std::string name;  // "normal" or "uniform"
    double a = 0.0;
    double b = 0.0;
    friend bool operator==(const NamedFamily&, const NamedFamily&) = default;
};

/// One-dimensional law stored as a piecewise-linear CDF on strictly
/// increasing knots with values 0 = c_0 <= ... <= c_m = 1. The density is
/// piecewise constant.
class ContinuousDF {
public:
    ContinuousDF() = default;
    ContinuousDF(std::vector<double> knots, std::vector<double> cdf, std::string unit = {});

    /// 2001 knots spanning mean ± 8 sd.
    static ContinuousDF normal(double mean, double sd, std::string unit = {});
    static ContinuousDF uniform(double lo, double hi, std::string unit = {});

    static constexpr int kNormalKnots = 2001;
    static constexpr double kNormalSpan = 8.0;

    [[nodiscard]] double cdf(double t) const;
    /// Left-continuous inverse: inf{t : F(t) >= p}. Requires 0 < p < 1.
    [[nodiscard]] double quantile(double p) const;
    [[nodiscard]] double density(double t) const;
    [[nodiscard]] double mass(double lo, double hi) const { return cdf(hi) - cdf(lo); }

    [[nodiscard]] const std::vector<double>& knots() const { return knots_; }
    [[nodiscard]] const std::vector<double>& cdf_values() const { return cdf_; }
    [[nodiscard]] const std::string& unit() const { return unit_; }
    [[nodiscard]] const std::optional<NamedFamily>& family() const { return family_; }

    [[nodiscard]] double mean() const;
    [[nodiscard]] double variance() const;

    friend bool operator==(const ContinuousDF&, const ContinuousDF&) = default;

private:
    std::vector<double> knots_;
    std::vector<double> cdf_;
    std::string unit_;
    std::optional<NamedFamily> family_;
};

using Law = std::variant<DiscretePMF, ContinuousDF>;

inline bool is_discrete(const Law& law) { return std::holds_alternative<DiscretePMF>(law); }

/// A proposed or derived distribution function for the variable `space`.
///
/// `event_class` names how the function came about ("physical",
/// "subjective", "diffuse-prior", "bayesian-posterior", ...); reasoning
/// processes assign ambiguity by class. `approximates` links a function used
/// only as an approximation to the one it approximates, whose external
/// strength it inherits.
struct Distribution {
    std::string id;
    std::string space;
    Law law;
    std::string event_class = "subjective";
    std::shared_ptr<const Distribution> approximates;

    [[nodiscard]] bool is_discrete() const { return credo::is_discrete(law); }
    [[nodiscard]] const DiscretePMF& pmf() const { return std::get<DiscretePMF>(law); }
    [[nodiscard]] const ContinuousDF& df() const { return std::get<ContinuousDF>(law); }
};

bool operator==(const Distribution& a, const Distribution& b);

/// max |F(t) - G(t)|; exact for piecewise-linear CDFs (attained at a knot).
double sup_distance(const ContinuousDF& f, const ContinuousDF& g);

/// Total-variation distance between two pmfs over the same labels.
double total_variation(const DiscretePMF& f, const DiscretePMF& g);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace credo
