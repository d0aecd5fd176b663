#include "credo/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "credo/error.hpp"

namespace credo {

DiscretePMF::DiscretePMF(std::vector<std::string> labels, std::vector<Fraction> masses)
    : labels_(std::move(labels)), masses_(std::move(masses))
{
    if (labels_.size() != masses_.size()) throw Error(Errc::invalid_parameter, "labels and masses differ in length");
    if (labels_.empty()) throw Error(Errc::invalid_parameter, "empty pmf");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw Error(Errc::invalid_parameter, "duplicate pmf labels");
    Fraction total(0);
    for (const auto& m : masses_) {
        if (m < Fraction(0)) throw Error(Errc::invalid_parameter, "negative mass " + format_fraction(m));
        total += m;
    }
    if (total != Fraction(1)) throw Error(Errc::invalid_parameter, "masses sum to " + format_fraction(total));
}

std::optional<std::size_t> DiscretePMF::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

Fraction DiscretePMF::mass(const std::string& label) const
{
    auto i = index_of(label);
    if (!i) throw Error(Errc::domain_mismatch, "no atom '" + label + "'");
    return masses_[*i];
}

ContinuousDF::ContinuousDF(std::vector<double> knots, std::vector<double> cdf, std::string unit)
    : knots_(std::move(knots)), cdf_(std::move(cdf)), unit_(std::move(unit))
{
    if (knots_.size() != cdf_.size() || knots_.size() < 2) {
        throw Error(Errc::invalid_parameter, "a piecewise-linear CDF needs at least two knots");
    }
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i]) || !std::isfinite(cdf_[i])) throw Error(Errc::invalid_parameter, "non-finite knot");
        if (i > 0 && !(knots_[i] > knots_[i - 1])) throw Error(Errc::invalid_parameter, "knots must increase strictly");
        if (i > 0 && cdf_[i] < cdf_[i - 1]) throw Error(Errc::invalid_parameter, "CDF must be nondecreasing");
    }
    if (cdf_.front() != 0.0 || cdf_.back() != 1.0) throw Error(Errc::invalid_parameter, "CDF must run from 0 to 1");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

ContinuousDF ContinuousDF::normal(double mean, double sd, std::string unit)
{
    if (!(sd > 0.0) || !std::isfinite(mean) || !std::isfinite(sd)) {
        throw Error(Errc::invalid_parameter, "normal needs finite mean and sd > 0");
    }
    constexpr int n = kNormalKnots;
    const double lo = normal_cdf(-kNormalSpan);
    const double hi = normal_cdf(kNormalSpan);
    std::vector<double> knots(n), cdf(n);
    for (int i = 0; i < n; ++i) {
        const double z = -kNormalSpan + 2.0 * kNormalSpan * i / (n - 1);
        knots[i] = mean + sd * z;
        cdf[i] = (normal_cdf(z) - lo) / (hi - lo);
    }
    cdf.front() = 0.0;
    cdf.back() = 1.0;
    // Symmetric discretization: pin the middle knot to exactly one half.
    cdf[n / 2] = 0.5;
    knots[n / 2] = mean;
    ContinuousDF out(std::move(knots), std::move(cdf), std::move(unit));
    out.family_ = NamedFamily{"normal", mean, sd};
    return out;
}

ContinuousDF ContinuousDF::uniform(double lo, double hi, std::string unit)
{
    if (!(lo < hi)) throw Error(Errc::invalid_parameter, "uniform needs lo < hi");
    ContinuousDF out({lo, hi}, {0.0, 1.0}, std::move(unit));
    out.family_ = NamedFamily{"uniform", lo, hi};
    return out;
}

double ContinuousDF::cdf(double t) const
{
    if (std::isnan(t)) throw Error(Errc::invalid_parameter, "cdf of NaN");
    if (t <= knots_.front()) return 0.0;
    if (t >= knots_.back()) return 1.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const auto i = static_cast<std::size_t>(it - knots_.begin());
    const double w = (t - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
    return cdf_[i - 1] + w * (cdf_[i] - cdf_[i - 1]);
}

double ContinuousDF::quantile(double p) const
{
    if (!(p > 0.0 && p < 1.0)) throw Error(Errc::invalid_parameter, "quantile level must lie in (0,1)");
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), p);
    const auto i = static_cast<std::size_t>(it - cdf_.begin());
    if (cdf_[i] == p) {
        // Left-continuous: the first knot reaching p.
        return knots_[i];
    }
    const double w = (p - cdf_[i - 1]) / (cdf_[i] - cdf_[i - 1]);
    return knots_[i - 1] + w * (knots_[i] - knots_[i - 1]);
}

double ContinuousDF::density(double t) const
{
    if (t <= knots_.front() || t >= knots_.back()) return 0.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const auto i = static_cast<std::size_t>(it - knots_.begin());
    return (cdf_[i] - cdf_[i - 1]) / (knots_[i] - knots_[i - 1]);
}

double ContinuousDF::mean() const
{
    double m = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        m += (cdf_[i] - cdf_[i - 1]) * 0.5 * (knots_[i] + knots_[i - 1]);
    }
    return m;
}

double ContinuousDF::variance() const
{
    const double mu = mean();
    double v = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const double a = knots_[i - 1] - mu;
        const double b = knots_[i] - mu;
        // E[(X-mu)^2] for X uniform on the segment.
        v += (cdf_[i] - cdf_[i - 1]) * (a * a + a * b + b * b) / 3.0;
    }
    return v;
}

bool operator==(const Distribution& a, const Distribution& b)
{
    if (a.id != b.id || a.space != b.space || a.event_class != b.event_class || !(a.law == b.law)) return false;
    if (static_cast<bool>(a.approximates) != static_cast<bool>(b.approximates)) return false;
    return !a.approximates || *a.approximates == *b.approximates;
}

double sup_distance(const ContinuousDF& f, const ContinuousDF& g)
{
    double worst = 0.0;
    for (double t : f.knots()) worst = std::max(worst, std::abs(f.cdf(t) - g.cdf(t)));
    for (double t : g.knots()) worst = std::max(worst, std::abs(f.cdf(t) - g.cdf(t)));
    return worst;
}

double total_variation(const DiscretePMF& f, const DiscretePMF& g)
{
    if (f.labels() != g.labels()) throw Error(Errc::domain_mismatch, "pmfs over different atoms");
    Fraction sum(0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto d = f.masses()[i] - g.masses()[i];
        sum += d < Fraction(0) ? -d : d;
    }
    return to_double(sum) / 2.0;
}

}  // namespace credo
