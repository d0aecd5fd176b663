#include "credo/normal_mean.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "credo/error.hpp"

namespace credo {

namespace {

void check(double sigma2, int n)
{
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw Error(Errc::invalid_parameter, "sigma2 must be positive");
    if (n < 1) throw Error(Errc::invalid_parameter, "n must be at least 1");
}

// Box-Muller on raw 53-bit uniforms; avoids implementation-defined
// std::normal_distribution so samples match across toolchains.
class NormalDraws {
public:
    explicit NormalDraws(std::uint64_t seed) : engine_(seed) {}

    double next()
    {
        if (spare_) {
            const double z = *spare_;
            spare_.reset();
            return z;
        }
        const double u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    // Uniform on (0, 1].
    double unit() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

Distribution named(std::string id, std::string space, ContinuousDF df, std::string cls)
{
    Distribution d;
    d.id = std::move(id);
    d.space = std::move(space);
    d.law = std::move(df);
    d.event_class = std::move(cls);
    return d;
}

}  // namespace

GeneratedData data_generating_algorithm(const NormalMeanSetup& setup)
{
    NormalDraws draws(setup.seed);
    const double gamma = draws.next();
    return data_generating_algorithm(setup, gamma);
}

GeneratedData data_generating_algorithm(const NormalMeanSetup& setup, double gamma)
{
    check(setup.sigma2, setup.n);
    const double sigma = std::sqrt(setup.sigma2);
    GeneratedData out;
    out.gamma = gamma;
    out.xbar = setup.mu + sigma / std::sqrt(static_cast<double>(setup.n)) * gamma;

    // Step 3: i.i.d. draws conditioned on the sample mean. For the normal
    // location family, shifting a free draw to the required mean is exact.
    NormalDraws draws(setup.seed ^ 0x9e3779b97f4a7c15ULL);
    out.sample.resize(static_cast<std::size_t>(setup.n));
    for (auto& x : out.sample) x = setup.mu + sigma * draws.next();
    const double mean = std::accumulate(out.sample.begin(), out.sample.end(), 0.0) / setup.n;
    for (auto& x : out.sample) x += out.xbar - mean;
    if (setup.n == 1) out.sample.front() = out.xbar;
    return out;
}

ContinuousDF fiducial_distribution(double xbar, double sigma2, int n)
{
    check(sigma2, n);
    if (!std::isfinite(xbar)) throw Error(Errc::invalid_parameter, "xbar must be finite");
    return ContinuousDF::normal(xbar, std::sqrt(sigma2 / n));
}

std::string to_string(PriorKind k)
{
    switch (k) {
    case PriorKind::diffuse_normal: return "diffuse-normal";
    case PriorKind::informative_normal: return "informative-normal";
    case PriorKind::flat_improper_limit: return "flat-improper-limit";
    }
    return "diffuse-normal";
}

PriorKind prior_kind_from_string(const std::string& s)
{
    if (s == "diffuse-normal") return PriorKind::diffuse_normal;
    if (s == "informative-normal") return PriorKind::informative_normal;
    if (s == "flat-improper-limit") return PriorKind::flat_improper_limit;
    throw Error(Errc::parse_error, "unknown prior kind '" + s + "'");
}

PriorSpec PriorSpec::diffuse(double mean, double tau2) { return {PriorKind::diffuse_normal, mean, tau2}; }
PriorSpec PriorSpec::informative(double mean, double tau2) { return {PriorKind::informative_normal, mean, tau2}; }
PriorSpec PriorSpec::flat() { return {PriorKind::flat_improper_limit, 0.0, 0.0}; }

PriorSpec default_diffuse_prior() { return PriorSpec::diffuse(0.0, 100.0); }

Distribution prior_distribution(const PriorSpec& prior, const std::string& space)
{
    if (prior.kind == PriorKind::flat_improper_limit) {
        throw Error(Errc::invalid_parameter, "the flat improper prior is not a distribution");
    }
    if (!(prior.tau2 > 0.0)) throw Error(Errc::invalid_parameter, "tau2 must be positive");
    const bool diffuse = prior.kind == PriorKind::diffuse_normal;
    return named(diffuse ? "D(" + space + ")" : "I(" + space + ")", space,
                 ContinuousDF::normal(prior.mean, std::sqrt(prior.tau2)),
                 diffuse ? "diffuse-prior" : "informative-prior");
}

Distribution conjugate_posterior(const PriorSpec& prior, double xbar, double sigma2, int n, const std::string& space,
                                 const PriorSpec& link_prior)
{
    check(sigma2, n);
    if (prior.kind == PriorKind::flat_improper_limit) {
        if (link_prior.kind == PriorKind::flat_improper_limit) {
            throw Error(Errc::invalid_parameter, "the approximated posterior needs a proper prior");
        }
        auto d = named("C(" + space + "|x)", space, fiducial_distribution(xbar, sigma2, n), "fiducial-primary");
        d.approximates = std::make_shared<Distribution>(conjugate_posterior(link_prior, xbar, sigma2, n, space));
        return d;
    }
    if (!(prior.tau2 > 0.0) || !std::isfinite(prior.tau2)) throw Error(Errc::invalid_parameter, "tau2 must be positive");
    const double data_precision = n / sigma2;
    const double prior_precision = 1.0 / prior.tau2;
    const double precision = data_precision + prior_precision;
    const double mean = (data_precision * xbar + prior_precision * prior.mean) / precision;
    const bool diffuse = prior.kind == PriorKind::diffuse_normal;
    return named(diffuse ? "D(" + space + "|x)" : "I(" + space + "|x)", space,
                 ContinuousDF::normal(mean, std::sqrt(1.0 / precision)),
                 diffuse ? "bayesian-posterior" : "informative-posterior");
}

Distribution fiducial_posterior(double xbar, double sigma2, int n, const std::string& space,
                                const PriorSpec& link_prior)
{
    return conjugate_posterior(PriorSpec::flat(), xbar, sigma2, n, space, link_prior);
}

}  // namespace credo
