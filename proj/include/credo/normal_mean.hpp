#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "credo/distribution.hpp"

namespace credo {

/// Normal data with known variance and unknown mean mu. `mu` is the latent
/// truth used only for simulation.
struct NormalMeanSetup {
    double mu = 0.0;
    double sigma2 = 1.0;
    int n = 1;
    std::uint64_t seed = 1;
};

struct GeneratedData {
    double gamma = 0.0;  // primary variable, standard normal
    double xbar = 0.0;
    std::vector<double> sample;
};

/// Draws gamma ~ N(0,1), sets xbar = mu + (sigma / sqrt(n)) gamma, then
/// draws n i.i.d. N(mu, sigma2) values and shifts them to have mean xbar.
GeneratedData data_generating_algorithm(const NormalMeanSetup& setup);

/// Same, with gamma given instead of drawn.
GeneratedData data_generating_algorithm(const NormalMeanSetup& setup, double gamma);

/// mu | sigma2, x ~ N(xbar, sigma2 / n).
ContinuousDF fiducial_distribution(double xbar, double sigma2, int n);

enum class PriorKind { diffuse_normal, informative_normal, flat_improper_limit };

std::string to_string(PriorKind k);
PriorKind prior_kind_from_string(const std::string& s);

/// Prior on mu. The flat improper limit has no parameters and is only
/// meaningful as input to conjugate_posterior.
struct PriorSpec {
    PriorKind kind = PriorKind::diffuse_normal;
    double mean = 0.0;
    double tau2 = 100.0;

    static PriorSpec diffuse(double mean, double tau2);
    static PriorSpec informative(double mean, double tau2);
    static PriorSpec flat();

    friend bool operator==(const PriorSpec&, const PriorSpec&) = default;
};

/// Diffuse prior D(mu) used when none is named: N(0, 100).
PriorSpec default_diffuse_prior();

/// The prior itself as a distribution for `space` (diffuse-prior or
/// informative-prior class). The flat limit has no such distribution.
Distribution prior_distribution(const PriorSpec& prior, const std::string& space = "mu");

/// Conjugate update with known variance.
///   diffuse prior     -> "D(mu|x)", class bayesian-posterior
///   informative prior -> "I(mu|x)", class informative-posterior
///   flat limit        -> exactly fiducial_distribution, class fiducial-primary,
///                        approximating the posterior under `link_prior`
Distribution conjugate_posterior(const PriorSpec& prior, double xbar, double sigma2, int n,
                                 const std::string& space = "mu",
                                 const PriorSpec& link_prior = default_diffuse_prior());

/// The fiducial distribution as C(mu|x), linked to D(mu|x) under `link_prior`.
Distribution fiducial_posterior(double xbar, double sigma2, int n, const std::string& space = "mu",
                                const PriorSpec& link_prior = default_diffuse_prior());

}  // namespace credo
