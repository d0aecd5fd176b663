#include <gtest/gtest.h>

#include <random>

#include "credo/agent.hpp"
#include "credo/error.hpp"
#include "credo/serialize.hpp"
#include "credo/strength.hpp"

using namespace credo;

namespace {

std::vector<Fraction> random_masses(std::mt19937& rng, std::size_t n, int denominator)
{
    // Each atom gets at least 1/denominator so every label is in the support.
    std::vector<int> parts(n, 1);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int left = denominator - static_cast<int>(n); left > 0; --left) ++parts[pick(rng)];
    std::vector<Fraction> out;
    for (int p : parts) out.emplace_back(p, denominator);
    return out;
}

const std::vector<std::string> kLabels{"a", "b", "c", "d"};

Distribution pmf_dist(std::string id, std::string space, std::vector<Fraction> masses, std::string cls = "subjective")
{
    std::vector<std::string> labels(kLabels.begin(), kLabels.begin() + static_cast<long>(masses.size()));
    return Distribution{std::move(id), std::move(space), DiscretePMF(labels, std::move(masses)), std::move(cls), nullptr};
}

Distribution bernoulli(std::string id, std::string space, Fraction p)
{
    return Distribution{std::move(id), std::move(space), DiscretePMF({"red", "black"}, {p, 1 - p}), "subjective",
                        nullptr};
}

Json without_kind(const StrengthVerdict& v)
{
    auto j = to_json(v);
    j.erase("kind");
    return j;
}

struct Fixture {
    std::shared_ptr<SimulatedAgent> agent;
    Distribution f, g;
    Fraction lambda;
};

Fixture random_fixture(std::mt19937& rng, int i)
{
    std::uniform_int_distribution<int> lam(1, 3);
    if (i % 4 == 3) {
        // Continuous pair against a latent normal.
        std::uniform_real_distribution<double> mean(-1, 1), sd(0.5, 2);
        auto agent = std::make_shared<SimulatedAgent>(
            "agent", std::map<std::string, SpaceBelief>{{"y", {Law{ContinuousDF::normal(0, 1)}, 0.3}}});
        return {agent, Distribution{"F", "y", ContinuousDF::normal(mean(rng), sd(rng)), "subjective", nullptr},
                Distribution{"G", "y", ContinuousDF::normal(mean(rng), sd(rng)), "subjective", nullptr},
                Fraction(lam(rng), 4)};
    }
    const auto latent = random_masses(rng, 4, 20);
    auto agent = std::make_shared<SimulatedAgent>(
        "agent", std::map<std::string, SpaceBelief>{
                     {"x", {Law{DiscretePMF({"a", "b", "c", "d"}, latent)}, 0.3}}});
    return {agent, pmf_dist("F", "x", random_masses(rng, 4, 20)), pmf_dist("G", "x", random_masses(rng, 4, 20)),
            Fraction(lam(rng), 4)};
}

}  // namespace

TEST(StrengthLaws, HoldOnRandomPairs)
{
    std::mt19937 rng(99);
    const auto wheel = build_continuous_reference_set();
    const std::vector<ReasoningProcess> direct{direct_evaluation()};
    int strict = 0;
    for (int i = 0; i < 200; ++i) {
        const auto fx = random_fixture(rng, i);
        const auto& src = *fx.agent;

        // Irreflexivity.
        EXPECT_EQ(internally_stronger(fx.f, fx.f, fx.lambda, wheel, src).relation, Relation::indeterminate);
        EXPECT_NE(externally_stronger(fx.f, fx.f, fx.lambda, wheel, src).relation, Relation::stronger);

        const auto in_fg = internally_stronger(fx.f, fx.g, fx.lambda, wheel, src);
        const auto in_gf = internally_stronger(fx.g, fx.f, fx.lambda, wheel, src);
        const auto ex_fg = externally_stronger(fx.f, fx.g, fx.lambda, wheel, src);
        const auto ex_gf = externally_stronger(fx.g, fx.f, fx.lambda, wheel, src);

        // Antisymmetry.
        EXPECT_FALSE(in_fg.relation == Relation::stronger && in_gf.relation == Relation::stronger);
        EXPECT_FALSE(ex_fg.relation == Relation::stronger && ex_gf.relation == Relation::stronger);

        // External implies internal, in both directions.
        if (ex_fg.relation == Relation::stronger) {
            EXPECT_EQ(in_fg.relation, Relation::stronger);
        }
        if (ex_gf.relation == Relation::stronger) {
            EXPECT_EQ(in_gf.relation, Relation::stronger);
        }
        if (in_fg.relation != Relation::indeterminate) ++strict;

        // Singleton process sets reduce to the direct-evaluation definitions.
        const auto gen = externally_stronger_general(fx.f, fx.g, fx.lambda, wheel, direct, direct, src);
        EXPECT_EQ(without_kind(gen).dump(), without_kind(ex_fg).dump());
    }
    EXPECT_GT(strict, 50);  // the property checks are not vacuous
}

TEST(Strength, InternalWitnessesAreTheMinima)
{
    const auto agent = std::make_shared<SimulatedAgent>(
        "agent", std::map<std::string, SpaceBelief>{{"x", {Law{DiscretePMF({"a", "b", "c", "d"},
                                                                             {Fraction(1, 4), Fraction(1, 4),
                                                                              Fraction(1, 4), Fraction(1, 4)})},
                                                             0.0}}});
    const auto wheel = build_continuous_reference_set();
    const auto f = pmf_dist("F", "x", {Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)});
    const auto g = pmf_dist("G", "x", {Fraction(7, 10), Fraction(1, 10), Fraction(1, 10), Fraction(1, 10)});
    const auto v = internally_stronger(f, g, Fraction(1, 2), wheel, *agent);
    EXPECT_EQ(v.relation, Relation::stronger);
    ASSERT_TRUE(v.low_f.witness.has_value());
    ASSERT_TRUE(v.opposing.witness.has_value());
    // F is the latent law itself, so every member scores exactly one.
    EXPECT_DOUBLE_EQ(*v.low_f.value.score, 1.0);
    EXPECT_LT(*v.opposing.value.score, 1.0);
    const auto rev = internally_stronger(g, f, Fraction(1, 2), wheel, *agent);
    EXPECT_EQ(rev.relation, Relation::weaker);
}

TEST(Strength, ResolutionAndIndependenceErrors)
{
    const auto agent = std::make_shared<SimulatedAgent>("agent", std::map<std::string, SpaceBelief>{});
    const auto urn = build_discrete_reference_set(4);
    const auto f = bernoulli("F", "x", Fraction(1, 2));
    try {
        (void)internally_stronger(f, f, Fraction(1, 3), urn, *agent);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::resolution_not_available);
    }
    const auto same_space = bernoulli("F", urn.base().id, Fraction(1, 2));
    EXPECT_THROW((void)internally_stronger(same_space, same_space, Fraction(1, 2), urn, *agent), Error);
}

TEST(Strength, EllsbergAmbiguityDrivesTheVerdict)
{
    const DiscretePMF half({"red", "black"}, {Fraction(1, 2), Fraction(1, 2)});
    const std::map<std::string, SpaceBelief> beliefs{{"known", {Law{half}, 0.0}}, {"unknown", {Law{half}, 1.0}}};
    const auto known = bernoulli("K", "known", Fraction(1, 2));
    const auto unknown = bernoulli("U", "unknown", Fraction(1, 2));
    const auto wheel = build_continuous_reference_set();
    const SimulatedAgent averse("a", beliefs, AgentCalibration{1.0, 0.5, ScoreTransform::identity, 0.0});
    const SimulatedAgent neutral("a", beliefs, AgentCalibration{1.0, 0.0, ScoreTransform::identity, 0.0});
    for (int k = 1; k < 20; ++k) {
        const Fraction l(k, 20);
        EXPECT_EQ(externally_stronger(known, unknown, l, wheel, averse).relation, Relation::stronger);
        EXPECT_EQ(externally_stronger(known, unknown, l, wheel, neutral).relation, Relation::indeterminate);
    }
}

TEST(Strength, VerdictsDoNotDependOnTheTransform)
{
    std::mt19937 rng(5);
    const auto wheel = build_continuous_reference_set();
    for (int i = 0; i < 30; ++i) {
        const auto fx = random_fixture(rng, i);
        const auto base = internally_stronger(fx.f, fx.g, fx.lambda, wheel, *fx.agent).relation;
        const auto base_ex = externally_stronger(fx.f, fx.g, fx.lambda, wheel, *fx.agent).relation;
        for (auto t : {ScoreTransform::square, ScoreTransform::sqrt, ScoreTransform::exp}) {
            auto c = fx.agent->calibration();
            c.transform = t;
            const auto other = fx.agent->recalibrated(c);
            EXPECT_EQ(internally_stronger(fx.f, fx.g, fx.lambda, wheel, *other).relation, base);
            EXPECT_EQ(externally_stronger(fx.f, fx.g, fx.lambda, wheel, *other).relation, base_ex);
        }
    }
}

TEST(Strength, ChooseFollowsTheGeneralRelation)
{
    const DiscretePMF half({"red", "black"}, {Fraction(1, 2), Fraction(1, 2)});
    const SimulatedAgent agent("a", {{"x", {Law{half}, 0.2}}});
    const auto fair = bernoulli("F", "x", Fraction(1, 2));
    const auto skew = bernoulli("G", "x", Fraction(9, 10));
    const auto wheel = build_continuous_reference_set();
    const std::vector<ReasoningProcess> m{direct_evaluation()};
    EXPECT_EQ(choose_distribution(fair, skew, Fraction(1, 2), wheel, m, agent).choice, Choice::f_favored);
    EXPECT_EQ(choose_distribution(skew, fair, Fraction(1, 2), wheel, m, agent).choice, Choice::g_favored);
    EXPECT_EQ(choose_distribution(fair, fair, Fraction(1, 2), wheel, m, agent).choice, Choice::indeterminate);
    const auto other = bernoulli("K", "y", Fraction(1, 2));
    EXPECT_THROW((void)choose_distribution(fair, other, Fraction(1, 2), wheel, m, agent), Error);
}

TEST(Strength, InapplicableProcessesContributeTheFloor)
{
    const DiscretePMF half({"red", "black"}, {Fraction(1, 2), Fraction(1, 2)});
    const SimulatedAgent agent("a", {{"x", {Law{half}, 0.0}}});
    const auto f = bernoulli("F", "x", Fraction(1, 2));
    const auto wheel = build_continuous_reference_set();
    const auto side =
        side_extremum(f, fiducial_reasoning(), Fraction(1, 2), wheel, agent, FamilyParams{}, true, "LF");
    EXPECT_TRUE(side.value.floor);
    EXPECT_FALSE(side.witness.has_value());
    // Under {fiducial} F has nothing; under {direct} G beats it.
    const auto v = externally_stronger_general(f, f, Fraction(1, 2), wheel, {fiducial_reasoning()},
                                               {direct_evaluation()}, agent);
    EXPECT_EQ(v.relation, Relation::weaker);
}

TEST(EvenSimilarity, BernoulliUnderItsOwnLawIsEven)
{
    const DiscretePMF cup({"red", "blue"}, {Fraction(7, 10), Fraction(3, 10)});
    const SimulatedAgent agent("a", {{"cup", {Law{cup}, 0.0}}});
    const Distribution f{"cup-df", "cup", cup, "physical", nullptr};
    const auto wheel = build_continuous_reference_set();
    for (int k = 1; k < 10; ++k) {
        const auto e = even_similarity(f, Fraction(k, 10), wheel, agent);
        EXPECT_TRUE(e.even);
        EXPECT_NEAR(*e.low.value.score, 1.0, 1e-12);
    }
    const SimulatedAgent skeptic("a", {{"cup", {Law{DiscretePMF({"red", "blue"}, {Fraction(1, 2), Fraction(1, 2)})}, 0.0}}});
    EXPECT_FALSE(is_even_similarity(f, Fraction(3, 10), wheel, skeptic));
}

namespace {

struct AlphaSetup {
    std::shared_ptr<SimulatedAgent> agent;
    Distribution f, g, h;
};

// F, G, H on independent spaces with ambiguities a_f > a_g > a_h = 0; every
// family member has probability exactly lambda under the agent.
AlphaSetup alpha_setup(double amb_g)
{
    const DiscretePMF seven({"red", "black"}, {Fraction(7, 10), Fraction(3, 10)});
    const DiscretePMF half({"red", "black"}, {Fraction(1, 2), Fraction(1, 2)});
    auto agent = std::make_shared<SimulatedAgent>(
        "a", std::map<std::string, SpaceBelief>{{"x", {Law{seven}, 0.8}}, {"y", {Law{half}, amb_g}}, {"z", {Law{seven}, 0.0}}});
    return {agent, Distribution{"F", "x", seven, "subjective", nullptr},
            Distribution{"G", "y", half, "subjective", nullptr}, Distribution{"H", "z", seven, "physical", nullptr}};
}

}  // namespace

TEST(Alpha, EndpointsAreExact)
{
    const auto wheel = build_continuous_reference_set();
    const auto low = alpha_setup(0.8);
    const auto a0 = alpha_measure(low.f, low.g, low.h, Fraction(1, 2), wheel, *low.agent);
    EXPECT_EQ(a0.status, AlphaStatus::solved);
    EXPECT_EQ(a0.alpha_exact, Fraction(0));
    EXPECT_EQ(a0.alpha, 0.0);
    const auto high = alpha_setup(0.0);
    const auto a1 = alpha_measure(high.f, high.g, high.h, Fraction(1, 2), wheel, *high.agent);
    EXPECT_EQ(a1.status, AlphaStatus::solved);
    EXPECT_EQ(a1.alpha_exact, Fraction(1));
}

TEST(Alpha, MatchesClosedFormAndIsRepresentativeInvariant)
{
    const auto wheel = build_continuous_reference_set();
    const double amb_g = 1.0 / 3.0;
    const auto s = alpha_setup(amb_g);
    // Mixture score 1 - w2 ((1-a) 0.8 + a 0) against target 1 - w2 amb_g.
    const double oracle = 1.0 - amb_g / 0.8;
    const Fraction lambda(1, 2);
    std::vector<double> values;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                AlphaOptions opts;
                opts.rep_f = i;
                opts.rep_g = j;
                opts.rep_h = k;
                const auto a = alpha_measure(s.f, s.g, s.h, lambda, wheel, *s.agent, opts);
                ASSERT_EQ(a.status, AlphaStatus::solved);
                EXPECT_NEAR(a.alpha, oracle, 1e-6);
                values.push_back(a.alpha);
            }
        }
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    EXPECT_LE(*hi - *lo, 2e-6);
}

TEST(Alpha, PreconditionsAreChecked)
{
    const auto wheel = build_continuous_reference_set();
    auto s = alpha_setup(0.9);  // G vaguer than F: externally weaker
    try {
        (void)alpha_measure(s.f, s.g, s.h, Fraction(1, 2), wheel, *s.agent);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::precondition_violated);
    }
    s = alpha_setup(0.3);
    auto h_on_x = s.h;
    h_on_x.space = "x";
    EXPECT_THROW((void)alpha_measure(s.f, s.g, h_on_x, Fraction(1, 2), wheel, *s.agent), Error);
    AlphaOptions bad;
    bad.tolerance = 0;
    EXPECT_THROW((void)alpha_measure(s.f, s.g, s.h, Fraction(1, 2), wheel, *s.agent, bad), Error);
}

TEST(Alpha, UnevenFamilyIsRejected)
{
    const auto wheel = build_continuous_reference_set();
    auto s = alpha_setup(0.3);
    s.f.law = DiscretePMF({"red", "black"}, {Fraction(1, 4), Fraction(3, 4)});  // judged under a 7/10 latent
    try {
        (void)alpha_measure(s.f, s.g, s.h, Fraction(3, 10), wheel, *s.agent);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::precondition_violated);
    }
}
