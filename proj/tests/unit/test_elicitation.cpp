#include <gtest/gtest.h>

#include "credo/elicitation.hpp"
#include "credo/error.hpp"
#include "credo/interactive.hpp"
#include "credo/scenario.hpp"
#include "credo/serialize.hpp"

using namespace credo;

namespace {

struct Governor {
    ScenarioBundle bundle = build_scenario("governor-election");
    std::shared_ptr<SimulatedAgent> agent = bundle.agent("").make();
    ReferenceSet wheel = build_continuous_reference_set();

    Distribution initial() const { return bundle.distribution("uniform-df"); }
    Distribution target() const { return bundle.distribution("analyst-df"); }
    Proposer proposer(std::size_t budget, std::uint64_t seed = 11) const
    {
        auto p = bundle.elicitation->proposer;
        p.budget = budget;
        p.seed = seed;
        return p;
    }
};

double min_score(const Distribution& d, const Governor& g)
{
    return *side_extremum(d, direct_evaluation(), Fraction(1, 2), g.wheel, *g.agent, FamilyParams{}, true, "F")
                .value.score;
}

}  // namespace

TEST(Proposer, CandidatesDependOnlyOnSeedAndIndex)
{
    const Governor g;
    const auto p = g.proposer(10);
    for (std::size_t i = 0; i < 10; ++i) {
        const auto a = p.propose(g.initial(), i);
        const auto b = p.propose(g.initial(), i);
        EXPECT_EQ(a, b);
        Fraction total(0);
        for (const auto& m : a.pmf().masses()) {
            EXPECT_GE(m, Fraction(0));
            total += m;
        }
        EXPECT_EQ(total, Fraction(1));
    }
    EXPECT_NE(p.propose(g.initial(), 0), g.proposer(10, 12).propose(g.initial(), 0));
}

TEST(Elicitation, ZeroBudgetReturnsTheStart)
{
    const Governor g;
    const auto r = elicit(g.initial(), g.proposer(0), Fraction(1, 2), g.wheel, g.agent);
    EXPECT_TRUE(r.trace.empty());
    ASSERT_EQ(r.frontier.size(), 1u);
    EXPECT_EQ(r.frontier.front(), g.initial());
    EXPECT_EQ(r.terminated_by, Termination::budget);
}

TEST(Elicitation, ConvergesToTheLatentTarget)
{
    const Governor g;
    const auto r = elicit(g.initial(), g.proposer(2000), Fraction(1, 2), g.wheel, g.agent);
    ASSERT_FALSE(r.frontier.empty());
    double best = 1.0;
    for (const auto& d : r.frontier) best = std::min(best, total_variation(d.pmf(), g.target().pmf()));
    EXPECT_LT(best, 0.05);
    // The target attains the largest possible min-score; nothing elicited beats it.
    const double top = min_score(g.target(), g);
    for (const auto& d : r.frontier) EXPECT_LE(min_score(d, g), top + 1e-12);
}

TEST(Elicitation, AcceptedChainMinScoreStrictlyIncreases)
{
    const Governor g;
    const auto r = elicit(g.initial(), g.proposer(400), Fraction(1, 2), g.wheel, g.agent);
    double prev = min_score(g.initial(), g);
    std::size_t accepted = 0;
    for (const auto& t : r.trace) {
        if (!t.accepted) continue;
        ++accepted;
        const double s = *t.verdict.low_f.value.score;
        EXPECT_GT(s, prev) << "step " << t.index;
        EXPECT_NEAR(*t.verdict.opposing.value.score, prev, 1e-12);
        prev = s;
    }
    EXPECT_GT(accepted, 0u);
}

TEST(Elicitation, RunsAreDeterministic)
{
    const Governor g;
    const auto a = elicit(g.initial(), g.proposer(300), Fraction(1, 2), g.wheel, g.agent);
    const auto b = elicit(g.initial(), g.proposer(300), Fraction(1, 2), g.wheel, g.agent);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Elicitation, BudgetTermination)
{
    const Governor g;
    Elicitor e(g.initial(), g.proposer(5), Fraction(1, 2), g.wheel, g.agent);
    std::size_t steps = 0;
    while (e.step() != nullptr) ++steps;
    EXPECT_EQ(steps, 5u);
    EXPECT_EQ(e.terminated_by(), Termination::budget);
    EXPECT_EQ(e.step(), nullptr);
}

TEST(Elicitation, ConvergenceAfterConsecutiveRejections)
{
    const Governor g;
    // Starting at the target nothing can be accepted.
    const auto r = elicit(g.target(), g.proposer(1000), Fraction(1, 2), g.wheel, g.agent);
    EXPECT_EQ(r.terminated_by, Termination::convergence);
    EXPECT_EQ(r.trace.size(), Elicitor::kMaxConsecutiveRejections);
    EXPECT_EQ(r.current, g.target());
}

TEST(Elicitation, ClosedSessionKeepsThePartialResult)
{
    const Governor g;
    auto log = std::make_shared<JudgmentLog>();
    auto person = std::make_shared<InteractiveSource>("person", log);
    person->close();
    const auto r = elicit(g.initial(), g.proposer(10), Fraction(1, 2), g.wheel, person);
    EXPECT_EQ(r.terminated_by, Termination::session_closed);
    EXPECT_TRUE(r.trace.empty());
    EXPECT_EQ(r.current, g.initial());

    Elicitor e(g.initial(), g.proposer(10), Fraction(1, 2), g.wheel, g.agent);
    (void)e.step();
    e.close();
    EXPECT_EQ(e.terminated_by(), Termination::session_closed);
    EXPECT_EQ(e.result().trace.size(), 1u);
}

TEST(Elicitation, PendingQueryLeavesStateUntouched)
{
    const Governor g;
    auto log = std::make_shared<JudgmentLog>();
    auto person = std::make_shared<InteractiveSource>("person", log);
    Elicitor e(g.initial(), g.proposer(10), Fraction(1, 2), g.wheel, person);
    EXPECT_THROW((void)e.step(), QueryPending);
    EXPECT_TRUE(e.trace().empty());
    EXPECT_FALSE(e.done());
    EXPECT_THROW((void)e.step(), QueryPending);
}

TEST(Sweep, EllsbergIsStableAcrossTheRange)
{
    const auto b = build_scenario("ellsberg-two-urn");
    const auto agent = b.agent("").make();
    std::vector<Fraction> grid;
    for (int k = 1; k < 20; ++k) grid.emplace_back(k, 20);
    const auto t = sensitivity_sweep(b.distribution("known-urn-df"), b.distribution("unknown-urn-df"),
                                     {build_continuous_reference_set()}, grid, *agent, Comparison::external);
    EXPECT_EQ(t.cells.size(), 19u);
    EXPECT_DOUBLE_EQ(t.stability, 1.0);
    EXPECT_EQ(t.modal, Relation::stronger);
}

TEST(Sweep, CompatibleSetsGiveIdenticalColumns)
{
    const auto ells = build_scenario("ellsberg-two-urn");
    const auto gov = build_scenario("governor-election");
    const auto urn100 = build_discrete_reference_set(100);
    const auto wheel = build_continuous_reference_set();
    std::vector<Fraction> grid;
    for (int k = 1; k < 10; ++k) grid.emplace_back(k, 10);
    const auto check = [&](const ScenarioBundle& b, const std::string& f, const std::string& g, Comparison cmp) {
        const auto agent = b.agent("").make();
        const auto t = sensitivity_sweep(b.distribution(f), b.distribution(g), {urn100, wheel}, grid, *agent, cmp);
        const auto a = t.column(urn100.id());
        EXPECT_EQ(a.size(), 9u);
        EXPECT_EQ(a, t.column(wheel.id()));
    };
    check(ells, "known-urn-df", "unknown-urn-df", Comparison::external);
    check(gov, "analyst-df", "lopsided-df", Comparison::internal);
    check(gov, "lopsided-df", "uniform-df", Comparison::internal);
}

TEST(Sweep, SingleCellMatchesTheDirectCall)
{
    const auto b = build_scenario("ellsberg-two-urn");
    const auto agent = b.agent("").make();
    const auto wheel = build_continuous_reference_set();
    const auto& f = b.distribution("known-urn-df");
    const auto& g = b.distribution("unknown-urn-df");
    const auto t = sensitivity_sweep(f, g, {wheel}, {Fraction(3, 10)}, *agent, Comparison::external);
    ASSERT_EQ(t.cells.size(), 1u);
    ASSERT_TRUE(t.cells[0].verdict.has_value());
    EXPECT_EQ(to_json(*t.cells[0].verdict).dump(),
              to_json(externally_stronger(f, g, Fraction(3, 10), wheel, *agent)).dump());
}

TEST(Sweep, OffResolutionCellsAreSkipped)
{
    const auto b = build_scenario("ellsberg-two-urn");
    const auto agent = b.agent("").make();
    const auto t = sensitivity_sweep(b.distribution("known-urn-df"), b.distribution("unknown-urn-df"),
                                     {build_discrete_reference_set(4)}, {Fraction(1, 4), Fraction(3, 10)}, *agent,
                                     Comparison::external);
    ASSERT_EQ(t.cells.size(), 2u);
    EXPECT_TRUE(t.cells[0].verdict.has_value());
    EXPECT_FALSE(t.cells[1].verdict.has_value());
}
