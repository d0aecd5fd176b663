#include <gtest/gtest.h>

#include "credo/error.hpp"
#include "credo/interactive.hpp"
#include "credo/scenario.hpp"
#include "credo/strength.hpp"

using namespace credo;

namespace {

const EventExpr kA = EventExpr::atom("x", "a");
const EventExpr kB = EventExpr::atom("x", "b");
const EventExpr kC = EventExpr::atom("y", "c");
const EventExpr kD = EventExpr::atom("y", "d");

// Answers as a simulated agent would, and counts how often it was asked.
Responder scripted_by(SourcePtr agent, int* asked)
{
    return [agent, asked](const JudgmentQuery& q) -> std::optional<Answer> {
        ++*asked;
        const auto one = q.shared_first ? agent->judge(q.shared, q.first) : agent->judge(q.first, q.shared);
        const auto two = q.shared_first ? agent->judge(q.shared, q.second) : agent->judge(q.second, q.shared);
        switch (compare(one, two)) {
        case Ordering::greater: return Answer::first_greater;
        case Ordering::less: return Answer::second_greater;
        default: return Answer::equal;
        }
    };
}

}  // namespace

TEST(JudgmentLog, CachesAndMirrors)
{
    JudgmentLog log;
    JudgmentQuery q{"q1", kA, kB, kC, false, Answer::first_greater, "t", "t"};
    EXPECT_EQ(log.next_id(), "q1");
    EXPECT_EQ(log.record(q), Answer::first_greater);
    EXPECT_EQ(log.next_id(), "q2");
    EXPECT_EQ(log.lookup(q), Answer::first_greater);
    JudgmentQuery swapped{"", kA, kC, kB, false, std::nullopt, "", ""};
    EXPECT_EQ(log.lookup(swapped), Answer::second_greater);
    swapped.answer = Answer::first_greater;
    EXPECT_EQ(log.record(swapped), Answer::second_greater);  // first answer wins
    EXPECT_EQ(log.size(), 1u);
    JudgmentQuery other_side = q;
    other_side.shared_first = true;
    EXPECT_FALSE(log.lookup(other_side).has_value());
    JudgmentQuery unanswered{"q9", kA, kB, kC, false, std::nullopt, "", ""};
    EXPECT_THROW((void)log.record(unanswered), Error);
}

TEST(InteractiveSource, SharedEventMakesOneQuery)
{
    auto log = std::make_shared<JudgmentLog>();
    int asked = 0;
    auto person = std::make_shared<InteractiveSource>("person", log, [&](const JudgmentQuery& q) {
        ++asked;
        EXPECT_EQ(q.shared, kA);
        EXPECT_TRUE(q.shared_first);
        EXPECT_FALSE(q.prompt().empty());
        return std::optional<Answer>(Answer::second_greater);
    });
    const auto ab = person->judge(kA, kB);
    const auto ac = person->judge(kA, kC);
    EXPECT_EQ(compare(ab, ac), Ordering::less);
    EXPECT_EQ(compare(ac, ab), Ordering::greater);  // mirrored from the log
    EXPECT_EQ(compare(ab, ab), Ordering::equal);
    EXPECT_EQ(asked, 1);
    ASSERT_EQ(log->size(), 1u);
    EXPECT_EQ(log->entries()[0].id, "q1");
    EXPECT_FALSE(log->entries()[0].asked_at.empty());
}

TEST(InteractiveSource, NoSharedEventIsIncomparable)
{
    auto person = std::make_shared<InteractiveSource>("person", nullptr, [](const JudgmentQuery&) {
        ADD_FAILURE() << "nothing should be asked";
        return std::optional<Answer>(Answer::equal);
    });
    EXPECT_EQ(compare(person->judge(kA, kB), person->judge(kC, kD)), Ordering::incomparable);
    auto other = std::make_shared<InteractiveSource>("other", nullptr);
    EXPECT_EQ(compare(person->judge(kA, kB), other->judge(kA, kC)), Ordering::incomparable);
}

TEST(InteractiveSource, PendingAndClosed)
{
    auto log = std::make_shared<JudgmentLog>();
    auto person = std::make_shared<InteractiveSource>("person", log);
    try {
        (void)compare(person->judge(kB, kA), person->judge(kC, kA));
        FAIL();
    } catch (const QueryPending& p) {
        EXPECT_EQ(p.query().id, "q1");
        EXPECT_EQ(p.query().shared, kA);
        EXPECT_FALSE(p.query().shared_first);
        auto answered = p.query();
        answered.answer = Answer::equal;
        log->record(answered);
    }
    EXPECT_EQ(compare(person->judge(kB, kA), person->judge(kC, kA)), Ordering::equal);

    auto replay = replay_source("person", log);
    EXPECT_EQ(compare(replay->judge(kC, kA), replay->judge(kB, kA)), Ordering::equal);
    try {
        (void)compare(replay->judge(kD, kA), replay->judge(kB, kA));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::judgment_unavailable);
    }
    auto walked_away =
        std::make_shared<InteractiveSource>("person", nullptr, [](const JudgmentQuery&) { return std::nullopt; });
    EXPECT_THROW((void)compare(walked_away->judge(kA, kB), walked_away->judge(kA, kC)), Error);
}

TEST(InteractiveSource, ScriptedTournamentMatchesTheAgent)
{
    const auto bundle = build_scenario("governor-election");
    const auto wheel = build_continuous_reference_set();
    const SpaceView v = reference_view(wheel);
    const auto agent = bundle.agent("").make()->under(std::span<const SpaceView>(&v, 1));
    const auto ref = wheel.event(Fraction(1, 2));
    for (const auto& id : {"analyst-df", "lopsided-df", "uniform-df"}) {
        const auto fam = event_family(bundle.distribution(id), Fraction(1, 2), FamilyParams{});
        int asked = 0;
        auto person = std::make_shared<InteractiveSource>("person", nullptr, scripted_by(agent, &asked));
        const auto lo = min_similarity(*person, fam, ref);
        const auto hi = max_similarity(*person, fam, ref);
        const auto lo_oracle = min_similarity(*agent, fam, ref);
        const auto hi_oracle = max_similarity(*agent, fam, ref);
        EXPECT_EQ(lo.index, lo_oracle.index) << id;
        EXPECT_EQ(hi.index, hi_oracle.index) << id;
        EXPECT_EQ(lo.witness, lo_oracle.witness);
        // Each tournament needs at most one question per member beyond the first.
        EXPECT_LE(static_cast<std::size_t>(asked), 2 * (fam.size() - 1));
    }
}

TEST(InteractiveSource, LensesHaveNoEffect)
{
    auto person = std::make_shared<InteractiveSource>("person", nullptr);
    const SpaceView v{"x", std::nullopt, 0.9, std::nullopt};
    EXPECT_EQ(person->under(std::span<const SpaceView>(&v, 1)).get(), person.get());
    EXPECT_FALSE(person->totally_comparable());
}

TEST(Answer, StringsRoundTrip)
{
    for (auto a : {Answer::first_greater, Answer::second_greater, Answer::equal}) {
        EXPECT_EQ(answer_from_string(to_string(a)), a);
    }
    EXPECT_THROW((void)answer_from_string("maybe"), Error);
}
