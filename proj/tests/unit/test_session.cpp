#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>

#include "credo/error.hpp"
#include "credo/executor.hpp"
#include "credo/normal_mean.hpp"
#include "credo/session.hpp"

using namespace credo;

namespace {

std::filesystem::path temp_file(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "credo-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

// Answers every query by which event sorts first, so runs are repeatable.
std::optional<Answer> by_key(const JudgmentQuery& q)
{
    if (q.first.key() == q.second.key()) return Answer::equal;
    return q.first.key() < q.second.key() ? Answer::first_greater : Answer::second_greater;
}

Session recorded_session()
{
    Session s;
    ExecutionContext ctx;
    ctx.catalog = &s.catalog;
    ctx.log = s.log;
    ctx.responder = by_key;
    const std::vector<Json> requests{
        {{"op", "scenario"}, {"name", "ellsberg-two-urn"}},
        {{"op", "compare"}, {"mode", "external"}, {"scenario", "ellsberg-two-urn"}, {"f", "known-urn-df"},
         {"g", "unknown-urn-df"}, {"lambda", "3/10"}},
        {{"op", "compare"}, {"mode", "general"}, {"scenario", "normal-mean-fiducial"}, {"f", "C(mu|x)"},
         {"g", "D(mu|x)"}, {"processes_f", {"fiducial"}}, {"processes_g", {"bayesian"}}},
        {{"op", "choose"}, {"scenario", "informative-prior-choice"}, {"f", "C(mu|x)"}, {"g", "I(mu|x)"},
         {"processes", {"bayesian", "fiducial"}}},
        {{"op", "alpha"}, {"scenario", "alpha-calibration"}, {"f", "D(mu)"}, {"g", "C(mu|x)"}, {"h", "U(z)"}},
        {{"op", "compat"}, {"scenario", "unknown-urn-reference"}, {"r0", "urn:10"}, {"r1", "unknown-urn:10"}},
        {{"op", "sweep"}, {"scenario", "ellsberg-two-urn"}, {"f", "known-urn-df"}, {"g", "unknown-urn-df"},
         {"references", {"urn:100", "wheel"}}, {"lambdas", {"1/10", "1/2", "9/10"}}},
        {{"op", "compare"}, {"mode", "internal"}, {"scenario", "governor-election"}, {"source", "interactive"},
         {"f", "analyst-df"}, {"g", "lopsided-df"}},
    };
    for (const auto& r : requests) {
        const auto ex = execute(r, ctx);
        s.verdicts.push_back({{"request", ex.request}, {"result", ex.result}});
    }
    for (const auto& source : {"agent", "interactive"}) {
        const auto ex = execute({{"op", "elicit"}, {"scenario", "governor-election"}, {"source", source}, {"budget", 40}},
                                ctx);
        s.traces.push_back({{"request", ex.request}, {"result", ex.result}});
    }
    return s;
}

}  // namespace

TEST(Serialize, ScalarsAndEvents)
{
    EXPECT_EQ(to_json(Fraction(3, 7)), "3/7");
    EXPECT_EQ(fraction_from_json(Json("3/7")), Fraction(3, 7));
    EXPECT_EQ(fraction_from_json(Json(2)), Fraction(2));
    constexpr double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(real_from_json(real_to_json(-inf)), -inf);
    EXPECT_EQ(real_from_json(real_to_json(0.125)), 0.125);

    const auto a = EventExpr::atom("x", "a");
    const std::vector<EventExpr> events{
        EventExpr::never(),
        EventExpr::always(),
        a,
        EventExpr::interval("w", -inf, 0.3),
        EventExpr::scaling(Fraction(2, 7), "tag:1"),
        a | EventExpr::atom("x", "b"),
        a & EventExpr::scaling(Fraction(1, 2), "L"),
        !a,
        scaling_mixture(a, EventExpr::atom("z", "c"), Fraction(1, 3), "alpha"),
    };
    for (const auto& e : events) EXPECT_EQ(event_from_json(to_json(e)), e) << to_json(e).dump();
    EXPECT_THROW((void)event_from_json(Json{{"kind", "xor"}}), Error);
}

TEST(Serialize, DistributionsRoundTrip)
{
    std::vector<Distribution> ds{
        Distribution{"p", "x", DiscretePMF({"a", "b"}, {Fraction(1, 3), Fraction(2, 3)}), "subjective", nullptr},
        Distribution{"n", "y", ContinuousDF::normal(1, 2, "kg"), "physical", nullptr},
        Distribution{"u", "y", ContinuousDF::uniform(-1, 1), "physical", nullptr},
        Distribution{"k", "y", ContinuousDF({0, 1, 3}, {0, 0.25, 1}), "subjective", nullptr},
        conjugate_posterior(PriorSpec::flat(), 1.0, 1.0, 4),
    };
    for (const auto& d : ds) {
        const auto back = distribution_from_json(to_json(d));
        EXPECT_EQ(back, d) << d.id;
        EXPECT_EQ(to_json(back).dump(), to_json(d).dump());
    }
    auto j = to_json(ds[0]);
    j["law"]["masses"] = {"1/3", "1/3"};
    EXPECT_THROW((void)distribution_from_json(j), Error);
}

TEST(Serialize, EveryScenarioBundleRoundTrips)
{
    for (const auto& name : scenario_names()) {
        const auto b = build_scenario(name);
        const auto j = to_json(b);
        const auto back = bundle_from_json(j);
        EXPECT_EQ(to_json(back).dump(), j.dump()) << name;
        EXPECT_EQ(back.distributions.size(), b.distributions.size());
    }
    auto broken = to_json(build_scenario("ellsberg-two-urn"));
    broken["expectations"][0]["subjects"][0] = "nowhere";
    EXPECT_THROW((void)bundle_from_json(broken), Error);
}

TEST(Session, VersionHandling)
{
    const auto j = session_to_json(Session{});
    EXPECT_EQ(j.begin().key(), "version");
    EXPECT_EQ(j.at("version"), kSessionVersion);
    auto wrong = j;
    wrong["version"] = 99;
    try {
        (void)session_from_json(wrong);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::unsupported_version);
    }
    Json moved = Json::object();
    moved["spaces"] = Json::array();
    moved["version"] = kSessionVersion;
    EXPECT_THROW((void)session_from_json(moved), Error);
    EXPECT_THROW((void)session_from_json(Json::array()), Error);
}

TEST(Session, FileRoundTripKeepsEverything)
{
    const auto s = recorded_session();
    EXPECT_GT(s.log->size(), 0u);
    const auto path = temp_file("roundtrip.json");
    save_session(path.string(), s);
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    const auto back = load_session(path.string());
    EXPECT_EQ(session_to_json(back).dump(), session_to_json(s).dump());
    const auto entries = back.log->entries();
    ASSERT_EQ(entries.size(), s.log->size());
    EXPECT_EQ(entries.front().id, "q1");
    EXPECT_FALSE(entries.front().answered_at.empty());

    try {
        (void)load_session((path.parent_path() / "missing.json").string());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_found);
    }
    const auto garbage = temp_file("garbage.json");
    std::ofstream(garbage) << "{ not json";
    try {
        (void)load_session(garbage.string());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::parse_error);
    }
}

TEST(Replay, ReproducesEveryVerdictByteForByte)
{
    const auto s = recorded_session();
    const auto path = temp_file("replay.json");
    save_session(path.string(), s);
    const auto first = replay_session(load_session(path.string()));
    const auto second = replay_session(load_session(path.string()));
    EXPECT_EQ(first.entries, s.verdicts.size() + s.traces.size());
    EXPECT_EQ(first.mismatches, 0u) << first.text;
    EXPECT_EQ(first.text, second.text);
}

TEST(Replay, DetectsTamperedResults)
{
    auto s = recorded_session();
    s.verdicts[1]["result"]["relation"] = "weaker";
    const auto r = replay_session(s);
    EXPECT_EQ(r.mismatches, 1u);
    EXPECT_NE(r.text.find("MISMATCH"), std::string::npos);
}

TEST(Replay, MissingJudgmentsAreReported)
{
    auto s = recorded_session();
    s.log = std::make_shared<JudgmentLog>();
    const auto r = replay_session(s);
    EXPECT_EQ(r.mismatches, 2u);  // the interactive compare and the interactive elicitation
}

TEST(Executor, RequestsAreNormalized)
{
    Catalog catalog;
    ExecutionContext ctx;
    ctx.catalog = &catalog;
    const auto ex = execute({{"op", "compare"}, {"scenario", "ellsberg-two-urn"}, {"f", "known-urn-df"},
                             {"g", "unknown-urn-df"}, {"mode", "external"}},
                            ctx);
    EXPECT_EQ(ex.request.at("reference"), "wheel");
    EXPECT_EQ(ex.request.at("lambda"), "1/2");
    EXPECT_EQ(ex.request.at("source"), "agent");
    EXPECT_TRUE(ex.request.contains("calibration"));
    EXPECT_EQ(execute(ex.request, ctx).result.dump(), ex.result.dump());
    EXPECT_THROW((void)execute({{"op", "frobnicate"}}, ctx), Error);
    EXPECT_THROW((void)execute({{"op", "compare"}, {"f", "nothing"}, {"g", "nothing"}}, ctx), Error);
}
