#include <gtest/gtest.h>

#include <limits>

#include "credo/error.hpp"
#include "credo/event.hpp"
#include "credo/fraction.hpp"

using namespace credo;

TEST(Fraction, ParsesRationalsIntegersAndDecimals)
{
    EXPECT_EQ(parse_fraction("1/3"), Fraction(1, 3));
    EXPECT_EQ(parse_fraction("2/4"), Fraction(1, 2));
    EXPECT_EQ(parse_fraction("3"), Fraction(3));
    EXPECT_EQ(parse_fraction("0.25"), Fraction(1, 4));
    EXPECT_EQ(parse_fraction("-0.125"), Fraction(-1, 8));
}

TEST(Fraction, RejectsGarbage)
{
    EXPECT_THROW(parse_fraction(""), Error);
    EXPECT_THROW(parse_fraction("1/0"), Error);
    EXPECT_THROW(parse_fraction("a/b"), Error);
}

TEST(Fraction, FormatRoundTrips)
{
    for (const auto& f : {Fraction(1, 3), Fraction(7, 20), Fraction(5), Fraction(-3, 8)}) {
        EXPECT_EQ(parse_fraction(format_fraction(f)), f);
    }
    EXPECT_EQ(format_fraction(Fraction(4, 2)), "2");
}

TEST(Event, KeysIdentifyStructure)
{
    const auto a = EventExpr::atom("x", "red");
    const auto b = EventExpr::atom("x", "black");
    EXPECT_EQ(a, EventExpr::atom("x", "red"));
    EXPECT_NE(a, b);
    EXPECT_EQ((a | b).kind(), EventExpr::Kind::any_of);
    EXPECT_EQ((!a).kind(), EventExpr::Kind::complement);
}

TEST(Event, NormalizeIsIdempotentAndCanonical)
{
    const auto a = EventExpr::atom("x", "a");
    const auto b = EventExpr::atom("x", "b");
    const auto c = EventExpr::atom("x", "c");
    const auto e1 = EventExpr::any_of({c, EventExpr::any_of({b, a}), EventExpr::never()});
    const auto e2 = EventExpr::any_of({a, b, c});
    EXPECT_EQ(normalize(e1), normalize(e2));
    EXPECT_EQ(normalize(normalize(e1)), normalize(e1));
    EXPECT_EQ(normalize(!!a), a);
}

TEST(Event, ScalingEndpointsFold)
{
    EXPECT_EQ(normalize(EventExpr::scaling(Fraction(0), "t")).kind(), EventExpr::Kind::never);
    EXPECT_EQ(normalize(EventExpr::scaling(Fraction(1), "t")).kind(), EventExpr::Kind::always);
}

TEST(Event, MixtureIsRecognizedBeforeAndAfterNormalization)
{
    const auto weak = EventExpr::atom("x", "a");
    const auto strong = EventExpr::atom("z", "b");
    const auto mix = scaling_mixture(weak, strong, Fraction(1, 3), "alpha");
    for (const auto& e : {mix, normalize(mix)}) {
        const auto parts = match_scaling_mixture(e);
        ASSERT_TRUE(parts.has_value());
        EXPECT_EQ(parts->weak, weak);
        EXPECT_EQ(parts->strong, strong);
        EXPECT_EQ(parts->alpha, Fraction(1, 3));
        EXPECT_EQ(parts->tag, "alpha");
    }
    EXPECT_FALSE(match_scaling_mixture(weak | strong).has_value());
}

TEST(Event, IndependenceFollowsVariables)
{
    const auto a = EventExpr::atom("x", "a");
    const auto z = EventExpr::atom("z", "a");
    const auto l = EventExpr::scaling(Fraction(1, 2), "t");
    EXPECT_TRUE(independent(a, z));
    EXPECT_TRUE(independent(a, l));
    EXPECT_FALSE(independent(a & l, l));
    EXPECT_EQ(spaces_of(a & z).size(), 2u);
}

TEST(Event, IntervalBoundsArePreserved)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto e = EventExpr::interval("w", -inf, 0.25);
    EXPECT_EQ(e.lo(), -inf);
    EXPECT_EQ(e.hi(), 0.25);
    EXPECT_EQ(e.space(), "w");
}
