#include "fixtures.hpp"

#include <dtc/constructions.hpp>
#include <dtc/error.hpp>
#include <dtc/explorer.hpp>

#include <gtest/gtest.h>

using namespace dtc;

namespace {
    auto values(const GrowthReport & r) -> std::vector<Cost>
    {
        std::vector<Cost> result;
        for (const auto & p : r.points)
            result.push_back(p.value);
        return result;
    }

    auto all_exhausted(const GrowthReport & r) -> bool
    {
        for (const auto & p : r.points)
            if (! p.exhausted)
                return false;
        return true;
    }
}

TEST(Explorer, StepFunction)
{
    std::vector<int> d{2, 5, 9};
    EXPECT_EQ(h_step(d, 0), 0);
    EXPECT_EQ(h_step(d, 1), 0);
    EXPECT_EQ(h_step(d, 2), 2);
    EXPECT_EQ(h_step(d, 3), 2);
    EXPECT_EQ(h_step(d, 5), 5);
    EXPECT_EQ(h_step(d, 100), 9);
}

TEST(Explorer, FunctionNames)
{
    for (auto fn : {GrowthFunction::fw, GrowthFunction::ftheta, GrowthFunction::f, GrowthFunction::g})
        EXPECT_EQ(parse_growth_function(to_string(fn)), fn);
    EXPECT_THROW(parse_growth_function("H"), Error);
}

TEST(Explorer, SingleColumnFamilyFollowsStepFunction)
{
    std::vector<int> d{2, 5};
    auto g = single_column_generators(d);
    auto r = growth(GrowthFunction::fw, g.tables, g.measure, 6, EnumerationLimits{});
    EXPECT_EQ(values(r), (std::vector<Cost>{0, 0, 2, 2, 2, 5, 5}));
    EXPECT_TRUE(all_exhausted(r));
    auto th = growth(GrowthFunction::ftheta, g.tables, g.measure, 6, EnumerationLimits{});
    EXPECT_EQ(values(th), values(r));
}

TEST(Explorer, IdentityFamily)
{
    auto gens = identity_tables(4);
    auto h = ComplexityMeasure::depth();
    std::vector<GrowthFunction> fns{GrowthFunction::fw, GrowthFunction::ftheta, GrowthFunction::g};
    for (const auto & r : growth(fns, gens, h, 4, EnumerationLimits{})) {
        EXPECT_EQ(values(r), (std::vector<Cost>{0, 1, 2, 3, 4})) << to_string(r.fn);
        EXPECT_TRUE(all_exhausted(r));
    }
}

TEST(Explorer, SeparateAndSharedPassesAgree)
{
    auto gens = identity_tables(3);
    auto h = ComplexityMeasure::depth();
    std::vector<GrowthFunction> fns{GrowthFunction::fw, GrowthFunction::f, GrowthFunction::g};
    auto shared = growth(fns, gens, h, 3, EnumerationLimits{});
    for (std::size_t i = 0; i < fns.size(); ++i)
        EXPECT_EQ(values(shared[i]), values(growth(fns[i], gens, h, 3, EnumerationLimits{})));
}

TEST(Explorer, QuadraticFamilyGrowth)
{
    auto set = load_generators("builtin:fig5:1,4,9");
    ASSERT_TRUE(set.measure);
    auto r = growth(GrowthFunction::f, set.tables, *set.measure, 3, EnumerationLimits{});
    EXPECT_EQ(values(r), (std::vector<Cost>{0, 1, 4, 9}));
    for (const auto & p : r.points)
        EXPECT_FALSE(p.possibly_undefined);
}

TEST(Explorer, TruncatedPointsAreFlagged)
{
    auto gens = identity_tables(4);
    EnumerationLimits limits;
    limits.max_tables = 20;
    auto r = growth(GrowthFunction::f, gens, ComplexityMeasure::depth(), 3, limits);
    for (const auto & p : r.points) {
        EXPECT_FALSE(p.exhausted);
        EXPECT_TRUE(p.possibly_undefined);
    }
    auto fw = growth(GrowthFunction::fw, gens, ComplexityMeasure::depth(), 3, limits);
    for (const auto & p : fw.points)
        EXPECT_FALSE(p.possibly_undefined);
}

TEST(Explorer, ClassStats)
{
    std::vector<int> d{2, 5};
    auto g = single_column_generators(d);
    auto one = class_stats(g.tables, g.measure, 1, EnumerationLimits{});
    EXPECT_EQ(one.members, 1U);
    EXPECT_EQ(one.s, 0);
    EXPECT_EQ(one.n_rows, 0U);
    EXPECT_TRUE(one.exhausted);
    auto two = class_stats(g.tables, g.measure, 2, EnumerationLimits{});
    EXPECT_EQ(two.members, 5U);
    EXPECT_EQ(two.n_rows, 2U);
    EXPECT_EQ(two.s, 1);

    auto id = class_stats(identity_tables(3), ComplexityMeasure::depth(), 1, EnumerationLimits{});
    EXPECT_EQ(id.n_rows, 4U);
    EXPECT_EQ(id.s, 3);
}

TEST(Explorer, RefusesUnboundedMeasures)
{
    auto gens = identity_tables(2);
    auto maxw = ComplexityMeasure::max_weight(WeightMap{5, {}});
    try {
        growth(GrowthFunction::fw, gens, maxw, 3, EnumerationLimits{});
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::unbounded_measure);
    }
    EXPECT_NO_THROW(require_bounded(ComplexityMeasure::depth(), gens));
    auto opaque = ComplexityMeasure::opaque("twice", [](std::span<const Attribute> w) { return static_cast<Cost>(2 * w.size()); });
    EXPECT_NO_THROW(require_bounded(opaque, gens));
}

TEST(Explorer, LoadGenerators)
{
    auto id = load_generators("builtin:id3");
    EXPECT_EQ(id.tables.size(), 3U);
    auto thm3 = load_generators("builtin:thm3:2,5,9");
    EXPECT_EQ(thm3.tables.size(), 3U);
    EXPECT_EQ(thm3.steps, (std::vector<int>{2, 5, 9}));
    auto file = load_generators(std::string(DTC_TEST_DATA) + "/t0.dt");
    ASSERT_EQ(file.tables.size(), 1U);
    EXPECT_EQ(file.tables[0], fixtures::t0());
    EXPECT_THROW(load_generators("builtin:nothing"), Error);
}

TEST(Explorer, Output)
{
    GrowthReport r;
    r.fn = GrowthFunction::g;
    r.points = {GrowthPoint{0, 0, true, false}, GrowthPoint{1, 1, false, false}};
    EXPECT_EQ(format_growth_csv(r), "n,value,exhausted\n0,0,1\n1,1,0\n");
    EXPECT_NE(format_growth(r).find("n\tvalue\texhausted"), std::string::npos);
}
