#include "fixtures.hpp"
#include "oracles.hpp"

#include <dtc/closure.hpp>
#include <dtc/error.hpp>
#include <dtc/solvers.hpp>
#include <dtc/tree.hpp>

#include <gtest/gtest.h>

using namespace dtc;
using fixtures::t0;

namespace {
    auto attrs(std::initializer_list<int> indices) -> std::vector<Attribute>
    {
        std::vector<Attribute> result;
        for (auto i : indices)
            result.push_back(Attribute{i});
        return result;
    }

    auto measures() -> std::vector<ComplexityMeasure>
    {
        return suite_measures();
    }

    auto oracle_corpus() -> const std::vector<DecisionTable> &
    {
        static const auto corpus = fixtures::corpus();
        return corpus;
    }
}

TEST(Solvers, ReferenceTableExample)
{
    auto h = ComplexityMeasure::depth();
    auto t = t0();
    auto th = theta(h, t);
    EXPECT_EQ(th.value, 2);
    EXPECT_EQ(th.attributes, attrs({3, 4}));
    EXPECT_TRUE(is_test(t, th.attributes));
    std::vector<Value> first{1, 1, 1};
    auto sep = s_row(h, t, first);
    EXPECT_EQ(sep.value, 2);
    EXPECT_EQ(sep.attributes, attrs({2, 3}));
    EXPECT_EQ(s_table(h, t), 2);
    EXPECT_EQ(s_hat(h, t), 2);
    auto mt = m_tuple(h, t, first);
    EXPECT_EQ(mt.value, 2);
    EXPECT_EQ(mt.fixings, (std::vector<Fixing>{{Attribute{2}, 1}, {Attribute{3}, 1}}));
    EXPECT_EQ(m_table(h, t).value, 2);
    auto d = psi_d(h, t);
    EXPECT_EQ(d.value, 2);
    ASSERT_TRUE(d.tree);
    EXPECT_TRUE(validate_deterministic(*d.tree, t).valid);
    EXPECT_EQ(tree_cost(h, *d.tree), 2);
    EXPECT_EQ(psi_d_bruteforce(h, t), 2);
    auto s = psi_s(h, t);
    EXPECT_EQ(s.value, 1);
    ASSERT_TRUE(s.tree);
    EXPECT_EQ(format_tree(*s.tree), "(root (f3 (0 (leaf 1))) (f4 (0 (leaf 1))))");
}

TEST(Solvers, ReferenceTableAdditive)
{
    auto psi = fixtures::additive();
    auto t = t0();
    // {f2,f3} leaves rows (1,1,0):1 and (1,0,0):1 distinct from (1,1,1):0 but
    // merges (0,1,1):0 with (0,0,1):1, so it is not a test.
    EXPECT_FALSE(is_test(t, attrs({2, 3})));
    auto th = theta(psi, t);
    EXPECT_EQ(th.value, oracle::theta(psi, t).value);
    EXPECT_EQ(th.value, 5);
    EXPECT_EQ(psi_s(psi, t).value, 3);
    EXPECT_EQ(psi_d(psi, t).value, psi_d_bruteforce(psi, t));
    EXPECT_EQ(psi_d(psi, t).value, 4);
}

TEST(Solvers, TrivialTables)
{
    auto h = ComplexityMeasure::depth();
    auto constant = fixtures::make(2, {0, 1}, {{0, 0, 1}, {1, 1, 1}});
    EXPECT_EQ(theta(h, constant).value, 0);
    EXPECT_TRUE(theta(h, constant).attributes.empty());
    EXPECT_EQ(m_tuple(h, constant, std::vector<Value>{0, 1}).value, 0);
    auto d = psi_d(h, constant);
    EXPECT_EQ(d.value, 0);
    ASSERT_TRUE(d.tree);
    EXPECT_EQ(format_tree(*d.tree), "(root (leaf 1))");
    EXPECT_EQ(psi_s(h, constant).value, 0);
    EXPECT_FALSE(psi_s(h, constant).tree);

    auto single = fixtures::make(2, {0}, {{1, 1}});
    EXPECT_EQ(s_row(h, single, std::vector<Value>{1}).value, 0);

    auto one = fixtures::make(2, {0}, {{0, 0}, {1, 1}});
    EXPECT_EQ(psi_d_bruteforce(h, one), 1);
    EXPECT_EQ(psi_d(h, one).value, 1);

    auto cube = fixtures::cube(2, [](const auto &) { return 0; });
    EXPECT_EQ(s_table(h, cube), 2);
}

TEST(Solvers, EmptyTableIsAllZero)
{
    for (const auto & psi : measures()) {
        auto r = full_report(psi, DecisionTable::empty());
        EXPECT_EQ(r.n, 0U);
        EXPECT_EQ(r.w, 0U);
        EXPECT_EQ(r.w_psi + r.v_psi + r.theta + r.s + r.s_hat + r.m + r.psi_d + r.psi_s, 0);
        EXPECT_FALSE(r.det_tree);
        EXPECT_TRUE(r.consistent());
    }
}

TEST(Solvers, Errors)
{
    auto h = ComplexityMeasure::depth();
    try {
        s_row(h, t0(), std::vector<Value>{1, 0, 1});
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::row_not_in_table);
    }
    try {
        m_tuple(h, t0(), std::vector<Value>{1, 0});
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::bad_tuple_length);
    }
    auto op = ComplexityMeasure::opaque("len", [](std::span<const Attribute> w) { return static_cast<Cost>(w.size()); });
    EXPECT_THROW(psi_d(op, t0()), Error);
    EXPECT_EQ(psi_d_bruteforce(op, t0()), 2);
    auto wide = fixtures::cube(5, [](const auto & v) { return v[0]; });
    EXPECT_THROW(psi_d_bruteforce(h, wide), Error);
}

TEST(Solvers, RelabeledProjectionReport)
{
    auto h = ComplexityMeasure::depth();
    auto r = full_report(h, fixtures::fig2());
    EXPECT_TRUE(r.consistent());
    EXPECT_EQ(r.n, 4U);
    EXPECT_EQ(r.w, 2U);
    EXPECT_EQ(r.theta, oracle::theta(h, fixtures::fig2()).value);
    EXPECT_EQ(r.theta, 2);
    EXPECT_EQ(r.s, oracle::s_table(h, fixtures::fig2()));
    EXPECT_EQ(r.m, oracle::m_table(h, fixtures::fig2()));
    EXPECT_EQ(r.psi_d, oracle::psi_d(h, fixtures::fig2()));
    EXPECT_EQ(r.psi_s, oracle::psi_s(h, fixtures::fig2()));
    EXPECT_EQ(r.psi_d, 2);
    EXPECT_EQ(r.psi_s, 1);
}

TEST(Solvers, AgreeWithOracles)
{
    for (const auto & psi : measures())
        for (const auto & t : oracle_corpus()) {
            auto th = theta(psi, t);
            auto o = oracle::theta(psi, t);
            ASSERT_EQ(th.value, o.value) << format_table(t) << psi.describe();
            EXPECT_EQ(th.attributes, o.attrs) << format_table(t);
            EXPECT_TRUE(is_test(t, th.attributes));
            for (std::size_t r = 0; r < t.num_rows(); ++r) {
                auto sr = s_row(psi, t, t.row(r).values);
                auto osr = oracle::s_row(psi, t, r);
                ASSERT_EQ(sr.value, osr.value) << format_table(t);
                EXPECT_EQ(sr.attributes, osr.attrs);
            }
            EXPECT_EQ(s_table(psi, t), oracle::s_table(psi, t));
            ASSERT_EQ(m_table(psi, t).value, oracle::m_table(psi, t)) << format_table(t) << psi.describe();
            ASSERT_EQ(psi_s(psi, t).value, oracle::psi_s(psi, t)) << format_table(t);
            ASSERT_EQ(psi_d(psi, t).value, oracle::psi_d(psi, t)) << format_table(t) << psi.describe();
        }
}

TEST(Solvers, WorstTupleIsFirstMaximum)
{
    auto h = ComplexityMeasure::depth();
    for (const auto & t : oracle_corpus()) {
        if (is_constant(t))
            continue;
        auto r = m_table(h, t);
        EXPECT_EQ(m_tuple(h, t, r.tuple).value, r.value);
    }
}

TEST(Solvers, DynamicProgramMatchesTreeEnumeration)
{
    for (const auto & psi : measures())
        for (const auto & t : oracle_corpus()) {
            auto d = psi_d(psi, t);
            ASSERT_EQ(d.value, psi_d_bruteforce(psi, t)) << format_table(t) << psi.describe();
            if (t.is_empty())
                continue;
            ASSERT_TRUE(d.tree);
            EXPECT_TRUE(validate_deterministic(*d.tree, t).valid);
            EXPECT_EQ(tree_cost(psi, *d.tree), d.value);
        }
}

TEST(Solvers, PrefixDependentMeasure)
{
    // max(additive a, additive b): the best suffix depends on the prefix, so
    // the DP has to key its memo on the accumulated state.
    WeightMap a{1, {{0, 5}, {1, 1}, {2, 1}}};
    WeightMap b{1, {{0, 1}, {1, 5}, {2, 1}}};
    auto psi = ComplexityMeasure::max_of({ComplexityMeasure::additive(a), ComplexityMeasure::additive(b)});
    for (const auto & t : oracle_corpus()) {
        if (t.k() != 2)
            continue;
        ASSERT_EQ(psi_d(psi, t).value, oracle::psi_d(psi, t)) << format_table(t);
    }
}

TEST(Solvers, SHatMatchesFullClosure)
{
    for (const auto & psi : measures())
        for (const auto & t : oracle_corpus()) {
            if (t.num_rows() > 4)
                continue;
            auto [members, summary] = closure_members(std::span{&t, 1}, EnumerationLimits{});
            ASSERT_TRUE(summary.exhausted());
            Cost best = 0;
            for (const auto & m : members)
                best = std::max(best, oracle::s_table(psi, m.table));
            ASSERT_EQ(s_hat(psi, t), best) << format_table(t);
        }
}

TEST(Solvers, ReportsAreConsistent)
{
    for (const auto & t : oracle_corpus()) {
        auto depth = full_report(ComplexityMeasure::depth(), t);
        ASSERT_TRUE(depth.consistent()) << format_table(t) << depth.inconsistencies.front();
        for (const auto & psi : measures()) {
            auto r = full_report(psi, t, depth);
            ASSERT_TRUE(r.consistent()) << format_table(t) << r.inconsistencies.front();
            if (r.snd_tree)
                EXPECT_TRUE(validate_strongly_nondeterministic(*r.snd_tree, t).valid);
        }
    }
}

TEST(Solvers, LemmaChecksCoverEveryLemma)
{
    auto h = ComplexityMeasure::depth();
    auto report = compute_parameters(h, t0());
    auto checks = check_lemmas(h, t0(), report, report);
    std::set<int> lemmas;
    for (const auto & c : checks) {
        lemmas.insert(c.lemma);
        EXPECT_TRUE(c.holds) << c.lemma << " " << c.detail;
    }
    for (int l = 1; l <= 11; ++l)
        EXPECT_TRUE(lemmas.count(l)) << l;

    // A doctored report must trip the checks.
    auto bad = report;
    bad.psi_s = report.psi_d + 1;
    bool tripped = false;
    for (const auto & c : check_lemmas(h, t0(), bad, bad))
        tripped = tripped || ! c.holds;
    EXPECT_TRUE(tripped);
}

TEST(Solvers, ReportText)
{
    auto kv = format_report_kv(full_report(ComplexityMeasure::depth(), t0()));
    EXPECT_NE(kv.find("N=6\n"), std::string::npos);
    EXPECT_NE(kv.find("psi_d=2\n"), std::string::npos);
    EXPECT_NE(kv.find("test={f3,f4}\n"), std::string::npos);
    EXPECT_NE(kv.find("consistent=yes\n"), std::string::npos);
}
