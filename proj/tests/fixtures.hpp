#pragma once

#include <dtc/harness.hpp>
#include <dtc/measure.hpp>
#include <dtc/table.hpp>

#include <functional>
#include <initializer_list>
#include <vector>

namespace fixtures {

using namespace dtc;

inline auto make(int k, std::initializer_list<int> attrs, std::initializer_list<std::initializer_list<int>> rows) -> DecisionTable
{
    RawTable raw{k, {}, {}};
    for (auto a : attrs)
        raw.columns.push_back(Attribute{a});
    for (auto row : rows) {
        std::vector<int> v(row);
        Row r;
        r.decision = v.back();
        r.values.assign(v.begin(), v.end() - 1);
        raw.rows.push_back(r);
    }
    return DecisionTable::validate(raw);
}

inline auto t0() -> DecisionTable
{
    return make(2, {2, 4, 3}, {{1, 1, 1, 0}, {0, 1, 1, 0}, {1, 1, 0, 1}, {0, 0, 1, 1}, {1, 0, 0, 1}, {0, 0, 0, 1}});
}

inline auto fig2() -> DecisionTable
{
    return make(2, {2, 3}, {{1, 1, 1}, {0, 1, 1}, {1, 0, 1}, {0, 0, 0}});
}

inline auto cube(int cols, std::function<int(const std::vector<int> &)> decide) -> DecisionTable
{
    RawTable raw{2, {}, {}};
    for (int c = 0; c < cols; ++c)
        raw.columns.push_back(Attribute{c});
    for (int code = 0; code < (1 << cols); ++code) {
        std::vector<int> v(static_cast<std::size_t>(cols));
        for (int c = 0; c < cols; ++c)
            v[static_cast<std::size_t>(c)] = (code >> (cols - 1 - c)) & 1;
        raw.rows.push_back(Row{v, decide(v)});
    }
    return DecisionTable::validate(raw);
}

/// Weights f2:1, f4:3, f3:2.
inline auto additive() -> ComplexityMeasure
{
    WeightMap w;
    w.weights = {{2, 1}, {4, 3}, {3, 2}};
    return ComplexityMeasure::additive(w);
}

inline auto max_weight() -> ComplexityMeasure
{
    WeightMap w;
    w.weights = {{2, 1}, {4, 3}, {3, 2}};
    return ComplexityMeasure::max_weight(w);
}

/// Every binary table up to 3 columns and 4 rows, plus seeded k=3 samples.
inline auto corpus(std::size_t samples = 150) -> std::vector<DecisionTable>
{
    std::vector<DecisionTable> result;
    enumerate_small_tables(2, 3, 4, true, [&](const DecisionTable & t) { result.push_back(t); });
    StableRng rng(2024);
    for (std::size_t s = 0; s < samples; ++s) {
        auto cols = 1 + static_cast<int>(rng.below(3));
        std::uint64_t space = 1;
        for (int c = 0; c < cols; ++c)
            space *= 3;
        auto rows = 1 + rng.below(std::min<std::uint64_t>(8, space));
        result.push_back(random_table(3, cols, rows, Probability{1, 2}, rng));
    }
    return result;
}

} // namespace fixtures
