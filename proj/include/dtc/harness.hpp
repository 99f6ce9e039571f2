#pragma once

#include <dtc/measure.hpp>
#include <dtc/table.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dtc {

/// The seeded generator behind every sampled table; the stream is fixed by
/// the description in GENERATOR.md.
class StableRng
{
public:
    explicit StableRng(std::uint64_t seed) :
        _engine(seed)
    {
    }

    auto next() -> std::uint64_t { return _engine(); }

    /// Uniform in [0, bound), by rejection.
    auto below(std::uint64_t bound) -> std::uint64_t;

    /// True with probability num/den.
    auto bernoulli(std::uint64_t num, std::uint64_t den) -> bool;

private:
    std::mt19937_64 _engine;
};

struct Probability
{
    std::uint64_t num = 1;
    std::uint64_t den = 2;
};

/// `rows` distinct tuples over f0..f_{cols-1}, each decision 1 with
/// probability p1. Throws too_many_rows when rows > k^cols.
auto random_table(int k, int cols, std::size_t rows, Probability p1, StableRng & rng) -> DecisionTable;
auto random_table(int k, int cols, std::size_t rows, Probability p1, std::uint64_t seed) -> DecisionTable;

/// Every table with at most max_cols columns f0.. and 1..max_rows rows,
/// once each up to row order; Lambda first if requested. Returns the count.
auto enumerate_small_tables(int k, int max_cols, std::size_t max_rows, bool include_empty,
        const std::function<void(const DecisionTable &)> & visit) -> std::size_t;

/// h, additive (f0:1, f1:3, f2:2) and max-weight (f0:2, f1:1, f2:3).
auto suite_measures() -> std::vector<ComplexityMeasure>;

enum class Suite { lemmas, dp_oracle, constructions, growth };

auto parse_suite(const std::string & name) -> Suite;
auto to_string(Suite suite) -> std::string;

/// samples == 0 selects exhaustive enumeration, otherwise that many random
/// tables with 1..max_cols columns and 1..max_rows rows.
struct VerifyConfig
{
    Suite suite = Suite::lemmas;
    int k = 2;
    int max_cols = 3;
    std::size_t max_rows = 4;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    std::vector<ComplexityMeasure> measures = suite_measures();
    std::optional<std::filesystem::path> dump_dir;
};

struct VerifyReport
{
    std::size_t tables = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    std::string text;

    auto passed() const -> bool { return failures.empty(); }
};

auto verify(const VerifyConfig & config) -> VerifyReport;

/// Drops rows while the table keeps failing; the result is locally minimal.
auto shrink_table(const DecisionTable & table, const std::function<bool(const DecisionTable &)> & fails) -> DecisionTable;

} // namespace dtc
