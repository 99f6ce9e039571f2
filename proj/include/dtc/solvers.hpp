#pragma once

#include <dtc/measure.hpp>
#include <dtc/table.hpp>
#include <dtc/tree.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dtc {

/// A cost-minimal attribute set. Ties are broken towards the
/// lexicographically smallest index set.
struct AttributeSetResult
{
    Cost value = 0;
    std::vector<Attribute> attributes;
};

struct FixingResult
{
    Cost value = 0;
    std::vector<Fixing> fixings;
};

struct TupleResult
{
    Cost value = 0;
    std::vector<Value> tuple;
    std::vector<Fixing> fixings;
};

struct TreeResult
{
    Cost value = 0;
    /// Absent for the empty table (psi^d) and for constant tables (psi^s).
    std::optional<DecisionTree> tree;
};

/// D is a test if rows with different decisions differ on D.
auto is_test(const DecisionTable & table, std::span<const Attribute> attrs) -> bool;

auto theta(const ComplexityMeasure & psi, const DecisionTable & table) -> AttributeSetResult;

/// Cheapest set separating one row from all other rows.
auto s_row(const ComplexityMeasure & psi, const DecisionTable & table, std::span<const Value> row) -> AttributeSetResult;
auto s_table(const ComplexityMeasure & psi, const DecisionTable & table) -> Cost;

/// Maximum of S over all column-removal projections of the table.
auto s_hat(const ComplexityMeasure & psi, const DecisionTable & table) -> Cost;

auto m_tuple(const ComplexityMeasure & psi, const DecisionTable & table, std::span<const Value> tuple) -> FixingResult;

/// Maximum over every tuple of E_k^n, visited with the first column most
/// significant; the first maximizing tuple is reported.
auto m_table(const ComplexityMeasure & psi, const DecisionTable & table) -> TupleResult;

/// Exact minimum cost of a deterministic tree by dynamic programming over
/// (row subset, accumulated cost state). Throws not_decomposable for opaque
/// measures.
auto psi_d(const ComplexityMeasure & psi, const DecisionTable & table) -> TreeResult;

/// Exhaustive enumeration of deterministic trees; guarded to W <= 4, k <= 3.
auto psi_d_bruteforce(const ComplexityMeasure & psi, const DecisionTable & table) -> Cost;

/// Maximum over 1-rows of the cheapest true rule covering that row. The
/// witness has one root branch per distinct chosen rule.
auto psi_s(const ComplexityMeasure & psi, const DecisionTable & table) -> TreeResult;

struct RowSeparator
{
    std::size_t row = 0;
    Cost value = 0;
    std::vector<Attribute> attributes;
};

struct ParameterReport
{
    std::size_t n = 0;       ///< N(T)
    std::size_t w = 0;       ///< W(T) = |P(T)|
    Cost w_psi = 0;
    Cost v_psi = 0;
    Cost theta = 0;
    Cost s = 0;
    Cost s_hat = 0;
    Cost m = 0;
    Cost psi_d = 0;
    Cost psi_s = 0;

    std::vector<Attribute> test;
    std::vector<RowSeparator> separators;
    std::vector<Value> worst_tuple;
    std::vector<Fixing> worst_fixings;
    std::optional<DecisionTree> det_tree;
    std::optional<DecisionTree> snd_tree;

    /// Failed witness validations or lemma checks; empty when consistent.
    std::vector<std::string> inconsistencies;

    auto consistent() const -> bool { return inconsistencies.empty(); }
};

/// Parameters and witnesses only, without cross-checks.
auto compute_parameters(const ComplexityMeasure & psi, const DecisionTable & table) -> ParameterReport;

struct LemmaCheck
{
    int lemma = 0;
    bool holds = true;
    std::string detail;
};

/// The inequalities of lemmas 1 to 11 for the given reports. The depth
/// report supplies the unweighted quantities some lemmas speak about.
/// Lemma 2 is checked on every nonempty test when W <= 8, else on the
/// witness test.
auto check_lemmas(const ComplexityMeasure & psi, const DecisionTable & table, const ParameterReport & report,
        const ParameterReport & depth_report) -> std::vector<LemmaCheck>;

/// compute_parameters plus witness validation and every lemma check.
auto full_report(const ComplexityMeasure & psi, const DecisionTable & table) -> ParameterReport;

/// As above, reusing an already computed depth report.
auto full_report(const ComplexityMeasure & psi, const DecisionTable & table, const ParameterReport & depth_report)
        -> ParameterReport;

auto format_report(const ParameterReport & report) -> std::string;
auto format_report_kv(const ParameterReport & report) -> std::string;

} // namespace dtc
