#pragma once

#include <dtc/measure.hpp>
#include <dtc/table.hpp>

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dtc {

enum class Color { blue, green };

/// Simple undirected graph on nodes 0..nodes-1.
struct ConflictGraph
{
    std::size_t nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Greedy coloring in node order: each node takes the color that cuts more
/// edges to already colored neighbours, blue on ties. Throws bad_argument
/// on loops or repeated edges.
auto two_color(const ConflictGraph & graph) -> std::vector<Color>;
auto multicolored_edges(const ConflictGraph & graph, std::span<const Color> coloring) -> std::size_t;

/// One postcondition of a construction, evaluated with the exact solvers.
struct ConstructionCheck
{
    std::string name;
    bool holds = true;
    std::string detail;
};

auto all_hold(std::span<const ConstructionCheck> checks) -> bool;

struct AdversarialResult
{
    DecisionTable table;
    std::vector<Decision> decisions;      ///< nu, per row of the input
    ConflictGraph graph;
    std::vector<std::size_t> node_rows;   ///< input row of each graph node
    std::vector<Color> coloring;
    std::vector<ConstructionCheck> checks;
};

/// Relabels a critical table so that at least half of its columns are
/// forced into every test. Throws not_critical.
auto adversarial_relabel(const DecisionTable & critical) -> AdversarialResult;

struct Lemma12Result
{
    DecisionTable table;
    std::size_t row = 0;                  ///< row of the input maximizing S
    std::vector<Attribute> separator;
    std::vector<ConstructionCheck> checks;
};

/// Throws too_few_rows when N < 2.
auto lemma12_construct(const ComplexityMeasure & psi, const DecisionTable & table) -> Lemma12Result;

struct Lemma14Result
{
    DecisionTable table;
    std::vector<Attribute> separating;    ///< smallest set separating all rows
    DecisionTable critical;               ///< the input restricted to that set
    std::vector<ConstructionCheck> checks;
};

/// Throws too_few_rows for the empty table. A single-row table is returned
/// unchanged.
auto lemma14_construct(const DecisionTable & table) -> Lemma14Result;

struct IsolateResult
{
    DecisionTable table;
    std::vector<Attribute> separator;
    std::vector<ConstructionCheck> checks;
};

/// Keeps a cheapest separator of the row and labels only its projection 1.
auto isolate_row(const ComplexityMeasure & psi, const DecisionTable & table, std::span<const Value> row) -> IsolateResult;

/// phi tabulated as phi[0..max_n] with phi[0] = 0.
struct Fig5Result
{
    DecisionTable table;
    int first_column = 0;                 ///< t(n) + 1
    Cost l = 0;                           ///< phi(n) = l*n + j
    Cost j = 0;
};

/// Throws bad_phi unless phi is nondecreasing with phi(n) >= n.
auto validate_phi(std::span<const Cost> phi) -> void;
auto fig5_offset(std::span<const Cost> phi, int n) -> int;
auto fig5_table(std::span<const Cost> phi, int n) -> Fig5Result;

/// Additive measure carrying the weights of every T_1..T_max_n, f0 weighing 1.
auto fig5_measure(std::span<const Cost> phi) -> ComplexityMeasure;

/// Runs the exact solvers on T_n. Kept separate because psi^d is costly.
auto fig5_checks(std::span<const Cost> phi, int n) -> std::vector<ConstructionCheck>;

using DecisionRule = std::function<Decision(std::span<const Value>)>;

/// Named rules: zero, one, or, and, xor, first, last, or `bits:<d...>`
/// giving one decision per row in table order.
auto decision_rule(const std::string & name) -> DecisionRule;

/// Threshold attributes f_i(a) = [a >= i] on the real line; rows are the
/// realizable step patterns from all-zero to all-one.
auto threshold_table(std::span<const int> thresholds, const DecisionRule & nu) -> DecisionTable;

struct GeneratorFamily
{
    std::vector<DecisionTable> tables;
    ComplexityMeasure measure;
};

/// One table (0):0, (1):1 on column f_i per i, with weights f_i = i and f0 = 1.
/// Throws contains_zero.
auto single_column_generators(std::span<const int> indices) -> GeneratorFamily;

/// Tables I_1..I_m: columns f0..f_{m-1}, the zero row labeled 0 and every
/// unit row labeled 1.
auto identity_tables(int m) -> std::vector<DecisionTable>;

} // namespace dtc
