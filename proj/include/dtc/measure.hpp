#pragma once

#include <dtc/table.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dtc {

using Cost = std::int64_t;

/// Positive integer weights per attribute, with a positive default.
struct WeightMap
{
    Cost default_weight = 1;
    std::map<int, Cost> weights;

    auto at(Attribute a) const -> Cost
    {
        auto it = weights.find(a.index);
        return it == weights.end() ? default_weight : it->second;
    }

    friend auto operator==(const WeightMap &, const WeightMap &) -> bool = default;
};

/// Accumulated cost of a path prefix. Slots are measure-specific: one per
/// leaf measure (count, running sum, or running max).
struct CostState
{
    std::vector<Cost> slots;

    friend auto operator==(const CostState &, const CostState &) -> bool = default;
};

/// A complexity measure on attribute words. Built-ins are depth (h),
/// additive (sum of weights), and max-weight; sum_of and max_of combine two
/// or more measures. Opaque measures wrap an arbitrary function and support
/// only cost evaluation, not the incremental state contract.
class ComplexityMeasure
{
public:
    enum class Kind { depth, additive, max_weight, sum_of, max_of, opaque };
    using OpaqueFunction = std::function<Cost(std::span<const Attribute>)>;

    static auto depth() -> ComplexityMeasure;
    static auto additive(WeightMap weights) -> ComplexityMeasure;
    static auto max_weight(WeightMap weights) -> ComplexityMeasure;
    static auto sum_of(std::vector<ComplexityMeasure> children) -> ComplexityMeasure;
    static auto max_of(std::vector<ComplexityMeasure> children) -> ComplexityMeasure;
    static auto opaque(std::string name, OpaqueFunction fn) -> ComplexityMeasure;

    ComplexityMeasure() : ComplexityMeasure(depth()) {}

    auto kind() const -> Kind;
    auto weights() const -> const WeightMap &;
    auto children() const -> const std::vector<ComplexityMeasure> &;

    /// Cost of a word; words are treated as multisets.
    auto cost(std::span<const Attribute> word) const -> Cost;
    auto single(Attribute a) const -> Cost;

    /// True when initial/extend/value are available (all non-opaque kinds).
    auto decomposable() const -> bool;

    /// psi(alpha) >= |alpha| for every word, when it follows from the
    /// structure; nullopt for opaque measures, which need check_axioms.
    auto structurally_bounded() const -> std::optional<bool>;

    auto initial() const -> CostState;
    auto extend(const CostState & state, Attribute a) const -> CostState;
    auto value(const CostState & state) const -> Cost;

    auto describe() const -> std::string;

private:
    struct Node;
    explicit ComplexityMeasure(std::shared_ptr<const Node> node);

    auto slot_count() const -> std::size_t;
    auto extend_into(std::span<Cost> slots, Attribute a) const -> void;
    auto value_of(std::span<const Cost> slots) const -> Cost;

    std::shared_ptr<const Node> _node;
};

/// psi(D) for a finite attribute set; duplicates are ignored, psi(empty) = 0.
auto set_cost(const ComplexityMeasure & psi, std::span<const Attribute> attrs) -> Cost;

struct TableWeights
{
    Cost w = 0; ///< psi(P(T))
    Cost v = 0; ///< max psi(f) over columns
};

auto table_weights(const ComplexityMeasure & psi, const DecisionTable & table) -> TableWeights;

struct AxiomReport
{
    bool positivity = true;
    bool commutativity = true;
    bool nondecreasing = true;
    bool subadditive = true;
    bool bounded = true;
    std::optional<std::string> first_violation;

    auto is_measure() const -> bool { return positivity && commutativity && nondecreasing && subadditive; }
};

/// Exhaustive check over every multiset of size <= max_len drawn from pool.
auto check_axioms(const ComplexityMeasure & psi, std::span<const Attribute> pool, int max_len) -> AxiomReport;

/// .cm text format: `kind depth|additive|maxw`, `default <w>`, `weight f<i> <w>`.
auto parse_measure(std::string_view text) -> ComplexityMeasure;
auto format_measure(const ComplexityMeasure & psi) -> std::string;
auto read_measure_file(const std::filesystem::path & path) -> ComplexityMeasure;
auto write_measure_file(const std::filesystem::path & path, const ComplexityMeasure & psi) -> void;

/// Command-line measure selector: `h`/`depth`, a .cm path, or
/// `sum:a.cm,b.cm` / `max:a.cm,b.cm`.
auto measure_from_spec(const std::string & spec) -> ComplexityMeasure;

} // namespace dtc
