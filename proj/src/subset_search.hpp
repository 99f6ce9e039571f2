#pragma once

#include <dtc/measure.hpp>
#include <dtc/table.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace dtc::detail {

/// Column subsets as bit masks over table column positions.
using Mask = std::uint64_t;

struct SubsetResult
{
    Cost cost = 0;
    Mask mask = 0;
};

using MaskPredicate = std::function<bool(Mask)>;

/// Cost-minimal column subset satisfying a monotone predicate; ties go to
/// the lexicographically smallest attribute-index set. nullopt if even the
/// full set fails.
auto min_cost_subset(const ComplexityMeasure & psi, std::span<const Attribute> columns, const MaskPredicate & holds)
        -> std::optional<SubsetResult>;

/// Among cost-minimal subsets, one of minimum cardinality, then
/// lexicographically smallest.
auto min_cost_min_card_subset(const ComplexityMeasure & psi, std::span<const Attribute> columns, const MaskPredicate & holds)
        -> std::optional<SubsetResult>;

/// Columns where two rows differ.
auto difference_mask(const DecisionTable & table, std::size_t a, std::size_t b) -> Mask;

/// Predicate: the subset meets every mask. Redundant supersets are dropped.
auto hitting_predicate(std::vector<Mask> masks) -> MaskPredicate;

auto mask_attributes(std::span<const Attribute> columns, Mask mask) -> std::vector<Attribute>;

auto check_width(const DecisionTable & table) -> void;

} // namespace dtc::detail
