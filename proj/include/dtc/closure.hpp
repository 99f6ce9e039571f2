#pragma once

#include <dtc/table.hpp>

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <vector>

namespace dtc {

/// Decision assignment over value tuples of the remaining columns. Only the
/// restriction to the rows of the target table matters.
struct Relabeling
{
    std::map<std::vector<Value>, Decision> assignment;
};

/// I(D, T): drops the columns in D and merges rows that become equal,
/// keeping the minimum decision. Survivors keep first-occurrence order.
auto remove_columns(std::span<const Attribute> removed, const DecisionTable & table) -> DecisionTable;

/// J(nu, T). Throws partial_relabeling if some row has no image.
auto relabel(const Relabeling & nu, const DecisionTable & table) -> DecisionTable;

/// J(nu, T) with nu given positionally, one decision per row of T.
auto relabel(std::span<const Decision> decisions, const DecisionTable & table) -> DecisionTable;

/// The relabeling that reproduces a table's current decisions.
auto relabeling_of(const DecisionTable & table) -> Relabeling;

struct CriticalPair
{
    Attribute attribute;
    std::size_t first = 0;
    std::size_t second = 0;
};

struct Criticality
{
    bool critical = false;
    /// One row pair per column when critical; empty otherwise.
    std::vector<CriticalPair> pairs;
};

auto is_critical(const DecisionTable & table) -> Criticality;

struct EnumerationLimits
{
    std::size_t max_tables = 100000;
    std::size_t max_columns = std::numeric_limits<std::size_t>::max();
    std::size_t max_rows = 20;
};

struct Provenance
{
    std::size_t generator = 0;
    std::vector<Attribute> removed;
    /// Decision per row of I(removed, generator), in that table's row order.
    std::vector<Decision> decisions;
};

struct ClosureMember
{
    DecisionTable table;
    CanonicalKey key;
    Provenance provenance;
};

struct EnumerationSummary
{
    std::size_t members = 0;
    bool truncated_tables = false;
    bool truncated_columns = false;
    bool truncated_rows = false;

    auto exhausted() const -> bool { return ! (truncated_tables || truncated_columns || truncated_rows); }
};

/// Emits each member of the union of the closures of the generators once,
/// in nondecreasing (column count, row count) order. The callback returns
/// false to stop early, which counts as table truncation.
auto enumerate_closure(std::span<const DecisionTable> generators, const EnumerationLimits & limits,
        const std::function<bool(const ClosureMember &)> & emit) -> EnumerationSummary;

auto closure_members(std::span<const DecisionTable> generators, const EnumerationLimits & limits)
        -> std::pair<std::vector<ClosureMember>, EnumerationSummary>;

} // namespace dtc
