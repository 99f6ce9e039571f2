#pragma once

#include <dtc/row_set.hpp>

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtc {

using Value = int;
using Decision = int;

/// The attribute f_i; only the index is kept.
struct Attribute
{
    int index = 0;

    auto name() const -> std::string { return "f" + std::to_string(index); }

    friend auto operator<=>(const Attribute &, const Attribute &) = default;
};

struct Row
{
    std::vector<Value> values;
    Decision decision = 0;

    friend auto operator==(const Row &, const Row &) -> bool = default;
};

/// Unvalidated table data, as read from a file or assembled by hand.
struct RawTable
{
    int k = 2;
    std::vector<Attribute> columns;
    std::vector<Row> rows;
};

/// A (column attribute, value) pair used to select rows.
struct Fixing
{
    Attribute attribute;
    Value value = 0;

    friend auto operator==(const Fixing &, const Fixing &) -> bool = default;
};

/// Opaque identity of a table up to row permutation. All tables without
/// rows over the same k share one key.
struct CanonicalKey
{
    std::string text;

    friend auto operator<=>(const CanonicalKey &, const CanonicalKey &) = default;
};

struct CanonicalKeyHash
{
    auto operator()(const CanonicalKey & key) const -> std::size_t { return std::hash<std::string>{}(key.text); }
};

/// A validated decision table with 0-1 decisions over E_k. Immutable.
///
/// Rows keep their input order; every semantic operation is insensitive to
/// it and canonical_key() is the equality arbiter. Operator== is the strict
/// ordered comparison used for bit-exact checks.
class DecisionTable
{
public:
    /// Throws Error with duplicate_row, duplicate_column, value_out_of_range,
    /// bad_decision, bad_arity or zero_column_rows.
    static auto validate(RawTable raw) -> DecisionTable;

    /// The empty table (Lambda) over E_k, optionally keeping a column set.
    static auto empty(int k = 2, std::vector<Attribute> columns = {}) -> DecisionTable;

    DecisionTable() : DecisionTable(empty()) {}

    auto k() const -> int { return _k; }
    auto columns() const -> std::span<const Attribute> { return _columns; }
    auto rows() const -> std::span<const Row> { return _rows; }
    auto row(std::size_t i) const -> const Row & { return _rows[i]; }
    auto value(std::size_t row, std::size_t column) const -> Value { return _rows[row].values[column]; }
    auto decision(std::size_t row) const -> Decision { return _rows[row].decision; }

    auto num_rows() const -> std::size_t { return _rows.size(); }
    auto num_columns() const -> std::size_t { return _columns.size(); }
    auto is_empty() const -> bool { return _rows.empty(); }

    auto column_of(Attribute a) const -> std::optional<std::size_t>;
    auto find_row(std::span<const Value> values) const -> std::optional<std::size_t>;

    /// Column position of every attribute, throwing unknown_attribute otherwise.
    auto positions_of(std::span<const Attribute> attrs) const -> std::vector<std::size_t>;

    auto all_rows() const -> RowSet { return RowSet::full(_rows.size()); }

    friend auto operator==(const DecisionTable &, const DecisionTable &) -> bool = default;

private:
    DecisionTable(int k, std::vector<Attribute> columns, std::vector<Row> rows);

    int _k = 2;
    std::vector<Attribute> _columns;
    std::vector<Row> _rows;
};

/// Keeps exactly the rows matching every fixing, in their original order.
auto restrict(const DecisionTable & table, std::span<const Fixing> fixings) -> DecisionTable;

/// Membership in the constant class; the empty table is constant.
auto is_constant(const DecisionTable & table) -> bool;
auto is_constant(const DecisionTable & table, const RowSet & rows) -> bool;

auto canonical_key(const DecisionTable & table) -> CanonicalKey;

/// Parses the line-oriented .dt text format.
auto parse_table(std::string_view text) -> DecisionTable;
auto format_table(const DecisionTable & table) -> std::string;
auto read_table_file(const std::filesystem::path & path) -> DecisionTable;
auto write_table_file(const std::filesystem::path & path, const DecisionTable & table) -> void;

auto format_attributes(std::span<const Attribute> attrs) -> std::string;
auto format_tuple(std::span<const Value> values) -> std::string;

} // namespace dtc
