#include <dtc/error.hpp>
#include <dtc/table.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dtc {

DecisionTable::DecisionTable(int k, std::vector<Attribute> columns, std::vector<Row> rows) :
    _k(k),
    _columns(std::move(columns)),
    _rows(std::move(rows))
{
}

auto DecisionTable::validate(RawTable raw) -> DecisionTable
{
    if (raw.k < 2)
        throw Error(ErrorCode::bad_argument, "k must be at least 2, got " + std::to_string(raw.k));

    std::set<Attribute> seen_columns;
    for (auto a : raw.columns) {
        if (a.index < 0)
            throw Error(ErrorCode::bad_argument, "negative attribute index");
        if (! seen_columns.insert(a).second)
            throw Error(ErrorCode::duplicate_column, "column " + a.name() + " appears twice");
    }

    if (raw.columns.empty() && ! raw.rows.empty())
        throw Error(ErrorCode::zero_column_rows, "a table without columns cannot have rows");

    std::set<std::vector<Value>> seen_rows;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        const auto & row = raw.rows[r];
        if (row.values.size() != raw.columns.size())
            throw Error(ErrorCode::bad_arity, "row " + std::to_string(r) + " has " + std::to_string(row.values.size())
                    + " values for " + std::to_string(raw.columns.size()) + " columns");
        for (auto v : row.values)
            if (v < 0 || v >= raw.k)
                throw Error(ErrorCode::value_out_of_range,
                    "row " + std::to_string(r) + " has value " + std::to_string(v) + " outside E_" + std::to_string(raw.k));
        if (row.decision != 0 && row.decision != 1)
            throw Error(ErrorCode::bad_decision, "row " + std::to_string(r) + " has decision " + std::to_string(row.decision));
        if (! seen_rows.insert(row.values).second)
            throw Error(ErrorCode::duplicate_row, "row " + format_tuple(row.values) + " appears twice");
    }

    return DecisionTable(raw.k, std::move(raw.columns), std::move(raw.rows));
}

auto DecisionTable::empty(int k, std::vector<Attribute> columns) -> DecisionTable
{
    return validate(RawTable{k, std::move(columns), {}});
}

auto DecisionTable::column_of(Attribute a) const -> std::optional<std::size_t>
{
    auto it = std::find(_columns.begin(), _columns.end(), a);
    if (it == _columns.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - _columns.begin());
}

auto DecisionTable::find_row(std::span<const Value> values) const -> std::optional<std::size_t>
{
    for (std::size_t r = 0; r < _rows.size(); ++r)
        if (std::equal(values.begin(), values.end(), _rows[r].values.begin(), _rows[r].values.end()))
            return r;
    return std::nullopt;
}

auto DecisionTable::positions_of(std::span<const Attribute> attrs) const -> std::vector<std::size_t>
{
    std::vector<std::size_t> result;
    result.reserve(attrs.size());
    for (auto a : attrs) {
        auto pos = column_of(a);
        if (! pos)
            throw Error(ErrorCode::unknown_attribute, a.name() + " is not a column of the table");
        result.push_back(*pos);
    }
    return result;
}

auto restrict(const DecisionTable & table, std::span<const Fixing> fixings) -> DecisionTable
{
    std::vector<std::pair<std::size_t, Value>> checks;
    for (const auto & f : fixings) {
        auto pos = table.column_of(f.attribute);
        if (! pos)
            throw Error(ErrorCode::unknown_attribute, f.attribute.name() + " is not a column of the table");
        checks.emplace_back(*pos, f.value);
    }

    RawTable raw{table.k(), {table.columns().begin(), table.columns().end()}, {}};
    for (const auto & row : table.rows())
        if (std::all_of(checks.begin(), checks.end(), [&](auto c) { return row.values[c.first] == c.second; }))
            raw.rows.push_back(row);
    return DecisionTable::validate(std::move(raw));
}

auto is_constant(const DecisionTable & table) -> bool
{
    return is_constant(table, table.all_rows());
}

auto is_constant(const DecisionTable & table, const RowSet & rows) -> bool
{
    bool seen[2] = {false, false};
    rows.for_each([&](std::size_t r) { seen[table.decision(r)] = true; });
    return ! (seen[0] && seen[1]);
}

auto canonical_key(const DecisionTable & table) -> CanonicalKey
{
    std::ostringstream out;
    out << "k" << table.k();
    if (table.is_empty()) {
        out << ";empty";
        return CanonicalKey{out.str()};
    }
    out << ";" << format_attributes(table.columns()) << ";";
    std::vector<const Row *> sorted;
    for (const auto & row : table.rows())
        sorted.push_back(&row);
    std::sort(sorted.begin(), sorted.end(), [](const Row * a, const Row * b) {
        return std::tie(a->values, a->decision) < std::tie(b->values, b->decision);
    });
    bool first = true;
    for (const auto * row : sorted) {
        if (! first)
            out << "|";
        first = false;
        for (std::size_t i = 0; i < row->values.size(); ++i)
            out << (i ? "." : "") << row->values[i];
        out << ":" << row->decision;
    }
    return CanonicalKey{out.str()};
}

auto parse_table(std::string_view text) -> DecisionTable
{
    auto lines = detail::content_lines(text);
    if (lines.size() < 2)
        throw Error(ErrorCode::parse_error, "expected 'k' and 'attrs' lines");

    RawTable raw;
    {
        auto [line_no, line] = lines[0];
        auto words = detail::split_words(line);
        if (words.size() != 2 || words[0] != "k")
            throw detail::parse_error(line_no, "expected 'k <int>'");
        raw.k = detail::parse_int<int>(words[1], line_no);
    }
    {
        auto [line_no, line] = lines[1];
        auto words = detail::split_words(line);
        if (words.empty() || words[0] != "attrs")
            throw detail::parse_error(line_no, "expected 'attrs f<i> ...'");
        for (std::size_t i = 1; i < words.size(); ++i)
            raw.columns.push_back(detail::parse_attribute(words[i], line_no));
    }
    for (std::size_t li = 2; li < lines.size(); ++li) {
        auto [line_no, line] = lines[li];
        auto words = detail::split_words(line);
        if (words[0] != "row")
            throw detail::parse_error(line_no, "expected 'row v1 ... vn d'");
        if (words.size() != raw.columns.size() + 2)
            throw detail::parse_error(line_no, "row needs " + std::to_string(raw.columns.size()) + " values and a decision");
        Row row;
        for (std::size_t i = 1; i + 1 < words.size(); ++i)
            row.values.push_back(detail::parse_int<Value>(words[i], line_no));
        row.decision = detail::parse_int<Decision>(words.back(), line_no);
        raw.rows.push_back(std::move(row));
    }
    return DecisionTable::validate(std::move(raw));
}

auto format_table(const DecisionTable & table) -> std::string
{
    std::ostringstream out;
    out << "k " << table.k() << "\n";
    out << "attrs";
    for (auto a : table.columns())
        out << " " << a.name();
    out << "\n";
    for (const auto & row : table.rows()) {
        out << "row";
        for (auto v : row.values)
            out << " " << v;
        out << " " << row.decision << "\n";
    }
    return out.str();
}

auto read_table_file(const std::filesystem::path & path) -> DecisionTable
{
    return parse_table(detail::read_text_file(path));
}

auto write_table_file(const std::filesystem::path & path, const DecisionTable & table) -> void
{
    detail::write_text_file(path, format_table(table));
}

auto format_attributes(std::span<const Attribute> attrs) -> std::string
{
    std::string result = "{";
    for (std::size_t i = 0; i < attrs.size(); ++i)
        result += (i ? "," : "") + attrs[i].name();
    return result + "}";
}

auto format_tuple(std::span<const Value> values) -> std::string
{
    std::string result = "(";
    for (std::size_t i = 0; i < values.size(); ++i)
        result += (i ? "," : "") + std::to_string(values[i]);
    return result + ")";
}

} // namespace dtc
