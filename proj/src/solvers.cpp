#include <dtc/closure.hpp>
#include <dtc/error.hpp>
#include <dtc/solvers.hpp>

#include "subset_search.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dtc {

using detail::Mask;

namespace {
    auto rows_with(const DecisionTable & table, Decision d) -> std::vector<std::size_t>
    {
        std::vector<std::size_t> result;
        for (std::size_t r = 0; r < table.num_rows(); ++r)
            if (table.decision(r) == d)
                result.push_back(r);
        return result;
    }

    auto require_row(const DecisionTable & table, std::span<const Value> row) -> std::size_t
    {
        auto r = table.find_row(row);
        if (! r || row.size() != table.num_columns())
            throw Error(ErrorCode::row_not_in_table, format_tuple(row) + " is not a row of the table");
        return *r;
    }

    auto separator_masks(const DecisionTable & table, std::size_t row, std::span<const std::size_t> others) -> std::vector<Mask>
    {
        std::vector<Mask> masks;
        for (auto o : others)
            if (o != row)
                masks.push_back(detail::difference_mask(table, row, o));
        return masks;
    }

    auto to_result(std::span<const Attribute> columns, const std::optional<detail::SubsetResult> & found) -> AttributeSetResult
    {
        if (! found)
            throw Error(ErrorCode::bad_argument, "no column subset satisfies the condition");
        return AttributeSetResult{found->cost, detail::mask_attributes(columns, found->mask)};
    }

    auto all_indices(const DecisionTable & table) -> std::vector<std::size_t>
    {
        std::vector<std::size_t> result(table.num_rows());
        std::iota(result.begin(), result.end(), 0);
        return result;
    }
}

auto is_test(const DecisionTable & table, std::span<const Attribute> attrs) -> bool
{
    auto positions = table.positions_of(attrs);
    for (auto a : rows_with(table, 0))
        for (auto b : rows_with(table, 1))
            if (std::all_of(positions.begin(), positions.end(), [&](auto c) { return table.value(a, c) == table.value(b, c); }))
                return false;
    return true;
}

auto theta(const ComplexityMeasure & psi, const DecisionTable & table) -> AttributeSetResult
{
    if (is_constant(table))
        return {};
    detail::check_width(table);
    std::vector<Mask> masks;
    auto ones = rows_with(table, 1);
    for (auto a : rows_with(table, 0))
        for (auto b : ones)
            masks.push_back(detail::difference_mask(table, a, b));
    return to_result(table.columns(), detail::min_cost_subset(psi, table.columns(), detail::hitting_predicate(std::move(masks))));
}

auto s_row(const ComplexityMeasure & psi, const DecisionTable & table, std::span<const Value> row) -> AttributeSetResult
{
    auto r = require_row(table, row);
    if (table.num_rows() == 1)
        return {};
    detail::check_width(table);
    auto masks = separator_masks(table, r, all_indices(table));
    return to_result(table.columns(), detail::min_cost_subset(psi, table.columns(), detail::hitting_predicate(std::move(masks))));
}

auto s_table(const ComplexityMeasure & psi, const DecisionTable & table) -> Cost
{
    Cost result = 0;
    for (const auto & row : table.rows())
        result = std::max(result, s_row(psi, table, row.values).value);
    return result;
}

auto s_hat(const ComplexityMeasure & psi, const DecisionTable & table) -> Cost
{
    if (table.is_empty())
        return 0;
    auto w = table.num_columns();
    if (w > 20)
        throw Error(ErrorCode::too_large, "S-hat enumerates 2^W projections; W = " + std::to_string(w) + " is too large");
    Cost result = 0;
    for (Mask removed = 0; removed < (Mask{1} << w); ++removed) {
        auto projection = remove_columns(detail::mask_attributes(table.columns(), removed), table);
        result = std::max(result, s_table(psi, projection));
    }
    return result;
}

auto m_tuple(const ComplexityMeasure & psi, const DecisionTable & table, std::span<const Value> tuple) -> FixingResult
{
    if (tuple.size() != table.num_columns())
        throw Error(ErrorCode::bad_tuple_length, "tuple has " + std::to_string(tuple.size()) + " values for "
                + std::to_string(table.num_columns()) + " columns");
    for (auto v : tuple)
        if (v < 0 || v >= table.k())
            throw Error(ErrorCode::value_out_of_range, "tuple value " + std::to_string(v) + " is outside E_" + std::to_string(table.k()));
    if (is_constant(table))
        return {};
    detail::check_width(table);

    std::vector<Mask> disagree[2];
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
        Mask mask = 0;
        for (std::size_t c = 0; c < table.num_columns(); ++c)
            if (table.value(r, c) != tuple[c])
                mask |= Mask{1} << c;
        disagree[table.decision(r)].push_back(mask);
    }
    auto kills_zeros = detail::hitting_predicate(disagree[0]);
    auto kills_ones = detail::hitting_predicate(disagree[1]);
    auto found = detail::min_cost_subset(psi, table.columns(), [&](Mask m) { return kills_zeros(m) || kills_ones(m); });
    if (! found)
        throw Error(ErrorCode::bad_argument, "fixing every column must leave a constant table");

    FixingResult result{found->cost, {}};
    for (auto a : detail::mask_attributes(table.columns(), found->mask))
        result.fixings.push_back(Fixing{a, tuple[*table.column_of(a)]});
    return result;
}

auto m_table(const ComplexityMeasure & psi, const DecisionTable & table) -> TupleResult
{
    if (is_constant(table))
        return {};
    auto n = table.num_columns();
    double bits = static_cast<double>(n) * std::log2(static_cast<double>(table.k()));
    if (bits > 24.0)
        throw Error(ErrorCode::too_large, "M enumerates k^n tuples; n*log2(k) exceeds 24");

    TupleResult best;
    bool have = false;
    std::vector<Value> tuple(n, 0);
    while (true) {
        auto r = m_tuple(psi, table, tuple);
        if (! have || r.value > best.value) {
            best = TupleResult{r.value, tuple, r.fixings};
            have = true;
        }
        std::size_t i = n;
        while (i > 0 && tuple[i - 1] == table.k() - 1)
            tuple[--i] = 0;
        if (i == 0)
            break;
        ++tuple[i - 1];
    }
    return best;
}

namespace {
    struct DpKey
    {
        RowSet rows;
        CostState state;

        friend auto operator==(const DpKey &, const DpKey &) -> bool = default;
    };

    struct DpKeyHash
    {
        auto operator()(const DpKey & key) const -> std::size_t
        {
            auto h = key.rows.hash();
            for (auto s : key.state.slots)
                h ^= std::hash<Cost>{}(s) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };

    struct DpEntry
    {
        Cost value = 0;
        std::size_t column = 0;
    };

    class DeterministicSolver
    {
    public:
        DeterministicSolver(const ComplexityMeasure & psi, const DecisionTable & table) :
            _psi(psi),
            _table(table),
            _order(table.num_columns())
        {
            std::iota(_order.begin(), _order.end(), 0);
            std::sort(_order.begin(), _order.end(), [&](auto a, auto b) { return table.columns()[a] < table.columns()[b]; });
        }

        auto solve(const RowSet & rows, const CostState & state) -> Cost
        {
            if (is_constant(_table, rows))
                return _psi.value(state);
            DpKey key{rows, state};
            if (auto it = _memo.find(key); it != _memo.end())
                return it->second.value;

            auto best = std::numeric_limits<Cost>::max();
            std::size_t choice = _order.front();
            for (auto c : _order) {
                auto parts = split(rows, c);
                if (parts.size() < 2)
                    continue;
                auto next = _psi.extend(state, _table.columns()[c]);
                auto worst = _psi.value(next);
                if (worst >= best)
                    continue;
                for (const auto & part : parts) {
                    worst = std::max(worst, solve(part, next));
                    if (worst >= best)
                        break;
                }
                if (worst < best) {
                    best = worst;
                    choice = c;
                }
            }
            _memo.emplace(std::move(key), DpEntry{best, choice});
            return best;
        }

        auto build(DecisionTree & tree, std::size_t parent, std::optional<Value> label, const RowSet & rows, const CostState & state)
                -> void
        {
            if (is_constant(_table, rows)) {
                Decision d = 0;
                bool found = false;
                rows.for_each([&](std::size_t r) {
                    if (! found)
                        d = _table.decision(r);
                    found = true;
                });
                tree.add_terminal(parent, label, d);
                return;
            }
            solve(rows, state);
            auto c = _memo.at(DpKey{rows, state}).column;
            auto a = _table.columns()[c];
            auto node = tree.add_internal(parent, label, a);
            auto next = _psi.extend(state, a);
            for (Value v = 0; v < _table.k(); ++v) {
                auto part = restrict_to(rows, c, v);
                if (! part.empty())
                    build(tree, node, v, part, next);
            }
        }

    private:
        auto restrict_to(const RowSet & rows, std::size_t column, Value v) const -> RowSet
        {
            RowSet part(_table.num_rows());
            rows.for_each([&](std::size_t r) {
                if (_table.value(r, column) == v)
                    part.insert(r);
            });
            return part;
        }

        auto split(const RowSet & rows, std::size_t column) const -> std::vector<RowSet>
        {
            std::vector<RowSet> parts(static_cast<std::size_t>(_table.k()), RowSet(_table.num_rows()));
            rows.for_each([&](std::size_t r) { parts[static_cast<std::size_t>(_table.value(r, column))].insert(r); });
            std::erase_if(parts, [](const RowSet & p) { return p.empty(); });
            return parts;
        }

        const ComplexityMeasure & _psi;
        const DecisionTable & _table;
        std::vector<std::size_t> _order;
        std::unordered_map<DpKey, DpEntry, DpKeyHash> _memo;
    };
}

auto psi_d(const ComplexityMeasure & psi, const DecisionTable & table) -> TreeResult
{
    if (! psi.decomposable())
        throw Error(ErrorCode::not_decomposable, psi.describe() + " needs the brute-force solver");
    if (table.is_empty())
        return {};

    DeterministicSolver solver(psi, table);
    auto rows = table.all_rows();
    auto state = psi.initial();
    TreeResult result;
    result.value = solver.solve(rows, state);
    DecisionTree tree;
    solver.build(tree, 0, std::nullopt, rows, state);
    result.tree = std::move(tree);
    return result;
}

auto psi_s(const ComplexityMeasure & psi, const DecisionTable & table) -> TreeResult
{
    if (is_constant(table))
        return {};
    detail::check_width(table);

    auto zeros = rows_with(table, 0);
    TreeResult result;
    DecisionTree tree;
    std::set<std::vector<Attribute>> emitted;
    for (auto r : rows_with(table, 1)) {
        auto masks = separator_masks(table, r, zeros);
        auto rule = to_result(table.columns(), detail::min_cost_subset(psi, table.columns(), detail::hitting_predicate(std::move(masks))));
        result.value = std::max(result.value, rule.value);

        std::vector<Fixing> fixings;
        for (auto a : rule.attributes)
            fixings.push_back(Fixing{a, table.value(r, *table.column_of(a))});
        std::vector<Attribute> signature;
        for (const auto & f : fixings) {
            signature.push_back(f.attribute);
            signature.push_back(Attribute{f.value});
        }
        if (! emitted.insert(signature).second)
            continue;

        std::size_t parent = 0;
        std::optional<Value> label;
        for (const auto & f : fixings) {
            parent = tree.add_internal(parent, label, f.attribute);
            label = f.value;
        }
        tree.add_terminal(parent, label, 1);
    }
    result.tree = std::move(tree);
    return result;
}

auto compute_parameters(const ComplexityMeasure & psi, const DecisionTable & table) -> ParameterReport
{
    ParameterReport report;
    if (table.is_empty())
        return report;

    report.n = table.num_rows();
    report.w = table.num_columns();
    auto weights = table_weights(psi, table);
    report.w_psi = weights.w;
    report.v_psi = weights.v;

    auto t = theta(psi, table);
    report.theta = t.value;
    report.test = t.attributes;

    for (std::size_t r = 0; r < table.num_rows(); ++r) {
        auto sep = s_row(psi, table, table.row(r).values);
        report.separators.push_back(RowSeparator{r, sep.value, sep.attributes});
        report.s = std::max(report.s, sep.value);
    }
    report.s_hat = s_hat(psi, table);

    auto m = m_table(psi, table);
    report.m = m.value;
    report.worst_tuple = m.tuple;
    report.worst_fixings = m.fixings;

    auto d = psi_d(psi, table);
    report.psi_d = d.value;
    report.det_tree = std::move(d.tree);

    auto s = psi_s(psi, table);
    report.psi_s = s.value;
    report.snd_tree = std::move(s.tree);
    return report;
}

namespace {
    using boost::multiprecision::cpp_int;

    auto power(cpp_int base, Cost exponent) -> cpp_int
    {
        return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
    }

    auto str(Cost v) -> std::string { return std::to_string(v); }

    auto check(std::vector<LemmaCheck> & out, int lemma, bool holds, std::string detail) -> void
    {
        out.push_back(LemmaCheck{lemma, holds, std::move(detail)});
    }
}

auto check_lemmas(const ComplexityMeasure & psi, const DecisionTable & table, const ParameterReport & report,
        const ParameterReport & depth_report) -> std::vector<LemmaCheck>
{
    std::vector<LemmaCheck> out;
    bool lambda = table.is_empty();
    bool constant = is_constant(table);
    auto n = static_cast<Cost>(report.n);
    auto k = static_cast<Cost>(table.k());

    if (! lambda) {
        if (report.det_tree) {
            auto attrs = report.det_tree->attributes();
            check(out, 1, is_test(table, attrs), "P(det tree) = " + format_attributes(attrs) + " is a test");
        }
        if (report.snd_tree) {
            auto attrs = report.snd_tree->attributes();
            check(out, 1, is_test(table, attrs), "P(snd tree) = " + format_attributes(attrs) + " is a test");
        }

        std::vector<std::vector<Attribute>> tests;
        if (table.num_columns() <= 8) {
            for (Mask m = 1; m < (Mask{1} << table.num_columns()); ++m) {
                auto attrs = detail::mask_attributes(table.columns(), m);
                if (is_test(table, attrs))
                    tests.push_back(attrs);
            }
        }
        else if (! report.test.empty())
            tests.push_back(report.test);
        for (const auto & d : tests) {
            std::vector<Attribute> removed;
            for (auto a : table.columns())
                if (std::find(d.begin(), d.end(), a) == d.end())
                    removed.push_back(a);
            auto reduced = remove_columns(removed, table);
            auto tree = psi_d(psi, reduced).tree;
            bool holds = tree && validate_deterministic(*tree, table).valid;
            check(out, 2, holds, "optimal tree for I(P(T)\\" + format_attributes(d) + ", T) is a tree for T");
        }
    }

    check(out, 3, report.psi_d >= report.m, "psi^d = " + str(report.psi_d) + " >= M = " + str(report.m));

    if (report.m == 0)
        check(out, 4, report.psi_d == 0, "M = 0 and psi^d = " + str(report.psi_d));
    else if (n <= 1)
        check(out, 4, false, "M = " + str(report.m) + " with N = " + str(n));
    else
        check(out, 4, power(2, report.psi_d) <= power(n, report.m),
            "2^" + str(report.psi_d) + " <= " + str(n) + "^" + str(report.m));

    check(out, 5, report.psi_d <= report.theta, "psi^d = " + str(report.psi_d) + " <= Theta = " + str(report.theta));

    if (! constant)
        check(out, 6, power(k, depth_report.psi_d) > cpp_int(depth_report.theta),
            str(k) + "^" + str(depth_report.psi_d) + " > " + str(depth_report.theta));

    check(out, 7, report.m <= 2 * report.s_hat, "M = " + str(report.m) + " <= 2 * " + str(report.s_hat));
    check(out, 8, report.psi_s <= report.psi_d, "psi^s = " + str(report.psi_s) + " <= psi^d = " + str(report.psi_d));
    check(out, 9, report.psi_s <= report.s, "psi^s = " + str(report.psi_s) + " <= S = " + str(report.s));

    if (! lambda) {
        auto w = static_cast<Cost>(report.w);
        check(out, 10, cpp_int(n) <= power(k * w, depth_report.s),
            str(n) + " <= (" + str(k) + "*" + str(w) + ")^" + str(depth_report.s));
        check(out, 11, depth_report.theta <= n - 1, "Theta = " + str(depth_report.theta) + " <= N - 1 = " + str(n - 1));
    }
    return out;
}

auto full_report(const ComplexityMeasure & psi, const DecisionTable & table) -> ParameterReport
{
    if (psi.kind() == ComplexityMeasure::Kind::depth) {
        auto report = compute_parameters(psi, table);
        return full_report(psi, table, report);
    }
    return full_report(psi, table, compute_parameters(ComplexityMeasure::depth(), table));
}

auto full_report(const ComplexityMeasure & psi, const DecisionTable & table, const ParameterReport & depth_report)
        -> ParameterReport
{
    auto report = psi.kind() == ComplexityMeasure::Kind::depth ? depth_report : compute_parameters(psi, table);
    report.inconsistencies.clear();
    auto & bad = report.inconsistencies;

    if (! table.is_empty()) {
        if (! report.det_tree)
            bad.push_back("no deterministic witness tree");
        else {
            auto v = validate_deterministic(*report.det_tree, table);
            if (! v.valid)
                bad.push_back("deterministic witness invalid: " + v.diagnostics.front());
            if (tree_cost(psi, *report.det_tree) != report.psi_d)
                bad.push_back("deterministic witness cost differs from psi^d");
        }
        if (! is_test(table, report.test) || set_cost(psi, report.test) != report.theta)
            bad.push_back("test witness " + format_attributes(report.test) + " is not a test of cost Theta");
        for (const auto & sep : report.separators) {
            auto positions = table.positions_of(sep.attributes);
            for (std::size_t o = 0; o < table.num_rows(); ++o)
                if (o != sep.row
                        && std::all_of(positions.begin(), positions.end(), [&](auto c) { return table.value(o, c) == table.value(sep.row, c); }))
                    bad.push_back("separator for row " + format_tuple(table.row(sep.row).values) + " misses a row");
            if (set_cost(psi, sep.attributes) != sep.value)
                bad.push_back("separator cost mismatch");
        }
        if (! is_constant(table)) {
            auto rest = restrict(table, report.worst_fixings);
            std::vector<Attribute> attrs;
            for (const auto & f : report.worst_fixings)
                attrs.push_back(f.attribute);
            if (! is_constant(rest) || set_cost(psi, attrs) != report.m)
                bad.push_back("worst-tuple fixings do not certify M");
        }
    }
    if (! is_constant(table)) {
        if (! report.snd_tree)
            bad.push_back("no strongly nondeterministic witness tree");
        else {
            auto v = validate_strongly_nondeterministic(*report.snd_tree, table);
            if (! v.valid)
                bad.push_back("strongly nondeterministic witness invalid: " + v.diagnostics.front());
            if (tree_cost(psi, *report.snd_tree) != report.psi_s)
                bad.push_back("strongly nondeterministic witness cost differs from psi^s");
        }
    }

    for (const auto & c : check_lemmas(psi, table, report, depth_report))
        if (! c.holds)
            bad.push_back("lemma " + std::to_string(c.lemma) + " fails: " + c.detail);
    return report;
}

auto format_report(const ParameterReport & report) -> std::string
{
    std::ostringstream out;
    auto line = [&](const std::string & name, const std::string & value) {
        out << name << std::string(name.size() < 14 ? 14 - name.size() : 1, ' ') << value << "\n";
    };
    line("N", std::to_string(report.n));
    line("W", std::to_string(report.w));
    line("W_psi", str(report.w_psi));
    line("V_psi", str(report.v_psi));
    line("Theta", str(report.theta));
    line("S", str(report.s));
    line("S_hat", str(report.s_hat));
    line("M", str(report.m));
    line("psi^d", str(report.psi_d));
    line("psi^s", str(report.psi_s));
    line("test", format_attributes(report.test));
    line("worst tuple", format_tuple(report.worst_tuple));
    line("det tree", report.det_tree ? format_tree(*report.det_tree) : "none");
    line("snd tree", report.snd_tree ? format_tree(*report.snd_tree) : "none");
    line("consistent", report.consistent() ? "yes" : "no");
    for (const auto & problem : report.inconsistencies)
        out << "  ! " << problem << "\n";
    return out.str();
}

auto format_report_kv(const ParameterReport & report) -> std::string
{
    std::ostringstream out;
    out << "N=" << report.n << "\n"
        << "W=" << report.w << "\n"
        << "W_psi=" << report.w_psi << "\n"
        << "V_psi=" << report.v_psi << "\n"
        << "Theta=" << report.theta << "\n"
        << "S=" << report.s << "\n"
        << "S_hat=" << report.s_hat << "\n"
        << "M=" << report.m << "\n"
        << "psi_d=" << report.psi_d << "\n"
        << "psi_s=" << report.psi_s << "\n"
        << "test=" << format_attributes(report.test) << "\n"
        << "worst_tuple=" << format_tuple(report.worst_tuple) << "\n"
        << "det_tree=" << (report.det_tree ? format_tree(*report.det_tree) : "none") << "\n"
        << "snd_tree=" << (report.snd_tree ? format_tree(*report.snd_tree) : "none") << "\n"
        << "consistent=" << (report.consistent() ? "yes" : "no") << "\n";
    return out.str();
}

} // namespace dtc
