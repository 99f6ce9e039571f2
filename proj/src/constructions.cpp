#include <dtc/closure.hpp>
#include <dtc/constructions.hpp>
#include <dtc/error.hpp>
#include <dtc/solvers.hpp>

#include "subset_search.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dtc {

using boost::multiprecision::cpp_int;

namespace {
    auto power(Cost base, Cost exponent) -> cpp_int
    {
        return boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(exponent));
    }

    auto str(Cost v) -> std::string { return std::to_string(v); }

    auto complement(const DecisionTable & table, std::span<const Attribute> kept) -> std::vector<Attribute>
    {
        std::vector<Attribute> removed;
        for (auto a : table.columns())
            if (std::find(kept.begin(), kept.end(), a) == kept.end())
                removed.push_back(a);
        return removed;
    }

    auto project(const DecisionTable & table, std::size_t row, std::span<const Attribute> attrs) -> std::vector<Value>
    {
        std::vector<Value> result;
        for (auto a : table.columns())
            if (std::find(attrs.begin(), attrs.end(), a) != attrs.end())
                result.push_back(table.value(row, *table.column_of(a)));
        return result;
    }

    /// Cheapest separator of one row; fewest attributes, then lexicographic.
    auto separator_of(const ComplexityMeasure & psi, const DecisionTable & table, std::size_t row) -> std::vector<Attribute>
    {
        detail::check_width(table);
        std::vector<detail::Mask> masks;
        for (std::size_t o = 0; o < table.num_rows(); ++o)
            if (o != row)
                masks.push_back(detail::difference_mask(table, row, o));
        auto found = detail::min_cost_min_card_subset(psi, table.columns(), detail::hitting_predicate(std::move(masks)));
        return detail::mask_attributes(table.columns(), found->mask);
    }
}

auto two_color(const ConflictGraph & graph) -> std::vector<Color>
{
    std::vector<std::vector<std::size_t>> neighbours(graph.nodes);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : graph.edges) {
        if (a >= graph.nodes || b >= graph.nodes)
            throw Error(ErrorCode::bad_argument, "edge endpoint outside the graph");
        if (a == b)
            throw Error(ErrorCode::bad_argument, "loop at node " + std::to_string(a));
        if (! seen.insert(std::minmax(a, b)).second)
            throw Error(ErrorCode::bad_argument, "repeated edge");
        neighbours[a].push_back(b);
        neighbours[b].push_back(a);
    }

    std::vector<Color> coloring(graph.nodes, Color::blue);
    for (std::size_t v = 0; v < graph.nodes; ++v) {
        std::size_t blue = 0, green = 0;
        for (auto u : neighbours[v])
            if (u < v)
                ++(coloring[u] == Color::blue ? blue : green);
        coloring[v] = green >= blue ? Color::blue : Color::green;
    }
    return coloring;
}

auto multicolored_edges(const ConflictGraph & graph, std::span<const Color> coloring) -> std::size_t
{
    return static_cast<std::size_t>(std::count_if(graph.edges.begin(), graph.edges.end(),
        [&](auto e) { return coloring[e.first] != coloring[e.second]; }));
}

auto all_hold(std::span<const ConstructionCheck> checks) -> bool
{
    return std::all_of(checks.begin(), checks.end(), [](const auto & c) { return c.holds; });
}

auto adversarial_relabel(const DecisionTable & critical) -> AdversarialResult
{
    auto crit = is_critical(critical);
    if (! crit.critical)
        throw Error(ErrorCode::not_critical, "the table is not critical");

    AdversarialResult result;
    std::set<std::size_t> rows;
    for (const auto & p : crit.pairs) {
        rows.insert(p.first);
        rows.insert(p.second);
    }
    result.node_rows.assign(rows.begin(), rows.end());
    std::sort(result.node_rows.begin(), result.node_rows.end(),
        [&](auto a, auto b) { return critical.row(a).values < critical.row(b).values; });
    std::map<std::size_t, std::size_t> node_of;
    for (std::size_t i = 0; i < result.node_rows.size(); ++i)
        node_of[result.node_rows[i]] = i;

    result.graph.nodes = result.node_rows.size();
    for (const auto & p : crit.pairs)
        result.graph.edges.emplace_back(node_of[p.first], node_of[p.second]);
    result.coloring = two_color(result.graph);

    result.decisions.assign(critical.num_rows(), 1);
    for (std::size_t i = 0; i < result.node_rows.size(); ++i)
        if (result.coloring[i] == Color::blue)
            result.decisions[result.node_rows[i]] = 0;
    result.table = relabel(result.decisions, critical);

    auto h = ComplexityMeasure::depth();
    auto w = static_cast<Cost>(critical.num_columns());
    auto cut = multicolored_edges(result.graph, result.coloring);
    auto t = theta(h, result.table).value;
    auto hd = psi_d(h, result.table).value;
    auto k = static_cast<Cost>(critical.k());
    result.checks.push_back({"cut", 2 * cut >= result.graph.edges.size(),
        str(static_cast<Cost>(cut)) + " of " + str(static_cast<Cost>(result.graph.edges.size())) + " edges multicolored"});
    result.checks.push_back({"theta", 2 * t >= w, "Theta(T*) = " + str(t) + " >= ceil(" + str(w) + "/2)"});
    result.checks.push_back({"depth", 2 * power(k, hd) > cpp_int(w), "2*" + str(k) + "^" + str(hd) + " > " + str(w)});
    return result;
}

auto lemma12_construct(const ComplexityMeasure & psi, const DecisionTable & table) -> Lemma12Result
{
    if (table.num_rows() < 2)
        throw Error(ErrorCode::too_few_rows, "the construction needs at least two rows");

    Lemma12Result result;
    Cost best = -1;
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
        auto v = s_row(psi, table, table.row(r).values).value;
        if (v > best) {
            best = v;
            result.row = r;
        }
    }
    result.separator = separator_of(psi, table, result.row);
    auto sigma = project(table, result.row, result.separator);
    auto reduced = remove_columns(complement(table, result.separator), table);
    std::vector<Decision> nu;
    for (const auto & row : reduced.rows())
        nu.push_back(row.values == sigma ? 0 : 1);
    result.table = relabel(nu, reduced);

    auto d = psi_d(psi, result.table).value;
    auto w = table_weights(psi, result.table).w;
    auto s_star = s_table(psi, result.table);
    auto s = psi_s(psi, result.table).value;
    auto v = table_weights(psi, table).v;
    result.checks.push_back({"psi_d=W", d == w, "psi^d(T*) = " + str(d) + ", W_psi(T*) = " + str(w)});
    result.checks.push_back({"W=S*", w == s_star, "W_psi(T*) = " + str(w) + ", S_psi(T*) = " + str(s_star)});
    result.checks.push_back({"S*=S", s_star == best, "S_psi(T*) = " + str(s_star) + ", S_psi(T) = " + str(best)});
    result.checks.push_back({"psi_s<=V", s <= v, "psi^s(T*) = " + str(s) + " <= V_psi(T) = " + str(v)});
    return result;
}

auto lemma14_construct(const DecisionTable & table) -> Lemma14Result
{
    if (table.is_empty())
        throw Error(ErrorCode::too_few_rows, "the construction needs a nonempty table");

    Lemma14Result result;
    if (table.num_rows() == 1) {
        result.table = table;
        result.critical = table;
        result.checks.push_back({"bound", true, "N = 1"});
        return result;
    }

    auto h = ComplexityMeasure::depth();
    detail::check_width(table);
    std::vector<detail::Mask> masks;
    for (std::size_t a = 0; a < table.num_rows(); ++a)
        for (std::size_t b = a + 1; b < table.num_rows(); ++b)
            masks.push_back(detail::difference_mask(table, a, b));
    auto found = detail::min_cost_subset(h, table.columns(), detail::hitting_predicate(std::move(masks)));
    result.separating = detail::mask_attributes(table.columns(), found->mask);
    result.critical = remove_columns(complement(table, result.separating), table);

    auto adversarial = adversarial_relabel(result.critical);
    result.table = adversarial.table;
    result.checks = adversarial.checks;

    auto hd = psi_d(h, result.table).value;
    auto sh = s_hat(h, table);
    auto n = static_cast<Cost>(table.num_rows());
    auto k = static_cast<Cost>(table.k());
    result.checks.push_back({"bound", power(k, (hd + 2) * sh) >= cpp_int(n),
        str(k) + "^((" + str(hd) + "+2)*" + str(sh) + ") >= " + str(n)});
    return result;
}

auto isolate_row(const ComplexityMeasure & psi, const DecisionTable & table, std::span<const Value> row) -> IsolateResult
{
    auto r = table.find_row(row);
    if (! r || row.size() != table.num_columns())
        throw Error(ErrorCode::row_not_in_table, format_tuple(row) + " is not a row of the table");
    if (table.num_rows() < 2)
        throw Error(ErrorCode::too_few_rows, "the construction needs at least two rows");

    IsolateResult result;
    result.separator = separator_of(psi, table, *r);
    auto sigma = project(table, *r, result.separator);
    auto reduced = remove_columns(complement(table, result.separator), table);
    std::vector<Decision> nu;
    for (const auto & reduced_row : reduced.rows())
        nu.push_back(reduced_row.values == sigma ? 1 : 0);
    result.table = relabel(nu, reduced);

    auto s = psi_s(psi, result.table).value;
    auto w = table_weights(psi, result.table).w;
    auto target = s_row(psi, table, row).value;
    result.checks.push_back({"psi_s=W", s == w, "psi^s(T*) = " + str(s) + ", W_psi(T*) = " + str(w)});
    result.checks.push_back({"W=S(T,row)", w == target, "W_psi(T*) = " + str(w) + ", S_psi(T,row) = " + str(target)});
    return result;
}

auto validate_phi(std::span<const Cost> phi) -> void
{
    if (phi.empty() || phi[0] != 0)
        throw Error(ErrorCode::bad_phi, "phi(0) must be 0");
    for (std::size_t n = 1; n < phi.size(); ++n) {
        if (phi[n] < static_cast<Cost>(n))
            throw Error(ErrorCode::bad_phi, "phi(" + std::to_string(n) + ") = " + str(phi[n]) + " is below " + std::to_string(n));
        if (phi[n] < phi[n - 1])
            throw Error(ErrorCode::bad_phi, "phi decreases at " + std::to_string(n));
    }
}

namespace {
    auto ceil_div(Cost a, Cost b) -> Cost { return (a + b - 1) / b; }
}

auto fig5_offset(std::span<const Cost> phi, int n) -> int
{
    Cost t = 0;
    for (int i = 1; i < n; ++i)
        t += ceil_div(phi[static_cast<std::size_t>(i)], i);
    return static_cast<int>(t);
}

auto fig5_table(std::span<const Cost> phi, int n) -> Fig5Result
{
    validate_phi(phi);
    if (n < 1 || static_cast<std::size_t>(n) >= phi.size())
        throw Error(ErrorCode::bad_phi, "phi is not tabulated at n = " + std::to_string(n));

    auto value = phi[static_cast<std::size_t>(n)];
    Fig5Result result;
    result.first_column = fig5_offset(phi, n) + 1;
    result.l = value / n;
    result.j = value % n;
    auto columns = ceil_div(value, n);

    RawTable raw{2, {}, {}};
    for (Cost c = 0; c < columns; ++c)
        raw.columns.push_back(Attribute{result.first_column + static_cast<int>(c)});
    raw.rows.push_back(Row{std::vector<Value>(static_cast<std::size_t>(columns), 0), 0});
    for (Cost c = 0; c < columns; ++c) {
        std::vector<Value> unit(static_cast<std::size_t>(columns), 0);
        unit[static_cast<std::size_t>(c)] = 1;
        raw.rows.push_back(Row{std::move(unit), 1});
    }
    result.table = DecisionTable::validate(std::move(raw));
    return result;
}

auto fig5_measure(std::span<const Cost> phi) -> ComplexityMeasure
{
    validate_phi(phi);
    WeightMap weights;
    weights.weights[0] = 1;
    for (std::size_t n = 1; n < phi.size(); ++n) {
        auto built = fig5_table(phi, static_cast<int>(n));
        auto cols = built.table.columns();
        for (std::size_t c = 0; c < cols.size(); ++c)
            weights.weights[cols[c].index] = static_cast<Cost>(n);
        if (built.j != 0)
            weights.weights[cols.back().index] = built.j;
    }
    return ComplexityMeasure::additive(std::move(weights));
}

auto fig5_checks(std::span<const Cost> phi, int n) -> std::vector<ConstructionCheck>
{
    auto built = fig5_table(phi, n);
    auto psi = fig5_measure(phi);
    auto target = phi[static_cast<std::size_t>(n)];
    std::vector<Value> zero(built.table.num_columns(), 0);

    auto w = table_weights(psi, built.table).w;
    auto s = psi_s(psi, built.table).value;
    auto m = m_tuple(psi, built.table, zero).value;
    auto d = psi_d(psi, built.table).value;
    return {
        {"W=phi", w == target, "W_psi(T_n) = " + str(w) + ", phi(n) = " + str(target)},
        {"psi_s=n", s == n, "psi^s(T_n) = " + str(s)},
        {"M(zero)=phi", m == target, "M_psi(T_n, 0...0) = " + str(m)},
        {"psi_d=phi", d == target, "psi^d(T_n) = " + str(d)},
    };
}

auto decision_rule(const std::string & name) -> DecisionRule
{
    auto count_ones = [](std::span<const Value> v) { return std::count(v.begin(), v.end(), 1); };
    if (name == "zero")
        return [](std::span<const Value>) { return 0; };
    if (name == "one")
        return [](std::span<const Value>) { return 1; };
    if (name == "or")
        return [=](std::span<const Value> v) { return count_ones(v) > 0 ? 1 : 0; };
    if (name == "and")
        return [=](std::span<const Value> v) { return count_ones(v) == static_cast<std::ptrdiff_t>(v.size()) ? 1 : 0; };
    if (name == "xor")
        return [=](std::span<const Value> v) { return static_cast<Decision>(count_ones(v) % 2); };
    if (name == "first")
        return [](std::span<const Value> v) { return v.empty() ? 0 : (v.front() == 0 ? 0 : 1); };
    if (name == "last")
        return [](std::span<const Value> v) { return v.empty() ? 0 : (v.back() == 0 ? 0 : 1); };
    if (name.rfind("bits:", 0) == 0) {
        auto bits = name.substr(5);
        for (auto ch : bits)
            if (ch != '0' && ch != '1')
                throw Error(ErrorCode::bad_argument, "bits: expects a string of 0 and 1");
        auto counter = std::make_shared<std::size_t>(0);
        return [bits, counter](std::span<const Value>) -> Decision {
            if (*counter >= bits.size())
                throw Error(ErrorCode::partial_relabeling, "bits: has fewer entries than rows");
            return bits[(*counter)++] == '1' ? 1 : 0;
        };
    }
    throw Error(ErrorCode::bad_argument, "unknown decision rule '" + name + "'");
}

auto threshold_table(std::span<const int> thresholds, const DecisionRule & nu) -> DecisionTable
{
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] < 0)
            throw Error(ErrorCode::bad_argument, "thresholds are nonnegative");
        if (i > 0 && thresholds[i] <= thresholds[i - 1])
            throw Error(ErrorCode::bad_argument, "thresholds must increase strictly");
    }
    RawTable raw{2, {}, {}};
    for (auto t : thresholds)
        raw.columns.push_back(Attribute{t});
    if (thresholds.empty())
        return DecisionTable::validate(std::move(raw));
    for (std::size_t ones = 0; ones <= thresholds.size(); ++ones) {
        std::vector<Value> values(thresholds.size(), 0);
        std::fill(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(ones), 1);
        auto d = nu(values);
        raw.rows.push_back(Row{std::move(values), d});
    }
    return DecisionTable::validate(std::move(raw));
}

auto single_column_generators(std::span<const int> indices) -> GeneratorFamily
{
    GeneratorFamily family;
    WeightMap weights;
    weights.weights[0] = 1;
    std::set<int> seen;
    for (auto i : indices) {
        if (i == 0)
            throw Error(ErrorCode::contains_zero, "index 0 is reserved");
        if (i < 0)
            throw Error(ErrorCode::bad_argument, "indices are positive");
        if (! seen.insert(i).second)
            continue;
        family.tables.push_back(DecisionTable::validate(RawTable{2, {Attribute{i}}, {Row{{0}, 0}, Row{{1}, 1}}}));
        weights.weights[i] = i;
    }
    family.measure = ComplexityMeasure::additive(std::move(weights));
    return family;
}

auto identity_tables(int m) -> std::vector<DecisionTable>
{
    std::vector<DecisionTable> result;
    for (int size = 1; size <= m; ++size) {
        RawTable raw{2, {}, {}};
        for (int c = 0; c < size; ++c)
            raw.columns.push_back(Attribute{c});
        raw.rows.push_back(Row{std::vector<Value>(static_cast<std::size_t>(size), 0), 0});
        for (int c = 0; c < size; ++c) {
            std::vector<Value> unit(static_cast<std::size_t>(size), 0);
            unit[static_cast<std::size_t>(c)] = 1;
            raw.rows.push_back(Row{std::move(unit), 1});
        }
        result.push_back(DecisionTable::validate(std::move(raw)));
    }
    return result;
}

} // namespace dtc
