#include <dtc/closure.hpp>
#include <dtc/error.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace dtc {

auto remove_columns(std::span<const Attribute> removed, const DecisionTable & table) -> DecisionTable
{
    auto removed_positions = table.positions_of(removed);
    std::vector<bool> drop(table.num_columns(), false);
    for (auto p : removed_positions)
        drop[p] = true;

    RawTable raw{table.k(), {}, {}};
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < table.num_columns(); ++c)
        if (! drop[c]) {
            kept.push_back(c);
            raw.columns.push_back(table.columns()[c]);
        }

    if (kept.empty())
        return DecisionTable::empty(table.k());

    std::map<std::vector<Value>, std::size_t> position;
    for (const auto & row : table.rows()) {
        std::vector<Value> projected;
        projected.reserve(kept.size());
        for (auto c : kept)
            projected.push_back(row.values[c]);
        auto [it, inserted] = position.emplace(projected, raw.rows.size());
        if (inserted)
            raw.rows.push_back(Row{std::move(projected), row.decision});
        else
            raw.rows[it->second].decision = std::min(raw.rows[it->second].decision, row.decision);
    }
    return DecisionTable::validate(std::move(raw));
}

auto relabel(const Relabeling & nu, const DecisionTable & table) -> DecisionTable
{
    std::vector<Decision> decisions;
    for (const auto & row : table.rows()) {
        auto it = nu.assignment.find(row.values);
        if (it == nu.assignment.end())
            throw Error(ErrorCode::partial_relabeling, "no decision for row " + format_tuple(row.values));
        decisions.push_back(it->second);
    }
    return relabel(decisions, table);
}

auto relabel(std::span<const Decision> decisions, const DecisionTable & table) -> DecisionTable
{
    if (decisions.size() != table.num_rows())
        throw Error(ErrorCode::partial_relabeling, "expected " + std::to_string(table.num_rows()) + " decisions, got "
                + std::to_string(decisions.size()));
    RawTable raw{table.k(), {table.columns().begin(), table.columns().end()}, {table.rows().begin(), table.rows().end()}};
    for (std::size_t r = 0; r < raw.rows.size(); ++r)
        raw.rows[r].decision = decisions[r];
    return DecisionTable::validate(std::move(raw));
}

auto relabeling_of(const DecisionTable & table) -> Relabeling
{
    Relabeling result;
    for (const auto & row : table.rows())
        result.assignment[row.values] = row.decision;
    return result;
}

auto is_critical(const DecisionTable & table) -> Criticality
{
    Criticality result;
    if (table.is_empty())
        return result;
    for (std::size_t c = 0; c < table.num_columns(); ++c) {
        std::optional<CriticalPair> found;
        for (std::size_t a = 0; a < table.num_rows() && ! found; ++a)
            for (std::size_t b = a + 1; b < table.num_rows() && ! found; ++b) {
                bool only_c = true;
                for (std::size_t j = 0; j < table.num_columns() && only_c; ++j)
                    if (j != c && table.value(a, j) != table.value(b, j))
                        only_c = false;
                if (only_c)
                    found = CriticalPair{table.columns()[c], a, b};
            }
        if (! found) {
            result.pairs.clear();
            return result;
        }
        result.pairs.push_back(*found);
    }
    result.critical = true;
    return result;
}

namespace {
    struct Projection
    {
        DecisionTable table;
        Provenance provenance;
    };

    auto decision_free_key(const DecisionTable & table) -> CanonicalKey
    {
        std::vector<Decision> zeros(table.num_rows(), 0);
        return canonical_key(relabel(zeros, table));
    }
}

auto enumerate_closure(std::span<const DecisionTable> generators, const EnumerationLimits & limits,
        const std::function<bool(const ClosureMember &)> & emit) -> EnumerationSummary
{
    EnumerationSummary summary;
    std::size_t widest = 0;
    for (const auto & g : generators)
        widest = std::max(widest, g.is_empty() ? std::size_t{0} : g.num_columns());
    if (widest > limits.max_columns)
        summary.truncated_columns = true;
    auto top = std::min(widest, limits.max_columns);

    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen_members, seen_projections;

    for (std::size_t width = 0; width <= top; ++width) {
        std::vector<Projection> projections;
        for (std::size_t g = 0; g < generators.size(); ++g) {
            const auto & gen = generators[g];
            auto n = gen.is_empty() ? std::size_t{0} : gen.num_columns();
            if (gen.is_empty() && width != 0)
                continue;
            if (width > n)
                continue;

            // kept column positions in lexicographic order of combinations
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(width), true);
            do {
                std::vector<Attribute> removed;
                for (std::size_t c = 0; c < n; ++c)
                    if (! pick[c])
                        removed.push_back(gen.columns()[c]);
                auto projected = gen.is_empty() ? DecisionTable::empty(gen.k()) : remove_columns(removed, gen);
                if (! seen_projections.insert(decision_free_key(projected)).second)
                    continue;
                Provenance prov{g, removed, {}};
                projections.push_back(Projection{std::move(projected), std::move(prov)});
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }

        std::stable_sort(projections.begin(), projections.end(),
            [](const Projection & a, const Projection & b) { return a.table.num_rows() < b.table.num_rows(); });

        for (auto & proj : projections) {
            auto rows = proj.table.num_rows();
            if (rows > limits.max_rows) {
                summary.truncated_rows = true;
                continue;
            }

            std::vector<std::size_t> order(rows);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return proj.table.row(a).values < proj.table.row(b).values; });

            std::vector<Decision> decisions(rows, 0);
            for (std::uint64_t counter = 0; counter < (std::uint64_t{1} << rows); ++counter) {
                for (std::size_t i = 0; i < rows; ++i)
                    decisions[order[i]] = static_cast<Decision>((counter >> (rows - 1 - i)) & 1U);
                auto member = relabel(decisions, proj.table);
                auto key = canonical_key(member);
                if (seen_members.contains(key))
                    continue;
                if (summary.members >= limits.max_tables) {
                    summary.truncated_tables = true;
                    return summary;
                }
                seen_members.insert(key);
                ++summary.members;
                Provenance prov = proj.provenance;
                prov.decisions = decisions;
                if (! emit(ClosureMember{std::move(member), std::move(key), std::move(prov)})) {
                    summary.truncated_tables = true;
                    return summary;
                }
            }
        }
    }
    return summary;
}

auto closure_members(std::span<const DecisionTable> generators, const EnumerationLimits & limits)
        -> std::pair<std::vector<ClosureMember>, EnumerationSummary>
{
    std::vector<ClosureMember> members;
    auto summary = enumerate_closure(generators, limits, [&](const ClosureMember & m) {
        members.push_back(m);
        return true;
    });
    return {std::move(members), summary};
}

} // namespace dtc
