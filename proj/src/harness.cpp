#include <dtc/closure.hpp>
#include <dtc/constructions.hpp>
#include <dtc/error.hpp>
#include <dtc/explorer.hpp>
#include <dtc/harness.hpp>
#include <dtc/solvers.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace dtc {

auto StableRng::below(std::uint64_t bound) -> std::uint64_t
{
    if (bound == 0)
        throw Error(ErrorCode::bad_argument, "empty range");
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    // largest multiple of bound not exceeding 2^64, minus one
    auto limit = max - (max % bound + 1) % bound;
    std::uint64_t x;
    do
        x = next();
    while (x > limit);
    return x % bound;
}

auto StableRng::bernoulli(std::uint64_t num, std::uint64_t den) -> bool
{
    if (den == 0 || num > den)
        throw Error(ErrorCode::bad_argument, "probability must lie in [0, 1]");
    return below(den) < num;
}

namespace {
    auto decode(std::uint64_t rank, int k, int cols) -> std::vector<Value>
    {
        std::vector<Value> values(static_cast<std::size_t>(cols));
        for (int c = cols - 1; c >= 0; --c) {
            values[static_cast<std::size_t>(c)] = static_cast<Value>(rank % static_cast<std::uint64_t>(k));
            rank /= static_cast<std::uint64_t>(k);
        }
        return values;
    }

    auto tuple_count(int k, int cols) -> std::uint64_t
    {
        std::uint64_t total = 1;
        for (int c = 0; c < cols; ++c) {
            if (total > (std::uint64_t{1} << 40))
                throw Error(ErrorCode::too_large, "value space too large");
            total *= static_cast<std::uint64_t>(k);
        }
        return total;
    }

    auto attributes(int cols) -> std::vector<Attribute>
    {
        std::vector<Attribute> result;
        for (int c = 0; c < cols; ++c)
            result.push_back(Attribute{c});
        return result;
    }
}

auto random_table(int k, int cols, std::size_t rows, Probability p1, StableRng & rng) -> DecisionTable
{
    if (k < 2 || cols < 0)
        throw Error(ErrorCode::bad_argument, "need k >= 2 and cols >= 0");
    auto total = tuple_count(k, cols);
    if (cols == 0 && rows > 0)
        throw Error(ErrorCode::too_many_rows, "a table without columns has no rows");
    if (rows > total)
        throw Error(ErrorCode::too_many_rows, std::to_string(rows) + " rows exceed the " + std::to_string(total) + " possible tuples");

    std::vector<std::uint64_t> ranks;
    if (total <= 4096) {
        std::vector<std::uint64_t> pool(total);
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < rows; ++i) {
            auto j = i + rng.below(total - i);
            std::swap(pool[i], pool[j]);
        }
        ranks.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(rows));
    }
    else {
        std::unordered_set<std::uint64_t> seen;
        while (ranks.size() < rows) {
            auto r = rng.below(total);
            if (seen.insert(r).second)
                ranks.push_back(r);
        }
    }

    RawTable raw{k, attributes(cols), {}};
    for (auto r : ranks)
        raw.rows.push_back(Row{decode(r, k, cols), 0});
    for (auto & row : raw.rows)
        row.decision = rng.bernoulli(p1.num, p1.den) ? 1 : 0;
    return DecisionTable::validate(std::move(raw));
}

auto random_table(int k, int cols, std::size_t rows, Probability p1, std::uint64_t seed) -> DecisionTable
{
    StableRng rng(seed);
    return random_table(k, cols, rows, p1, rng);
}

auto enumerate_small_tables(int k, int max_cols, std::size_t max_rows, bool include_empty,
        const std::function<void(const DecisionTable &)> & visit) -> std::size_t
{
    if (k < 2 || max_cols < 0)
        throw Error(ErrorCode::bad_argument, "need k >= 2 and max_cols >= 0");
    std::size_t count = 0;
    if (include_empty) {
        visit(DecisionTable::empty(k));
        ++count;
    }
    for (int cols = 1; cols <= max_cols; ++cols) {
        auto total = tuple_count(k, cols);
        if (total > 64)
            throw Error(ErrorCode::too_large, "exhaustive enumeration supports at most 64 tuples per width");
        auto top = std::min<std::uint64_t>(max_rows, total);
        for (std::uint64_t size = 1; size <= top; ++size) {
            if (size > 20)
                throw Error(ErrorCode::too_large, "too many decision patterns");
            std::vector<std::uint64_t> pick(size);
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << size); ++pattern) {
                    RawTable raw{k, attributes(cols), {}};
                    for (std::size_t i = 0; i < size; ++i)
                        raw.rows.push_back(Row{decode(pick[i], k, cols), static_cast<Decision>((pattern >> (size - 1 - i)) & 1U)});
                    visit(DecisionTable::validate(std::move(raw)));
                    ++count;
                }
                std::size_t i = size;
                while (i > 0 && pick[i - 1] == total - size + (i - 1))
                    --i;
                if (i == 0)
                    break;
                ++pick[i - 1];
                for (auto j = i; j < size; ++j)
                    pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return count;
}

auto suite_measures() -> std::vector<ComplexityMeasure>
{
    WeightMap additive;
    additive.weights = {{0, 1}, {1, 3}, {2, 2}};
    WeightMap maxw;
    maxw.weights = {{0, 2}, {1, 1}, {2, 3}};
    return {ComplexityMeasure::depth(), ComplexityMeasure::additive(additive), ComplexityMeasure::max_weight(maxw)};
}

auto parse_suite(const std::string & name) -> Suite
{
    if (name == "lemmas")
        return Suite::lemmas;
    if (name == "dp-oracle")
        return Suite::dp_oracle;
    if (name == "constructions")
        return Suite::constructions;
    if (name == "growth")
        return Suite::growth;
    throw Error(ErrorCode::bad_argument, "unknown suite '" + name + "'");
}

auto to_string(Suite suite) -> std::string
{
    switch (suite) {
        case Suite::lemmas:        return "lemmas";
        case Suite::dp_oracle:     return "dp-oracle";
        case Suite::constructions: return "constructions";
        case Suite::growth:        return "growth";
    }
    return "?";
}

auto shrink_table(const DecisionTable & table, const std::function<bool(const DecisionTable &)> & fails) -> DecisionTable
{
    auto current = table;
    bool changed = true;
    while (changed && current.num_rows() > 1) {
        changed = false;
        for (std::size_t r = 0; r < current.num_rows(); ++r) {
            RawTable raw{current.k(), {current.columns().begin(), current.columns().end()}, {}};
            for (std::size_t o = 0; o < current.num_rows(); ++o)
                if (o != r)
                    raw.rows.push_back(current.row(o));
            auto candidate = DecisionTable::validate(std::move(raw));
            bool still = false;
            try {
                still = fails(candidate);
            }
            catch (const Error &) {
                still = false;
            }
            if (still) {
                current = std::move(candidate);
                changed = true;
                break;
            }
        }
    }
    return current;
}

namespace {
    /// Problems found on one table, empty when everything holds.
    using TableCheck = std::function<std::vector<std::string>(const DecisionTable &)>;

    auto guarded(const TableCheck & check, const DecisionTable & table) -> std::vector<std::string>
    {
        try {
            return check(table);
        }
        catch (const Error & e) {
            return {std::string("error: ") + e.what()};
        }
    }

    auto lemma_check(const std::vector<ComplexityMeasure> & measures, std::size_t & checks) -> TableCheck
    {
        return [&measures, &checks](const DecisionTable & table) {
            std::vector<std::string> problems;
            auto h = ComplexityMeasure::depth();
            auto depth = compute_parameters(h, table);
            for (const auto & psi : measures) {
                auto report = full_report(psi, table, depth);
                checks += check_lemmas(psi, table, report, depth).size();
                for (const auto & p : report.inconsistencies)
                    problems.push_back(psi.describe() + ": " + p);
            }
            return problems;
        };
    }

    auto oracle_check(const std::vector<ComplexityMeasure> & measures, std::size_t & checks) -> TableCheck
    {
        return [&measures, &checks](const DecisionTable & table) {
            std::vector<std::string> problems;
            for (const auto & psi : measures) {
                auto dp = psi_d(psi, table).value;
                auto brute = psi_d_bruteforce(psi, table);
                ++checks;
                if (dp != brute)
                    problems.push_back(psi.describe() + ": dp " + std::to_string(dp) + " vs brute force " + std::to_string(brute));
            }
            return problems;
        };
    }

    auto collect(std::vector<std::string> & problems, const std::string & prefix, std::span<const ConstructionCheck> checks,
            std::size_t & count) -> void
    {
        for (const auto & c : checks) {
            ++count;
            if (! c.holds)
                problems.push_back(prefix + " " + c.name + ": " + c.detail);
        }
    }

    auto construction_check(const std::vector<ComplexityMeasure> & measures, std::size_t & checks) -> TableCheck
    {
        return [&measures, &checks](const DecisionTable & table) {
            std::vector<std::string> problems;
            if (table.is_empty())
                return problems;
            if (table.num_rows() >= 2)
                for (const auto & psi : measures) {
                    collect(problems, "lemma12 " + psi.describe(), lemma12_construct(psi, table).checks, checks);
                    collect(problems, "isolate " + psi.describe(), isolate_row(psi, table, table.row(0).values).checks, checks);
                }
            collect(problems, "lemma14", lemma14_construct(table).checks, checks);
            if (is_critical(table).critical)
                collect(problems, "lemma13", adversarial_relabel(table).checks, checks);
            return problems;
        };
    }

    auto random_graph(StableRng & rng) -> ConflictGraph
    {
        ConflictGraph graph;
        graph.nodes = 1 + rng.below(8);
        for (std::size_t a = 0; a < graph.nodes; ++a)
            for (auto b = a + 1; b < graph.nodes; ++b)
                if (rng.bernoulli(1, 2))
                    graph.edges.emplace_back(a, b);
        return graph;
    }

    auto header(const VerifyConfig & config) -> std::string
    {
        std::ostringstream out;
        out << "suite " << to_string(config.suite) << " k=" << config.k << " max_cols=" << config.max_cols
            << " max_rows=" << config.max_rows << " samples=" << config.samples << " seed=" << config.seed << "\n";
        out << "measures";
        for (const auto & m : config.measures)
            out << " " << m.describe();
        out << "\n";
        return out.str();
    }

    auto growth_suite(VerifyReport & report) -> void
    {
        auto expect = [&](bool holds, const std::string & what) {
            ++report.checks;
            if (! holds)
                report.failures.push_back(what);
        };
        EnumerationLimits limits;
        limits.max_tables = 1'000'000;
        auto h = ComplexityMeasure::depth();

        auto sandwich = [&](const std::string & name, const GrowthReport & fw, const GrowthReport & ft, const GrowthReport * g,
                            std::span<const int> steps) {
            for (std::size_t i = 0; i < fw.points.size(); ++i) {
                auto n = fw.points[i].n;
                if (i > 0) {
                    expect(fw.points[i].value >= fw.points[i - 1].value, name + " FW nondecreasing at n=" + std::to_string(n));
                    expect(ft.points[i].value >= ft.points[i - 1].value, name + " FTheta nondecreasing at n=" + std::to_string(n));
                }
                if (fw.points[i].exhausted && ft.points[i].exhausted)
                    expect(fw.points[i].value <= ft.points[i].value && ft.points[i].value <= n,
                        name + " FW <= FTheta <= n at n=" + std::to_string(n));
                if (g && g->points[i].exhausted)
                    expect(g->points[i].value <= n, name + " G <= n at n=" + std::to_string(n));
                if (! steps.empty() && fw.points[i].exhausted)
                    expect(fw.points[i].value >= h_step(steps, n), name + " H_D <= FW at n=" + std::to_string(n));
            }
        };

        {
            auto gens = identity_tables(5);
            GrowthFunction fns[] = {GrowthFunction::fw, GrowthFunction::ftheta, GrowthFunction::g};
            auto reports = growth(fns, gens, h, 5, limits);
            for (const auto & r : reports)
                for (const auto & p : r.points)
                    expect(p.exhausted && p.value == p.n, "identity family " + to_string(r.fn) + "(" + std::to_string(p.n)
                            + ") = " + std::to_string(p.value) + (p.exhausted ? "" : " (not exhausted)"));
            sandwich("identity family", reports[0], reports[1], &reports[2], {});
        }
        {
            std::vector<int> steps{2, 5, 9};
            auto family = single_column_generators(steps);
            GrowthFunction fns[] = {GrowthFunction::fw, GrowthFunction::ftheta};
            auto reports = growth(fns, family.tables, family.measure, 10, limits);
            for (const auto & r : reports)
                for (const auto & p : r.points)
                    expect(p.exhausted && p.value == h_step(steps, p.n), "single-column family " + to_string(r.fn) + "("
                            + std::to_string(p.n) + ") = " + std::to_string(p.value));
            sandwich("single-column family", reports[0], reports[1], nullptr, steps);
        }
        {
            std::vector<Cost> phi{0, 1, 4, 9};
            std::vector<DecisionTable> gens;
            for (int n = 1; n <= 3; ++n) {
                gens.push_back(fig5_table(phi, n).table);
                for (const auto & c : fig5_checks(phi, n))
                    expect(c.holds, "fig5 T_" + std::to_string(n) + " " + c.name + ": " + c.detail);
            }
            auto f = growth(GrowthFunction::f, gens, fig5_measure(phi), 3, limits);
            for (const auto & p : f.points)
                if (p.n >= 1)
                    expect(p.exhausted && p.value == phi[static_cast<std::size_t>(p.n)],
                        "fig5 family F(" + std::to_string(p.n) + ") = " + std::to_string(p.value));
        }
    }
}

auto verify(const VerifyConfig & config) -> VerifyReport
{
    VerifyReport report;
    std::ostringstream out;
    out << header(config);

    if (config.suite == Suite::growth) {
        growth_suite(report);
    }
    else {
        TableCheck check;
        switch (config.suite) {
            case Suite::lemmas:        check = lemma_check(config.measures, report.checks); break;
            case Suite::dp_oracle:     check = oracle_check(config.measures, report.checks); break;
            case Suite::constructions: check = construction_check(config.measures, report.checks); break;
            case Suite::growth:        break;
        }

        std::vector<std::pair<CanonicalKey, std::string>> found;
        std::size_t dumped = 0;
        auto run = [&](const DecisionTable & table) {
            ++report.tables;
            auto problems = guarded(check, table);
            if (problems.empty())
                return;
            auto shrunk = shrink_table(table, [&](const DecisionTable & t) {
                std::size_t ignored = 0;
                TableCheck again;
                switch (config.suite) {
                    case Suite::lemmas:        again = lemma_check(config.measures, ignored); break;
                    case Suite::dp_oracle:     again = oracle_check(config.measures, ignored); break;
                    default:                   again = construction_check(config.measures, ignored); break;
                }
                return ! guarded(again, t).empty();
            });
            std::string where;
            if (config.dump_dir) {
                std::filesystem::create_directories(*config.dump_dir);
                auto path = *config.dump_dir / (to_string(config.suite) + "-" + std::to_string(dumped++) + ".dt");
                write_table_file(path, shrunk);
                where = " (dumped to " + path.string() + ")";
            }
            for (const auto & p : problems)
                found.emplace_back(canonical_key(table), canonical_key(table).text + " " + p + "; minimal " + canonical_key(shrunk).text + where);
        };

        if (config.samples == 0)
            enumerate_small_tables(config.k, config.max_cols, config.max_rows, true, run);
        else {
            StableRng rng(config.seed);
            for (std::size_t s = 0; s < config.samples; ++s) {
                auto cols = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(config.max_cols)));
                std::uint64_t space = 1;
                for (int c = 0; c < cols; ++c)
                    space *= static_cast<std::uint64_t>(config.k);
                auto rows = 1 + rng.below(std::min<std::uint64_t>(config.max_rows, space));
                run(random_table(config.k, cols, rows, Probability{1, 2}, rng));
                if (config.suite == Suite::constructions) {
                    auto graph = random_graph(rng);
                    auto coloring = two_color(graph);
                    ++report.checks;
                    if (2 * multicolored_edges(graph, coloring) < graph.edges.size())
                        found.emplace_back(CanonicalKey{"graph"}, "graph coloring cuts fewer than half of the edges");
                }
            }
        }
        std::stable_sort(found.begin(), found.end(), [](const auto & a, const auto & b) { return a.first < b.first; });
        for (auto & f : found)
            report.failures.push_back(std::move(f.second));
        out << "tables " << report.tables << "\n";
    }

    out << "checks " << report.checks << "\n";
    out << "failures " << report.failures.size() << "\n";
    for (const auto & f : report.failures)
        out << "FAIL " << f << "\n";
    out << "verdict " << (report.passed() ? "PASS" : "FAIL") << "\n";
    report.text = out.str();
    return report;
}

} // namespace dtc
