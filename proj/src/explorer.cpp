#include <dtc/constructions.hpp>
#include <dtc/error.hpp>
#include <dtc/explorer.hpp>
#include <dtc/solvers.hpp>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

namespace dtc {

auto parse_growth_function(const std::string & name) -> GrowthFunction
{
    if (name == "FW")
        return GrowthFunction::fw;
    if (name == "FTheta")
        return GrowthFunction::ftheta;
    if (name == "F")
        return GrowthFunction::f;
    if (name == "G")
        return GrowthFunction::g;
    throw Error(ErrorCode::bad_argument, "unknown function '" + name + "', expected FW, FTheta, F or G");
}

auto to_string(GrowthFunction fn) -> std::string
{
    switch (fn) {
        case GrowthFunction::fw:     return "FW";
        case GrowthFunction::ftheta: return "FTheta";
        case GrowthFunction::f:      return "F";
        case GrowthFunction::g:      return "G";
    }
    return "?";
}

auto h_step(std::span<const int> steps, int n) -> int
{
    int result = 0;
    for (auto s : steps)
        if (s <= n)
            result = s;
    return result;
}

namespace {
    auto parse_list(const std::string & text) -> std::vector<Cost>
    {
        std::vector<Cost> result;
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                std::size_t used = 0;
                result.push_back(std::stoll(item, &used));
                if (used != item.size())
                    throw std::invalid_argument(item);
            }
            catch (const std::logic_error &) {
                throw Error(ErrorCode::bad_argument, "expected a comma-separated integer list, got '" + text + "'");
            }
        }
        if (result.empty())
            throw Error(ErrorCode::bad_argument, "empty list in '" + text + "'");
        return result;
    }
}

auto load_generators(const std::string & spec) -> GeneratorSet
{
    GeneratorSet set;
    set.name = spec;
    if (spec.rfind("builtin:id", 0) == 0) {
        auto m = parse_list(spec.substr(10));
        if (m.size() != 1 || m[0] < 1)
            throw Error(ErrorCode::bad_argument, "builtin:id<m> needs m >= 1");
        set.tables = identity_tables(static_cast<int>(m[0]));
        return set;
    }
    if (spec.rfind("builtin:thm3:", 0) == 0) {
        for (auto i : parse_list(spec.substr(13)))
            set.steps.push_back(static_cast<int>(i));
        if (! std::is_sorted(set.steps.begin(), set.steps.end())
                || std::adjacent_find(set.steps.begin(), set.steps.end()) != set.steps.end())
            throw Error(ErrorCode::bad_argument, "thm3 indices must increase strictly");
        auto family = single_column_generators(set.steps);
        set.tables = std::move(family.tables);
        set.measure = family.measure;
        return set;
    }
    if (spec.rfind("builtin:fig5:", 0) == 0) {
        std::vector<Cost> phi{0};
        for (auto v : parse_list(spec.substr(13)))
            phi.push_back(v);
        validate_phi(phi);
        for (std::size_t n = 1; n < phi.size(); ++n)
            set.tables.push_back(fig5_table(phi, static_cast<int>(n)).table);
        set.measure = fig5_measure(phi);
        return set;
    }
    if (spec.rfind("builtin:", 0) == 0)
        throw Error(ErrorCode::bad_argument, "unknown builtin generator '" + spec + "'");

    std::filesystem::path path(spec);
    if (std::filesystem::is_directory(path)) {
        std::vector<std::filesystem::path> files;
        for (const auto & entry : std::filesystem::directory_iterator(path))
            if (entry.path().extension() == ".dt")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto & f : files)
            set.tables.push_back(read_table_file(f));
        if (set.tables.empty())
            throw Error(ErrorCode::bad_argument, "no .dt files in " + spec);
        return set;
    }
    set.tables.push_back(read_table_file(path));
    return set;
}

auto require_bounded(const ComplexityMeasure & psi, std::span<const DecisionTable> generators) -> void
{
    auto structural = psi.structurally_bounded();
    if (structural) {
        if (! *structural)
            throw Error(ErrorCode::unbounded_measure, psi.describe() + " is not bounded: psi(alpha) >= |alpha| fails");
        return;
    }
    std::set<Attribute> pool;
    for (const auto & g : generators)
        for (auto a : g.columns())
            pool.insert(a);
    std::vector<Attribute> attrs(pool.begin(), pool.end());
    if (attrs.size() > 4)
        attrs.resize(4);
    auto report = check_axioms(psi, attrs, 4);
    if (! report.is_measure() || ! report.bounded)
        throw Error(ErrorCode::unbounded_measure,
            psi.describe() + " failed the exhaustive check: " + report.first_violation.value_or("unknown"));
}

auto growth(std::span<const GrowthFunction> fns, std::span<const DecisionTable> generators, const ComplexityMeasure & psi,
        int max_n, const EnumerationLimits & limits) -> std::vector<GrowthReport>
{
    if (max_n < 0)
        throw Error(ErrorCode::bad_argument, "max-n must be nonnegative");
    require_bounded(psi, generators);

    bool width_bounded = std::all_of(fns.begin(), fns.end(),
        [](auto fn) { return fn == GrowthFunction::fw || fn == GrowthFunction::g; });
    auto effective = limits;
    // A bounded measure forces |P(T)| <= W_psi(T), so wider members never pass.
    if (width_bounded)
        effective.max_columns = std::min(limits.max_columns, static_cast<std::size_t>(max_n));

    auto size = static_cast<std::size_t>(max_n) + 1;
    std::vector<std::vector<Cost>> best(fns.size(), std::vector<Cost>(size, 0));
    auto bump = [&](std::size_t i, Cost filter, Cost objective) {
        if (filter <= max_n)
            best[i][static_cast<std::size_t>(filter)] = std::max(best[i][static_cast<std::size_t>(filter)], objective);
    };

    auto summary = enumerate_closure(generators, effective, [&](const ClosureMember & member) {
        const auto & t = member.table;
        auto w = table_weights(psi, t).w;
        std::optional<Cost> d, s, th;
        auto get_d = [&] { if (! d) d = psi_d(psi, t).value; return *d; };
        auto get_s = [&] { if (! s) s = psi_s(psi, t).value; return *s; };
        auto get_theta = [&] { if (! th) th = theta(psi, t).value; return *th; };
        for (std::size_t i = 0; i < fns.size(); ++i) {
            switch (fns[i]) {
                case GrowthFunction::fw:
                    if (w <= max_n)
                        bump(i, w, get_d());
                    break;
                case GrowthFunction::g:
                    if (w <= max_n)
                        bump(i, w, get_s());
                    break;
                case GrowthFunction::ftheta:
                    if (get_theta() <= max_n)
                        bump(i, get_theta(), get_d());
                    break;
                case GrowthFunction::f:
                    if (get_s() <= max_n)
                        bump(i, get_s(), get_d());
                    break;
            }
        }
        return true;
    });

    std::vector<GrowthReport> reports;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        GrowthReport report;
        report.fn = fns[i];
        report.measure = psi.describe();
        report.limits = effective;
        report.members = summary.members;
        Cost running = 0;
        for (int n = 0; n <= max_n; ++n) {
            running = std::max(running, best[i][static_cast<std::size_t>(n)]);
            GrowthPoint p;
            p.n = n;
            p.value = running;
            bool columns_ok = ! summary.truncated_columns
                || (width_bounded && static_cast<std::size_t>(n) <= effective.max_columns);
            p.exhausted = ! summary.truncated_tables && ! summary.truncated_rows && columns_ok;
            p.possibly_undefined = fns[i] == GrowthFunction::f && ! p.exhausted;
            report.points.push_back(p);
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

auto growth(GrowthFunction fn, std::span<const DecisionTable> generators, const ComplexityMeasure & psi, int max_n,
        const EnumerationLimits & limits) -> GrowthReport
{
    GrowthFunction fns[] = {fn};
    return growth(fns, generators, psi, max_n, limits).front();
}

auto class_stats(std::span<const DecisionTable> generators, const ComplexityMeasure & psi, Cost n,
        const EnumerationLimits & limits) -> ClassStats
{
    require_bounded(psi, generators);
    auto h = ComplexityMeasure::depth();
    ClassStats stats;
    auto summary = enumerate_closure(generators, limits, [&](const ClosureMember & member) {
        if (table_weights(psi, member.table).v > n)
            return true;
        ++stats.members;
        stats.s = std::max(stats.s, s_table(h, member.table));
        stats.n_rows = std::max(stats.n_rows, member.table.num_rows());
        return true;
    });
    stats.exhausted = summary.exhausted();
    return stats;
}

auto format_growth(const GrowthReport & report) -> std::string
{
    std::ostringstream out;
    out << "function  " << to_string(report.fn) << "\n";
    if (! report.generator.empty())
        out << "generator " << report.generator << "\n";
    out << "measure   " << report.measure << "\n";
    out << "members   " << report.members << "\n";
    out << "n\tvalue\texhausted\n";
    for (const auto & p : report.points) {
        out << p.n << "\t" << p.value << "\t" << (p.exhausted ? "yes" : "no");
        if (p.possibly_undefined)
            out << "\tpossibly-undefined";
        out << "\n";
    }
    return out.str();
}

auto format_growth_csv(const GrowthReport & report) -> std::string
{
    std::ostringstream out;
    out << "n,value,exhausted\n";
    for (const auto & p : report.points)
        out << p.n << "," << p.value << "," << (p.exhausted ? 1 : 0) << "\n";
    return out.str();
}

} // namespace dtc
