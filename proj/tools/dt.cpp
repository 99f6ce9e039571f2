#include <dtc/closure.hpp>
#include <dtc/constructions.hpp>
#include <dtc/error.hpp>
#include <dtc/explorer.hpp>
#include <dtc/harness.hpp>
#include <dtc/solvers.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace dtc;

namespace {
    constexpr int exit_failure = 1;
    constexpr int exit_usage = 2;

    auto parse_values(const std::string & text) -> std::vector<int>
    {
        std::vector<int> result;
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(item, &used);
            }
            catch (const std::logic_error &) {
                used = 0;
            }
            if (used == 0 || used != item.size())
                throw Error(ErrorCode::bad_argument, "expected comma-separated integers, got '" + text + "'");
            result.push_back(v);
        }
        return result;
    }

    auto measure_or_depth(const std::string & spec) -> ComplexityMeasure
    {
        return spec.empty() ? ComplexityMeasure::depth() : measure_from_spec(spec);
    }

    auto emit_table(const DecisionTable & table, const std::string & out) -> void
    {
        if (out.empty())
            std::cout << format_table(table);
        else
            write_table_file(out, table);
    }

    auto report_checks(std::span<const ConstructionCheck> checks) -> int
    {
        for (const auto & c : checks)
            std::cout << "# check " << c.name << ": " << (c.holds ? "ok" : "FAILED") << " (" << c.detail << ")\n";
        return all_hold(checks) ? 0 : exit_failure;
    }

    auto format_provenance(const ClosureMember & member, const DecisionTable & generator) -> std::string
    {
        auto projected = remove_columns(member.provenance.removed, generator);
        std::string nu;
        for (std::size_t r = 0; r < projected.num_rows(); ++r)
            nu += (r ? ";" : "") + format_tuple(projected.row(r).values) + "->" + std::to_string(member.provenance.decisions[r]);
        return "gen=" + std::to_string(member.provenance.generator) + " D=" + format_attributes(member.provenance.removed)
            + " nu=" + nu;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Exact parameters, trees and closures of decision tables with 0-1 decisions"};
    app.require_subcommand(1);
    int status = 0;

    // params
    std::string params_table, params_measure;
    bool params_kv = false;
    auto * params = app.add_subcommand("params", "Compute every table parameter with witnesses");
    params->add_option("table", params_table, "table file (.dt)")->required();
    params->add_option("-m,--measure", params_measure, "h, a .cm file, sum:a,b or max:a,b");
    params->add_flag("--kv", params_kv, "key=value output");
    params->callback([&] {
        auto table = read_table_file(params_table);
        auto report = full_report(measure_or_depth(params_measure), table);
        std::cout << (params_kv ? format_report_kv(report) : format_report(report));
        status = report.consistent() ? 0 : exit_failure;
    });

    // tree
    std::string tree_kind, tree_table, tree_measure, tree_out;
    auto * tree = app.add_subcommand("tree", "Optimal deterministic (det) or strongly nondeterministic (snd) tree");
    tree->add_option("kind", tree_kind, "det or snd")->required()->check(CLI::IsMember({"det", "snd"}));
    tree->add_option("table", tree_table, "table file (.dt)")->required();
    tree->add_option("-m,--measure", tree_measure, "measure");
    tree->add_option("-o,--out", tree_out, "write the tree here");
    tree->callback([&] {
        auto table = read_table_file(tree_table);
        auto psi = measure_or_depth(tree_measure);
        auto result = tree_kind == "det" ? psi_d(psi, table) : psi_s(psi, table);
        std::cout << "# cost " << result.value << "\n";
        if (! result.tree) {
            std::cout << "# no tree: " << (tree_kind == "det" ? "the table is empty" : "the table is constant") << "\n";
            return;
        }
        std::cout << format_tree(*result.tree) << "\n";
        if (! tree_out.empty())
            write_tree_file(tree_out, *result.tree);
    });

    // closure
    std::string closure_table, closure_out;
    std::size_t closure_limit = 10000, closure_rows = 20;
    auto * closure = app.add_subcommand("closure", "Enumerate the closure of a table");
    closure->add_option("table", closure_table, "table file (.dt)")->required();
    closure->add_option("--out", closure_out, "output directory")->required();
    closure->add_option("--limit", closure_limit, "maximum number of members");
    closure->add_option("--max-rows", closure_rows, "skip projections with more rows");
    closure->callback([&] {
        auto table = read_table_file(closure_table);
        std::filesystem::create_directories(closure_out);
        std::ofstream index(std::filesystem::path(closure_out) / "index.txt");
        EnumerationLimits limits;
        limits.max_tables = closure_limit;
        limits.max_rows = closure_rows;
        std::vector<DecisionTable> gens{table};
        std::size_t count = 0;
        auto summary = enumerate_closure(gens, limits, [&](const ClosureMember & m) {
            std::ostringstream name;
            name << "member-" << std::setw(6) << std::setfill('0') << count++ << ".dt";
            write_table_file(std::filesystem::path(closure_out) / name.str(), m.table);
            index << name.str() << " key=" << m.key.text << " " << format_provenance(m, table) << "\n";
            return true;
        });
        index << "exhausted " << (summary.exhausted() ? "yes" : "no") << "\n";
        std::cout << "members " << summary.members << "\nexhausted " << (summary.exhausted() ? "yes" : "no") << "\n";
    });

    // construct
    auto * construct = app.add_subcommand("construct", "Run one of the constructions");
    construct->require_subcommand(1);
    std::string c_table, c_measure, c_out, c_row, c_phi, c_thresholds, c_nu = "xor", c_indices, c_measure_out;
    int c_n = 1;

    auto * l12 = construct->add_subcommand("lemma12", "Table whose psi^d, W_psi and S_psi all equal S_psi of the input");
    l12->add_option("table", c_table)->required();
    l12->add_option("-m,--measure", c_measure);
    l12->add_option("-o,--out", c_out);
    l12->callback([&] {
        auto r = lemma12_construct(measure_or_depth(c_measure), read_table_file(c_table));
        emit_table(r.table, c_out);
        std::cout << "# row " << r.row << " separator " << format_attributes(r.separator) << "\n";
        status = report_checks(r.checks);
    });

    auto * l13 = construct->add_subcommand("lemma13", "Adversarial relabeling of a critical table");
    l13->add_option("table", c_table)->required();
    l13->add_option("-o,--out", c_out);
    l13->callback([&] {
        auto r = adversarial_relabel(read_table_file(c_table));
        emit_table(r.table, c_out);
        status = report_checks(r.checks);
    });

    auto * l14 = construct->add_subcommand("lemma14", "Relabeled critical restriction of a table");
    l14->add_option("table", c_table)->required();
    l14->add_option("-o,--out", c_out);
    l14->callback([&] {
        auto r = lemma14_construct(read_table_file(c_table));
        emit_table(r.table, c_out);
        std::cout << "# separating set " << format_attributes(r.separating) << "\n";
        status = report_checks(r.checks);
    });

    auto * iso = construct->add_subcommand("isolate", "Keep a cheapest separator of a row and label only that row 1");
    iso->add_option("table", c_table)->required();
    iso->add_option("--row", c_row, "row values, e.g. 1,1,1")->required();
    iso->add_option("-m,--measure", c_measure);
    iso->add_option("-o,--out", c_out);
    iso->callback([&] {
        auto row = parse_values(c_row);
        auto r = isolate_row(measure_or_depth(c_measure), read_table_file(c_table), row);
        emit_table(r.table, c_out);
        std::cout << "# separator " << format_attributes(r.separator) << "\n";
        status = report_checks(r.checks);
    });

    auto * fig5 = construct->add_subcommand("fig5", "Table T_n of the unit-row family and its additive measure");
    fig5->add_option("--phi", c_phi, "phi(1),phi(2),...")->required();
    fig5->add_option("--n", c_n, "index n")->required();
    fig5->add_option("-o,--out", c_out);
    fig5->add_option("--measure-out", c_measure_out, "write the measure (.cm)");
    fig5->callback([&] {
        std::vector<Cost> phi{0};
        for (auto v : parse_values(c_phi))
            phi.push_back(v);
        auto r = fig5_table(phi, c_n);
        emit_table(r.table, c_out);
        std::cout << "# t(n)+1 = " << r.first_column << ", phi(n) = " << r.l << "*n + " << r.j << "\n";
        if (! c_measure_out.empty())
            write_measure_file(c_measure_out, fig5_measure(phi));
        status = report_checks(fig5_checks(phi, c_n));
    });

    auto * thr = construct->add_subcommand("thresholds", "Table of a threshold information system");
    thr->add_option("--thresholds", c_thresholds, "increasing thresholds, e.g. 1,2")->required();
    thr->add_option("--nu", c_nu, "zero, one, or, and, xor, first, last or bits:<d...>");
    thr->add_option("-o,--out", c_out);
    thr->callback([&] {
        auto thresholds = parse_values(c_thresholds);
        emit_table(threshold_table(thresholds, decision_rule(c_nu)), c_out);
    });

    auto * gens = construct->add_subcommand("gens", "Single-column generator tables and their measure");
    gens->add_option("--indices", c_indices, "positive indices, e.g. 2,5,9")->required();
    gens->add_option("--out", c_out, "output directory")->required();
    gens->callback([&] {
        auto indices = parse_values(c_indices);
        auto family = single_column_generators(indices);
        std::filesystem::create_directories(c_out);
        for (const auto & t : family.tables) {
            auto path = std::filesystem::path(c_out) / ("T" + std::to_string(t.columns()[0].index) + ".dt");
            write_table_file(path, t);
            std::cout << path.string() << "\n";
        }
        auto path = std::filesystem::path(c_out) / "measure.cm";
        write_measure_file(path, family.measure);
        std::cout << path.string() << "\n";
    });

    // explore
    std::string e_fn, e_gen, e_measure, e_csv;
    int e_max_n = 5;
    std::size_t e_limit = 100000, e_rows = 20;
    auto * explore = app.add_subcommand("explore", "Growth functions over a finitely generated closed class");
    explore->add_option("--fn", e_fn, "FW, FTheta, F or G")->required();
    explore->add_option("--gen", e_gen, "directory, .dt file, builtin:id<m>, builtin:thm3:<D>, builtin:fig5:<phi>")->required();
    explore->add_option("-m,--measure", e_measure, "measure (defaults to the generator's own, else h)");
    explore->add_option("--max-n", e_max_n, "largest n");
    explore->add_option("--limit-tables", e_limit, "maximum closure members");
    explore->add_option("--max-rows", e_rows, "skip projections with more rows");
    explore->add_option("--csv", e_csv, "also write n,value,exhausted here");
    explore->callback([&] {
        auto set = load_generators(e_gen);
        auto psi = ! e_measure.empty() ? measure_from_spec(e_measure) : set.measure.value_or(ComplexityMeasure::depth());
        EnumerationLimits limits;
        limits.max_tables = e_limit;
        limits.max_rows = e_rows;
        auto report = growth(parse_growth_function(e_fn), set.tables, psi, e_max_n, limits);
        report.generator = set.name;
        std::cout << format_growth(report);
        if (! set.steps.empty()) {
            std::cout << "H_D\t";
            for (int n = 0; n <= e_max_n; ++n)
                std::cout << (n ? "," : "") << h_step(set.steps, n);
            std::cout << "\n";
        }
        if (! e_csv.empty()) {
            std::ofstream out(e_csv);
            out << format_growth_csv(report);
        }
    });

    // verify
    std::string v_suite = "lemmas", v_dump;
    std::vector<std::string> v_measures;
    VerifyConfig config;
    auto * verify_cmd = app.add_subcommand("verify", "Machine-check the lemma inequalities and construction postconditions");
    verify_cmd->add_option("--suite", v_suite, "lemmas, dp-oracle, constructions or growth");
    verify_cmd->add_option("--k", config.k, "alphabet size");
    verify_cmd->add_option("--max-cols", config.max_cols, "most columns");
    verify_cmd->add_option("--max-rows", config.max_rows, "most rows");
    verify_cmd->add_option("--samples", config.samples, "random tables; 0 enumerates exhaustively");
    verify_cmd->add_option("--seed", config.seed, "generator seed");
    verify_cmd->add_option("-m,--measure", v_measures, "measures (repeatable); default h, additive and max-weight");
    verify_cmd->add_option("--dump", v_dump, "write minimal failing tables here");
    verify_cmd->callback([&] {
        config.suite = parse_suite(v_suite);
        if (! v_measures.empty()) {
            config.measures.clear();
            for (const auto & m : v_measures)
                config.measures.push_back(measure_from_spec(m));
        }
        if (! v_dump.empty())
            config.dump_dir = v_dump;
        auto report = verify(config);
        std::cout << report.text;
        status = report.passed() ? 0 : exit_failure;
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_usage;
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return status;
}
