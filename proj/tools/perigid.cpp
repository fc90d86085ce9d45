// perigid: rigidity of periodic body-and-bar frameworks from quotient graphs.
//
// Exit codes: 0 minimally rigid (or success), 1 not rigid / failed check,
// 2 bad input.

#include "perigid/characterize.hpp"
#include "perigid/generate.hpp"
#include "perigid/graph_io.hpp"
#include "perigid/report_io.hpp"
#include "perigid/rigidity_matrix.hpp"
#include "perigid/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace perigid;

namespace {

constexpr int kRigid = 0;
constexpr int kNotRigid = 1;
constexpr int kInputError = 2;

struct AnalysisFlags {
    std::string path;
    bool json = false;
    bool numeric = false;
    int trials = 3;
    std::uint64_t seed = 0;
    bool exhaustive = false;
};

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f) {
    cmd->add_option("graph", f.path, "quotient graph file")->required();
    cmd->add_flag("--json", f.json, "print the report as JSON");
    cmd->add_flag("--numeric", f.numeric, "cross-check with the exact rank of random realizations");
    cmd->add_option("--trials", f.trials, "random realizations for --numeric")->check(CLI::Range(1, 1000));
    cmd->add_option("--seed", f.seed, "seed for --numeric and sampling");
    cmd->add_flag("--exhaustive", f.exhaustive, "refined cycle-gain count over every edge set (m <= 20)");
}

std::string join_ids(const std::vector<EdgeId>& ids) {
    std::string s;
    for (EdgeId e : ids) s += " " + std::to_string(e + 1);
    return s;
}

void print_report(const AnalysisReport& r, std::ostream& out) {
    out << "verdict: " << to_string(r.verdict);
    if (r.verdict == Verdict::flexible) out << ", dof=" << r.dof;
    if (r.verdict == Verdict::overbraced) out << ", redundancy=" << r.redundancy;
    out << "\nmethod: " << r.method << "\n";
    out << "edges: " << r.edge_count << "  target: " << r.counting_target << "\n";
    out << "combinatorial rank: " << r.combinatorial_rank << "\n";
    if (r.numeric_rank) out << "numeric rank: " << *r.numeric_rank << "\n";
    out << "dof: " << r.dof << "\nredundancy: " << r.redundancy << "\n";
    if (r.liftable) out << "multiplicities liftable: " << (*r.liftable ? "yes" : "no") << "\n";
    if (r.certificate) {
        out << "certificate:\n";
        for (std::size_t i = 0; i < r.certificate->trees.size(); ++i) {
            out << "  T" << i + 1 << ":" << join_ids(r.certificate->trees[i]) << "\n";
        }
        for (const auto& f : r.certificate->pseudoforests) {
            out << "  F" << f.i + 1 << f.j + 1 << ":";
            for (std::size_t k = 0; k < f.edges.size(); ++k) out << " " << f.edges[k] + 1 << "->v" << f.heads[k] + 1;
            out << "\n";
        }
        out << "  U:" << join_ids(r.certificate->residual) << "\n";
    }
    if (!r.partition.empty()) {
        out << "partition:\n";
        for (std::size_t i = 0; i < r.partition.size(); ++i) out << "  B" << i + 1 << ":" << join_ids(r.partition[i]) << "\n";
    }
    if (r.violation) {
        out << "violation: " << r.violation->size << " edges > bound " << r.violation->bound << ":"
            << join_ids(r.violation->edges) << "\n";
    }
}

int run_analysis(const AnalysisFlags& f, bool dof_only) {
    const auto file = read_graph_file(f.path);
    const auto& g = file.graph;
    if (dof_only && !g.all_bodies()) throw std::invalid_argument("dof: body graphs only (plate weights given)");
    auto report = dof_only ? rank_and_dof(g) : analyze(g);
    if (f.numeric) attach_numeric_rank(report, g, f.trials, f.seed);

    std::optional<RefinedCheckResult> refined;
    if (f.exhaustive && g.all_bodies()) {
        RefinedCheckOptions opt;
        opt.exhaustive = g.edge_count() <= 20;
        opt.seed = f.seed;
        refined = refined_check(g, opt);
    }

    if (f.json) {
        auto doc = report_to_json(report);
        if (refined) {
            doc["refined_check"] = {{"necessary_only", true},
                                    {"passed", refined->passed},
                                    {"exhaustive", refined->exhaustive},
                                    {"subsets_checked", refined->subsets_checked},
                                    {"worst_edges", nlohmann::json::array()},
                                    {"worst_size", refined->worst_size},
                                    {"worst_bound", refined->worst_bound}};
            for (EdgeId e : refined->worst) doc["refined_check"]["worst_edges"].push_back(e + 1);
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        print_report(report, std::cout);
        if (refined) {
            std::cout << "refined count (necessary only): " << (refined->passed ? "passed" : "FAILED") << " over "
                      << refined->subsets_checked << (refined->exhaustive ? " edge sets" : " sampled edge sets")
                      << "; tightest " << refined->worst_size << " <= " << refined->worst_bound << ":"
                      << join_ids(refined->worst) << "\n";
        }
    }
    if (dof_only) return report.dof == 0 ? kRigid : kNotRigid;
    return report.verdict == Verdict::minimally_rigid ? kRigid : kNotRigid;
}

int run_realize(const std::string& path, std::optional<std::int64_t> scale, const std::string& output) {
    const auto file = read_graph_file(path);
    const auto report = theorem2_check(file.graph);
    if (!report.certificate) {
        std::cerr << "realize: graph has no tree/pseudoforest decomposition (verdict "
                  << to_string(report.verdict) << ")\n";
        return kNotRigid;
    }
    const auto arch = archetype_realization(file.graph, *report.certificate, scale);
    const auto rank = exact_rank(build_matrix(arch.graph, arch.realization));
    GraphFile out{arch.graph, arch.realization.lattice, {}};
    out.comments.push_back("archetype realization, N=" + std::to_string(arch.scale));
    out.comments.push_back("exact rank " + std::to_string(rank) + " of " + std::to_string(arch.graph.edge_count()));
    const auto text = write_graph(out);
    if (output.empty()) {
        std::cout << text;
    } else {
        write_text_file(output, text);
    }
    return rank == arch.graph.edge_count() ? kRigid : kNotRigid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generic rigidity of periodic body-and-bar frameworks"};
    app.require_subcommand(1);

    AnalysisFlags check_flags;
    auto* check = app.add_subcommand("check", "decide minimal rigidity");
    add_analysis_flags(check, check_flags);

    AnalysisFlags dof_flags;
    auto* dof = app.add_subcommand("dof", "combinatorial rank and degrees of freedom");
    add_analysis_flags(dof, dof_flags);

    std::string realize_path, realize_out;
    std::optional<std::int64_t> realize_scale;
    auto* realize = app.add_subcommand("realize", "explicit full-rank realization of a decomposable graph");
    realize->add_option("graph", realize_path, "quotient graph file")->required();
    realize->add_option("--scale", realize_scale, "the integer N > n (default n + 1)");
    realize->add_option("-o,--output", realize_out, "output file (default stdout)");

    int gen_dim = 2, gen_vertices = 2;
    std::optional<std::int64_t> gen_edges;
    std::string gen_kind = "random", gen_out;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("--dim", gen_dim, "dimension d")->required();
    gen->add_option("--vertices", gen_vertices, "vertex count n")->required();
    gen->add_option("--edges", gen_edges, "edge count (default: counting target)");
    gen->add_option("--kind", gen_kind, "random | decomposable | violating");
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    VerifyOptions vopt;
    std::optional<int> inject;
    auto* verify = app.add_subcommand("verify", "cross-check combinatorial verdicts against exact ranks");
    verify->add_option("--dims", vopt.dims, "dimensions, e.g. 2,3")->delimiter(',');
    verify->add_option("--max-vertices", vopt.max_vertices, "largest n");
    verify->add_option("--count", vopt.count, "number of instances");
    verify->add_option("--seed", vopt.seed, "seed");
    verify->add_option("--inject-failure", inject, "flip the verdict of this instance (harness self-test)");
    verify->add_option("--reproducer-dir", vopt.reproducer_dir, "where failing instances are written");
    verify->add_option("--jobs", vopt.jobs, "worker threads");
    bool verify_quiet = false;
    verify->add_flag("--quiet", verify_quiet, "print only the summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kInputError;
    }

    try {
        if (*check) return run_analysis(check_flags, false);
        if (*dof) return run_analysis(dof_flags, true);
        if (*realize) return run_realize(realize_path, realize_scale, realize_out);
        if (*gen) {
            const auto inst = generate_instance(gen_dim, gen_vertices, gen_edges,
                                                instance_kind_from_string(gen_kind), gen_seed);
            const auto text = write_graph(GraphFile{inst.graph, std::nullopt, inst.comments});
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                write_text_file(gen_out, text);
            }
            return 0;
        }
        if (*verify) {
            vopt.inject_failure = inject;
            const auto summary = run_verification(vopt, verify_quiet ? nullptr : &std::cout);
            std::cout << summary.agreed << "/" << summary.total << " agree\n";
            for (const auto& path : summary.reproducers) std::cout << "reproducer: " << path << "\n";
            return summary.ok() ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
