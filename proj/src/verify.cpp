#include "perigid/verify.hpp"

#include "perigid/characterize.hpp"
#include "perigid/generate.hpp"
#include "perigid/graph_io.hpp"
#include "perigid/pebble.hpp"
#include "perigid/rigidity_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <thread>

namespace perigid {

namespace {

constexpr int kLiftings = 5;

struct Outcome {
    bool ok = true;
    std::string line;
    std::optional<QuotientGraph> graph;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint64_t out = 0;
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    out = (std::uint64_t{words[0]} << 32) | words[1];
    return out;
}

// Largest generic rank over the given gains and up to kLiftings − 1 resampled
// liftings, stopping once `goal` is reached.
std::int64_t best_numeric_rank(const QuotientGraph& g, std::int64_t goal, std::uint64_t seed) {
    std::int64_t best = static_cast<std::int64_t>(generic_rank(g, 3, seed));
    for (int t = 1; t < kLiftings && best < goal; ++t) {
        const auto lifted = random_gains(g, 3, seed + static_cast<std::uint64_t>(t));
        best = std::max(best, static_cast<std::int64_t>(generic_rank(lifted, 3, seed + 100 + static_cast<std::uint64_t>(t))));
    }
    return best;
}

std::string check_subset_ranks(const QuotientGraph& g, std::uint64_t seed) {
    const std::size_t m = g.edge_count();
    std::mt19937_64 rng(seed);
    const auto matrix = build_matrix(g, random_realization(g, rng));
    std::vector<std::size_t> rows;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<EdgeId> f;
        for (std::size_t e = 0; e < m; ++e) {
            if (mask >> e & 1u) f.push_back(e);
        }
        const auto bound = std::min(edge_count_bound(g, f), refined_count_bound(g, f));
        if (static_cast<std::int64_t>(f.size()) <= bound) continue;  // rank ≤ |F| already
        rows.assign(f.begin(), f.end());
        const auto rank = static_cast<std::int64_t>(exact_rank(matrix.entries.select_rows(rows)));
        if (rank > bound) return "subset rank " + std::to_string(rank) + " exceeds bound " + std::to_string(bound);
    }
    return {};
}

Outcome check_instance(const VerifyOptions& opt, int index) {
    const std::uint64_t s = mix(opt.seed, static_cast<std::uint64_t>(index));
    std::mt19937_64 rng(s);
    const int d = opt.dims[static_cast<std::size_t>(index) % opt.dims.size()];
    const int n = std::uniform_int_distribution<int>(1, opt.max_vertices)(rng);
    const std::int64_t target = (n - 1) * choose2(d + 1) + std::int64_t{d} * d;

    InstanceKind kind = static_cast<InstanceKind>(index % 3);
    if (kind == InstanceKind::violating && n < 2) kind = InstanceKind::random;
    std::optional<std::int64_t> m;
    if (kind == InstanceKind::random) {
        m = std::max<std::int64_t>(0, target + std::uniform_int_distribution<int>(-3, 3)(rng));
    }
    const auto inst = generate_instance(d, n, m, kind, s);
    const auto& g = inst.graph;

    Outcome out;
    out.line = "#" + std::to_string(index) + " d=" + std::to_string(d) + " n=" + std::to_string(n) +
               " m=" + std::to_string(g.edge_count()) + " " + to_string(kind);
    auto fail = [&](const std::string& why) {
        out.ok = false;
        out.line += ": FAIL " + why;
        out.graph = g;
        return out;
    };

    try {
        auto report = rank_and_dof(g);
        if (opt.inject_failure && *opt.inject_failure == index) report.combinatorial_rank -= 1;
        const auto numeric = best_numeric_rank(g, report.combinatorial_rank, s);
        if (numeric != report.combinatorial_rank) {
            return fail("combinatorial rank " + std::to_string(report.combinatorial_rank) + " vs numeric " +
                        std::to_string(numeric));
        }
        if (static_cast<std::int64_t>(g.edge_count()) == target) {
            const auto t2 = theorem2_check(g);  // throws if the two routes disagree
            if (t2.certificate) {
                const auto arch = archetype_realization(g, *t2.certificate);
                if (exact_rank(build_matrix(arch.graph, arch.realization)) != g.edge_count()) {
                    return fail("archetype realization is not of full rank");
                }
            }
            if (kind == InstanceKind::decomposable && !t2.certificate) return fail("planted decomposition missed");
            if (kind == InstanceKind::violating && t2.certificate) return fail("planted violation missed");
        }
        if (g.edge_count() <= 12) {
            const auto mg = as_multigraph(g);
            const auto p = SparsityParams::make(static_cast<int>(choose2(d + 1)), d);
            const auto brute = brute_force_sparse(mg, p);
            const auto game = max_sparse_subgraph(mg, p);
            if (brute.sparse != is_sparse(mg, p) || brute.max_independent != game.kept.size()) {
                return fail("pebble game disagrees with enumeration");
            }
        }
        if (g.edge_count() <= 10) {
            if (auto why = check_subset_ranks(g, s + 7); !why.empty()) return fail(why);
        }
    } catch (const std::exception& e) {
        return fail(std::string("exception: ") + e.what());
    }
    out.line += ": ok";
    return out;
}

}  // namespace

VerifySummary run_verification(const VerifyOptions& opt, std::ostream* log) {
    if (opt.dims.empty()) throw std::invalid_argument("verify: no dimensions");
    for (int d : opt.dims) {
        if (d < 1 || d > 3) throw std::invalid_argument("verify: dimensions must lie in 1..3");
    }
    if (opt.max_vertices < 1 || opt.max_vertices > 6) throw std::invalid_argument("verify: max vertices in 1..6");
    if (opt.count < 0 || opt.count > 1000) throw std::invalid_argument("verify: count in 0..1000");

    std::vector<Outcome> outcomes(static_cast<std::size_t>(opt.count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < opt.count; i = next++) outcomes[static_cast<std::size_t>(i)] = check_instance(opt, i);
    };
    const int jobs = std::clamp(opt.jobs, 1, 64);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    VerifySummary summary;
    summary.total = opt.count;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        if (log) *log << o.line << '\n';
        if (o.ok) {
            ++summary.agreed;
            continue;
        }
        summary.failures.push_back(o.line);
        std::filesystem::create_directories(opt.reproducer_dir);
        const auto path = (std::filesystem::path(opt.reproducer_dir) /
                           ("repro-" + std::to_string(opt.seed) + "-" + std::to_string(i) + ".graph"))
                              .string();
        write_text_file(path, write_graph(GraphFile{*o.graph, std::nullopt, {o.line}}));
        summary.reproducers.push_back(path);
    }
    return summary;
}

}  // namespace perigid
