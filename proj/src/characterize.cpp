#include "perigid/characterize.hpp"

#include "perigid/pebble.hpp"
#include "perigid/rigidity_matrix.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace perigid {

namespace {

void set_counts(AnalysisReport& r, const QuotientGraph& g, std::int64_t rank) {
    r.counting_target = counting_target(g);
    r.edge_count = static_cast<std::int64_t>(g.edge_count());
    r.combinatorial_rank = rank;
    r.dof = r.counting_target - rank;
    r.redundancy = r.edge_count - rank;
    if (rank == r.edge_count && r.edge_count == r.counting_target) {
        r.verdict = Verdict::minimally_rigid;
    } else if (r.dof > 0) {
        r.verdict = Verdict::flexible;
    } else {
        r.verdict = Verdict::overbraced;
    }
}

SparsityParams body_params(int d) { return SparsityParams::make(static_cast<int>(choose2(d + 1)), d); }

// s + min(C(d+1,2), m − s): the tight core plus up to C(d+1,2) further edges.
std::int64_t core_rank(const QuotientGraph& g, const SparseSubgraphResult& core) {
    const auto s = static_cast<std::int64_t>(core.kept.size());
    const auto m = static_cast<std::int64_t>(g.edge_count());
    return s + std::min<std::int64_t>(choose2(g.dimension() + 1), m - s);
}

void require_bodies(const QuotientGraph& g, const char* who) {
    if (!g.all_bodies()) throw std::invalid_argument(std::string(who) + ": plate weights present");
}

std::vector<EdgeId> edges_of_mask(std::uint32_t mask, std::size_t m) {
    std::vector<EdgeId> f;
    for (std::size_t e = 0; e < m; ++e) {
        if (mask >> e & 1u) f.push_back(e);
    }
    return f;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::minimally_rigid: return "minimally_rigid";
        case Verdict::flexible: return "flexible";
        case Verdict::overbraced: return "overbraced";
        case Verdict::not_liftable: return "not_liftable";
    }
    return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::minimally_rigid, Verdict::flexible, Verdict::overbraced, Verdict::not_liftable}) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

AnalysisReport theorem2_check(const QuotientGraph& g) {
    require_bodies(g, "theorem2_check");
    if (static_cast<std::int64_t>(g.edge_count()) != counting_target(g)) {
        throw std::invalid_argument("theorem2_check: expected " + std::to_string(counting_target(g)) +
                                    " edges, got " + std::to_string(g.edge_count()));
    }
    const auto core = max_sparse_subgraph(as_multigraph(g), body_params(g.dimension()));
    auto split = decompose_theorem2(g);

    const bool by_core = core.is_tight;
    const bool by_split = split.decomposition.has_value();
    const std::int64_t rank = core_rank(g, core);
    if (by_core != by_split || rank != static_cast<std::int64_t>(split.union_rank)) {
        throw std::logic_error("theorem2_check: tight-core and decomposition routes disagree");
    }

    AnalysisReport r;
    r.method = "theorem2";
    set_counts(r, g, rank);
    r.certificate = std::move(split.decomposition);
    r.violation = std::move(split.violation);
    return r;
}

AnalysisReport rank_and_dof(const QuotientGraph& g) {
    require_bodies(g, "rank_and_dof");
    const auto core = max_sparse_subgraph(as_multigraph(g), body_params(g.dimension()));
    AnalysisReport r;
    r.method = "rank";
    set_counts(r, g, core_rank(g, core));
    return r;
}

std::vector<std::pair<GainVector, int>> gain_classes(const QuotientGraph& g) {
    std::vector<std::pair<GainVector, int>> classes;
    for (const auto& e : g.edges()) {
        GainVector neg = e.gain;
        for (auto& x : neg) x = -x;
        auto it = std::find_if(classes.begin(), classes.end(),
                               [&](const auto& c) { return c.first == e.gain || c.first == neg; });
        if (it == classes.end()) {
            classes.emplace_back(e.gain, 1);
        } else {
            ++it->second;
        }
    }
    return classes;
}

AnalysisReport theorem1_check(const QuotientGraph& g) {
    require_bodies(g, "theorem1_check");
    const int d = g.dimension();
    if (g.vertex_count() != 1) throw std::invalid_argument("theorem1_check: needs exactly one vertex");
    if (static_cast<std::int64_t>(g.edge_count()) != std::int64_t{d} * d) {
        throw std::invalid_argument("theorem1_check: needs d^2 edges");
    }
    const auto classes = gain_classes(g);
    const bool liftable = std::all_of(classes.begin(), classes.end(), [d](const auto& c) { return c.second <= d; });

    auto n1 = n1_union_check(g);
    const std::vector<MatroidOracle> copies(static_cast<std::size_t>(d), MatroidOracle::linear(g));
    const auto ids = all_edges(g);
    const auto rank = union_rank(copies, ids).rank;

    AnalysisReport r;
    r.method = "theorem1";
    set_counts(r, g, static_cast<std::int64_t>(rank));
    if ((rank == g.edge_count()) != n1.rigid) throw std::logic_error("theorem1_check: union ranks disagree");
    r.liftable = liftable;
    if (!liftable) r.verdict = Verdict::not_liftable;
    r.partition = std::move(n1.partition);
    r.violation = std::move(n1.violation);
    return r;
}

AnalysisReport theorem3_check(const QuotientGraph& g) {
    if (!g.weights()) throw std::invalid_argument("theorem3_check: graph has no weights");
    auto mixed = mixed_union_rank(g);

    AnalysisReport r;
    r.method = "theorem3";
    set_counts(r, g, static_cast<std::int64_t>(mixed.rank));
    r.partition = std::move(mixed.trees);
    r.partition.push_back(std::move(mixed.oriented));
    r.partition.push_back(std::move(mixed.residual));
    r.violation = std::move(mixed.violation);

    const std::size_t m = g.edge_count();
    if (m <= 14) {
        bool counts_hold = true;
        for (std::uint32_t mask = 1; mask < (1u << m) && counts_hold; ++mask) {
            const auto f = edges_of_mask(mask, m);
            if (static_cast<std::int64_t>(f.size()) > edge_count_bound(g, f)) counts_hold = false;
        }
        if (counts_hold != (mixed.rank == m)) {
            throw std::logic_error("theorem3_check: union rank disagrees with the enumerated counts");
        }
        r.exhaustive_confirmed = true;
    }
    return r;
}

AnalysisReport analyze(const QuotientGraph& g) {
    if (g.weights()) return theorem3_check(g);
    const auto m = static_cast<std::int64_t>(g.edge_count());
    const int d = g.dimension();
    if (g.vertex_count() == 1 && m == std::int64_t{d} * d) return theorem1_check(g);
    if (m == counting_target(g)) return theorem2_check(g);
    return rank_and_dof(g);
}

void attach_numeric_rank(AnalysisReport& report, const QuotientGraph& g, int trials, std::uint64_t seed) {
    report.numeric_rank = static_cast<std::int64_t>(generic_rank(g, trials, seed));
}

RefinedCheckResult refined_check(const QuotientGraph& g, const RefinedCheckOptions& options) {
    require_bodies(g, "refined_check");
    const std::size_t m = g.edge_count();
    RefinedCheckResult result;
    result.exhaustive = options.exhaustive;
    bool first = true;
    auto consider = [&](std::vector<EdgeId> f) {
        if (f.empty()) return;
        const auto size = static_cast<std::int64_t>(f.size());
        const auto bound = refined_count_bound(g, f);
        ++result.subsets_checked;
        if (size > bound) result.passed = false;
        if (first || bound - size < result.worst_bound - result.worst_size) {
            first = false;
            result.worst = std::move(f);
            result.worst_size = size;
            result.worst_bound = bound;
        }
    };

    if (options.exhaustive) {
        if (m > 20) throw std::invalid_argument("refined_check: exhaustive mode needs m <= 20");
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) consider(edges_of_mask(mask, m));
        return result;
    }

    if (m == 0) return result;
    // Sampling favors connected pieces: their gains are where the count
    // gets tight. Every other sample is a uniform random subset.
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick_edge(0, m - 1);
    std::uniform_int_distribution<std::size_t> pick_size(1, m);
    for (std::size_t s = 0; s < options.samples; ++s) {
        std::vector<char> in(m, 0);
        std::vector<EdgeId> f;
        if (s % 2 == 0) {
            std::vector<char> touched(static_cast<std::size_t>(g.vertex_count()), 0);
            const std::size_t want = pick_size(rng);
            EdgeId e = pick_edge(rng);
            while (true) {
                in[e] = 1;
                f.push_back(e);
                touched[static_cast<std::size_t>(g.edge(e).tail)] = 1;
                touched[static_cast<std::size_t>(g.edge(e).head)] = 1;
                if (f.size() == want) break;
                std::vector<EdgeId> frontier;
                for (EdgeId x = 0; x < m; ++x) {
                    if (!in[x] && (touched[static_cast<std::size_t>(g.edge(x).tail)] ||
                                   touched[static_cast<std::size_t>(g.edge(x).head)])) {
                        frontier.push_back(x);
                    }
                }
                if (frontier.empty()) break;
                e = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
            }
            std::sort(f.begin(), f.end());
        } else {
            std::bernoulli_distribution coin(0.5);
            for (EdgeId x = 0; x < m; ++x) {
                if (coin(rng)) f.push_back(x);
            }
        }
        consider(std::move(f));
    }
    return result;
}

}  // namespace perigid
