#include "perigid/matroid.hpp"

#include "partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace perigid {

namespace {

using detail::Block;
using detail::Endpoints;
using detail::Partitioner;

struct BlockSpec {
    MatroidKind kind;
    std::vector<int> limits;
    std::size_t rank = 0;
};

// Ground data the blocks point into; must outlive the partitioner.
struct Ground {
    int n = 0;
    Endpoints ends;
    std::vector<GainVector> gains;

    explicit Ground(const QuotientGraph& g) : n(g.vertex_count()) {
        ends.reserve(g.edge_count());
        gains.reserve(g.edge_count());
        for (const auto& e : g.edges()) {
            ends.emplace_back(e.tail, e.head);
            gains.push_back(e.gain);
        }
    }
};

std::unique_ptr<Block> make_block(const Ground& ground, const BlockSpec& spec) {
    switch (spec.kind) {
        case MatroidKind::graphic: return std::make_unique<detail::ForestBlock>(ground.n, ground.ends);
        case MatroidKind::indegree: return std::make_unique<detail::IndegreeBlock>(ground.ends, spec.limits);
        case MatroidKind::linear: return std::make_unique<detail::LinearBlock>(ground.gains);
        case MatroidKind::uniform: return std::make_unique<detail::UniformBlock>(ground.ends.size(), spec.rank);
    }
    throw std::logic_error("unknown matroid kind");
}

Partitioner make_partitioner(const Ground& ground, const std::vector<BlockSpec>& specs) {
    std::vector<std::unique_ptr<Block>> blocks;
    for (const auto& s : specs) blocks.push_back(make_block(ground, s));
    return Partitioner(ground.ends.size(), std::move(blocks));
}

struct RunResult {
    std::size_t rank = 0;
    std::vector<EdgeId> unassigned;
    std::optional<std::vector<EdgeId>> first_closure;
};

RunResult run(Partitioner& part, std::span<const EdgeId> edges) {
    RunResult r;
    for (EdgeId e : edges) {
        if (part.add(e)) {
            ++r.rank;
        } else {
            r.unassigned.push_back(e);
            if (!r.first_closure) r.first_closure = part.closure();
        }
    }
    return r;
}

bool union_dependent(const Ground& ground, const std::vector<BlockSpec>& specs, std::span<const EdgeId> edges) {
    auto part = make_partitioner(ground, specs);
    for (EdgeId e : edges) {
        if (!part.add(e)) return true;
    }
    return false;
}

// Turns a union-dependent set into a set breaking the count `bound`. The
// search closure usually does already; otherwise it is shrunk to a circuit
// of the union, and circuits of a count matroid always break the count.
template <class Bound>
CountViolation violation_from(const Ground& ground, const std::vector<BlockSpec>& specs,
                              std::vector<EdgeId> set, Bound bound) {
    std::sort(set.begin(), set.end());
    auto as_violation = [&](std::vector<EdgeId> f) {
        CountViolation v;
        v.size = static_cast<std::int64_t>(f.size());
        v.bound = bound(f);
        v.edges = std::move(f);
        return v;
    };
    if (static_cast<std::int64_t>(set.size()) > bound(set)) return as_violation(std::move(set));

    std::size_t chunk = std::max<std::size_t>(set.size() / 2, 1);
    std::vector<EdgeId> candidate;
    while (true) {
        std::size_t i = 0;
        while (i < set.size()) {
            candidate.clear();
            candidate.insert(candidate.end(), set.begin(), set.begin() + static_cast<std::ptrdiff_t>(i));
            const std::size_t stop = std::min(set.size(), i + chunk);
            candidate.insert(candidate.end(), set.begin() + static_cast<std::ptrdiff_t>(stop), set.end());
            if (!candidate.empty() && union_dependent(ground, specs, candidate)) {
                set.swap(candidate);
            } else {
                i = stop;
            }
        }
        if (chunk == 1) break;
        chunk /= 2;
    }
    auto v = as_violation(std::move(set));
    if (v.size <= v.bound) throw std::logic_error("union circuit does not break its count");
    return v;
}

std::vector<BlockSpec> body_specs(const QuotientGraph& g, std::vector<int> limits) {
    const int d = g.dimension();
    std::vector<BlockSpec> specs(static_cast<std::size_t>(d), BlockSpec{MatroidKind::graphic, {}, 0});
    specs.push_back({MatroidKind::indegree, std::move(limits), 0});
    specs.push_back({MatroidKind::uniform, {}, static_cast<std::size_t>(choose2(d + 1))});
    return specs;
}

BlockSpec spec_of(const MatroidOracle& m) {
    return BlockSpec{m.kind(), m.limits(), m.uniform_rank()};
}

}  // namespace

MatroidOracle::MatroidOracle(MatroidKind kind, const QuotientGraph& g)
    : kind_(kind), graph_(std::make_shared<const QuotientGraph>(g)) {}

MatroidOracle MatroidOracle::graphic(const QuotientGraph& g) { return MatroidOracle(MatroidKind::graphic, g); }

MatroidOracle MatroidOracle::indegree(const QuotientGraph& g, std::vector<int> limits) {
    if (limits.size() != static_cast<std::size_t>(g.vertex_count())) {
        throw std::invalid_argument("indegree matroid: one limit per vertex expected");
    }
    if (std::any_of(limits.begin(), limits.end(), [](int x) { return x < 0; })) {
        throw std::invalid_argument("indegree matroid: negative limit");
    }
    MatroidOracle m(MatroidKind::indegree, g);
    m.limits_ = std::move(limits);
    return m;
}

MatroidOracle MatroidOracle::linear(const QuotientGraph& g) { return MatroidOracle(MatroidKind::linear, g); }

MatroidOracle MatroidOracle::uniform(const QuotientGraph& g, std::size_t rank) {
    MatroidOracle m(MatroidKind::uniform, g);
    m.rank_ = rank;
    return m;
}

std::size_t MatroidOracle::rank(std::span<const EdgeId> edges) const {
    const Ground ground(*graph_);
    auto part = make_partitioner(ground, {spec_of(*this)});
    return run(part, edges).rank;
}

bool MatroidOracle::independent(std::span<const EdgeId> edges) const { return rank(edges) == edges.size(); }

UnionResult union_rank(std::span<const MatroidOracle> oracles, std::span<const EdgeId> edges) {
    if (oracles.empty()) throw std::invalid_argument("union_rank: no matroids");
    const QuotientGraph& g = oracles.front().graph();
    for (const auto& m : oracles) {
        if (&m.graph() != &g && !(m.graph() == g)) {
            throw std::invalid_argument("union_rank: matroids on different ground sets");
        }
    }
    for (EdgeId e : edges) {
        if (e >= g.edge_count()) throw std::invalid_argument("union_rank: edge id out of range");
    }
    const Ground ground(g);
    std::vector<BlockSpec> specs;
    for (const auto& m : oracles) specs.push_back(spec_of(m));
    auto part = make_partitioner(ground, specs);
    auto r = run(part, edges);

    UnionResult result;
    result.rank = r.rank;
    result.unassigned = std::move(r.unassigned);
    result.dependent_set = std::move(r.first_closure);
    for (std::size_t i = 0; i < part.block_count(); ++i) result.partition.push_back(part.block(i).members());
    return result;
}

std::vector<int> plate_limits(const QuotientGraph& g) {
    std::vector<int> limits(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        limits[static_cast<std::size_t>(v)] = static_cast<int>(plate_rotations(g.dimension(), g.weight(v)));
    }
    return limits;
}

DecompositionResult decompose_theorem2(const QuotientGraph& g) {
    if (!g.all_bodies()) throw std::invalid_argument("decompose_theorem2: plate weights present");
    if (static_cast<std::int64_t>(g.edge_count()) != counting_target(g)) {
        throw std::invalid_argument("decompose_theorem2: expected " + std::to_string(counting_target(g)) +
                                    " edges, got " + std::to_string(g.edge_count()));
    }
    const int d = g.dimension();
    const Ground ground(g);
    const auto specs = body_specs(g, plate_limits(g));
    auto part = make_partitioner(ground, specs);
    const auto ids = all_edges(g);
    auto r = run(part, ids);

    DecompositionResult result;
    result.union_rank = r.rank;
    if (r.first_closure) {
        auto bound = [&g](std::span<const EdgeId> f) { return edge_count_bound(g, f); };
        result.violation = violation_from(ground, specs, std::move(*r.first_closure), bound);
        return result;
    }

    Decomposition dec;
    for (int i = 0; i < d; ++i) dec.trees.push_back(part.block(static_cast<std::size_t>(i)).members());
    auto& oriented = static_cast<detail::IndegreeBlock&>(part.block(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) dec.pseudoforests.push_back(PseudoForest{i, j, {}, {}});
    }
    // Every vertex has in-degree exactly C(d,2); its k-th in-edge goes to F_k.
    std::vector<std::size_t> next(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId e : oriented.members()) {
        const VertexId h = oriented.head(e);
        auto& f = dec.pseudoforests[next[static_cast<std::size_t>(h)]++];
        f.edges.push_back(e);
        f.heads.push_back(h);
    }
    dec.residual = part.block(static_cast<std::size_t>(d) + 1).members();
    result.decomposition = std::move(dec);
    return result;
}

std::optional<std::string> validate_decomposition(const QuotientGraph& g, const Decomposition& dec) {
    const int d = g.dimension();
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<int> uses(g.edge_count(), 0);
    auto mark = [&](const std::vector<EdgeId>& edges) -> std::optional<std::string> {
        for (EdgeId e : edges) {
            if (e >= uses.size()) return "edge id " + std::to_string(e) + " out of range";
            ++uses[e];
        }
        return std::nullopt;
    };

    if (dec.trees.size() != static_cast<std::size_t>(d)) return "expected " + std::to_string(d) + " trees";
    for (std::size_t t = 0; t < dec.trees.size(); ++t) {
        const auto& tree = dec.trees[t];
        if (auto err = mark(tree)) return err;
        if (tree.size() != n - 1) return "tree " + std::to_string(t) + " does not have n-1 edges";
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (EdgeId e : tree) {
            const auto a = find(static_cast<std::size_t>(g.edge(e).tail));
            const auto b = find(static_cast<std::size_t>(g.edge(e).head));
            if (a == b) return "tree " + std::to_string(t) + " contains a cycle";
            parent[a] = b;
        }
    }

    if (dec.pseudoforests.size() != static_cast<std::size_t>(choose2(d))) {
        return "expected " + std::to_string(choose2(d)) + " pseudoforests";
    }
    std::size_t k = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j, ++k) {
            const auto& f = dec.pseudoforests[k];
            const std::string name = "pseudoforest " + std::to_string(k);
            if (f.i != i || f.j != j) return name + " has the wrong index pair";
            if (auto err = mark(f.edges)) return err;
            if (f.edges.size() != n || f.heads.size() != n) return name + " does not have n edges";
            std::vector<int> indeg(n, 0);
            for (std::size_t x = 0; x < f.edges.size(); ++x) {
                const auto& e = g.edge(f.edges[x]);
                if (f.heads[x] != e.tail && f.heads[x] != e.head) return name + " names a head off its edge";
                ++indeg[static_cast<std::size_t>(f.heads[x])];
            }
            if (std::any_of(indeg.begin(), indeg.end(), [](int c) { return c != 1; })) {
                return name + " is not oriented with in-degree one everywhere";
            }
        }
    }

    if (auto err = mark(dec.residual)) return err;
    if (dec.residual.size() != static_cast<std::size_t>(choose2(d + 1))) return "residual has the wrong size";
    for (EdgeId e = 0; e < uses.size(); ++e) {
        if (uses[e] != 1) return "edge " + std::to_string(e) + " is used " + std::to_string(uses[e]) + " times";
    }
    return std::nullopt;
}

SingleVertexResult n1_union_check(const QuotientGraph& g) {
    const int d = g.dimension();
    if (g.vertex_count() != 1) throw std::invalid_argument("n1_union_check: needs exactly one vertex");
    if (static_cast<std::int64_t>(g.edge_count()) != std::int64_t{d} * d) {
        throw std::invalid_argument("n1_union_check: needs d^2 edges");
    }
    const Ground ground(g);
    const std::vector<BlockSpec> specs(static_cast<std::size_t>(d), BlockSpec{MatroidKind::linear, {}, 0});
    auto part = make_partitioner(ground, specs);
    const auto ids = all_edges(g);
    auto r = run(part, ids);

    SingleVertexResult result;
    result.rigid = !r.first_closure.has_value();
    if (result.rigid) {
        for (std::size_t i = 0; i < part.block_count(); ++i) result.partition.push_back(part.block(i).members());
    } else {
        auto bound = [&](std::span<const EdgeId> f) {
            std::vector<GainVector> rows;
            for (EdgeId e : f) rows.push_back(g.edge(e).gain);
            return std::int64_t{d} * static_cast<std::int64_t>(integer_rank(rows));
        };
        result.violation = violation_from(ground, specs, std::move(*r.first_closure), bound);
    }
    return result;
}

MixedUnionResult mixed_union_rank(const QuotientGraph& g) {
    if (!g.weights()) throw std::invalid_argument("mixed_union_rank: graph has no weights");
    const int d = g.dimension();
    const Ground ground(g);
    const auto specs = body_specs(g, plate_limits(g));
    auto part = make_partitioner(ground, specs);
    const auto ids = all_edges(g);
    auto r = run(part, ids);

    MixedUnionResult result;
    result.rank = r.rank;
    for (int i = 0; i < d; ++i) result.trees.push_back(part.block(static_cast<std::size_t>(i)).members());
    result.oriented = part.block(static_cast<std::size_t>(d)).members();
    result.residual = part.block(static_cast<std::size_t>(d) + 1).members();
    if (r.first_closure) {
        auto bound = [&g](std::span<const EdgeId> f) { return edge_count_bound(g, f); };
        result.violation = violation_from(ground, specs, std::move(*r.first_closure), bound);
    }
    return result;
}

bool f4_independent(const QuotientGraph& g, std::span<const EdgeId> edges, std::span<const int> limits) {
    const auto oracle = MatroidOracle::indegree(g, std::vector<int>(limits.begin(), limits.end()));
    return oracle.independent(edges);
}

}  // namespace perigid
