#include "perigid/gain_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

namespace perigid {

namespace {

std::string edge_field(std::size_t e, const char* part) {
    return "edges[" + std::to_string(e) + "]." + part;
}

bool is_zero(const GainVector& g) {
    return std::all_of(g.begin(), g.end(), [](std::int64_t x) { return x == 0; });
}

// Adjacency over a subset of edges: for each vertex, the (edge, other end) pairs.
struct SubsetAdjacency {
    std::vector<std::vector<std::pair<EdgeId, VertexId>>> incident;

    SubsetAdjacency(const QuotientGraph& g, std::span<const EdgeId> subset)
        : incident(static_cast<std::size_t>(g.vertex_count())) {
        for (EdgeId e : subset) {
            const auto& edge = g.edge(e);
            incident[static_cast<std::size_t>(edge.tail)].emplace_back(e, edge.head);
            if (!edge.is_loop()) incident[static_cast<std::size_t>(edge.head)].emplace_back(e, edge.tail);
        }
    }
};

}  // namespace

QuotientGraph::QuotientGraph(int dimension, int vertex_count, std::vector<EdgeOrbit> edges,
                             std::optional<std::vector<int>> weights)
    : dimension_(dimension),
      vertex_count_(vertex_count),
      edges_(std::move(edges)),
      weights_(std::move(weights)) {
    if (dimension_ < 1) throw GraphError("dimension", "must be at least 1");
    if (vertex_count_ < 1) throw GraphError("vertices", "must be at least 1");
    const auto d = static_cast<std::size_t>(dimension_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (edge.tail < 0 || edge.tail >= vertex_count_) {
            throw GraphError(edge_field(e, "tail"), "vertex out of range");
        }
        if (edge.head < 0 || edge.head >= vertex_count_) {
            throw GraphError(edge_field(e, "head"), "vertex out of range");
        }
        if (edge.gain.size() != d) {
            throw GraphError(edge_field(e, "gain"), "has " + std::to_string(edge.gain.size()) +
                                                        " entries, expected " + std::to_string(d));
        }
        if (edge.q_tail.has_value() != edge.q_head.has_value()) {
            throw GraphError(edge_field(e, edge.q_tail ? "q_head" : "q_tail"), "endpoints come as a pair");
        }
        if (edge.q_tail && edge.q_tail->size() != d) {
            throw GraphError(edge_field(e, "q_tail"), "wrong length");
        }
        if (edge.q_head && edge.q_head->size() != d) {
            throw GraphError(edge_field(e, "q_head"), "wrong length");
        }
        if (edge.is_loop() && is_zero(edge.gain) && edge.q_tail && edge.q_head &&
            *edge.q_tail == *edge.q_head) {
            throw GraphError(edge_field(e, "gain"), "zero-length bar (loop with zero gain)");
        }
    }
    if (weights_) {
        if (weights_->size() != static_cast<std::size_t>(vertex_count_)) {
            throw GraphError("weights", "expected one weight per vertex");
        }
        for (std::size_t v = 0; v < weights_->size(); ++v) {
            const int k = (*weights_)[v];
            if (k < 0 || k > dimension_) {
                throw GraphError("weights[" + std::to_string(v) + "]", "must lie in 0..d");
            }
        }
    }
}

bool QuotientGraph::all_bodies() const {
    if (!weights_) return true;
    return std::all_of(weights_->begin(), weights_->end(), [this](int k) { return k == dimension_; });
}

QuotientGraph QuotientGraph::with_edges(std::vector<EdgeOrbit> edges) const {
    return QuotientGraph(dimension_, vertex_count_, std::move(edges), weights_);
}

std::int64_t counting_target(const QuotientGraph& g) {
    const int d = g.dimension();
    const std::int64_t n = g.vertex_count();
    if (g.all_bodies()) return (n - 1) * choose2(d + 1) + std::int64_t{d} * d;
    std::int64_t plates = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) plates += plate_rotations(d, g.weight(v));
    return std::int64_t{d} * (n - 1) + plates + choose2(d + 1);
}

MultiplicityProfile multiplicity_profile(const QuotientGraph& g) {
    MultiplicityProfile profile;
    for (const auto& e : g.edges()) {
        ++profile[{std::min(e.tail, e.head), std::max(e.tail, e.head)}];
    }
    return profile;
}

SubsetShape subset_shape(const QuotientGraph& g, std::span<const EdgeId> subset) {
    std::vector<VertexId> parent(static_cast<std::size_t>(g.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<char> touched(parent.size(), 0);
    auto find = [&](VertexId v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    SubsetShape shape;
    for (EdgeId e : subset) {
        const auto& edge = g.edge(e);
        for (VertexId v : {edge.tail, edge.head}) {
            if (!touched[static_cast<std::size_t>(v)]) {
                touched[static_cast<std::size_t>(v)] = 1;
                ++shape.vertices;
                ++shape.components;
            }
        }
        const VertexId a = find(edge.tail);
        const VertexId b = find(edge.head);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --shape.components;
        }
    }
    return shape;
}

CycleGainRanks cycle_gain_ranks(const QuotientGraph& g, std::span<const EdgeId> subset) {
    const auto d = static_cast<std::size_t>(g.dimension());
    const SubsetAdjacency adj(g, subset);
    std::vector<int> component(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<GainVector> potential(component.size());
    std::vector<char> tree_edge(g.edge_count(), 0);

    std::vector<VertexId> roots;
    for (EdgeId e : subset) {
        const VertexId start = g.edge(e).tail;
        if (component[static_cast<std::size_t>(start)] >= 0) continue;
        const int id = static_cast<int>(roots.size());
        roots.push_back(start);
        component[static_cast<std::size_t>(start)] = id;
        potential[static_cast<std::size_t>(start)] = GainVector(d, 0);
        std::queue<VertexId> queue;
        queue.push(start);
        while (!queue.empty()) {
            const VertexId x = queue.front();
            queue.pop();
            for (const auto& [edge_id, y] : adj.incident[static_cast<std::size_t>(x)]) {
                if (component[static_cast<std::size_t>(y)] >= 0) continue;
                const auto& edge = g.edge(edge_id);
                GainVector p = potential[static_cast<std::size_t>(x)];
                for (std::size_t i = 0; i < d; ++i) {
                    p[i] += (x == edge.tail) ? edge.gain[i] : -edge.gain[i];
                }
                potential[static_cast<std::size_t>(y)] = std::move(p);
                component[static_cast<std::size_t>(y)] = id;
                tree_edge[edge_id] = 1;
                queue.push(y);
            }
        }
    }

    std::vector<std::vector<GainVector>> cycles(roots.size());
    for (EdgeId e : subset) {
        if (tree_edge[e]) continue;
        const auto& edge = g.edge(e);
        GainVector c(d);
        const auto& pt = potential[static_cast<std::size_t>(edge.tail)];
        const auto& ph = potential[static_cast<std::size_t>(edge.head)];
        for (std::size_t i = 0; i < d; ++i) c[i] = pt[i] + edge.gain[i] - ph[i];
        cycles[static_cast<std::size_t>(component[static_cast<std::size_t>(edge.tail)])].push_back(std::move(c));
    }

    CycleGainRanks ranks;
    std::vector<GainVector> all;
    for (const auto& list : cycles) {
        ranks.per_component.push_back(static_cast<int>(integer_rank(list)));
        all.insert(all.end(), list.begin(), list.end());
    }
    ranks.total = static_cast<int>(integer_rank(all));
    return ranks;
}

std::int64_t edge_count_bound(const QuotientGraph& g, std::span<const EdgeId> subset) {
    const int d = g.dimension();
    const auto shape = subset_shape(g, subset);
    std::vector<char> touched(static_cast<std::size_t>(g.vertex_count()), 0);
    std::int64_t plates = 0;
    for (EdgeId e : subset) {
        for (VertexId v : {g.edge(e).tail, g.edge(e).head}) {
            if (touched[static_cast<std::size_t>(v)]) continue;
            touched[static_cast<std::size_t>(v)] = 1;
            plates += plate_rotations(d, g.weight(v));
        }
    }
    return std::int64_t{d} * (shape.vertices - shape.components) + plates + choose2(d + 1);
}

std::int64_t refined_count_bound(const QuotientGraph& g, std::span<const EdgeId> subset) {
    const int d = g.dimension();
    const auto shape = subset_shape(g, subset);
    const auto ranks = cycle_gain_ranks(g, subset);
    std::int64_t bound = std::int64_t{d} * (shape.vertices - shape.components) + choose2(d) * shape.vertices +
                         choose2(ranks.total + 1);
    for (int rc : ranks.per_component) bound -= choose2(d - rc);
    return bound;
}

QuotientGraph random_gains(const QuotientGraph& g, int box, std::uint64_t seed) {
    if (box < 1) throw std::invalid_argument("random_gains: box must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> entry(-box, box);
    auto edges = g.edges();
    for (auto& e : edges) {
        do {
            for (auto& x : e.gain) x = entry(rng);
        } while (e.is_loop() && is_zero(e.gain));
    }
    return g.with_edges(std::move(edges));
}

std::vector<EdgeId> all_edges(const QuotientGraph& g) {
    std::vector<EdgeId> ids(g.edge_count());
    std::iota(ids.begin(), ids.end(), EdgeId{0});
    return ids;
}

}  // namespace perigid
