#pragma once

// Small builders and independent brute-force oracles shared by the tests.
// Nothing here calls into the matroid or pebble code.

#include "perigid/gain_graph.hpp"

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace perigid::testing {

inline EdgeOrbit edge(VertexId t, VertexId h, GainVector gain) {
    EdgeOrbit e;
    e.tail = t;
    e.head = h;
    e.gain = std::move(gain);
    return e;
}

inline QuotientGraph single_vertex(int d, const std::vector<GainVector>& gains) {
    std::vector<EdgeOrbit> edges;
    for (const auto& c : gains) edges.push_back(edge(0, 0, c));
    return QuotientGraph(d, 1, std::move(edges));
}

// The d = 2, n = 2 instance: two parallel edges, a loop at each vertex, and
// three more edges.
inline QuotientGraph seven_edge_example() {
    return QuotientGraph(2, 2,
                         {edge(0, 1, {0, 0}), edge(0, 1, {1, 0}), edge(0, 0, {0, 1}), edge(1, 1, {1, 1}),
                          edge(0, 1, {2, -1}), edge(1, 0, {-1, 3}), edge(0, 1, {1, 2})});
}

inline std::vector<EdgeId> members(std::uint32_t mask, std::size_t m) {
    std::vector<EdgeId> f;
    for (std::size_t e = 0; e < m; ++e) {
        if (mask >> e & 1u) f.push_back(e);
    }
    return f;
}

// n_F and ω_F by a fresh union-find.
struct Shape {
    std::int64_t vertices = 0;
    std::int64_t components = 0;
};

inline Shape shape_of(const QuotientGraph& g, const std::vector<EdgeId>& f) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::vector<char> touched(n, 0);
    for (EdgeId e : f) {
        const auto t = static_cast<std::size_t>(g.edge(e).tail);
        const auto h = static_cast<std::size_t>(g.edge(e).head);
        touched[t] = touched[h] = 1;
        parent[find(t)] = find(h);
    }
    Shape s;
    for (std::size_t v = 0; v < n; ++v) {
        if (!touched[v]) continue;
        ++s.vertices;
        if (find(v) == v) ++s.components;
    }
    return s;
}

// Mixed count: d(n_F − ω_F) + Σ_{V_F} k'_v + C(d+1,2).
inline std::int64_t mixed_bound(const QuotientGraph& g, const std::vector<EdgeId>& f) {
    const int d = g.dimension();
    const auto s = shape_of(g, f);
    std::vector<char> touched(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId e : f) touched[static_cast<std::size_t>(g.edge(e).tail)] = touched[static_cast<std::size_t>(g.edge(e).head)] = 1;
    std::int64_t sum = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (touched[static_cast<std::size_t>(v)]) sum += std::int64_t{d} * g.weight(v) - choose2(g.weight(v) + 1);
    }
    return d * (s.vertices - s.components) + sum + choose2(d + 1);
}

// Every non-empty F satisfies the mixed (or body) count. m ≤ 20.
inline bool count_holds_everywhere(const QuotientGraph& g) {
    const auto m = g.edge_count();
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        const auto f = members(mask, m);
        if (static_cast<std::int64_t>(f.size()) > mixed_bound(g, f)) return false;
    }
    return true;
}

inline QuotientGraph random_graph(int d, int n, std::size_t m, std::uint64_t seed, int box = 3) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vertex(0, n - 1), coord(-box, box);
    std::vector<EdgeOrbit> edges;
    while (edges.size() < m) {
        auto e = edge(vertex(rng), vertex(rng), GainVector(static_cast<std::size_t>(d)));
        for (auto& c : e.gain) c = coord(rng);
        bool zero = true;
        for (auto c : e.gain) zero = zero && c == 0;
        if (e.is_loop() && zero) continue;
        edges.push_back(std::move(e));
    }
    return QuotientGraph(d, n, std::move(edges));
}

}  // namespace perigid::testing
