#include "perigid/pebble.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace perigid {

SparsityParams SparsityParams::make(int a, int b) {
    if (a < 1) throw std::invalid_argument("sparsity: a must be positive");
    if (b < 0 || b >= 2 * a) throw std::invalid_argument("sparsity: need 0 <= b < 2a");
    return SparsityParams{a, b};
}

Multigraph as_multigraph(const QuotientGraph& g) {
    Multigraph m;
    m.n = g.vertex_count();
    m.edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) m.edges.emplace_back(e.tail, e.head);
    return m;
}

PebbleGame::PebbleGame(int vertex_count, SparsityParams params)
    : params_(params),
      pebbles_(static_cast<std::size_t>(vertex_count), params.a),
      out_(static_cast<std::size_t>(vertex_count)),
      seen_(static_cast<std::size_t>(vertex_count), 0) {}

// Depth-first search along directed edges for a free pebble. On success the
// path is reversed, which moves one pebble back to `start`.
bool PebbleGame::search(VertexId start) {
    std::vector<std::pair<VertexId, std::size_t>> stack{{start, 0}};
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        auto& edges = out_[static_cast<std::size_t>(x)];
        if (next == edges.size()) {
            stack.pop_back();
            continue;
        }
        const VertexId y = edges[next].second;
        ++next;
        if (seen_[static_cast<std::size_t>(y)] == stamp_) continue;
        seen_[static_cast<std::size_t>(y)] = stamp_;
        if (pebbles_[static_cast<std::size_t>(y)] > 0) {
            // Reverse every edge on the stack path; indices are next − 1.
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                const VertexId from = it->first;
                auto& list = out_[static_cast<std::size_t>(from)];
                const std::size_t idx = it->second - 1;
                const auto [edge_id, to] = list[idx];
                list[idx] = list.back();
                list.pop_back();
                out_[static_cast<std::size_t>(to)].emplace_back(edge_id, from);
            }
            --pebbles_[static_cast<std::size_t>(y)];
            ++pebbles_[static_cast<std::size_t>(start)];
            return true;
        }
        stack.emplace_back(y, 0);
    }
    return false;
}

bool PebbleGame::try_insert(VertexId u, VertexId v, EdgeId id) {
    closure_.clear();
    const int need = params_.b + 1;
    auto& pu = pebbles_[static_cast<std::size_t>(u)];
    auto& pv = pebbles_[static_cast<std::size_t>(v)];
    if (u == v) {
        if (!params_.loops_admissible()) {
            closure_.push_back(u);
            return false;
        }
        while (pu < need) {
            ++stamp_;
            seen_[static_cast<std::size_t>(u)] = stamp_;
            if (!search(u)) {
                for (std::size_t x = 0; x < seen_.size(); ++x) {
                    if (seen_[x] == stamp_) closure_.push_back(static_cast<VertexId>(x));
                }
                return false;
            }
        }
        out_[static_cast<std::size_t>(u)].emplace_back(id, u);
        --pu;
        ++accepted_;
        return true;
    }
    while (pu + pv < need) {
        ++stamp_;
        seen_[static_cast<std::size_t>(u)] = stamp_;
        seen_[static_cast<std::size_t>(v)] = stamp_;
        if (search(u) || search(v)) continue;
        for (std::size_t x = 0; x < seen_.size(); ++x) {
            if (seen_[x] == stamp_) closure_.push_back(static_cast<VertexId>(x));
        }
        return false;
    }
    if (pu > 0) {
        out_[static_cast<std::size_t>(u)].emplace_back(id, v);
        --pu;
    } else {
        out_[static_cast<std::size_t>(v)].emplace_back(id, u);
        --pv;
    }
    ++accepted_;
    return true;
}

std::vector<EdgeId> PebbleGame::spanned_by(const std::vector<VertexId>& vertices) const {
    std::vector<char> in(out_.size(), 0);
    for (VertexId v : vertices) in[static_cast<std::size_t>(v)] = 1;
    std::vector<EdgeId> edges;
    for (VertexId v : vertices) {
        for (const auto& [id, head] : out_[static_cast<std::size_t>(v)]) {
            if (in[static_cast<std::size_t>(head)]) edges.push_back(id);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

bool is_sparse(const Multigraph& g, SparsityParams p) {
    PebbleGame game(g.n, p);
    for (EdgeId e = 0; e < g.edges.size(); ++e) {
        if (!game.try_insert(g.edges[e].first, g.edges[e].second, e)) return false;
    }
    return true;
}

SparseSubgraphResult max_sparse_subgraph(const Multigraph& g, SparsityParams p) {
    PebbleGame game(g.n, p);
    SparseSubgraphResult result;
    for (EdgeId e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        if (game.try_insert(u, v, e)) {
            result.kept.push_back(e);
            continue;
        }
        result.rejected.push_back(e);
        if (!result.violating_set) {
            RejectionWitness w;
            w.rejected = e;
            w.vertices = game.last_closure();
            w.spanned = game.spanned_by(w.vertices);
            result.violating_set = std::move(w);
        }
    }
    result.is_tight = static_cast<std::int64_t>(result.kept.size()) ==
                      std::int64_t{p.a} * g.n - p.b;
    return result;
}

BruteForceSparsity brute_force_sparse(const Multigraph& g, SparsityParams p) {
    const std::size_t m = g.edges.size();
    if (m > 20) throw std::invalid_argument("brute_force_sparse: more than 20 edges");
    std::vector<int> local(static_cast<std::size_t>(g.n), -1);
    int k = 0;
    for (const auto& [u, v] : g.edges) {
        for (VertexId x : {u, v}) {
            if (local[static_cast<std::size_t>(x)] < 0) local[static_cast<std::size_t>(x)] = k++;
        }
    }
    if (k > 16) throw std::invalid_argument("brute_force_sparse: more than 16 incident vertices");

    // inside[W]: bitmask of edges with both endpoints in vertex set W.
    const std::uint32_t subsets = 1u << k;
    std::vector<std::uint32_t> inside(subsets, 0);
    std::vector<std::uint32_t> ends(m);
    for (std::size_t e = 0; e < m; ++e) {
        ends[e] = (1u << local[static_cast<std::size_t>(g.edges[e].first)]) |
                  (1u << local[static_cast<std::size_t>(g.edges[e].second)]);
    }
    for (std::uint32_t w = 1; w < subsets; ++w) {
        for (std::size_t e = 0; e < m; ++e) {
            if ((ends[e] & ~w) == 0) inside[w] |= 1u << e;
        }
    }
    auto sparse = [&](std::uint32_t mask) {
        for (std::uint32_t w = 1; w < subsets; ++w) {
            const int spanned = std::popcount(mask & inside[w]);
            if (spanned > 0 && spanned > p.a * std::popcount(w) - p.b) return false;
        }
        return true;
    };

    BruteForceSparsity result;
    const std::uint32_t full = m == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    result.sparse = sparse(full);
    if (result.sparse) {
        result.max_independent = m;
        return result;
    }
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
        const auto bits = static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(mask)));
        if (bits <= result.max_independent) continue;
        if (sparse(static_cast<std::uint32_t>(mask))) result.max_independent = bits;
    }
    return result;
}

}  // namespace perigid
