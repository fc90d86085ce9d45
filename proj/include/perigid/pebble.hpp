#pragma once

// (a,b)-sparsity for multigraphs with loops: every non-empty edge set F
// spans at most a·n_F − b edges, where n_F counts the vertices F touches.
// Decided incrementally by the pebble game; a brute-force enumerator backs
// it up in tests.

#include "perigid/gain_graph.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace perigid {

struct SparsityParams {
    int a = 1;
    int b = 0;

    /// Throws std::invalid_argument unless a ≥ 1 and 0 ≤ b < 2a.
    static SparsityParams make(int a, int b);

    /// A loop spans one vertex, so it fits only when a − b ≥ 1.
    bool loops_admissible() const { return b < a; }
};

/// Gains and geometry dropped: vertex count plus endpoint pairs.
struct Multigraph {
    int n = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
};
Multigraph as_multigraph(const QuotientGraph& g);

/// Why an edge was refused: the vertex set reached by the failed pebble
/// search, which is tight in the accepted edges it spans.
struct RejectionWitness {
    EdgeId rejected = 0;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> spanned;
};

struct SparseSubgraphResult {
    std::vector<EdgeId> kept;
    std::vector<EdgeId> rejected;
    bool is_tight = false;
    /// Witness for the first rejected edge, if any edge was rejected.
    std::optional<RejectionWitness> violating_set;
};

/// Incremental (a,b) pebble game. Each vertex starts with a pebbles; an
/// accepted edge is covered by one pebble of its tail and directed out of it.
class PebbleGame {
public:
    PebbleGame(int vertex_count, SparsityParams params);

    /// Accepts the edge if the accepted set stays (a,b)-sparse.
    bool try_insert(VertexId u, VertexId v, EdgeId id);

    std::size_t accepted() const { return accepted_; }
    /// Vertex set of the last failed search (empty after a success).
    const std::vector<VertexId>& last_closure() const { return closure_; }
    /// Accepted edges with both endpoints in `vertices`.
    std::vector<EdgeId> spanned_by(const std::vector<VertexId>& vertices) const;

private:
    bool search(VertexId start);

    SparsityParams params_;
    std::vector<int> pebbles_;
    // Outgoing accepted edges per vertex: (edge id, head).
    std::vector<std::vector<std::pair<EdgeId, VertexId>>> out_;
    std::vector<int> seen_;
    int stamp_ = 0;
    std::vector<VertexId> closure_;
    std::size_t accepted_ = 0;
};

bool is_sparse(const Multigraph& g, SparsityParams p);

/// Greedy maximum (a,b)-sparse subset, edges taken in list order.
SparseSubgraphResult max_sparse_subgraph(const Multigraph& g, SparsityParams p);

struct BruteForceSparsity {
    bool sparse = false;
    std::size_t max_independent = 0;
};

/// Exhaustive check by subset enumeration. Throws std::invalid_argument when
/// there are more than 20 edges or more than 16 incident vertices.
BruteForceSparsity brute_force_sparse(const Multigraph& g, SparsityParams p);

}  // namespace perigid
