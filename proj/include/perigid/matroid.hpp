#pragma once

// Matroids on the edge orbits of a quotient graph and their union, computed
// by augmenting-path matroid partition. Also the decompositions certifying
// the counting characterizations.

#include "perigid/gain_graph.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace perigid {

enum class MatroidKind { graphic, indegree, linear, uniform };

/// A matroid whose ground set is the edge list of one quotient graph.
///   graphic   forests of the underlying multigraph (loops are dependent)
///   indegree  sets orientable with in-degree at most limit[v] everywhere
///   linear    gain vectors independent over Q
///   uniform   any set of at most `rank` edges
class MatroidOracle {
public:
    static MatroidOracle graphic(const QuotientGraph& g);
    static MatroidOracle indegree(const QuotientGraph& g, std::vector<int> limits);
    static MatroidOracle linear(const QuotientGraph& g);
    static MatroidOracle uniform(const QuotientGraph& g, std::size_t rank);

    MatroidKind kind() const { return kind_; }
    const QuotientGraph& graph() const { return *graph_; }
    const std::vector<int>& limits() const { return limits_; }
    std::size_t uniform_rank() const { return rank_; }

    bool independent(std::span<const EdgeId> edges) const;
    std::size_t rank(std::span<const EdgeId> edges) const;

private:
    MatroidOracle(MatroidKind kind, const QuotientGraph& g);

    MatroidKind kind_;
    std::shared_ptr<const QuotientGraph> graph_;
    std::vector<int> limits_;
    std::size_t rank_ = 0;
};

struct UnionResult {
    std::size_t rank = 0;
    /// partition[i] is independent in oracle i; their union is a basis of E.
    std::vector<std::vector<EdgeId>> partition;
    /// Edges of E left out, in the order they were refused.
    std::vector<EdgeId> unassigned;
    /// For the first refused edge: a set S containing it with
    /// |S| = Σ_i r_i(S) + 1, so S is dependent in the union.
    std::optional<std::vector<EdgeId>> dependent_set;
};

/// Rank of the union matroid restricted to E. Elements are offered in the
/// order given. Throws std::invalid_argument if the oracles do not share one
/// ground graph.
UnionResult union_rank(std::span<const MatroidOracle> oracles, std::span<const EdgeId> edges);

/// A spanning pseudoforest F_ij: every vertex is the head of exactly one of
/// its edges. heads[k] is the head of edges[k].
struct PseudoForest {
    int i = 0;  // 0-based pair i < j
    int j = 0;
    std::vector<EdgeId> edges;
    std::vector<VertexId> heads;

    friend bool operator==(const PseudoForest&, const PseudoForest&) = default;
};

struct Decomposition {
    std::vector<std::vector<EdgeId>> trees;  // d spanning trees
    std::vector<PseudoForest> pseudoforests; // C(d,2), pairs in row-major order
    std::vector<EdgeId> residual;            // C(d+1,2) edges

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// An edge set breaking a count: size > bound.
struct CountViolation {
    std::vector<EdgeId> edges;
    std::int64_t size = 0;
    std::int64_t bound = 0;

    friend bool operator==(const CountViolation&, const CountViolation&) = default;
};

struct DecompositionResult {
    std::size_t union_rank = 0;
    std::optional<Decomposition> decomposition;
    /// Present exactly when no decomposition exists: |F| exceeds
    /// d(n_F − ω_F) + C(d,2)·n_F + C(d+1,2).
    std::optional<CountViolation> violation;
};

/// Splits a body graph with m = counting_target into d spanning trees,
/// C(d,2) spanning pseudoforests and C(d+1,2) residual edges, or reports a
/// violated count. Throws std::invalid_argument on plate weights or a wrong
/// edge count.
DecompositionResult decompose_theorem2(const QuotientGraph& g);

/// Empty if dec is a valid decomposition of g; otherwise the first problem.
std::optional<std::string> validate_decomposition(const QuotientGraph& g, const Decomposition& dec);

struct SingleVertexResult {
    bool rigid = false;
    /// d sets of linearly independent gains covering the edges (if rigid).
    std::vector<std::vector<EdgeId>> partition;
    /// Otherwise an F with |F| > d·dim span C(F).
    std::optional<CountViolation> violation;
};

/// Union of d copies of the linear matroid on gains, for n = 1 and m = d².
/// Throws std::invalid_argument otherwise.
SingleVertexResult n1_union_check(const QuotientGraph& g);

/// k'_v = d·k_v − C(k_v+1,2) per vertex (C(d,2) for bodies).
std::vector<int> plate_limits(const QuotientGraph& g);

struct MixedUnionResult {
    std::size_t rank = 0;
    std::vector<std::vector<EdgeId>> trees;
    std::vector<EdgeId> oriented;  // the in-degree ≤ k'_v part
    std::vector<EdgeId> residual;  // the uniform part
    /// When rank < m: an F with |F| > d(n_F − ω_F) + Σ_{V_F} k'_v + C(d+1,2).
    std::optional<CountViolation> violation;
};

/// Union of d graphic matroids, the k'_v in-degree matroid and the uniform
/// matroid of rank C(d+1,2). Throws std::invalid_argument without weights.
MixedUnionResult mixed_union_rank(const QuotientGraph& g);

/// True iff F can be oriented with in-degree at most limits[v] at each v.
bool f4_independent(const QuotientGraph& g, std::span<const EdgeId> edges, std::span<const int> limits);

}  // namespace perigid
