#pragma once

// Exact rigidity matrix of a periodic body-and-bar (or plate-and-bar)
// framework in normalized coordinates. The bar of edge e runs from body i to
// the Λc translate of body j; with h = Λc + p_j + q_j − p_i − q_i its row is
//
//   ⟨ṗ_j − ṗ_i, h⟩ + ⟨w_j, q_j ∧ h⟩ − ⟨w_i, q_i ∧ h⟩ + ⟨Λ̇ c, h⟩ = 0.
//
// Rotations w are the upper-triangle entries (a < b, row-major) of a skew
// matrix A, so that ⟨A q, h⟩ = Σ_{a<b} w_ab (h_a q_b − q_a h_b). The lattice
// block is Λ̇ row-major, with coefficient h_a c_b on Λ̇_ab.
//
// Bodies sit at p_v = 0. A k-plate at p_v is the affine span of e_1..e_k
// through p_v: its endpoints must lie in span(e_1..e_k) and only the rotation
// entries (a, b) with a ≤ k are free.

#include "perigid/gain_graph.hpp"
#include "perigid/matroid.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace perigid {

struct Realization {
    RationalMatrix lattice;                      // d×d, columns are the periods
    std::vector<Point> frame_origins;            // p_v; zero for bodies
    std::vector<std::pair<Point, Point>> endpoints;  // (q_tail, q_head) per edge
};

/// Realization read off the endpoints stored in g (all must be present),
/// with the given lattice and zero frame origins.
Realization realization_from_graph(const QuotientGraph& g, const RationalMatrix& lattice);

/// Copy of g whose edges carry the endpoints of r.
QuotientGraph with_endpoints(const QuotientGraph& g, const Realization& r);

enum class Pinning {
    first_body,  // columns of body 1 removed
    none,        // all n bodies free
};

class RigidityMatrix {
public:
    RigidityMatrix(int d, int n, Pinning pinning);

    int dimension() const { return d_; }
    int vertex_count() const { return n_; }
    Pinning pinning() const { return pinning_; }

    /// Column of translation coordinate a of body v; nullopt if pinned.
    std::optional<std::size_t> translation_column(VertexId v, int a) const;
    /// Column of rotation entry (a, b), a < b, of body v; nullopt if pinned.
    std::optional<std::size_t> rotation_column(VertexId v, int a, int b) const;
    std::size_t lattice_column(int a, int b) const;

    RationalMatrix entries;

private:
    std::size_t free_bodies_before(VertexId v) const;

    int d_;
    int n_;
    Pinning pinning_;
};

/// Index of the rotation pair (a, b), a < b, in row-major upper-triangle order.
int rotation_index(int d, int a, int b);

/// Throws std::invalid_argument for a singular lattice, a zero-length bar
/// (naming the edge), an endpoint off its plate, or mismatched sizes.
RigidityMatrix build_matrix(const QuotientGraph& g, const Realization& r, Pinning pinning = Pinning::first_body);

std::size_t exact_rank(const RigidityMatrix& m);

/// Λ = I + entries in {−3..3}/7; endpoints in {−9..9}/4 (restricted to the
/// plate); plate origins in {−9..9}/4. Zero bars and singular Λ are resampled.
Realization random_realization(const QuotientGraph& g, std::mt19937_64& rng);

/// Largest exact rank over `trials` random realizations; gains kept.
std::size_t generic_rank(const QuotientGraph& g, int trials = 3, std::uint64_t seed = 0);

/// Copy of g carrying the endpoints of a random realization.
QuotientGraph with_random_endpoints(const QuotientGraph& g, std::uint64_t seed);

struct Archetype {
    QuotientGraph graph;  // rewritten gains, endpoints attached
    Realization realization;
    std::int64_t scale = 0;  // N
};

/// Λ = I. Tree T_i edges get gain e_i; an F_ij edge gets gain e_j with e_i as
/// the endpoint on its head body; residual edges, matched with the pairs
/// i ≤ j in row-major order, get N(e_i + e_j). N defaults to n + 1.
/// Throws std::invalid_argument if dec is invalid or N ≤ n.
Archetype archetype_realization(const QuotientGraph& g, const Decomposition& dec,
                                std::optional<std::int64_t> scale = std::nullopt);

/// Replaces loop `loop` at j by an edge target → j with gain k·c, tail
/// endpoint 0 and head endpoint k·q, where q = q_head − q_tail (missing
/// endpoints count as 0). Throws std::invalid_argument if `loop` is not a
/// loop, target == j, or k < 1.
QuotientGraph break_loop(const QuotientGraph& g, EdgeId loop, VertexId target, std::int64_t k);

struct LoopBreakSearch {
    std::size_t rank_before = 0;
    std::size_t rank_after = 0;  // at the returned k, or at the cap
    std::optional<std::int64_t> k;  // smallest power of two preserving rank
};

/// Doubles k from 1 up to 2^20 until break_loop keeps the exact rank of the
/// realization given by g's endpoints and `lattice`.
LoopBreakSearch find_rank_preserving_break(const QuotientGraph& g, EdgeId loop, VertexId target,
                                           const RationalMatrix& lattice);

struct ContractionStep {
    EdgeId edge = 0;
    VertexId loop_at = 0;  // the vertex now carrying the loop
    VertexId other = 0;    // the endpoint dropped
};

struct Contraction {
    QuotientGraph graph;
    std::vector<ContractionStep> steps;
};

/// Turns every non-loop edge into a loop at one of its endpoints while
/// keeping |F| ≤ a·n_F + b for all non-empty F. Gains are kept, endpoints
/// dropped. Throws std::invalid_argument if g does not satisfy the count.
Contraction contract_to_loops(const QuotientGraph& g, int a, int b);

/// True iff every non-empty edge set F of g has |F| ≤ a·n_F + b.
bool satisfies_plus_count(const QuotientGraph& g, int a, int b);

}  // namespace perigid
