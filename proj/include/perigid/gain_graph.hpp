#pragma once

// Quotient multigraph G/Γ of a d-periodic body-and-bar graph, together with
// its integer lifting (gain) on every oriented edge orbit.
//
// Vertices are 0-based in the C++ API. The text format and the CLI number
// them from 1.

#include "perigid/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perigid {

using VertexId = int;
using EdgeId = std::size_t;
using GainVector = std::vector<std::int64_t>;

/// C(k, 2).
constexpr std::int64_t choose2(std::int64_t k) { return k * (k - 1) / 2; }

/// Rotational parameters of a k-plate in R^d: d·k − C(k+1, 2).
constexpr std::int64_t plate_rotations(int d, int k) { return std::int64_t{d} * k - choose2(k + 1); }

/// Raised for structurally invalid input. `field` names the offending part,
/// e.g. "edges[3].gain".
class GraphError : public std::invalid_argument {
public:
    GraphError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// One orbit of bars. The bar runs from the tail body to the translate of
/// the head body by the period Λ·gain. Endpoints are in the frame of the
/// respective body and may be left for the rank oracle to sample.
struct EdgeOrbit {
    VertexId tail = 0;
    VertexId head = 0;
    GainVector gain;
    std::optional<Point> q_tail;
    std::optional<Point> q_head;

    bool is_loop() const { return tail == head; }
    friend bool operator==(const EdgeOrbit&, const EdgeOrbit&) = default;
};

class QuotientGraph {
public:
    /// Validates and stores the graph. Throws GraphError on a gain or endpoint
    /// of the wrong length, a vertex out of range, a weight outside 0..d, or a
    /// loop that is a zero-length bar (zero gain, coinciding endpoints).
    QuotientGraph(int dimension, int vertex_count, std::vector<EdgeOrbit> edges,
                  std::optional<std::vector<int>> weights = std::nullopt);

    int dimension() const { return dimension_; }
    int vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<EdgeOrbit>& edges() const { return edges_; }
    const EdgeOrbit& edge(EdgeId e) const { return edges_.at(e); }

    const std::optional<std::vector<int>>& weights() const { return weights_; }
    /// Plate dimension of v; d when the graph carries no weights.
    int weight(VertexId v) const { return weights_ ? (*weights_)[static_cast<std::size_t>(v)] : dimension_; }
    /// True when every vertex is a full body (k_v = d).
    bool all_bodies() const;

    /// Same vertices and weights with a new edge list (validated again).
    QuotientGraph with_edges(std::vector<EdgeOrbit> edges) const;

    friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;

private:
    int dimension_;
    int vertex_count_;
    std::vector<EdgeOrbit> edges_;
    std::optional<std::vector<int>> weights_;
};

/// Number of edge orbits of a minimally rigid graph on these vertices.
/// Body case: (n−1)·C(d+1,2) + d². With plate weights:
/// d(n−1) + Σ_v [d·k_v − C(k_v+1,2)] + C(d+1,2).
std::int64_t counting_target(const QuotientGraph& g);

/// Unordered vertex pair (u ≤ v; u == v for loops) to edge count.
using MultiplicityProfile = std::map<std::pair<VertexId, VertexId>, int>;
MultiplicityProfile multiplicity_profile(const QuotientGraph& g);

/// Incidence statistics of an edge subset: n_F (incident vertices) and
/// ω_F (connected components, isolated vertices excluded).
struct SubsetShape {
    std::int64_t vertices = 0;
    std::int64_t components = 0;
};
SubsetShape subset_shape(const QuotientGraph& g, std::span<const EdgeId> subset);

/// Ranks of the images of the cycle spaces in Z^d: one entry per connected
/// component of the subset (ordered by first appearance), and the rank of
/// their union.
struct CycleGainRanks {
    int total = 0;
    std::vector<int> per_component;
};
CycleGainRanks cycle_gain_ranks(const QuotientGraph& g, std::span<const EdgeId> subset);

/// Upper bound on the rank of the rows of a non-empty edge subset F:
/// d(n_F − ω_F) + Σ_{v ∈ V_F} k'_v + C(d+1,2), with k'_v = d·k_v − C(k_v+1,2).
/// For body graphs k'_v = C(d,2) and this is the plain edge-sparsity count.
std::int64_t edge_count_bound(const QuotientGraph& g, std::span<const EdgeId> subset);

/// Sharper bound that also uses the lattice directions reached by cycles:
/// d(n_F − ω_F) + C(d,2)·n_F − Σ_{F'} C(d − d_{F'}, 2) + C(d_F + 1, 2).
/// Body graphs only.
std::int64_t refined_count_bound(const QuotientGraph& g, std::span<const EdgeId> subset);

/// Copy of g with every gain drawn uniformly from {−box..box}^d, except that
/// loops never receive the zero gain (such a loop would tie a body to itself).
QuotientGraph random_gains(const QuotientGraph& g, int box, std::uint64_t seed);

/// All edge ids 0..m−1.
std::vector<EdgeId> all_edges(const QuotientGraph& g);

}  // namespace perigid
