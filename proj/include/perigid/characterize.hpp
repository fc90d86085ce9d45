#pragma once

// Verdicts on quotient graphs: minimal rigidity by the counting
// characterizations, generic rank and degrees of freedom, and the
// cycle-gain refinement of the edge count (a necessary condition only).

#include "perigid/gain_graph.hpp"
#include "perigid/matroid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace perigid {

enum class Verdict { minimally_rigid, flexible, overbraced, not_liftable };

std::string to_string(Verdict v);
/// Inverse of to_string(Verdict); throws std::invalid_argument.
Verdict verdict_from_string(const std::string& s);

struct AnalysisReport {
    Verdict verdict = Verdict::flexible;
    std::string method;  // "theorem1", "theorem2", "theorem3" or "rank"
    std::int64_t counting_target = 0;
    std::int64_t edge_count = 0;
    std::int64_t combinatorial_rank = 0;
    std::optional<std::int64_t> numeric_rank;
    std::int64_t dof = 0;         // counting_target − combinatorial_rank
    std::int64_t redundancy = 0;  // edge_count − combinatorial_rank
    std::optional<Decomposition> certificate;
    /// Independent sets covering the edges (single vertex: d gain sets;
    /// plates: d trees, the oriented part, the residual).
    std::vector<std::vector<EdgeId>> partition;
    std::optional<CountViolation> violation;
    /// Single vertex only: every gain class (up to sign) has at most d loops.
    std::optional<bool> liftable;
    /// Set when the verdict was also confirmed by enumerating all edge sets.
    bool exhaustive_confirmed = false;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Body graph with m = counting_target. Runs the tight-core pebble route and
/// the tree/pseudoforest decomposition route, and throws std::logic_error if
/// they disagree. Throws std::invalid_argument on plates or another m.
AnalysisReport theorem2_check(const QuotientGraph& g);

/// Body graph, any m: rank s + min(C(d+1,2), m − s) where s is the size of a
/// maximum (C(d+1,2), d)-sparse subgraph.
AnalysisReport rank_and_dof(const QuotientGraph& g);

/// Single vertex with d² loops. Throws std::invalid_argument otherwise.
AnalysisReport theorem1_check(const QuotientGraph& g);

/// Loop gain classes up to sign with their sizes (first appearance order).
std::vector<std::pair<GainVector, int>> gain_classes(const QuotientGraph& g);

/// Graph with plate weights, any m; minimally rigid iff the union rank is
/// m = counting_target. Verdicts for m ≤ 14 are confirmed by enumerating
/// every non-empty edge set (std::logic_error on mismatch).
AnalysisReport theorem3_check(const QuotientGraph& g);

/// Dispatch used by the command line: weights → theorem3, n = 1 with d²
/// edges → theorem1, m = counting_target → theorem2, otherwise rank_and_dof.
AnalysisReport analyze(const QuotientGraph& g);

/// Stores generic_rank(g, trials, seed) in report.numeric_rank.
void attach_numeric_rank(AnalysisReport& report, const QuotientGraph& g, int trials, std::uint64_t seed);

struct RefinedCheckOptions {
    bool exhaustive = true;  // all non-empty F (m ≤ 20)
    std::size_t samples = 2000;
    std::uint64_t seed = 0;
};

/// NECESSARY-ONLY. Checks |F| ≤ d(n_F − ω_F) + C(d,2)n_F − Σ_{F'} C(d − d_{F'}, 2)
/// + C(d_F + 1, 2) over enumerated or sampled F. Passing does not imply
/// rigidity.
struct RefinedCheckResult {
    bool passed = true;
    bool exhaustive = false;
    std::size_t subsets_checked = 0;
    std::vector<EdgeId> worst;  // smallest bound − |F|
    std::int64_t worst_size = 0;
    std::int64_t worst_bound = 0;
};

/// Body graphs only. Throws std::invalid_argument for exhaustive mode with
/// m > 20 or for plate weights.
RefinedCheckResult refined_check(const QuotientGraph& g, const RefinedCheckOptions& options = {});

}  // namespace perigid
