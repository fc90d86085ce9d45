#pragma once

// Seeded instance generator. Output depends only on the arguments.

#include "perigid/gain_graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace perigid {

enum class InstanceKind {
    random,        // m uniform edges (loops allowed), m defaults to the target
    decomposable,  // d trees + C(d,2) pseudoforests + C(d+1,2) extras
    violating,     // a vertex set W spanning one edge more than its count allows
};

std::string to_string(InstanceKind k);
/// Throws std::invalid_argument on an unknown name.
InstanceKind instance_kind_from_string(const std::string& s);

struct GeneratedInstance {
    QuotientGraph graph;
    /// violating: the planted edge set; empty otherwise.
    std::vector<EdgeId> planted;
    /// Lines suitable for graph-file comments.
    std::vector<std::string> comments;
};

/// Gains are uniform in {−3..3}^d, never zero on loops. Throws
/// std::invalid_argument on infeasible parameters: decomposable or violating
/// with m other than counting_target, violating with n = 1, d < 1, n < 1.
GeneratedInstance generate_instance(int d, int n, std::optional<std::int64_t> m, InstanceKind kind,
                                    std::uint64_t seed);

}  // namespace perigid
