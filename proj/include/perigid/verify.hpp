#pragma once

// Cross-oracle harness: seeded instances checked by the combinatorial
// routes, the exact rank oracle, and brute-force enumeration.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace perigid {

struct VerifyOptions {
    std::vector<int> dims{2, 3};
    int max_vertices = 4;
    int count = 200;
    std::uint64_t seed = 1;
    /// Test hook: flip the combinatorial verdict of this instance index.
    std::optional<int> inject_failure;
    std::string reproducer_dir = ".";
    int jobs = 1;
};

struct VerifySummary {
    int total = 0;
    int agreed = 0;
    std::vector<std::string> failures;     // one line per failed instance
    std::vector<std::string> reproducers;  // graph files written for failures

    bool ok() const { return agreed == total; }
};

/// Throws std::invalid_argument outside d ∈ 1..3, n ∈ 1..6, count ∈ 0..1000.
/// Writes one line per instance to `log` when given.
VerifySummary run_verification(const VerifyOptions& options, std::ostream* log = nullptr);

}  // namespace perigid
