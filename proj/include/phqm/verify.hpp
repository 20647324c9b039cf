#pragma once
// Randomized invariant suites for every module, reported as named flags.

#include <cstdint>

#include "phqm/report.hpp"

namespace phqm {

struct VerifyOptions {
    std::size_t max_dim = 6;
    std::size_t cases = 200;
    std::uint64_t seed = 7;
    double tol = kDefaultTol;
};

/// Runs every suite on `cases` random instances with dimensions cycling
/// through 2..max_dim. Scalars hold the worst observed error per invariant.
ExperimentReport verify_invariants(const VerifyOptions& options);

}  // namespace phqm
