#pragma once

#include <cstdint>
#include <vector>

#include "fidgauss/types.hpp"

namespace fidgauss {

// Counters for numerical-trouble events during density evaluation.  These are
// warnings, not errors: the affected term is simply excluded (treated as
// impermissible) and the chain keeps running.
struct GcfdWarnings {
    long degenerate_eigengap = 0;   // adjacent covariance eigenvalues nearly tied
    long numerically_excluded = 0;  // Jacobian terms dropped (ill-conditioned system)
};

// One Markov chain run: row i describes the state after step i.
struct ChainRecord {
    Matrix theta;  // steps x p
    Vector log_like;
    Vector log_j_sum;
    std::vector<std::uint8_t> accepted;
    std::vector<int> n_permissible;
    GcfdWarnings warnings;

    Index steps() const { return theta.rows(); }
};

}  // namespace fidgauss
