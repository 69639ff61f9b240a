#pragma once

#include <cstdint>
#include <vector>

#include "fidgauss/chain.hpp"
#include "fidgauss/model.hpp"
#include "fidgauss/types.hpp"

namespace fidgauss {

// Exact Gaussian log likelihood of iid replicates under sigma(theta).
// Throws DomainError for invalid theta, NotPositiveDefinite when the
// covariance fails its Cholesky factorization.
double gaussian_loglik(const Vector& theta, const Dataset& data, const ModelSpec& model);

struct MleResult {
    Vector theta;
    double log_lik = 0.0;
    bool converged = false;
    long n_evals = 0;
};

// Maximum likelihood by Nelder-Mead: one start at theta0 plus three random
// restarts around it (seeded, so the result is deterministic), 5000
// evaluations budget per start, best vertex wins.
MleResult mle_fit(const Dataset& data, const ModelSpec& model, const Vector& theta0,
                  std::uint64_t seed = 0);

// Sliding-window composite split: every length-w contiguous window of every
// replicate becomes its own replicate, ordered replicate-major then by window
// offset.  An m x d dataset with window w yields m*(d-w+1) rows of width w.
// Throws WindowTooLarge when w > d, DomainError when w < 2.
Dataset composite_split(const Dataset& data, Index w);

// Type-7 (linear interpolation) sample quantile; size must be >= 1.
double quantile_type7(std::vector<double> values, double prob);

struct ChainSummary {
    Vector mean;
    Vector q025;
    Vector q975;
    double acceptance_rate = 0.0;
    Index n_kept = 0;
};

// Posterior summary of the post-burn-in portion of a chain.  Throws
// DomainError when burn_in leaves no samples.
ChainSummary summarize_chain(const ChainRecord& record, Index burn_in);

struct CoverageReport {
    Vector per_param;   // fraction of runs whose [q025, q975] contains the truth
    double joint = 0.0; // fraction where all parameters are covered at once
    int n_runs = 0;
};

CoverageReport coverage(const std::vector<ChainSummary>& summaries, const Vector& theta_true);

}  // namespace fidgauss
