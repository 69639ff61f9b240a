#pragma once

#include <cstdint>
#include <vector>

#include "fidgauss/chain.hpp"
#include "fidgauss/gcfd.hpp"
#include "fidgauss/model.hpp"
#include "fidgauss/rng.hpp"
#include "fidgauss/types.hpp"

namespace fidgauss {

enum class ProposalMode { joint, cyclic };

struct SamplerConfig {
    int k = 8;    // signature matrices carried per state
    int q = -1;   // kept on refresh; -1 resolves to k/2
    long steps = 6000;
    long burn_in = 1000;
    Vector step_stds;  // per-parameter proposal scale; empty resolves per model
    ProposalMode mode = ProposalMode::joint;
    JacobianPath path = JacobianPath::fast;
    std::uint64_t seed = 0;
    int max_init_tries = 100;
};

// Model-specific default proposal scales.
Vector default_step_stds(const ModelSpec& model);

// Fills empty step_stds and q = -1 with their defaults.
SamplerConfig resolve_defaults(SamplerConfig cfg, const ModelSpec& model);

// Throws DomainError with an actionable message on any inconsistency
// (q >= k, burn_in >= steps, nonpositive step scales, ...).
void validate_config(const SamplerConfig& cfg, Index p);

struct ChainState {
    Vector theta;
    std::vector<SignatureMatrix> zset;
    double log_like = 0.0;
    double log_j_sum = 0.0;
    int n_permissible = 0;
};

// Random-walk proposal.  joint: all coordinates move (p normal draws, index
// order); cyclic: only coordinate step_index % p moves (one draw).
Vector propose(const Vector& theta, const SamplerConfig& cfg, long step_index, Rng& rng);

// New signature multiset: q elements kept from the current set (uniform
// without replacement via partial Fisher-Yates), k - q drawn fresh with
// replacement; kept elements first, then fresh ones.
std::vector<SignatureMatrix> refresh_signatures(const std::vector<SignatureMatrix>& zset,
                                                const SamplerConfig& cfg, Index d, Rng& rng);

// Initial state at theta0: redraws the whole signature set until at least one
// term is permissible.  Throws DomainError for invalid theta0, InitFailed
// after max_init_tries redraws.
ChainState init_state(const Vector& theta0, const Dataset& data, const ModelSpec& model,
                      const SamplerConfig& cfg, Rng& rng, GcfdWarnings* warnings = nullptr);

// One Metropolis-Hastings step; mutates state in place and reports whether
// the proposal was accepted.  Every failure mode of the proposal (invalid
// parameters, evaluation error, no permissible term) is a rejection that
// leaves the state, including its signature set, untouched.
bool mh_step(ChainState& state, const Dataset& data, const ModelSpec& model,
             const SamplerConfig& cfg, long step_index, Rng& rng,
             GcfdWarnings* warnings = nullptr);

// Full chain driver: resolves defaults, validates, initializes, and runs
// cfg.steps steps recording the state after each one.
ChainRecord run_chain(const Vector& theta0, const Dataset& data, const ModelSpec& model,
                      const SamplerConfig& cfg);

}  // namespace fidgauss
