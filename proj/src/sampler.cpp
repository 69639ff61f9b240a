#include "fidgauss/sampler.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace fidgauss {

Vector default_step_stds(const ModelSpec& model) {
    if (model.name == "ma1") {
        Vector s(2);
        s << 0.05, 0.4;
        return s;
    }
    if (model.name == "matern") return Vector::Constant(3, 0.05);
    return Vector::Constant(model.p, 0.1);
}

SamplerConfig resolve_defaults(SamplerConfig cfg, const ModelSpec& model) {
    if (cfg.step_stds.size() == 0) cfg.step_stds = default_step_stds(model);
    if (cfg.q < 0) cfg.q = cfg.k / 2;
    return cfg;
}

void validate_config(const SamplerConfig& cfg, Index p) {
    if (cfg.k < 1)
        throw DomainError("sampler config: k must be >= 1 (got " + std::to_string(cfg.k) + ")");
    if (cfg.q < 0 || cfg.q >= cfg.k)
        throw DomainError("sampler config: q must satisfy 0 <= q < k (got q = " +
                          std::to_string(cfg.q) + ", k = " + std::to_string(cfg.k) +
                          "); at least one signature matrix must be redrawn each step");
    if (cfg.steps < 1)
        throw DomainError("sampler config: steps must be >= 1");
    if (cfg.burn_in < 0 || cfg.burn_in >= cfg.steps)
        throw DomainError("sampler config: burn_in must satisfy 0 <= burn_in < steps (got burn_in = " +
                          std::to_string(cfg.burn_in) + ", steps = " + std::to_string(cfg.steps) + ")");
    if (cfg.step_stds.size() != p)
        throw DomainError("sampler config: step_stds must have one entry per parameter (expected " +
                          std::to_string(p) + ", got " + std::to_string(cfg.step_stds.size()) + ")");
    for (Index i = 0; i < p; ++i)
        if (!(cfg.step_stds(i) > 0))
            throw DomainError("sampler config: step_stds[" + std::to_string(i) +
                              "] must be positive");
    if (cfg.max_init_tries < 1)
        throw DomainError("sampler config: max_init_tries must be >= 1");
}

Vector propose(const Vector& theta, const SamplerConfig& cfg, long step_index, Rng& rng) {
    Vector out = theta;
    if (cfg.mode == ProposalMode::joint) {
        for (Index i = 0; i < theta.size(); ++i)
            out(i) += cfg.step_stds(i) * rng.normal();
    } else {
        const Index c = static_cast<Index>(step_index % static_cast<long>(theta.size()));
        out(c) += cfg.step_stds(c) * rng.normal();
    }
    return out;
}

std::vector<SignatureMatrix> refresh_signatures(const std::vector<SignatureMatrix>& zset,
                                                const SamplerConfig& cfg, Index d, Rng& rng) {
    const int k = cfg.k;
    const int q = cfg.q < 0 ? k / 2 : cfg.q;
    if (static_cast<int>(zset.size()) != k)
        throw DimensionMismatch("refresh_signatures: signature set size does not match k");

    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<SignatureMatrix> out;
    out.reserve(static_cast<std::size_t>(k));
    // partial Fisher-Yates: the first q entries are a uniform sample without
    // replacement
    for (int t = 0; t < q; ++t) {
        const int j = t + static_cast<int>(rng.integer(static_cast<std::uint64_t>(k - t)));
        std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(j)]);
        out.push_back(zset[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])]);
    }
    for (int t = q; t < k; ++t) out.push_back(signature_sample(d, rng));
    return out;
}

ChainState init_state(const Vector& theta0, const Dataset& data, const ModelSpec& model,
                      const SamplerConfig& cfg, Rng& rng, GcfdWarnings* warnings) {
    if (!validate_params(model, theta0))
        throw DomainError("init_state: theta0 is outside the valid region");

    GcfdOptions go;
    go.path = cfg.path;
    go.warnings = warnings;
    const GcfdContext ctx(model, data, theta0, go);

    for (int attempt = 0; attempt < cfg.max_init_tries; ++attempt) {
        std::vector<SignatureMatrix> zset;
        zset.reserve(static_cast<std::size_t>(cfg.k));
        for (int i = 0; i < cfg.k; ++i) zset.push_back(signature_sample(model.d, rng));
        const JacobianSum js = ctx.sum(zset);
        if (js.n_permissible > 0) {
            ChainState s;
            s.theta = theta0;
            s.zset = std::move(zset);
            s.log_like = ctx.log_like();
            s.log_j_sum = js.log_sum;
            s.n_permissible = js.n_permissible;
            return s;
        }
    }
    throw InitFailed("init_state: no permissible signature set found at theta0 after " +
                     std::to_string(cfg.max_init_tries) + " tries");
}

bool mh_step(ChainState& state, const Dataset& data, const ModelSpec& model,
             const SamplerConfig& cfg, long step_index, Rng& rng, GcfdWarnings* warnings) {
    const Vector proposed = propose(state.theta, cfg, step_index, rng);
    // Invalid parameters reject immediately: no signature refreshment, no
    // further random draws this step.
    if (!validate_params(model, proposed)) return false;

    const std::vector<SignatureMatrix> zset = refresh_signatures(state.zset, cfg, model.d, rng);

    double log_like, log_sum;
    int n_perm;
    try {
        GcfdOptions go;
        go.path = cfg.path;
        go.warnings = warnings;
        const GcfdContext ctx(model, data, proposed, go);
        const JacobianSum js = ctx.sum(zset);
        log_like = ctx.log_like();
        log_sum = js.log_sum;
        n_perm = js.n_permissible;
    } catch (const Error&) {
        return false;  // evaluation failure is just a rejection
    }
    if (n_perm == 0) return false;

    const double log_mhr = (log_like + log_sum) - (state.log_like + state.log_j_sum);
    const double u = rng.uniform01();
    if (std::log(u) < log_mhr) {
        state.theta = proposed;
        state.zset = zset;
        state.log_like = log_like;
        state.log_j_sum = log_sum;
        state.n_permissible = n_perm;
        return true;
    }
    return false;
}

ChainRecord run_chain(const Vector& theta0, const Dataset& data, const ModelSpec& model,
                      const SamplerConfig& raw_cfg) {
    const SamplerConfig cfg = resolve_defaults(raw_cfg, model);
    validate_config(cfg, model.p);

    Rng rng(cfg.seed);
    GcfdWarnings warnings;
    ChainState state = init_state(theta0, data, model, cfg, rng, &warnings);

    ChainRecord rec;
    rec.theta.resize(cfg.steps, model.p);
    rec.log_like.resize(cfg.steps);
    rec.log_j_sum.resize(cfg.steps);
    rec.accepted.resize(static_cast<std::size_t>(cfg.steps));
    rec.n_permissible.resize(static_cast<std::size_t>(cfg.steps));

    for (long i = 0; i < cfg.steps; ++i) {
        const bool acc = mh_step(state, data, model, cfg, i, rng, &warnings);
        rec.theta.row(i) = state.theta.transpose();
        rec.log_like(i) = state.log_like;
        rec.log_j_sum(i) = state.log_j_sum;
        rec.accepted[static_cast<std::size_t>(i)] = acc ? 1 : 0;
        rec.n_permissible[static_cast<std::size_t>(i)] = state.n_permissible;
    }
    rec.warnings = warnings;
    return rec;
}

}  // namespace fidgauss
