#include "fidgauss/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>

#include "fidgauss/rng.hpp"

namespace fidgauss {

double gaussian_loglik(const Vector& theta, const Dataset& data, const ModelSpec& model) {
    if (data.d() != model.d)
        throw DimensionMismatch("gaussian_loglik: data width does not match model dimension");
    const Matrix sigma = build_sigma(model, theta);
    Eigen::LLT<Matrix> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("gaussian_loglik: covariance is not positive definite");
    const Index m = data.m(), d = data.d();
    if (m == 0) return 0.0;

    double logdet = 0.0;
    const Matrix& l = llt.matrixLLT();
    for (Index i = 0; i < d; ++i) logdet += 2.0 * std::log(l(i, i));

    const Matrix yt = data.y.transpose();           // d x m
    const Matrix solved = llt.solve(yt);            // sigma^{-1} y_r per column
    const double quad = yt.cwiseProduct(solved).sum();

    constexpr double log2pi = 1.8378770664093454836;
    return -0.5 * static_cast<double>(m) * (static_cast<double>(d) * log2pi + logdet) -
           0.5 * quad;
}

namespace {

// Nelder-Mead on -loglik; invalid parameter points get +inf so the simplex
// slides back into the valid region.
struct NelderMead {
    const Dataset& data;
    const ModelSpec& model;
    long evals = 0;

    double objective(const Vector& theta) {
        ++evals;
        try {
            if (!validate_params(model, theta))
                return std::numeric_limits<double>::infinity();
            return -gaussian_loglik(theta, data, model);
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    }

    struct Outcome {
        Vector theta;
        double f = std::numeric_limits<double>::infinity();
        bool converged = false;
    };

    Outcome run(const Vector& start, long budget) {
        const Index n = start.size();
        std::vector<Vector> x(static_cast<std::size_t>(n) + 1, start);
        std::vector<double> f(static_cast<std::size_t>(n) + 1);
        for (Index i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i) + 1](i) += 0.05 * (1.0 + std::abs(start(i)));
        for (std::size_t i = 0; i < x.size(); ++i) f[i] = objective(x[i]);

        std::vector<std::size_t> ord(x.size());
        const long start_evals = evals;
        bool converged = false;
        while (evals - start_evals < budget) {
            std::iota(ord.begin(), ord.end(), 0u);
            std::sort(ord.begin(), ord.end(),
                      [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });

            double diam = 0.0;
            for (std::size_t i = 1; i < x.size(); ++i)
                diam = std::max(diam, (x[ord[i]] - x[ord[0]]).cwiseAbs().maxCoeff());
            const double fspread = f[ord.back()] - f[ord[0]];
            if (diam < 1e-6 && std::abs(fspread) < 1e-8) {
                converged = true;
                break;
            }

            const std::size_t worst = ord.back();
            Vector centroid = Vector::Zero(n);
            for (std::size_t i = 0; i + 1 < ord.size(); ++i) centroid += x[ord[i]];
            centroid /= static_cast<double>(n);

            const Vector xr = centroid + (centroid - x[worst]);  // reflection
            const double fr = objective(xr);
            if (fr < f[ord[0]]) {
                const Vector xe = centroid + 2.0 * (centroid - x[worst]);  // expansion
                const double fe = objective(xe);
                if (fe < fr) { x[worst] = xe; f[worst] = fe; }
                else { x[worst] = xr; f[worst] = fr; }
            } else if (fr < f[ord[ord.size() - 2]]) {
                x[worst] = xr;
                f[worst] = fr;
            } else {
                // contraction, outside or inside of the worst vertex
                const bool outside = fr < f[worst];
                const Vector base = outside ? xr : x[worst];
                const Vector xc = centroid + 0.5 * (base - centroid);
                const double fc = objective(xc);
                if (fc < std::min(fr, f[worst])) {
                    x[worst] = xc;
                    f[worst] = fc;
                } else {
                    for (std::size_t i = 1; i < ord.size(); ++i) {  // shrink
                        x[ord[i]] = x[ord[0]] + 0.5 * (x[ord[i]] - x[ord[0]]);
                        f[ord[i]] = objective(x[ord[i]]);
                    }
                }
            }
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i < f.size(); ++i)
            if (f[i] < f[best]) best = i;
        return {x[best], f[best], converged};
    }
};

}  // namespace

MleResult mle_fit(const Dataset& data, const ModelSpec& model, const Vector& theta0,
                  std::uint64_t seed) {
    if (!validate_params(model, theta0))
        throw DomainError("mle_fit: theta0 is outside the valid region");
    if (data.m() == 0) throw DomainError("mle_fit: empty dataset");

    NelderMead nm{data, model};
    Rng rng(seed);

    NelderMead::Outcome best;
    int best_start = -1;
    constexpr long kBudget = 5000;
    for (int s = 0; s < 4; ++s) {
        Vector start = theta0;
        if (s > 0) {
            // random restart near theta0; resample until valid
            for (int tries = 0; tries < 50; ++tries) {
                for (Index i = 0; i < start.size(); ++i)
                    start(i) = theta0(i) + 0.2 * (1.0 + std::abs(theta0(i))) * rng.normal();
                if (validate_params(model, start)) break;
                start = theta0;
            }
        }
        auto out = nm.run(start, kBudget);
        if (best_start < 0 || out.f < best.f) {
            best = out;
            best_start = s;
        }
    }

    MleResult res;
    res.theta = best.theta;
    res.log_lik = -best.f;
    res.converged = best.converged;
    res.n_evals = nm.evals;
    return res;
}

Dataset composite_split(const Dataset& data, Index w) {
    const Index d = data.d(), m = data.m();
    if (w > d)
        throw WindowTooLarge("composite_split: window " + std::to_string(w) +
                             " exceeds data width " + std::to_string(d));
    if (w < 2) throw DomainError("composite_split: window must be >= 2");
    const Index nwin = d - w + 1;
    Dataset out;
    out.y.resize(m * nwin, w);
    for (Index r = 0; r < m; ++r)
        for (Index o = 0; o < nwin; ++o)
            out.y.row(r * nwin + o) = data.y.row(r).segment(o, w);
    return out;
}

double quantile_type7(std::vector<double> values, double prob) {
    if (values.empty()) throw DomainError("quantile_type7: empty sample");
    if (prob < 0.0 || prob > 1.0) throw DomainError("quantile_type7: prob outside [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * prob;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - std::floor(h);
    return values[lo] + frac * (values[hi] - values[lo]);
}

ChainSummary summarize_chain(const ChainRecord& record, Index burn_in) {
    const Index steps = record.steps();
    if (burn_in < 0 || burn_in >= steps)
        throw DomainError("summarize_chain: burn-in leaves no samples");
    const Index kept = steps - burn_in;
    const Index p = record.theta.cols();

    ChainSummary s;
    s.n_kept = kept;
    s.mean = record.theta.bottomRows(kept).colwise().mean();
    s.q025.resize(p);
    s.q975.resize(p);
    std::vector<double> col(static_cast<std::size_t>(kept));
    for (Index j = 0; j < p; ++j) {
        for (Index i = 0; i < kept; ++i)
            col[static_cast<std::size_t>(i)] = record.theta(burn_in + i, j);
        s.q025(j) = quantile_type7(col, 0.025);
        s.q975(j) = quantile_type7(col, 0.975);
    }
    long acc = 0;
    for (Index i = burn_in; i < steps; ++i)
        acc += record.accepted[static_cast<std::size_t>(i)] ? 1 : 0;
    s.acceptance_rate = static_cast<double>(acc) / static_cast<double>(kept);
    return s;
}

CoverageReport coverage(const std::vector<ChainSummary>& summaries, const Vector& theta_true) {
    if (summaries.empty()) throw DomainError("coverage: no runs");
    const Index p = theta_true.size();
    CoverageReport rep;
    rep.n_runs = static_cast<int>(summaries.size());
    rep.per_param = Vector::Zero(p);
    long joint = 0;
    for (const auto& s : summaries) {
        if (s.q025.size() != p || s.q975.size() != p)
            throw DimensionMismatch("coverage: summary width does not match theta_true");
        bool all = true;
        for (Index j = 0; j < p; ++j) {
            const bool in = s.q025(j) <= theta_true(j) && theta_true(j) <= s.q975(j);
            if (in) rep.per_param(j) += 1.0;
            all = all && in;
        }
        if (all) ++joint;
    }
    rep.per_param /= static_cast<double>(rep.n_runs);
    rep.joint = static_cast<double>(joint) / static_cast<double>(rep.n_runs);
    return rep;
}

}  // namespace fidgauss
