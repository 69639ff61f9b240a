#include "fidgauss/model.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "fidgauss/bessel.hpp"
#include "fidgauss/cayley.hpp"

namespace fidgauss {

bool validate_params(const ModelSpec& model, const Vector& theta) {
    if (model.p > vecut_size(model.d))
        throw DimensionMismatch(
            "validate_params: model has more parameters than covariance entries");
    if (theta.size() != model.p)
        throw DimensionMismatch("validate_params: expected " + std::to_string(model.p) +
                                " parameters, got " + std::to_string(theta.size()));
    return model.valid ? model.valid(theta) : true;
}

Matrix build_sigma(const ModelSpec& model, const Vector& theta) {
    if (!validate_params(model, theta))
        throw DomainError("build_sigma: parameters outside the valid region");
    Matrix s = model.sigma(theta);
    if (s.rows() != model.d || s.cols() != model.d)
        throw DimensionMismatch("build_sigma: model returned a wrongly sized covariance");
    return s;
}

Matrix grad_g(const ModelSpec& model, const Vector& theta) {
    if (!validate_params(model, theta))
        throw DomainError("grad_g: parameters outside the valid region");
    if (model.grad) {
        Matrix g = model.grad(theta);
        if (g.rows() != vecut_size(model.d) || g.cols() != model.p)
            throw DimensionMismatch("grad_g: model returned a wrongly sized gradient");
        return g;
    }
    // Central finite differences of sigma, column by column.
    Matrix g(vecut_size(model.d), model.p);
    for (Index k = 0; k < model.p; ++k) {
        const double h = 1e-6 * (1.0 + std::abs(theta(k)));
        Vector lo = theta, hi = theta;
        hi(k) += h;
        lo(k) -= h;
        // Step back inside the domain if the lower point left it (only
        // reachable when theta(k) is within ~1e-6 of a boundary).
        if (model.valid && !model.valid(lo)) lo(k) = 0.5 * theta(k);
        const Matrix ds = model.sigma(hi) - model.sigma(lo);
        g.col(k) = vecut(ds) / (hi(k) - lo(k));
    }
    return g;
}

Dataset simulate(const ModelSpec& model, const Vector& theta, Index m, Rng& rng) {
    if (m < 0) throw DomainError("simulate: negative replicate count");
    const Matrix sigma = build_sigma(model, theta);
    // Symmetric square root S diag(lambda) S^T, so replicates are invariant
    // under any orthogonal re-factoring of the same covariance.
    const SpectralFactors f = spectral_decompose(sigma);
    const Matrix l = f.s * f.lambda.asDiagonal() * f.s.transpose();
    Dataset data;
    data.y.resize(m, model.d);
    Vector z(model.d);
    for (Index r = 0; r < m; ++r) {
        for (Index j = 0; j < model.d; ++j) z(j) = rng.normal();
        data.y.row(r) = (l * z).transpose();
    }
    data.sites = model.sites;
    return data;
}

std::vector<Site> make_jittered_grid(Index rows, Index cols, double jitter, Rng& rng) {
    if (rows < 1 || cols < 1)
        throw DomainError("make_jittered_grid: grid must be at least 1x1");
    if (jitter < 0 || jitter >= 0.5)
        throw DomainError("make_jittered_grid: jitter must lie in [0, 0.5)");
    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(rows * cols));
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            Site s;
            s.x = static_cast<double>(r) + (jitter > 0 ? (2.0 * rng.uniform01() - 1.0) * jitter : 0.0);
            s.y = static_cast<double>(c) + (jitter > 0 ? (2.0 * rng.uniform01() - 1.0) * jitter : 0.0);
            sites.push_back(s);
        }
    }
    return sites;
}

double site_distance(const Site& a, const Site& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double matern_cov(double t, double nu, double s2, double rho) {
    if (nu <= 0 || s2 <= 0 || rho <= 0)
        throw DomainError("matern_cov: nu, s2, rho must all be positive");
    if (t < 1e-12) return s2;
    const double a = std::sqrt(2.0 * nu) * t / rho;
    // In the far small-argument regime K_nu(a) would overflow; there the
    // covariance is s2 to within O(a^2), so return the limit directly.
    if (nu * std::log(2.0 / a) + std::lgamma(nu) > 690.0) return s2;
    const double kv = bessel_k(nu, a);
    if (kv <= 0.0) return 0.0;  // K underflowed: correlation is numerically zero
    // Compose in logs so a^nu and K_nu cannot overflow separately.
    const double lg = (1.0 - nu) * std::log(2.0) - std::lgamma(nu) +
                      nu * std::log(a) + std::log(kv);
    return s2 * std::exp(lg);
}

ModelSpec make_ma1(Index d) {
    if (d < 2) throw DomainError("make_ma1: dimension must be >= 2");
    ModelSpec m;
    m.name = "ma1";
    m.p = 2;  // theta = (rho, s2)
    m.d = d;
    m.valid = [](const Vector& t) {
        return t(0) >= -1.0 && t(0) <= 1.0 && t(1) > 0.0;
    };
    m.sigma = [d](const Vector& t) {
        const double rho = t(0), s2 = t(1);
        Matrix s = Matrix::Zero(d, d);
        s.diagonal().setConstant(s2 * (1.0 + rho * rho));
        s.diagonal(1).setConstant(s2 * rho);
        s.diagonal(-1).setConstant(s2 * rho);
        return s;
    };
    m.grad = [d](const Vector& t) {
        const double rho = t(0), s2 = t(1);
        Matrix g = Matrix::Zero(vecut_size(d), 2);
        for (Index i = 0; i < d; ++i) {
            const Index diag = vecut_index(i, i, d);
            g(diag, 0) = 2.0 * s2 * rho;
            g(diag, 1) = 1.0 + rho * rho;
            if (i + 1 < d) {
                const Index off = vecut_index(i, i + 1, d);
                g(off, 0) = s2;
                g(off, 1) = rho;
            }
        }
        return g;
    };
    return m;
}

ModelSpec make_matern(std::vector<Site> sites) {
    if (sites.empty()) throw MissingSites("make_matern: no sites given");
    ModelSpec m;
    m.name = "matern";
    m.p = 3;  // theta = (nu, s2, rho)
    m.d = static_cast<Index>(sites.size());
    m.sites = sites;
    m.valid = [](const Vector& t) { return t(0) > 0 && t(1) > 0 && t(2) > 0; };

    const Index d = m.d;
    auto cov = [sites, d](const Vector& t) {
        Matrix s(d, d);
        for (Index i = 0; i < d; ++i) {
            s(i, i) = t(1);
            for (Index j = i + 1; j < d; ++j) {
                const double c = matern_cov(
                    site_distance(sites[static_cast<std::size_t>(i)],
                                  sites[static_cast<std::size_t>(j)]),
                    t(0), t(1), t(2));
                s(i, j) = c;
                s(j, i) = c;
            }
        }
        return s;
    };
    m.sigma = cov;
    m.grad = [cov, d](const Vector& t) {
        Matrix g(vecut_size(d), 3);
        const Matrix base = cov(t);
        g.col(1) = vecut(base) / t(1);  // covariance is exactly linear in s2
        for (Index k : {Index{0}, Index{2}}) {
            const double h = 1e-6 * (1.0 + std::abs(t(k)));
            Vector hi = t, lo = t;
            hi(k) += h;
            lo(k) -= h;
            if (lo(k) <= 0) lo(k) = 0.5 * t(k);
            g.col(k) = vecut((cov(hi) - cov(lo)).eval()) / (hi(k) - lo(k));
        }
        return g;
    };
    return m;
}

ModelSpec make_toy() {
    ModelSpec m;
    m.name = "toy";
    m.p = 1;
    m.d = 2;
    Matrix base(2, 2);
    base << 1.0, 0.3, 0.3, 1.0;
    m.valid = [](const Vector& t) { return t(0) > 0.0; };
    m.sigma = [base](const Vector& t) { return Matrix(t(0) * base); };
    m.grad = [base](const Vector&) {
        Matrix g(3, 1);
        g.col(0) = vecut(base);
        return g;
    };
    return m;
}

}  // namespace fidgauss
