#include "fidgauss/gcfd.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "fidgauss/estimate.hpp"

namespace fidgauss {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& ls) {
    double mx = kNegInf;
    for (double v : ls)
        if (v > mx) mx = v;
    if (mx == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double v : ls)
        if (v != kNegInf) acc += std::exp(v - mx);
    return mx + std::log(acc);
}

}  // namespace

Vector invert_dga(const SkewSymmetric& a, const Vector& lambda, const Vector& y) {
    const Index d = a.dim();
    if (lambda.size() != d || y.size() != d)
        throw DimensionMismatch("invert_dga: dimensions disagree");
    const Matrix ima = Matrix::Identity(d, d) - a.m;
    const Vector w = Eigen::PartialPivLU<Matrix>(ima).solve(y);
    const Vector v = w + a.m * w;  // (I + A) w
    return v.cwiseQuotient(lambda);
}

Matrix grad_y(const SkewSymmetric& a, const Vector& lambda, const Matrix& ydata) {
    const Index d = a.dim();
    const Index m = ydata.rows();
    if (lambda.size() != d || ydata.cols() != d)
        throw DimensionMismatch("grad_y: dimensions disagree");

    const Matrix ipa = Matrix::Identity(d, d) + a.m;
    const Matrix ima = Matrix::Identity(d, d) - a.m;
    const Matrix b = Eigen::PartialPivLU<Matrix>(ipa).inverse();
    const Matrix c = cayley_forward(a);
    const Matrix w = Eigen::PartialPivLU<Matrix>(ima).solve(ydata.transpose());  // d x m
    const Matrix u = lambda.cwiseInverse().asDiagonal() * (ipa * w);             // d x m

    const Index npair = pairut_size(d);
    Matrix out(m * d, npair + d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            const Index col = pairut_index(i, j, d);
            for (Index r = 0; r < m; ++r)
                out.block(r * d, col, d, 1) = -2.0 * (w(j, r) * b.col(i) - w(i, r) * b.col(j));
        }
    }
    for (Index s = 0; s < d; ++s) {
        const Index col = npair + s;
        for (Index r = 0; r < m; ++r)
            out.block(r * d, col, d, 1) = u(s, r) * c.col(s);
    }
    return out;
}

Matrix grad_h(const SkewSymmetric& a, const Vector& lambda) {
    const Index d = a.dim();
    if (lambda.size() != d)
        throw DimensionMismatch("grad_h: dimensions disagree");

    const Matrix ipa = Matrix::Identity(d, d) + a.m;
    const Matrix b = Eigen::PartialPivLU<Matrix>(ipa).inverse();
    const Matrix c = cayley_forward(a);
    const Matrix msq = b * lambda.array().square().matrix().asDiagonal() * c.transpose();

    const Index npair = pairut_size(d);
    Matrix out(vecut_size(d), npair + d);
    Matrix dsig(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            dsig.noalias() = -2.0 * (b.col(i) * msq.row(j) - b.col(j) * msq.row(i));
            dsig += dsig.transpose().eval();
            out.col(pairut_index(i, j, d)) = vecut(dsig);
        }
    }
    for (Index s = 0; s < d; ++s) {
        dsig.noalias() = (2.0 * lambda(s)) * (c.col(s) * c.col(s).transpose());
        out.col(npair + s) = vecut(dsig);
    }
    return out;
}

double d_functional(const Matrix& x, double n) {
    if (x.cols() == 0) throw DimensionMismatch("d_functional: no columns");
    if (n <= 0) throw DomainError("d_functional: n must be positive");
    Eigen::ColPivHouseholderQR<Matrix> qr(x);
    qr.setThreshold(1e-12);
    if (qr.rank() < x.cols())
        throw SingularCross("d_functional: cross-product matrix is singular");
    double logdet = 0.0;  // of x^T x, via the R factor
    for (Index i = 0; i < x.cols(); ++i)
        logdet += 2.0 * std::log(std::abs(qr.matrixR()(i, i)));
    return 0.5 * static_cast<double>(x.cols()) * std::log(n) - 0.5 * logdet;
}

ProjectionQ projection_q(const Matrix& gh, const Matrix& gg) {
    if (gh.rows() != gh.cols())
        throw DimensionMismatch("projection_q: gradient system is not square");
    if (gg.rows() != gh.cols())
        throw DimensionMismatch("projection_q: dimensions disagree");

    Eigen::ColPivHouseholderQR<Matrix> qrg(gg);
    qrg.setThreshold(1e-12);
    if (qrg.rank() < gg.cols())
        throw RankDeficientG("projection_q: model gradient is rank deficient");

    Eigen::JacobiSVD<Matrix> svd(gh, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0 || sv(0) / sv(sv.size() - 1) > 1e12)
        throw SingularGradH("projection_q: gradient system is numerically singular");
    const Matrix b = svd.solve(gg);

    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(b.transpose() * b));
    if (es.eigenvalues()(0) <= 0)
        throw SingularCross("projection_q: tangent cross-product is singular");
    const Matrix v = es.eigenvectors() *
                     es.eigenvalues().array().rsqrt().matrix().asDiagonal() *
                     es.eigenvectors().transpose();

    ProjectionQ out;
    out.q = b * v;
    out.p = out.q * out.q.transpose();
    return out;
}

GcfdContext::GcfdContext(const ModelSpec& model, const Dataset& data, const Vector& theta,
                         const GcfdOptions& opts)
    : model_(model), data_(data), theta_(theta), opts_(opts) {
    if (data.d() != model.d)
        throw DimensionMismatch("GcfdContext: data width does not match model dimension");
    if (!validate_params(model, theta))
        throw DomainError("GcfdContext: parameters outside the valid region");

    factors_ = spectral_decompose(build_sigma(model, theta));
    if (factors_.degenerate && opts_.warnings) ++opts_.warnings->degenerate_eigengap;
    log_like_ = gaussian_loglik(theta, data, model);

    if (opts_.path != JacobianPath::fast) return;

    // ---- fast path: tangent propagation through the spectral factors ----
    const Index d = model.d;
    const Index m = data.m();
    const Vector ev = factors_.lambda.array().square();

    double min_gap = std::numeric_limits<double>::infinity();
    for (Index i = 0; i + 1 < d; ++i) min_gap = std::min(min_gap, ev(i) - ev(i + 1));
    if (d > 1 && min_gap < opts_.eigengap_tol * ev(0)) {
        excluded_ = true;
        if (opts_.warnings) ++opts_.warnings->numerically_excluded;
        return;
    }

    const Matrix gg = grad_g(model, theta);
    const Matrix& s = factors_.s;
    const Matrix h = s.transpose() * data.y.transpose();  // latent coordinates, d x m

    Matrix x(m * d, model.p);
    Matrix omega(d, d);
    for (Index t = 0; t < model.p; ++t) {
        const Matrix dsig = unvecut(gg.col(t), d);
        const Matrix f = s.transpose() * dsig * s;
        for (Index r = 0; r < d; ++r) {
            omega(r, r) = 0.0;
            for (Index c = r + 1; c < d; ++c) {
                const double g = f(r, c) / (ev(c) - ev(r));
                omega(r, c) = g;
                omega(c, r) = -g;
            }
        }
        // d lambda_s / lambda_s = F_ss / (2 ev_s)
        const Vector dll = f.diagonal().cwiseQuotient(2.0 * ev);
        Matrix xt = omega * h;
        xt += dll.asDiagonal() * h;
        xt = s * xt;  // d x m, one column per replicate
        x.col(t) = Eigen::Map<const Vector>(xt.data(), m * d);
    }

    try {
        fast_log_j_ = d_functional(x, static_cast<double>(m * d));
    } catch (const Error&) {
        excluded_ = true;
        if (opts_.warnings) ++opts_.warnings->numerically_excluded;
    }
}

JacobianTerm GcfdContext::term(const SignatureMatrix& z) const {
    if (z.dim() != model_.d)
        throw DimensionMismatch("GcfdContext: signature dimension does not match model");
    if (opts_.path == JacobianPath::reference) return reference_term(z);
    if (excluded_ || !is_permissible(factors_.s, z)) return {false, kNegInf};
    return {true, fast_log_j_};
}

JacobianTerm GcfdContext::reference_term(const SignatureMatrix& z) const {
    if (!is_permissible(factors_.s, z)) return {false, kNegInf};
    try {
        const Matrix sz = apply_signature(factors_.s, z);
        const SkewSymmetric a = cayley_inverse(sz);
        const Matrix gy = grad_y(a, factors_.lambda, data_.y);
        const Matrix gh = grad_h(a, factors_.lambda);
        const Matrix gg = grad_g(model_, theta_);

        Eigen::JacobiSVD<Matrix> svd(gh, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 0 || sv(0) / sv(sv.size() - 1) > opts_.cond_limit) {
            if (opts_.warnings) ++opts_.warnings->numerically_excluded;
            return {false, kNegInf};
        }
        const Matrix tangent = svd.solve(gg);
        const double log_j =
            d_functional(gy * tangent, static_cast<double>(data_.m() * model_.d));
        return {true, log_j};
    } catch (const Error&) {
        if (opts_.warnings) ++opts_.warnings->numerically_excluded;
        return {false, kNegInf};
    }
}

JacobianSum GcfdContext::sum(const std::vector<SignatureMatrix>& zset) const {
    JacobianSum out;
    std::vector<double> ls;
    ls.reserve(zset.size());
    for (const auto& z : zset) {
        const JacobianTerm t = term(z);
        if (t.permissible) {
            ls.push_back(t.log_j);
            ++out.n_permissible;
        }
    }
    out.log_sum = log_sum_exp(ls);
    return out;
}

JacobianTerm log_jacobian_term(const ModelSpec& model, const Dataset& data,
                               const Vector& theta, const SignatureMatrix& z,
                               const GcfdOptions& opts) {
    return GcfdContext(model, data, theta, opts).term(z);
}

GcfdEvaluation log_jacobian_sum(const ModelSpec& model, const Dataset& data,
                                const Vector& theta, const std::vector<SignatureMatrix>& zset,
                                const GcfdOptions& opts) {
    const GcfdContext ctx(model, data, theta, opts);
    const JacobianSum s = ctx.sum(zset);
    return {theta, ctx.log_like(), s.log_sum, s.n_permissible};
}

double log_gcfd_full(const ModelSpec& model, const Dataset& data, const Vector& theta,
                     const GcfdOptions& opts) {
    const GcfdContext ctx(model, data, theta, opts);
    const JacobianSum s = ctx.sum(enumerate_signatures(model.d));
    return ctx.log_like() + s.log_sum;
}

}  // namespace fidgauss
