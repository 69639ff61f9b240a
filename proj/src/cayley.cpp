#include "fidgauss/cayley.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fidgauss {

namespace {

// Smallest singular value of (I + M) for an orthogonal M, computed from the
// Gram matrix (I+M)^T (I+M) = 2I + M + M^T.  The Gram form squares the
// conditioning, but the permissibility tolerance (>= 1e-8) is far above the
// resulting noise floor, so an eigenvalue-only symmetric solve is both exact
// enough and much cheaper than an SVD.
double sigma_min_of_i_plus(const Matrix& m) {
    Matrix gram = m + m.transpose();
    gram.diagonal().array() += 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    return std::sqrt(std::max(lo, 0.0));
}

}  // namespace

SkewSymmetric::SkewSymmetric(Matrix mm) : m(std::move(mm)) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("SkewSymmetric: matrix is not square");
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-6 * scale)
        throw DomainError("SkewSymmetric: matrix is not skew-symmetric");
    // Enforce the invariant exactly so (I+A)^T == (I-A) holds bit-for-bit.
    m = 0.5 * (m - m.transpose()).eval();
    m.diagonal().setZero();
}

Matrix cayley_forward(const SkewSymmetric& a) {
    const Index d = a.dim();
    Matrix ipa = Matrix::Identity(d, d) + a.m;
    Matrix ima = Matrix::Identity(d, d) - a.m;
    // (I-A)(I+A)^{-1} and (I+A)^{-1}(I-A) coincide because the factors
    // commute, so a single left solve suffices.
    return Eigen::PartialPivLU<Matrix>(ipa).solve(ima);
}

SkewSymmetric cayley_inverse(const Matrix& s, double tol) {
    if (s.rows() != s.cols())
        throw DimensionMismatch("cayley_inverse: matrix is not square");
    const Index d = s.rows();
    if (tol < 0) tol = permissibility_tol(d);
    if (sigma_min_of_i_plus(s) <= tol)
        throw NotPermissible("cayley_inverse: I + S is singular within tolerance");
    Matrix ips = Matrix::Identity(d, d) + s;
    Matrix ims = Matrix::Identity(d, d) - s;
    Matrix a = Eigen::PartialPivLU<Matrix>(ips).solve(ims);
    return SkewSymmetric(std::move(a));
}

SpectralFactors spectral_decompose(const Matrix& sigma) {
    if (sigma.rows() != sigma.cols())
        throw DimensionMismatch("spectral_decompose: matrix is not square");
    const Index d = sigma.rows();
    Matrix sym = 0.5 * (sigma + sigma.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success)
        throw Error("spectral_decompose: eigensolver failed to converge");

    // Eigen returns eigenvalues in increasing order; reverse to decreasing.
    Vector ev = es.eigenvalues().reverse();
    Matrix s = es.eigenvectors().rowwise().reverse();

    if (ev(d - 1) <= 0.0)
        throw NotPositiveDefinite("spectral_decompose: eigenvalue " +
                                  std::to_string(ev(d - 1)) + " is not positive");

    SpectralFactors f;
    f.lambda = ev.array().sqrt();

    // Sign convention: make the first solidly nonzero component of each
    // eigenvector positive (reproducible orientation), then fold in
    // Z1 = diag(-1, 1, ..., 1) if that left the determinant at -1.
    for (Index j = 0; j < d; ++j) {
        const double big = s.col(j).cwiseAbs().maxCoeff();
        for (Index i = 0; i < d; ++i) {
            if (std::abs(s(i, j)) > 1e-9 * big) {
                if (s(i, j) < 0) s.col(j) = -s.col(j);
                break;
            }
        }
    }
    if (s.determinant() < 0) s.col(0) = -s.col(0);
    f.s = std::move(s);

    double min_gap = std::numeric_limits<double>::infinity();
    for (Index i = 0; i + 1 < d; ++i) min_gap = std::min(min_gap, ev(i) - ev(i + 1));
    f.degenerate = d > 1 && min_gap < 1e-8 * ev(0);
    return f;
}

SignatureMatrix signature_sample(Index d, Rng& rng) {
    if (d < 1) throw DimensionMismatch("signature_sample: dimension must be >= 1");
    SignatureMatrix z;
    z.signs.resize(static_cast<std::size_t>(d), 1);
    int minus = 0;
    for (Index i = 0; i + 1 < d; ++i) {
        if (rng.bit()) {
            z.signs[static_cast<std::size_t>(i)] = -1;
            ++minus;
        }
    }
    // Parity of the last entry is forced so det(Z) = +1.
    z.signs[static_cast<std::size_t>(d - 1)] = (minus % 2 == 0) ? 1 : -1;
    return z;
}

std::vector<SignatureMatrix> enumerate_signatures(Index d) {
    if (d < 1) throw DimensionMismatch("enumerate_signatures: dimension must be >= 1");
    if (d > 12)
        throw EnumerationTooLarge("enumerate_signatures: 2^(d-1) matrices for d = " +
                                  std::to_string(d) + " exceeds the d <= 12 guard");
    std::vector<SignatureMatrix> all;
    const std::uint64_t count = std::uint64_t{1} << (d - 1);
    all.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        SignatureMatrix z;
        z.signs.resize(static_cast<std::size_t>(d), 1);
        int minus = 0;
        for (Index i = 0; i + 1 < d; ++i) {
            if ((mask >> i) & 1u) {
                z.signs[static_cast<std::size_t>(i)] = -1;
                ++minus;
            }
        }
        z.signs[static_cast<std::size_t>(d - 1)] = (minus % 2 == 0) ? 1 : -1;
        all.push_back(std::move(z));
    }
    return all;
}

Matrix apply_signature(const Matrix& s, const SignatureMatrix& z) {
    if (s.cols() != z.dim())
        throw DimensionMismatch("apply_signature: dimensions disagree");
    Matrix out = s;
    for (Index j = 0; j < s.cols(); ++j)
        if (z.signs[static_cast<std::size_t>(j)] < 0) out.col(j) = -out.col(j);
    return out;
}

bool is_permissible(const Matrix& s, const SignatureMatrix& z, double tol) {
    if (tol < 0) tol = permissibility_tol(s.rows());
    return sigma_min_of_i_plus(apply_signature(s, z)) > tol;
}

Matrix reconstruct_sigma(const SkewSymmetric& a, const Vector& lambda) {
    if (a.dim() != lambda.size())
        throw DimensionMismatch("reconstruct_sigma: dimensions disagree");
    Matrix c = cayley_forward(a);
    Matrix sigma = c * lambda.array().square().matrix().asDiagonal() * c.transpose();
    return 0.5 * (sigma + sigma.transpose());
}

}  // namespace fidgauss
