#pragma once

#include <vector>

#include "fidgauss/rng.hpp"
#include "fidgauss/types.hpp"

namespace fidgauss {

// Skew-symmetric matrix.  The constructor validates shape and enforces the
// invariant exactly (antisymmetrizes away roundoff, zeroes the diagonal), so
// downstream code can rely on m == -m^T bit-for-bit.
struct SkewSymmetric {
    Matrix m;

    SkewSymmetric() = default;
    explicit SkewSymmetric(Matrix mm);

    Index dim() const { return m.rows(); }
};

// Diagonal matrix with +/-1 entries and an even number of -1s (determinant
// +1), stored as its sign vector.
struct SignatureMatrix {
    std::vector<int> signs;

    Index dim() const { return static_cast<Index>(signs.size()); }
    bool operator==(const SignatureMatrix& o) const { return signs == o.signs; }
};

// Ordered spectral factorization of a covariance matrix: sigma = S L^2 S^T
// with S special-orthogonal and lambda the strictly decreasing positive
// singular values (sqrt of eigenvalues).
struct SpectralFactors {
    Matrix s;
    Vector lambda;
    bool degenerate = false;  // an adjacent eigenvalue gap fell below tolerance
};

struct CayleyFactors {
    SkewSymmetric a;
    Vector lambda;
    SignatureMatrix z;
};

// Permissibility tolerance for dimension d: the smallest singular value of
// (I + S Z) must exceed this for the Cayley inverse to be trusted.
inline double permissibility_tol(Index d) { return 1e-8 * static_cast<double>(d); }

// S = (I - A)(I + A)^{-1}; special-orthogonal for any skew-symmetric A.
Matrix cayley_forward(const SkewSymmetric& a);

// Inverse map A = (I + S)^{-1}(I - S).  Throws NotPermissible when I + S is
// singular within tolerance (tol < 0 selects permissibility_tol(d)).
SkewSymmetric cayley_inverse(const Matrix& s, double tol = -1.0);

// Eigendecomposition of a symmetric positive definite matrix with the
// ordering and sign conventions fixed: eigenvalues strictly decreasing, each
// eigenvector's first nonzero component positive, det(S) = +1 (enforced by
// flipping the last column).  Throws NotPositiveDefinite on eigenvalue <= 0.
SpectralFactors spectral_decompose(const Matrix& sigma);

// One signature matrix uniformly among the 2^(d-1) with determinant +1:
// d - 1 fair bits, last sign forced by parity.
SignatureMatrix signature_sample(Index d, Rng& rng);

// All determinant +1 signature matrices; throws EnumerationTooLarge for d > 12.
std::vector<SignatureMatrix> enumerate_signatures(Index d);

// True iff the smallest singular value of (I + S Z) exceeds tol
// (tol < 0 selects permissibility_tol(d)).
bool is_permissible(const Matrix& s, const SignatureMatrix& z, double tol = -1.0);

// sigma = C L^2 C^T with C = cayley_forward(a); exact symmetrization applied.
Matrix reconstruct_sigma(const SkewSymmetric& a, const Vector& lambda);

// Convenience: S with column j scaled by z_j (i.e. the product S Z).
Matrix apply_signature(const Matrix& s, const SignatureMatrix& z);

}  // namespace fidgauss
