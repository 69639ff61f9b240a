#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace fidgauss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// All library failures derive from Error so callers can catch one type at the
// boundary.  Subclasses exist so tests and the sampler can tell recoverable
// conditions (a rejected proposal) from caller bugs (dimension mismatch).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NotPermissible : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct MissingSites : Error { using Error::Error; };
struct SingularGradH : Error { using Error::Error; };
struct RankDeficientG : Error { using Error::Error; };
struct SingularCross : Error { using Error::Error; };
struct EnumerationTooLarge : Error { using Error::Error; };
struct InitFailed : Error { using Error::Error; };
struct WindowTooLarge : Error { using Error::Error; };

// Row-major flattening of the upper triangle (including the diagonal) of a
// symmetric d x d matrix: (0,0),(0,1),...,(0,d-1),(1,1),...,(d-1,d-1).
// This ordering is fixed across the whole library; every gradient matrix
// indexes its rows with it.
inline Index vecut_size(Index d) { return d * (d + 1) / 2; }

inline Index vecut_index(Index i, Index j, Index d) {
    // requires 0 <= i <= j < d
    return i * d - i * (i - 1) / 2 + (j - i);
}

inline Vector vecut(const Matrix& m) {
    const Index d = m.rows();
    Vector v(vecut_size(d));
    Index t = 0;
    for (Index i = 0; i < d; ++i)
        for (Index j = i; j < d; ++j) v[t++] = m(i, j);
    return v;
}

inline Matrix unvecut(const Vector& v, Index d) {
    if (v.size() != vecut_size(d))
        throw DimensionMismatch("unvecut: vector length does not match dimension");
    Matrix m(d, d);
    Index t = 0;
    for (Index i = 0; i < d; ++i)
        for (Index j = i; j < d; ++j) { m(i, j) = v[t]; m(j, i) = v[t]; ++t; }
    return m;
}

// Strictly-upper-triangle pair ordering used for the skew-symmetric free
// parameters: (0,1),(0,2),...,(0,d-1),(1,2),...,(d-2,d-1).
inline Index pairut_size(Index d) { return d * (d - 1) / 2; }

inline Index pairut_index(Index i, Index j, Index d) {
    // requires 0 <= i < j < d
    return i * (2 * d - i - 1) / 2 + (j - i - 1);
}

}  // namespace fidgauss
