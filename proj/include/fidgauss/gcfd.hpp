#pragma once

#include <vector>

#include "fidgauss/cayley.hpp"
#include "fidgauss/chain.hpp"
#include "fidgauss/model.hpp"
#include "fidgauss/types.hpp"

namespace fidgauss {

// How Jacobian terms are computed.
//  - reference: assembles the full gradient matrices and solves the linear
//    system literally; cost grows steeply with d (the system is
//    d(d+1)/2-dimensional), intended for validation and small models.
//  - fast: propagates tangents through the spectral factorization
//    (eigenvector perturbation), O(d^3) per evaluation; the default.
// Both paths are equivalence-tested against each other.
enum class JacobianPath { reference, fast };

struct GcfdOptions {
    JacobianPath path = JacobianPath::fast;
    // reference path: a term whose gradient system has condition number above
    // this is excluded (counted in warnings), mirroring the fast path's
    // eigengap guard below.
    double cond_limit = 1e12;
    // fast path: the tangent propagation divides by eigenvalue gaps; a
    // relative gap below this marks the point numerically degenerate.
    double eigengap_tol = 1e-12;
    GcfdWarnings* warnings = nullptr;  // optional counters, owned by the caller
};

// u = Lambda^{-1} (I + A) (I - A)^{-1} y: the latent vector that the
// decomposition maps to the observation y.
Vector invert_dga(const SkewSymmetric& a, const Vector& lambda, const Vector& y);

// Derivative of the observation map with respect to the decomposition
// parameters, evaluated at the latent vectors of the m replicates and stacked
// vertically (m*d rows).  Columns: skew pairs in pairut order, then the d
// diagonal scales.
Matrix grad_y(const SkewSymmetric& a, const Vector& lambda, const Matrix& ydata);

// Derivative of the covariance reconstruction with respect to the same
// parameters; rows in vecut order, columns as in grad_y (square when the
// parameter counts match, which they always do: both are d(d+1)/2).
Matrix grad_h(const SkewSymmetric& a, const Vector& lambda);

// log det( x^T x / n )^{-1/2}; throws SingularCross on rank deficiency.
double d_functional(const Matrix& x, double n);

struct ProjectionQ {
    Matrix q;  // orthonormal columns spanning range(grad_h^{-1} grad_g)
    Matrix p;  // orthogonal projector q q^T
};

// Orthonormalized model tangent inside decomposition-parameter space.
// Throws SingularGradH / RankDeficientG on the respective degeneracies.
ProjectionQ projection_q(const Matrix& gh, const Matrix& gg);

struct JacobianTerm {
    bool permissible = false;
    double log_j = 0.0;  // -inf when not permissible
};

struct JacobianSum {
    double log_sum = 0.0;  // -inf when no term is permissible
    int n_permissible = 0;
};

// Everything the sampler caches about one parameter point.
struct GcfdEvaluation {
    Vector theta;
    double log_like = 0.0;
    double log_j_sum = 0.0;  // -inf when no term is permissible
    int n_permissible = 0;
};

// Per-theta evaluation context: one spectral factorization shared by all
// signature-matrix terms.  Used by the sampler; the free functions below wrap
// it for one-off calls.
class GcfdContext {
  public:
    GcfdContext(const ModelSpec& model, const Dataset& data, const Vector& theta,
                const GcfdOptions& opts = {});

    JacobianTerm term(const SignatureMatrix& z) const;
    JacobianSum sum(const std::vector<SignatureMatrix>& zset) const;

    double log_like() const { return log_like_; }
    const SpectralFactors& factors() const { return factors_; }

  private:
    JacobianTerm reference_term(const SignatureMatrix& z) const;

    const ModelSpec& model_;
    const Dataset& data_;
    Vector theta_;
    GcfdOptions opts_;
    SpectralFactors factors_;
    double log_like_ = 0.0;
    bool excluded_ = false;   // fast path: degenerate spectrum, drop every term
    double fast_log_j_ = 0.0; // fast path: shared value of all permissible terms
};

JacobianTerm log_jacobian_term(const ModelSpec& model, const Dataset& data,
                               const Vector& theta, const SignatureMatrix& z,
                               const GcfdOptions& opts = {});

GcfdEvaluation log_jacobian_sum(const ModelSpec& model, const Dataset& data,
                                const Vector& theta, const std::vector<SignatureMatrix>& zset,
                                const GcfdOptions& opts = {});

// Fully enumerated unnormalized log density: log likelihood plus the
// log-sum-exp of every determinant +1 signature term.  Enumeration guard as
// in enumerate_signatures.
double log_gcfd_full(const ModelSpec& model, const Dataset& data, const Vector& theta,
                     const GcfdOptions& opts = {});

}  // namespace fidgauss
