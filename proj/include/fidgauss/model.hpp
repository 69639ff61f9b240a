#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fidgauss/rng.hpp"
#include "fidgauss/types.hpp"

namespace fidgauss {

struct Site {
    double x = 0.0;
    double y = 0.0;
};

// Observations: one replicate per row.  m = 0 (no rows) is a valid empty
// dataset; operations that need data check for themselves.
struct Dataset {
    Matrix y;  // m x d
    std::optional<std::vector<Site>> sites;

    Index m() const { return y.rows(); }
    Index d() const { return y.cols(); }
};

// A parametric covariance family.  The three std::function members fully
// define the model; the factory functions below build the stock families.
// grad may be left empty, in which case grad_g falls back to central finite
// differences of sigma.
struct ModelSpec {
    std::string name;
    Index p = 0;  // parameter count
    Index d = 0;  // observation dimension
    std::optional<std::vector<Site>> sites;

    std::function<bool(const Vector&)> valid;
    std::function<Matrix(const Vector&)> sigma;  // d x d
    std::function<Matrix(const Vector&)> grad;   // vecut_size(d) x p, or empty
};

// Length check throws DimensionMismatch; the returned bool is the model's own
// validity predicate (e.g. positivity constraints).
bool validate_params(const ModelSpec& model, const Vector& theta);

// Covariance at theta; throws DomainError when theta is invalid.
Matrix build_sigma(const ModelSpec& model, const Vector& theta);

// d sigma / d theta with rows in vecut order and one column per parameter.
Matrix grad_g(const ModelSpec& model, const Vector& theta);

// m iid replicates y_r ~ N(0, sigma(theta)); draws d normals per replicate in
// row order.
Dataset simulate(const ModelSpec& model, const Vector& theta, Index m, Rng& rng);

// rows x cols unit-spaced grid with each coordinate jittered by
// U(-jitter, jitter); sites ordered row-major, x drawn before y.
std::vector<Site> make_jittered_grid(Index rows, Index cols, double jitter, Rng& rng);

double site_distance(const Site& a, const Site& b);

// Matern covariance at distance t with smoothness nu, marginal variance s2,
// range rho; exposed separately so tests can probe it directly.
double matern_cov(double t, double nu, double s2, double rho);

// Moving-average order-1 family: theta = (rho, s2), tridiagonal covariance
// with diagonal s2 (1 + rho^2) and first off-diagonal s2 rho.
ModelSpec make_ma1(Index d);

// Matern family on fixed sites: theta = (nu, s2, rho), all positive.
// Throws MissingSites when sites is empty.
ModelSpec make_matern(std::vector<Site> sites);

// One-parameter scale family on a fixed 2x2 correlation matrix; small enough
// to enumerate everything, used heavily by tests.
ModelSpec make_toy();

}  // namespace fidgauss
