#include "fidgauss/bessel.hpp"

#include <cmath>
#include <limits>

#include "fidgauss/types.hpp"

namespace fidgauss {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Odd Taylor coefficients of 1/Gamma(1+t): g1(nu) below is
// [1/Gamma(1-nu) - 1/Gamma(1+nu)]/(2 nu) = -(a1 + a3 nu^2 + a5 nu^4 + ...),
// an even function evaluated by series near nu = 0 where the direct
// difference cancels.
constexpr double kInvGammaOdd[8] = {
    0.5772156649015329,    // a1  (Euler's constant)
    -0.0420026350340952,   // a3
    -0.0421977345555443,   // a5
    0.0072189432466630,    // a7
    -0.0002152416741149,   // a9
    -0.0000201348547807,   // a11
    0.0000011330272320,    // a13
    0.0000000061160950,    // a15
};

double gamma1(double nu) {
    if (std::abs(nu) < 0.1) {
        const double nu2 = nu * nu;
        double acc = 0.0;
        double pw = 1.0;
        for (double a : kInvGammaOdd) {
            acc += a * pw;
            pw *= nu2;
        }
        return -acc;
    }
    return (1.0 / std::tgamma(1.0 - nu) - 1.0 / std::tgamma(1.0 + nu)) / (2.0 * nu);
}

double gamma2(double nu) {
    return 0.5 * (1.0 / std::tgamma(1.0 - nu) + 1.0 / std::tgamma(1.0 + nu));
}

// Temme's series for K_mu(x), K_{mu+1}(x); valid for x <= 2, |mu| <= 1/2.
void temme_pair(double mu, double x, double& kmu, double& kmu1) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double lx = std::log(2.0 / x);
    const double sigma = mu * lx;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    const double smu = std::abs(sigma) < 1e-15 ? 1.0 : std::sinh(sigma) / sigma;

    double f = fact * (gamma1(mu) * std::cosh(sigma) + gamma2(mu) * lx * smu);
    double p = 0.5 * std::exp(sigma) * std::tgamma(1.0 + mu);
    double q = 0.5 * std::exp(-sigma) * std::tgamma(1.0 - mu);
    const double cx = 0.25 * x * x;
    const double mu2 = mu * mu;

    double ck = 1.0;
    double s1 = f;
    double s2 = p;
    for (int k = 1; k <= 500; ++k) {
        const double dk = k;
        f = (dk * f + p + q) / (dk * dk - mu2);
        p /= dk - mu;
        q /= dk + mu;
        ck *= cx / dk;
        const double h = p - dk * f;
        s1 += ck * f;
        s2 += ck * h;
        if (std::abs(ck * f) < eps * std::abs(s1) &&
            std::abs(ck * h) < eps * std::abs(s2))
            break;
    }
    kmu = s1;
    kmu1 = s2 * 2.0 / x;
}

// Steed's continued fraction (Thompson-Barnett) for K_mu(x), K_{mu+1}(x);
// valid for x >= 2, |mu| <= 1/2.
void cf2_pair(double mu, double x, double& kmu, double& kmu1) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    kmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

}  // namespace

double bessel_k(double nu, double x) {
    if (!(x > 0.0))
        throw DomainError("bessel_k: argument must be positive");
    nu = std::abs(nu);

    const int inu = static_cast<int>(nu + 0.5);
    const double mu = nu - inu;  // in [-1/2, 1/2)

    double kmu, kmu1;
    if (x <= 2.0)
        temme_pair(mu, x, kmu, kmu1);
    else
        cf2_pair(mu, x, kmu, kmu1);

    // Forward recurrence K_{m+1} = K_{m-1} + (2m/x) K_m up to the requested
    // order; stable in the increasing direction for K.
    for (int i = 1; i <= inu; ++i) {
        const double next = kmu + 2.0 * (mu + i) / x * kmu1;
        kmu = kmu1;
        kmu1 = next;
    }
    return kmu;
}

}  // namespace fidgauss
