#pragma once

namespace fidgauss {

// Modified Bessel function of the second kind K_nu(x) for real order.
// nu may be any real (K_{-nu} = K_nu); x must be positive (DomainError
// otherwise).  Accuracy is ~1e-13 relative over nu in [0, 20],
// x in [1e-3, 50]; extreme inputs may overflow to +inf or underflow to 0.
double bessel_k(double nu, double x);

}  // namespace fidgauss
