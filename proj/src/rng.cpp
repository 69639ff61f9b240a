#include "fidgauss/rng.hpp"

#include <cmath>

namespace fidgauss {

double Rng::normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

std::uint64_t Rng::integer(std::uint64_t n) {
    // Largest multiple of n representable in 64 bits; draws above it are
    // rejected so the result is exactly uniform.
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return x % n;
}

}  // namespace fidgauss
