#pragma once

#include <cstdint>
#include <random>

namespace fidgauss {

// Deterministic random stream.  The raw engine is std::mt19937_64 (whose
// output sequence is pinned by the standard), but all variate generation is
// done by hand so that chain output never depends on a standard library's
// distribution internals.  One seed therefore produces byte-identical output
// on any conforming toolchain.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on the open interval (0,1); consumes one engine draw.
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes exactly two engine draws.
    double normal();

    // Uniform integer in [0, n); unbiased via rejection.
    std::uint64_t integer(std::uint64_t n);

    // Fair coin; consumes one engine draw.
    bool bit() { return (gen_() >> 63) != 0; }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

}  // namespace fidgauss
