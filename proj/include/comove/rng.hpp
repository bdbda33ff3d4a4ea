#pragma once

#include <cstdint>
#include <random>

namespace comove {

// Deterministic random stream with explicitly documented draw algorithms so
// test oracles can replay a sequence from its seed:
//   uniform: (mt19937_64 >> 11 + 0.5) * 2^-53, open interval (0, 1)
//   normal:  Box-Muller, consumes exactly two uniforms per draw
//   gamma:   Marsaglia-Tsang squeeze (shape >= 1 boosted from shape + 1)
// Implementation-defined std::*_distribution adapters are avoided on
// purpose; the sequence depends only on mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
    }

    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Gamma(shape, scale 1), shape > 0.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace comove
