#ifndef RODFLOW_TEST_HELPERS_HPP
#define RODFLOW_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rodflow/diffeo.hpp"
#include "rodflow/grid_function.hpp"
#include "rodflow/spectral.hpp"

namespace rodflow::testing {

// Deterministic uniform draw in [-1, 1) from raw engine output.
inline double draw_pm1(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

// Band-limited random field: modes 1..kmax with geometrically decaying
// amplitudes. Smooth and perfectly resolved for kmax << n/2.
inline GridFunction random_smooth(std::size_t n, double domain_length,
                                  std::uint64_t seed, int kmax = 8,
                                  double amplitude = 1.0, double decay = 0.6) {
    std::mt19937_64 rng(seed);
    std::vector<double> a, b;
    for (int k = 0; k < kmax; ++k) {
        a.push_back(draw_pm1(rng));
        b.push_back(draw_pm1(rng));
    }
    return GridFunction::sample(n, domain_length, [&](double x) {
        double value = 0.0;
        double w = amplitude;
        for (int k = 0; k < kmax; ++k) {
            const double arg = 2.0 * M_PI * (k + 1) * x / domain_length;
            value += w * (a[static_cast<std::size_t>(k)] * std::cos(arg) +
                          b[static_cast<std::size_t>(k)] * std::sin(arg));
            w *= decay;
        }
        return value;
    });
}

// Random diffeomorphism with sup |d'(x)| <= slope_cap < 1.
inline Diffeo random_diffeo(std::size_t n, double domain_length,
                            std::uint64_t seed, double slope_cap = 0.5) {
    GridFunction d = random_smooth(n, domain_length, seed, 5, 1.0);
    const double slope = derivative(d, 1).sup_norm();
    return Diffeo((slope_cap / (slope + 1e-30)) * d);
}

inline double sup_diff(const GridFunction& a, const GridFunction& b) {
    return (a - b).sup_norm();
}

} // namespace rodflow::testing

#endif
