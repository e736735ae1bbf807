#include "rodflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rodflow/detail/interp.hpp"

namespace rodflow {

namespace {

// Applies a Fourier multiplier given on the non-negative half spectrum.
// mult(k) receives the integer wavenumber 0..n/2; the slot n/2 stands for
// the -n/2 mode.
template <class M>
Spectrum multiplied(const Spectrum& spec, M&& mult) {
    std::vector<std::complex<double>> half = spec.half();
    const std::size_t half_n = spec.grid_size() / 2;
    for (std::size_t k = 0; k <= half_n; ++k) half[k] *= mult(k);
    return Spectrum(std::move(half), spec.grid_size(), spec.domain_length());
}

template <class M>
GridFunction apply_multiplier(const GridFunction& f, M&& mult) {
    return multiplied(Spectrum(f), mult).to_grid();
}

} // namespace

GridFunction derivative(const Spectrum& spec, int order) {
    if (order < 1 || order > 3)
        throw ParameterError("derivative order must be 1, 2 or 3, got " +
                             std::to_string(order));
    const double base = 2.0 * M_PI / spec.domain_length();
    const std::size_t half_n = spec.grid_size() / 2;
    const bool odd = order % 2 == 1;
    return multiplied(spec, [&](std::size_t k) -> std::complex<double> {
        if (odd && k == half_n) return 0.0; // Nyquist zeroed for odd orders
        std::complex<double> ik(0.0, base * static_cast<double>(k));
        std::complex<double> m(1.0, 0.0);
        for (int p = 0; p < order; ++p) m *= ik;
        return m;
    }).to_grid();
}

GridFunction derivative(const GridFunction& f, int order) {
    return derivative(Spectrum(f), order);
}

GridFunction helmholtz_inverse(const GridFunction& f, double gamma) {
    if (gamma == 0.0)
        throw ParameterError("helmholtz_inverse requires gamma != 0");
    const double base = 2.0 * M_PI / (gamma * f.domain_length());
    return apply_multiplier(f, [&](std::size_t k) {
        const double kb = base * static_cast<double>(k);
        return 1.0 / (1.0 + kb * kb);
    });
}

double sobolev_norm(const GridFunction& f, double s) {
    Spectrum spec(f);
    const std::size_t half_n = f.size() / 2;
    const double base = 2.0 * M_PI / f.domain_length();
    double sum = 0.0;
    for (std::size_t k = 0; k <= half_n; ++k) {
        const double kb = base * static_cast<double>(k);
        const double weight = std::pow(1.0 + kb * kb, s);
        const double power = std::norm(spec.half()[k]);
        // Interior modes appear twice (k and -k); k = 0 and the -n/2
        // Nyquist slot appear once.
        const double mult = (k == 0 || k == half_n) ? 1.0 : 2.0;
        sum += mult * weight * power;
    }
    return std::sqrt(sum);
}

GridFunction bump(double center, double halfwidth, double s,
                  double target_norm, std::size_t n, double domain_length) {
    if (!(halfwidth > 0.0) || !(halfwidth < domain_length / 2.0))
        throw ParameterError("bump halfwidth must lie in (0, L/2)");
    if (!(target_norm > 0.0))
        throw ParameterError("bump target norm must be positive");
    const double dx = domain_length / static_cast<double>(n);
    if (halfwidth < 4.0 * dx) {
        std::size_t minimal = static_cast<std::size_t>(
            std::ceil(4.0 * domain_length / halfwidth));
        if (minimal % 2 != 0) ++minimal;
        minimal = std::max<std::size_t>(minimal, 16);
        throw ResolutionError(
            "bump halfwidth " + std::to_string(halfwidth) +
                " spans fewer than 4 grid cells at n = " + std::to_string(n) +
                "; need n >= " + std::to_string(minimal),
            minimal);
    }
    std::vector<double> samples(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) * dx;
        const double d = std::remainder(x - center, domain_length);
        const double xi = d / halfwidth;
        if (std::abs(xi) < 1.0)
            samples[j] = std::exp(-1.0 / (1.0 - xi * xi));
    }
    GridFunction raw(std::move(samples), domain_length);
    const double norm = sobolev_norm(raw, s);
    if (!(norm > 0.0))
        throw ResolutionError("bump support contains no grid point",
                              static_cast<std::size_t>(
                                  std::ceil(4.0 * domain_length / halfwidth)));
    return (target_norm / norm) * raw;
}

GridFunction compose(const GridFunction& f, const Diffeo& phi) {
    f.require_same_grid(phi.displacement());
    detail::Evaluator ev(f);
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        out[j] = ev(f.x(j) + phi.displacement()[j]);
    return GridFunction(std::move(out), f.domain_length());
}

Diffeo compose_diffeo(const Diffeo& outer, const Diffeo& inner) {
    // (outer o inner)(x) = inner(x) + d_outer(inner(x))
    return Diffeo(inner.displacement() +
                  compose(outer.displacement(), inner));
}

Diffeo invert_diffeo(const Diffeo& phi) {
    const std::size_t n = phi.size();
    const double L = phi.domain_length();
    const GridFunction& d = phi.displacement();
    detail::Evaluator ev_d(d);

    const double d_min = d.min_value();
    const double d_max = d.max_value();
    const double tol = 1e-12 * std::max(1.0, L);
    constexpr int iteration_cap = 50;

    std::vector<double> inv_disp(n);
    double guess = -ev_d(0.0); // psi(0) ~ -d(0) to first order
    double worst_residual = 0.0;
    double worst_x = 0.0;
    bool failed = false;

    for (std::size_t j = 0; j < n; ++j) {
        const double target = static_cast<double>(j) * L / static_cast<double>(n);
        // Sample range of the displacement brackets the root up to
        // inter-node overshoot of the interpolant; if the iteration pins
        // itself to an edge, retry with a padded bracket.
        double lo = target - d_max;
        double hi = target - d_min;
        double psi = std::clamp(guess + (j == 0 ? 0.0 : L / static_cast<double>(n)),
                                lo, hi);
        double g = 0.0;
        bool converged = false;
        for (int attempt = 0; attempt < 2 && !converged; ++attempt) {
            for (int it = 0; it < iteration_cap; ++it) {
                g = psi + ev_d(psi) - target;
                if (std::abs(g) <= tol) {
                    converged = true;
                    break;
                }
                if (g > 0.0)
                    hi = std::min(hi, psi);
                else
                    lo = std::max(lo, psi);
                const double slope = 1.0 + ev_d.derivative_at(psi);
                double next = (slope > 1e-12) ? psi - g / slope : lo - 1.0;
                if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
                psi = next;
            }
            if (!converged) {
                const double pad =
                    0.25 * (d_max - d_min) + L / static_cast<double>(n);
                lo = target - d_max - pad;
                hi = target - d_min + pad;
                psi = 0.5 * (lo + hi);
            }
        }
        if (!converged && std::abs(g) > worst_residual) {
            failed = true;
            worst_residual = std::abs(g);
            worst_x = target;
        }
        inv_disp[j] = psi - target;
        guess = psi;
    }
    if (failed)
        throw ConvergenceError(
            "diffeo inversion did not converge; worst point x = " +
            std::to_string(worst_x) + ", residual = " +
            std::to_string(worst_residual));
    return Diffeo(GridFunction(std::move(inv_disp), L));
}

double evaluate(const GridFunction& f, double x) {
    detail::Evaluator ev(f);
    return ev(x);
}

GridFunction dealias_truncate(const GridFunction& f) {
    const std::size_t cutoff = f.size() / 3;
    return apply_multiplier(f, [&](std::size_t k) {
        return k > cutoff ? 0.0 : 1.0;
    });
}

GridFunction product(const GridFunction& a, const GridFunction& b,
                     bool dealias) {
    if (!dealias) return a * b;
    return dealias_truncate(dealias_truncate(a) * dealias_truncate(b));
}

} // namespace rodflow
