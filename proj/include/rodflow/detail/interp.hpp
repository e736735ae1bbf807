#ifndef RODFLOW_DETAIL_INTERP_HPP
#define RODFLOW_DETAIL_INTERP_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "rodflow/grid_function.hpp"

namespace rodflow::detail {

// Grid size above which off-grid evaluation switches from direct Fourier
// summation (O(n) per point, spectrally exact) to the oversampled path
// (zero-padded FFT + 16-point local Lagrange). The worst-case error of
// the fast path sits at the top octave of the spectrum (~6e-8 for a mode
// at Nyquist, ~1e-13 for content below a quarter of Nyquist), so it is
// accurate to ~1e-10 for any adequately resolved field; the spectral test
// suite pins this against direct summation.
inline constexpr std::size_t direct_eval_limit = 2048;
inline constexpr std::size_t oversample_factor = 4;

double positive_fmod(double x, double period);

// Evaluates the trigonometric interpolant of a periodic grid function at
// arbitrary points. At grid points it reproduces the samples to roundoff.
class Evaluator {
public:
    explicit Evaluator(const GridFunction& f);
    explicit Evaluator(const Spectrum& spec);

    double operator()(double x) const;

    // Slope of the interpolant: exact on the direct path, centered
    // difference on the oversampled grid otherwise (O(fine_dx^2); meant
    // for Newton-type iterations, not for spectral accuracy).
    double derivative_at(double x) const;

private:
    void build(const Spectrum& spec);
    double direct(double x) const;
    double fast(double x) const;

    std::size_t n_;
    double domain_length_;
    bool use_fast_;
    std::vector<std::complex<double>> half_; // direct path coefficients
    std::vector<double> fine_;               // fast path oversampled samples
};

} // namespace rodflow::detail

#endif
