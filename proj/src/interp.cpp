#include "rodflow/detail/interp.hpp"

#include <cmath>

#include "rodflow/detail/fft.hpp"

namespace rodflow::detail {

double positive_fmod(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r = 0.0; // fmod can land exactly on period after the add
    return r;
}

namespace {

// Barycentric weights for 16 equidistant nodes: (-1)^i * C(15, i).
constexpr int stencil_size = 16;
constexpr int stencil_left = 7; // nodes at offsets -7..8 around the cell
constexpr double bary_weights[stencil_size] = {
    1.0,     -15.0,    105.0,   -455.0,  1365.0,  -3003.0, 5005.0,  -6435.0,
    6435.0,  -5005.0,  3003.0,  -1365.0, 455.0,   -105.0,  15.0,    -1.0};

} // namespace

Evaluator::Evaluator(const GridFunction& f)
    : n_(f.size()), domain_length_(f.domain_length()),
      use_fast_(f.size() > direct_eval_limit) {
    build(Spectrum(f));
}

Evaluator::Evaluator(const Spectrum& spec)
    : n_(spec.grid_size()), domain_length_(spec.domain_length()),
      use_fast_(spec.grid_size() > direct_eval_limit) {
    build(spec);
}

void Evaluator::build(const Spectrum& spec) {
    if (!use_fast_) {
        half_ = spec.half();
        return;
    }
    // Sample the interpolant on an oversample_factor-times finer grid with
    // one zero-padded inverse FFT. The coarse Nyquist mode becomes an
    // ordinary cosine mode on the fine grid: put half its (real) weight in
    // the positive slot so the Hermitian extension restores the full term.
    const std::size_t m = oversample_factor * n_;
    std::vector<std::complex<double>> padded(m / 2 + 1, 0.0);
    for (std::size_t k = 0; k < n_ / 2; ++k) padded[k] = spec.half()[k];
    padded[n_ / 2] = 0.5 * spec.half()[n_ / 2].real();
    fine_ = irfft(padded, m);
}

double Evaluator::operator()(double x) const {
    return use_fast_ ? fast(x) : direct(x);
}

double Evaluator::direct(double x) const {
    const double theta =
        2.0 * M_PI * positive_fmod(x, domain_length_) / domain_length_;
    const std::complex<double> z(std::cos(theta), std::sin(theta));
    const std::size_t half_n = n_ / 2;
    // Horner over k = n/2-1 .. 1.
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = half_n - 1; k >= 1; --k) {
        acc = (acc + half_[k]) * z;
    }
    const double nyquist = half_[half_n].real() *
                           std::cos(static_cast<double>(half_n) * theta);
    return half_[0].real() + 2.0 * acc.real() + nyquist;
}

double Evaluator::fast(double x) const {
    const std::size_t m = fine_.size();
    const double fine_dx = domain_length_ / static_cast<double>(m);
    double t = positive_fmod(x, domain_length_) / fine_dx;
    if (t >= static_cast<double>(m)) t = 0.0;
    const std::size_t cell = static_cast<std::size_t>(t);
    const double s = t - static_cast<double>(cell);

    // Barycentric Lagrange on the 16 fine-grid nodes around the cell.
    double num = 0.0;
    double den = 0.0;
    if (cell >= static_cast<std::size_t>(stencil_left) &&
        cell + stencil_size - stencil_left < m) {
        const double* base = fine_.data() + (cell - stencil_left);
        for (int i = 0; i < stencil_size; ++i) {
            const double d = s - static_cast<double>(i - stencil_left);
            if (std::abs(d) < 1e-13) return base[i];
            const double w = bary_weights[i] / d;
            num += w * base[i];
            den += w;
        }
        return num / den;
    }
    for (int i = 0; i < stencil_size; ++i) {
        const double d = s - static_cast<double>(i - stencil_left);
        long node = static_cast<long>(cell) + static_cast<long>(i - stencil_left);
        node %= static_cast<long>(m);
        if (node < 0) node += static_cast<long>(m);
        const std::size_t idx = static_cast<std::size_t>(node);
        if (std::abs(d) < 1e-13) return fine_[idx];
        const double w = bary_weights[i] / d;
        num += w * fine_[idx];
        den += w;
    }
    return num / den;
}

double Evaluator::derivative_at(double x) const {
    if (!use_fast_) {
        const double theta =
            2.0 * M_PI * positive_fmod(x, domain_length_) / domain_length_;
        const std::complex<double> z(std::cos(theta), std::sin(theta));
        const std::size_t half_n = n_ / 2;
        const double base = 2.0 * M_PI / domain_length_;
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = half_n - 1; k >= 1; --k) {
            const std::complex<double> ik(0.0, base * static_cast<double>(k));
            acc = acc * z + ik * half_[k];
        }
        acc = acc * z;
        return 2.0 * acc.real(); // odd-order Nyquist term dropped
    }
    const std::size_t m = fine_.size();
    const double fine_dx = domain_length_ / static_cast<double>(m);
    double t = positive_fmod(x, domain_length_) / fine_dx;
    if (t >= static_cast<double>(m)) t = 0.0;
    const std::size_t i = static_cast<std::size_t>(t + 0.5) % m;
    const double up = fine_[(i + 1) % m];
    const double down = fine_[(i + m - 1) % m];
    return (up - down) / (2.0 * fine_dx);
}

} // namespace rodflow::detail
