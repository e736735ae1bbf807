#include "rodflow/grid_function.hpp"

#include <algorithm>
#include <cmath>

#include "rodflow/detail/fft.hpp"

namespace rodflow {

GridFunction::GridFunction(std::vector<double> samples, double domain_length)
    : samples_(std::move(samples)), domain_length_(domain_length) {
    const std::size_t n = samples_.size();
    if (n < 16 || n % 2 != 0)
        throw InvalidInputError("grid size must be even and >= 16, got " +
                                std::to_string(n));
    if (!(domain_length_ > 0.0) || !std::isfinite(domain_length_))
        throw InvalidInputError("domain length must be positive and finite");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw InvalidInputError("grid function has non-finite samples");
}

GridFunction GridFunction::zeros(std::size_t n, double domain_length) {
    return GridFunction(std::vector<double>(n, 0.0), domain_length);
}

GridFunction GridFunction::constant(std::size_t n, double domain_length,
                                    double value) {
    return GridFunction(std::vector<double>(n, value), domain_length);
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::min_value() const {
    return *std::min_element(samples_.begin(), samples_.end());
}

double GridFunction::max_value() const {
    return *std::max_element(samples_.begin(), samples_.end());
}

void GridFunction::require_same_grid(const GridFunction& other) const {
    if (size() != other.size() || domain_length_ != other.domain_length_)
        throw InvalidInputError(
            "grid mismatch: (" + std::to_string(size()) + ", " +
            std::to_string(domain_length_) + ") vs (" +
            std::to_string(other.size()) + ", " +
            std::to_string(other.domain_length_) + ")");
}

namespace {

template <class Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
    a.require_same_grid(b);
    std::vector<double> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = op(a[j], b[j]);
    return GridFunction(std::move(out), a.domain_length());
}

} // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x + y; });
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x - y; });
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x * y; });
}

GridFunction operator/(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x / y; });
}

GridFunction operator*(double c, const GridFunction& f) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = c * f[j];
    return GridFunction(std::move(out), f.domain_length());
}

GridFunction operator*(const GridFunction& f, double c) { return c * f; }

GridFunction operator-(const GridFunction& f) { return -1.0 * f; }

GridFunction operator+(const GridFunction& f, double c) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[j] + c;
    return GridFunction(std::move(out), f.domain_length());
}

Spectrum::Spectrum(const GridFunction& f)
    : grid_size_(f.size()), domain_length_(f.domain_length()) {
    half_ = detail::rfft(f.samples());
    const double inv_n = 1.0 / static_cast<double>(grid_size_);
    for (auto& c : half_) c *= inv_n;
}

Spectrum::Spectrum(std::vector<std::complex<double>> half, std::size_t grid_size,
                   double domain_length)
    : half_(std::move(half)), grid_size_(grid_size), domain_length_(domain_length) {
    if (half_.size() != grid_size_ / 2 + 1)
        throw InvalidInputError("spectrum half size must be n/2 + 1");
    if (grid_size_ < 16 || grid_size_ % 2 != 0)
        throw InvalidInputError("grid size must be even and >= 16");
    if (!(domain_length_ > 0.0))
        throw InvalidInputError("domain length must be positive");
}

std::complex<double> Spectrum::coeff(int k) const {
    const int half_n = static_cast<int>(grid_size_) / 2;
    if (k < -half_n || k >= half_n)
        throw InvalidInputError("wavenumber " + std::to_string(k) +
                                " outside [-n/2, n/2-1]");
    if (k == -half_n) return half_[static_cast<std::size_t>(half_n)];
    if (k < 0) return std::conj(half_[static_cast<std::size_t>(-k)]);
    return half_[static_cast<std::size_t>(k)];
}

GridFunction Spectrum::to_grid() const {
    return GridFunction(detail::irfft(half_, grid_size_), domain_length_);
}

} // namespace rodflow
