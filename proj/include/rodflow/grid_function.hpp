#ifndef RODFLOW_GRID_FUNCTION_HPP
#define RODFLOW_GRID_FUNCTION_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "rodflow/errors.hpp"

namespace rodflow {

// Real-valued periodic function sampled at x_j = j * L / n, j = 0..n-1.
// Immutable after construction: every operation returns a new value.
// Construction enforces: n even and >= 16, L > 0, all samples finite.
class GridFunction {
public:
    GridFunction(std::vector<double> samples, double domain_length);

    static GridFunction zeros(std::size_t n, double domain_length);
    static GridFunction constant(std::size_t n, double domain_length, double value);

    template <class F>
    static GridFunction sample(std::size_t n, double domain_length, F&& f) {
        std::vector<double> s(n);
        for (std::size_t j = 0; j < n; ++j)
            s[j] = f(static_cast<double>(j) * domain_length / static_cast<double>(n));
        return GridFunction(std::move(s), domain_length);
    }

    std::size_t size() const { return samples_.size(); }
    double domain_length() const { return domain_length_; }
    double dx() const { return domain_length_ / static_cast<double>(size()); }
    double x(std::size_t j) const { return static_cast<double>(j) * dx(); }
    double operator[](std::size_t j) const { return samples_[j]; }
    const std::vector<double>& samples() const { return samples_; }

    double sup_norm() const;
    double min_value() const;
    double max_value() const;

    // Throws InvalidInputError unless both functions share n and L.
    void require_same_grid(const GridFunction& other) const;

private:
    std::vector<double> samples_;
    double domain_length_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b); // pointwise
GridFunction operator/(const GridFunction& a, const GridFunction& b); // pointwise
GridFunction operator*(double c, const GridFunction& f);
GridFunction operator*(const GridFunction& f, double c);
GridFunction operator-(const GridFunction& f);
GridFunction operator+(const GridFunction& f, double c);

// Fourier coefficients of a GridFunction for wavenumbers k = -n/2..n/2-1
// under the convention
//   c_k = (1/L) * integral_0^L f(x) exp(-2*pi*i*k*x/L) dx
// (discretized by the trapezoid rule, i.e. DFT/n). Stored as the
// non-negative half c_0..c_{n/2}; negative wavenumbers follow from
// conjugate symmetry, with slot n/2 holding the (real) -n/2 mode.
class Spectrum {
public:
    explicit Spectrum(const GridFunction& f);
    Spectrum(std::vector<std::complex<double>> half, std::size_t grid_size,
             double domain_length);

    std::size_t grid_size() const { return grid_size_; }
    double domain_length() const { return domain_length_; }

    // k must lie in [-n/2, n/2-1].
    std::complex<double> coeff(int k) const;

    const std::vector<std::complex<double>>& half() const { return half_; }

    GridFunction to_grid() const;

private:
    std::vector<std::complex<double>> half_; // size n/2 + 1
    std::size_t grid_size_;
    double domain_length_;
};

// Sobolev regularity index; the solvers require s > 3/2.
struct SobolevIndex {
    explicit SobolevIndex(double s) : value(s) {
        if (!(s > 1.5))
            throw ParameterError("Sobolev index must satisfy s > 3/2, got " +
                                 std::to_string(s));
    }
    double value;
};

} // namespace rodflow

#endif
