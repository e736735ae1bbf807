#ifndef RODFLOW_DIFFEO_HPP
#define RODFLOW_DIFFEO_HPP

#include <cstddef>

#include "rodflow/grid_function.hpp"

namespace rodflow {

// Orientation-preserving circle diffeomorphism, stored as the periodic
// displacement phi - id so that phi(x + L) = phi(x) + L holds exactly.
// The grid derivative phi_x = 1 + d/dx(displacement) is computed
// spectrally at construction and must be strictly positive.
class Diffeo {
public:
    explicit Diffeo(GridFunction displacement);

    static Diffeo identity(std::size_t n, double domain_length);
    static Diffeo shift(std::size_t n, double domain_length, double c);

    const GridFunction& displacement() const { return displacement_; }
    const GridFunction& phi_x() const { return phi_x_; }
    double min_phi_x() const { return phi_x_.min_value(); }

    std::size_t size() const { return displacement_.size(); }
    double domain_length() const { return displacement_.domain_length(); }

    // phi(x_j) = x_j + displacement_j (not reduced mod L).
    GridFunction grid_values() const;

    // phi at an arbitrary point, by trigonometric interpolation of the
    // displacement. Builds an evaluator per call; for many points use
    // detail::Evaluator on displacement() directly.
    double operator()(double x) const;

private:
    GridFunction displacement_;
    GridFunction phi_x_;
};

} // namespace rodflow

#endif
