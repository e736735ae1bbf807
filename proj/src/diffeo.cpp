#include "rodflow/diffeo.hpp"

#include <string>

#include "rodflow/detail/interp.hpp"
#include "rodflow/spectral.hpp"

namespace rodflow {

Diffeo::Diffeo(GridFunction displacement)
    : displacement_(std::move(displacement)),
      phi_x_(derivative(displacement_, 1) + 1.0) {
    const double m = phi_x_.min_value();
    if (!(m > 0.0))
        throw DiffeoError("not a diffeomorphism: min phi_x = " +
                          std::to_string(m));
}

Diffeo Diffeo::identity(std::size_t n, double domain_length) {
    return Diffeo(GridFunction::zeros(n, domain_length));
}

Diffeo Diffeo::shift(std::size_t n, double domain_length, double c) {
    return Diffeo(GridFunction::constant(n, domain_length, c));
}

GridFunction Diffeo::grid_values() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < size(); ++j)
        out[j] = displacement_.x(j) + displacement_[j];
    return GridFunction(std::move(out), domain_length());
}

double Diffeo::operator()(double x) const {
    detail::Evaluator ev(displacement_);
    return x + ev(x);
}

} // namespace rodflow
