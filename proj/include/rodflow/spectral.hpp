#ifndef RODFLOW_SPECTRAL_HPP
#define RODFLOW_SPECTRAL_HPP

#include <cstddef>

#include "rodflow/diffeo.hpp"
#include "rodflow/grid_function.hpp"

namespace rodflow {

// Spectral derivative of order 1, 2 or 3: multiplies mode k by
// (2*pi*i*k/L)^order. The Nyquist mode is zeroed for odd orders.
GridFunction derivative(const GridFunction& f, int order);

// Same, from an existing spectrum (saves the forward transform when
// several derivatives of one field are needed).
GridFunction derivative(const Spectrum& spec, int order);

// Inverse of (1 - gamma^{-2} d^2/dx^2): divides mode k by
// 1 + (2*pi*k/(gamma*L))^2. Exact inverse of the forward operator on the
// discrete grid. gamma must be nonzero.
GridFunction helmholtz_inverse(const GridFunction& f, double gamma);

// ||f||_s^2 = sum_k (1 + (2*pi*k/L)^2)^s |c_k|^2 over k = -n/2..n/2-1.
// s may be any real (negative s is used for the (s-2)-norms).
double sobolev_norm(const GridFunction& f, double s);

// Samples of the standard C-infinity bump exp(-1/(1-xi^2)),
// xi = (x - center)/halfwidth, zero outside |xi| < 1, scaled so that
// sobolev_norm(result, s) == target_norm. Samples outside the support
// interval are exactly zero. Throws ResolutionError (naming the smallest
// adequate grid size) when the halfwidth spans fewer than 4 cells.
GridFunction bump(double center, double halfwidth, double s,
                  double target_norm, std::size_t n, double domain_length);

// (f o phi)(x_j) = f(phi(x_j)) by trigonometric interpolation.
GridFunction compose(const GridFunction& f, const Diffeo& phi);

// phi1 o phi2 as a Diffeo.
Diffeo compose_diffeo(const Diffeo& outer, const Diffeo& inner);

// Inverse diffeomorphism: psi with phi(psi(x_j)) = x_j, solved per grid
// point by safeguarded Newton (tolerance 1e-12, cap 50, bisection
// fallback) on the monotone lift of phi.
Diffeo invert_diffeo(const Diffeo& phi);

// Trigonometric interpolation of f at a single point.
double evaluate(const GridFunction& f, double x);

// Zeroes all modes with |k| > n/3 (the 2/3 rule).
GridFunction dealias_truncate(const GridFunction& f);

// Pointwise product; with dealias set, both factors and the result are
// truncated by the 2/3 rule.
GridFunction product(const GridFunction& a, const GridFunction& b,
                     bool dealias = false);

} // namespace rodflow

#endif
