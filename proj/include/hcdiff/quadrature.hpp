#ifndef HCDIFF_QUADRATURE_HPP
#define HCDIFF_QUADRATURE_HPP

#include "hcdiff/spectral.hpp"

#include <Eigen/Core>

#include <functional>

namespace hcdiff
{

/// m-point Gauss-Legendre rule on [-1, 1], nodes increasing.
struct QuadratureRule
{
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    int order() const noexcept { return static_cast<int>(nodes.size()); }
};

/// Bivariate callback f(t, tau). May be invoked concurrently, so it must not
/// mutate shared state.
using BivariateFunction = std::function<double(double, double)>;

constexpr int kMaxQuadratureOrder = 4096;

/// Nodes are roots of P_m found by Newton's method from the Chebyshev-angle
/// guesses cos(pi (i - 1/4) / (m + 1/2)). Throws ParameterError for m outside
/// [1, 4096] and InternalError if Newton fails to converge.
QuadratureRule gauss_legendre_rule(int m);

/// Default quadrature order for a degree cutoff K.
inline int default_quadrature_order(int degree_cutoff) { return degree_cutoff + 10; }

/// c_{k,j} = <f, phi_k phi_j> for 0 <= k, j <= K via the tensor m x m rule.
/// Requires m >= K + 2.
CoeffGrid compute_coeff_grid(const BivariateFunction& f, int degree_cutoff, int order);

/// Same, with the default order K + 10.
CoeffGrid compute_coeff_grid(const BivariateFunction& f, int degree_cutoff);

/// sqrt of the integral of g^2 over [-1,1]^2 by the tensor rule of order m >= 2.
double l2_norm_quadrature(const BivariateFunction& g, int order);

} // namespace hcdiff

#endif // HCDIFF_QUADRATURE_HPP
