#include "hcdiff/quadrature.hpp"

#include "hcdiff/error.hpp"
#include "hcdiff/legendre.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hcdiff
{

namespace
{
constexpr int kMaxNewtonIterations = 100;
constexpr double kNewtonTolerance = 1e-15;

using Wide = long double;

// P_m(x) and P_m'(x) by the three-term recurrence; x strictly inside (-1, 1).
std::pair<Wide, Wide> legendre_and_derivative(int m, Wide x)
{
    Wide p_prev = 0.0L;
    Wide p = 1.0L;
    for (int l = 0; l < m; ++l)
    {
        const Wide p_next = ((2 * l + 1) * x * p - l * p_prev) / (l + 1);
        p_prev = p;
        p = p_next;
    }
    const Wide dp = m * (x * p - p_prev) / (x * x - 1.0L);
    return {p, dp};
}

// Nodes ascending, computed in extended precision. Newton runs to the double
// tolerance, then takes two more steps so the rounded double values are
// correct to the last bit in nearly every case.
std::pair<std::vector<Wide>, std::vector<Wide>> wide_rule(int m)
{
    if (m < 1 || m > kMaxQuadratureOrder)
        throw ParameterError("Gauss-Legendre order must lie in [1, " + std::to_string(kMaxQuadratureOrder) + "]");

    std::vector<Wide> nodes(static_cast<std::size_t>(m));
    std::vector<Wide> weights(static_cast<std::size_t>(m));
    const int half = (m + 1) / 2;
    for (int i = 1; i <= half; ++i)
    {
        // i-th largest root
        Wide x = std::cos(std::numbers::pi_v<Wide> * (i - 0.25L) / (m + 0.5L));
        bool converged = false;
        for (int iter = 0; iter < kMaxNewtonIterations; ++iter)
        {
            const auto [p, d] = legendre_and_derivative(m, x);
            const Wide step = p / d;
            x -= step;
            if (std::abs(step) <= kNewtonTolerance)
            {
                converged = true;
                break;
            }
        }
        if (!converged)
        {
            const auto [p, d] = legendre_and_derivative(m, x);
            if (std::abs(p / d) > 8.0L * std::numeric_limits<double>::epsilon())
                throw InternalError("Gauss-Legendre Newton iteration failed to converge for m = " +
                                    std::to_string(m));
        }
        for (int polish = 0; polish < 2; ++polish)
        {
            const auto [p, d] = legendre_and_derivative(m, x);
            x -= p / d;
        }
        if (m % 2 == 1 && i == half)
            x = 0.0L;
        const Wide dp = legendre_and_derivative(m, x).second;
        const Wide w = 2.0L / ((1.0L - x * x) * dp * dp);

        const auto hi = static_cast<std::size_t>(m - i);
        const auto lo = static_cast<std::size_t>(i - 1);
        nodes[hi] = x;
        nodes[lo] = -x;
        weights[hi] = w;
        weights[lo] = w;
    }
    return {nodes, weights};
}
} // namespace

QuadratureRule gauss_legendre_rule(int m)
{
    const auto [nodes, weights] = wide_rule(m);
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i)
    {
        rule.nodes(i) = static_cast<double>(nodes[static_cast<std::size_t>(i)]);
        rule.weights(i) = static_cast<double>(weights[static_cast<std::size_t>(i)]);
    }
    return rule;
}

CoeffGrid compute_coeff_grid(const BivariateFunction& f, int degree_cutoff, int order)
{
    if (degree_cutoff < 0)
        throw ParameterError("degree cutoff K must be non-negative");
    if (order < degree_cutoff + 2)
        throw ParameterError("quadrature order m must be at least K + 2 (got m = " + std::to_string(order) +
                             ", K = " + std::to_string(degree_cutoff) + ")");

    // Contract in extended precision with unnormalised P_k and apply the
    // sqrt((k+1/2)(j+1/2)) factor once at the end, so simple inputs give exact
    // coefficients (the constant 1 has c_00 = 2 exactly).
    using WideMatrix = Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic>;
    const auto [nodes, weights] = wide_rule(order);
    const int cols = degree_cutoff + 1;
    WideMatrix legendre(order, cols);
    for (int a = 0; a < order; ++a)
    {
        const Wide t = nodes[static_cast<std::size_t>(a)];
        const Wide w = weights[static_cast<std::size_t>(a)];
        Wide prev = 1.0L, cur = t;
        legendre(a, 0) = w;
        if (cols > 1)
            legendre(a, 1) = w * t;
        for (int k = 1; k + 1 < cols; ++k)
        {
            const Wide next = ((2.0L * k + 1.0L) * t * cur - k * prev) / (k + 1.0L);
            prev = cur;
            cur = next;
            legendre(a, k + 1) = w * next;
        }
    }

    WideMatrix values(order, order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            values(a, b) = f(static_cast<double>(nodes[static_cast<std::size_t>(a)]),
                             static_cast<double>(nodes[static_cast<std::size_t>(b)]));

    const WideMatrix wide = legendre.transpose() * values * legendre;
    Eigen::MatrixXd coeffs(cols, cols);
    for (int k = 0; k < cols; ++k)
        for (int j = 0; j < cols; ++j)
            coeffs(k, j) = static_cast<double>(wide(k, j) * std::sqrt(static_cast<Wide>((k + 0.5L) * (j + 0.5L))));
    return CoeffGrid::from_dense(coeffs);
}

CoeffGrid compute_coeff_grid(const BivariateFunction& f, int degree_cutoff)
{
    return compute_coeff_grid(f, degree_cutoff, default_quadrature_order(degree_cutoff));
}

double l2_norm_quadrature(const BivariateFunction& g, int order)
{
    if (order < 2)
        throw ParameterError("quadrature order must be at least 2");
    const QuadratureRule rule = gauss_legendre_rule(order);
    double sum = 0.0;
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
        {
            const double v = g(rule.nodes(a), rule.nodes(b));
            sum += rule.weights(a) * rule.weights(b) * v * v;
        }
    return std::sqrt(sum);
}

} // namespace hcdiff
