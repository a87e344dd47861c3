#include "hcdiff/registry.hpp"

#include <cmath>

namespace hcdiff
{

namespace
{
struct Monomial
{
    double coef;
    int t_power;
    int tau_power;
};

// t^5 tau^4 + 3 t^3 tau^2 + 0.5 t^2 tau^3 - t tau + 2
const std::vector<Monomial>& polynomial_terms()
{
    static const std::vector<Monomial> terms{
        {1.0, 5, 4}, {3.0, 3, 2}, {0.5, 2, 3}, {-1.0, 1, 1}, {2.0, 0, 0},
    };
    return terms;
}

double falling_factorial(int n, int r)
{
    double f = 1.0;
    for (int i = 0; i < r; ++i)
        f *= n - i;
    return f;
}

BivariateFunction polynomial_derivative(int r1, int r2)
{
    std::vector<Monomial> terms;
    for (const auto& m : polynomial_terms())
        if (m.t_power >= r1 && m.tau_power >= r2)
            terms.push_back({m.coef * falling_factorial(m.t_power, r1) * falling_factorial(m.tau_power, r2),
                             m.t_power - r1, m.tau_power - r2});
    return [terms](double t, double tau) {
        double sum = 0.0;
        for (const auto& m : terms)
            sum += m.coef * std::pow(t, m.t_power) * std::pow(tau, m.tau_power);
        return sum;
    };
}
} // namespace

const std::vector<RegisteredFunction>& function_registry()
{
    static const std::vector<RegisteredFunction> registry{
        {"constant", "f(t, tau) = 1", [](double, double) { return 1.0; },
         [](int, int) -> BivariateFunction { return [](double, double) { return 0.0; }; }},
        {"polynomial", "t^5 tau^4 + 3 t^3 tau^2 + 0.5 t^2 tau^3 - t tau + 2", polynomial_derivative(0, 0),
         polynomial_derivative},
        {"exp", "exp(t + tau) / 4", [](double t, double tau) { return std::exp(t + tau) / 4.0; },
         [](int, int) -> BivariateFunction { return [](double t, double tau) { return std::exp(t + tau) / 4.0; }; }},
    };
    return registry;
}

std::optional<RegisteredFunction> find_function(std::string_view name)
{
    for (const auto& entry : function_registry())
        if (entry.name == name)
            return entry;
    return std::nullopt;
}

std::vector<std::string> function_ids()
{
    std::vector<std::string> ids;
    for (const auto& entry : function_registry())
        ids.push_back(entry.name);
    ids.emplace_back("synthetic");
    return ids;
}

} // namespace hcdiff
