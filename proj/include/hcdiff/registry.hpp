#ifndef HCDIFF_REGISTRY_HPP
#define HCDIFF_REGISTRY_HPP

#include "hcdiff/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hcdiff
{

/// Named bivariate test function. `derivative`, when set, returns the exact
/// mixed derivative d^{r1+r2} f / dt^{r1} dtau^{r2}.
struct RegisteredFunction
{
    std::string name;
    std::string description;
    BivariateFunction f;
    std::function<BivariateFunction(int r1, int r2)> derivative;
};

/// Built-in functions: "constant" (f = 1), "polynomial" (coordinate degree 5
/// with a closed-form derivative) and "exp" (exp(t + tau) / 4).
/// "synthetic" is not a callback; see synthesize_class_function.
const std::vector<RegisteredFunction>& function_registry();

std::optional<RegisteredFunction> find_function(std::string_view name);

/// Every accepted function id including "synthetic".
std::vector<std::string> function_ids();

} // namespace hcdiff

#endif // HCDIFF_REGISTRY_HPP
