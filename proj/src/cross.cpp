#include "hcdiff/cross.hpp"

#include "hcdiff/error.hpp"

#include <algorithm>
#include <cmath>

namespace hcdiff
{

namespace
{
constexpr double kRelativeGuard = 1e-12;
}

long long guarded_floor(double x)
{
    return static_cast<long long>(std::floor(x * (1.0 + kRelativeGuard)));
}

bool HyperbolicCross::satisfies(double n, double gamma, int r1, int r2, int k, int j)
{
    if (k < r1 || j < r2)
        return false;
    return static_cast<double>(k) * std::pow(static_cast<double>(j), gamma) <= n * (1.0 + kRelativeGuard);
}

HyperbolicCross::HyperbolicCross(double n, double gamma, int r1, int r2)
    : n_(n)
    , gamma_(gamma)
    , r1_(r1)
    , r2_(r2)
{
    if (!(gamma >= 1.0) || !std::isfinite(gamma))
        throw ParameterError("hyperbolic cross requires gamma >= 1");
    if (r1 < 1 || r2 < 1)
        throw ParameterError("hyperbolic cross requires r1, r2 >= 1");
    if (!std::isfinite(n))
        throw ParameterError("hyperbolic cross requires finite n");
    if (n <= 0.0)
        return;

    // The floors give the range; the predicate then settles boundary cases so
    // enumeration and membership never disagree.
    long long k_max = guarded_floor(n / std::pow(static_cast<double>(r2), gamma));
    while (satisfies(n, gamma, r1, r2, static_cast<int>(k_max + 1), r2))
        ++k_max;
    while (k_max >= r1 && !satisfies(n, gamma, r1, r2, static_cast<int>(k_max), r2))
        --k_max;

    for (long long k = r1; k <= k_max; ++k)
    {
        const int kk = static_cast<int>(k);
        long long j_max = guarded_floor(std::pow(n / static_cast<double>(k), 1.0 / gamma));
        while (satisfies(n, gamma, r1, r2, kk, static_cast<int>(j_max + 1)))
            ++j_max;
        while (j_max >= r2 && !satisfies(n, gamma, r1, r2, kk, static_cast<int>(j_max)))
            --j_max;
        for (long long j = r2; j <= j_max; ++j)
            indices_.emplace_back(kk, static_cast<int>(j));
    }
}

bool HyperbolicCross::contains(int k, int j) const
{
    return std::binary_search(indices_.begin(), indices_.end(), std::make_pair(k, j));
}

int HyperbolicCross::max_k() const noexcept
{
    return indices_.empty() ? 0 : indices_.back().first;
}

int HyperbolicCross::max_j() const noexcept
{
    int m = 0;
    for (const auto& [k, j] : indices_)
        m = std::max(m, j);
    return m;
}

HyperbolicCross build_cross(double n, double gamma, int r1, int r2)
{
    return HyperbolicCross(n, gamma, r1, r2);
}

} // namespace hcdiff
