#include "hcdiff/noise.hpp"

#include "hcdiff/error.hpp"
#include "hcdiff/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hcdiff
{

std::string_view to_string(NoiseMode mode)
{
    switch (mode)
    {
    case NoiseMode::random_sphere:
        return "random-sphere";
    case NoiseMode::single_coefficient:
        return "single-coefficient";
    case NoiseMode::adversarial_witness:
        return "adversarial-witness";
    case NoiseMode::off:
        return "off";
    }
    return "unknown";
}

std::optional<NoiseMode> parse_noise_mode(std::string_view text)
{
    if (text == "sphere" || text == "random-sphere")
        return NoiseMode::random_sphere;
    if (text == "single" || text == "single-coefficient")
        return NoiseMode::single_coefficient;
    if (text == "witness" || text == "adversarial-witness")
        return NoiseMode::adversarial_witness;
    if (text == "off")
        return NoiseMode::off;
    return std::nullopt;
}

void NoiseSpec::validate() const
{
    if (!(p >= 1.0))
        throw ParameterError("noise norm exponent p must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw ParameterError("noise level delta must lie in (0, 1)");
    if (support < 0)
        throw ParameterError("noise support must be non-negative");
}

double lp_norm(const CoeffGrid& x, double p)
{
    if (!(p >= 1.0))
        throw ParameterError("lp_norm requires p >= 1");
    if (std::isinf(p))
    {
        double m = 0.0;
        for (const auto& [idx, v] : x)
            m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 1.0)
    {
        double s = 0.0;
        for (const auto& [idx, v] : x)
            s += std::abs(v);
        return s;
    }
    if (p == 2.0)
        return parseval_l2_norm(x);
    double s = 0.0;
    for (const auto& [idx, v] : x)
        s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter)
{
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform_open_closed(std::uint64_t seed, std::uint64_t counter)
{
    return static_cast<double>((splitmix64(seed, counter) >> 11) + 1) * 0x1.0p-53;
}

double standard_normal(std::uint64_t seed, std::uint64_t index)
{
    const double u1 = uniform_open_closed(seed, 2 * index);
    const double u2 = uniform_open_closed(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace
{
Perturbation apply_noise(const CoeffGrid& c, CoeffGrid xi)
{
    return Perturbation{c - xi, std::move(xi)};
}

CoeffGrid sphere_noise(const NoiseSpec& spec)
{
    const int side = spec.support + 1;
    CoeffGrid raw;
    std::uint64_t index = 0;
    for (int k = 0; k < side; ++k)
        for (int j = 0; j < side; ++j)
            raw.set(k, j, standard_normal(spec.seed, index++));
    const double norm = lp_norm(raw, spec.p);
    if (!(norm > 0.0))
        throw InternalError("random-sphere noise drew an all-zero sample");
    return (spec.delta / norm) * raw;
}

CoeffGrid single_noise(const NoiseSpec& spec)
{
    CoeffGrid xi;
    if (spec.single_index)
    {
        xi.set(spec.single_index->first, spec.single_index->second, spec.delta);
        return xi;
    }
    const auto side = static_cast<std::uint64_t>(spec.support) + 1;
    const std::uint64_t flat = splitmix64(spec.seed, 0) % (side * side);
    const double sign = (splitmix64(spec.seed, 1) & 1U) ? -1.0 : 1.0;
    xi.set(static_cast<int>(flat / side), static_cast<int>(flat % side), sign * spec.delta);
    return xi;
}
} // namespace

Perturbation perturb(const CoeffGrid& c, const NoiseSpec& spec)
{
    spec.validate();
    switch (spec.mode)
    {
    case NoiseMode::off:
        return Perturbation{c, CoeffGrid{}};
    case NoiseMode::random_sphere:
        return apply_noise(c, sphere_noise(spec));
    case NoiseMode::single_coefficient:
        return apply_noise(c, single_noise(spec));
    case NoiseMode::adversarial_witness:
        throw ParameterError("adversarial-witness noise needs a witness pair");
    }
    throw ParameterError("unknown noise mode");
}

Perturbation perturb(const CoeffGrid& c, const NoiseSpec& spec, const WitnessPair& witness, WitnessRole role)
{
    if (spec.mode != NoiseMode::adversarial_witness)
        return perturb(c, spec);
    spec.validate();

    CoeffGrid xi = witness.difference();
    if (role == WitnessRole::second)
        xi = -1.0 * xi;
    const double size = lp_norm(xi, spec.p);
    if (size > spec.delta * (1.0 + 1e-12))
        throw InfeasibilityError("witness coefficient distance " + std::to_string(size) + " exceeds delta " +
                                 std::to_string(spec.delta) + "; N is below the indistinguishability threshold");
    return apply_noise(c, std::move(xi));
}

} // namespace hcdiff
