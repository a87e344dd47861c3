#ifndef HCDIFF_NOISE_HPP
#define HCDIFF_NOISE_HPP

#include "hcdiff/spectral.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace hcdiff
{

class WitnessPair;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Identifier of the random stream written into experiment metadata.
inline constexpr std::string_view kRngAlgorithm = "splitmix64-counter/box-muller";

enum class NoiseMode
{
    random_sphere,
    single_coefficient,
    adversarial_witness,
    off,
};

std::string_view to_string(NoiseMode mode);
/// Accepts the CLI spellings sphere/single/witness/off and the long names.
std::optional<NoiseMode> parse_noise_mode(std::string_view text);

/// l_p-bounded coefficient perturbation xi with ||xi||_p <= delta.
struct NoiseSpec
{
    double p = 2.0; ///< kInfinity for the sup norm
    double delta = 1e-3;
    NoiseMode mode = NoiseMode::random_sphere;
    std::uint64_t seed = 0;
    /// Perturbed indices are 0 <= k, j <= support.
    int support = 0;
    /// Target of single-coefficient noise; drawn from the seed when unset.
    std::optional<IndexPair> single_index;

    /// Throws ParameterError for p < 1, delta outside (0, 1) or negative support.
    void validate() const;
};

/// Which witness function the observed data belongs to; the adversary hands
/// back the other one.
enum class WitnessRole
{
    first,
    second,
};

struct Perturbation
{
    CoeffGrid observed; ///< c^delta = c - xi
    CoeffGrid noise;    ///< xi
};

/// (sum |x|^p)^{1/p}, or max |x| for p = inf.
double lp_norm(const CoeffGrid& x, double p);

/// Counter-based generator: the i-th draw depends only on (seed, i).
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);
/// Uniform in (0, 1].
double uniform_open_closed(std::uint64_t seed, std::uint64_t counter);
/// Standard normal from draws 2i and 2i+1 (Box-Muller, cosine branch).
double standard_normal(std::uint64_t seed, std::uint64_t index);

/// Returns (c - xi, xi). Modes random_sphere and single_coefficient draw xi
/// on the support rectangle; mode off returns xi = 0. adversarial_witness
/// needs the overload taking a witness.
Perturbation perturb(const CoeffGrid& c, const NoiseSpec& spec);

/// Adversarial witness noise: xi = f1 - f2 for role first and f2 - f1 for
/// role second, so that data f1 is observed as f2 and vice versa. Throws
/// InfeasibilityError when ||xi||_p exceeds delta.
Perturbation perturb(const CoeffGrid& c, const NoiseSpec& spec, const WitnessPair& witness,
                     WitnessRole role = WitnessRole::first);

} // namespace hcdiff

#endif // HCDIFF_NOISE_HPP
