#ifndef HCDIFF_HARNESS_HPP
#define HCDIFF_HARNESS_HPP

#include "hcdiff/lowerbound.hpp"
#include "hcdiff/noise.hpp"
#include "hcdiff/truncation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hcdiff
{

/// Coefficient magnitudes A (max(1,k) max(1,j))^{-mu-1/s-epsilon} with random
/// signs on 0 <= k, j <= k_ref, or a single entry when single_index is set.
struct SyntheticProfile
{
    double epsilon = 0.01;
    int k_ref = 64;
    std::optional<IndexPair> single_index;
};

/// Grid on the boundary of the class: class_norm == 1. Throws ParameterError
/// for epsilon <= 0.
CoeffGrid synthesize_class_function(const ClassParams& cls, const SyntheticProfile& profile, std::uint64_t seed);

struct RateFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; ///< RMS of log-space residuals
    std::size_t points_used = 0;
};

/// Least squares ln(error) = slope ln(x) + intercept. Needs >= 2 points, all
/// strictly positive.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

enum class MetricSelection
{
    l2,
    c,
    both,
};

std::string_view to_string(MetricSelection m);

struct ExperimentConfig
{
    ClassParams cls{2.0, 4.0};
    int r1 = 1;
    int r2 = 1;
    double p = 2.0;
    MetricSelection metric = MetricSelection::both;
    std::optional<double> gamma; ///< forced gamma; default follows the selection rule

    double delta_start = 1e-2;
    double delta_stop = 1e-6;
    int delta_count = 9;

    NoiseMode noise_mode = NoiseMode::random_sphere;
    std::uint64_t seed = 0;
    int realizations = 1;  ///< noise draws averaged per delta
    int noise_support = 0; ///< 0: largest cross extent + 2

    std::string function_id = "synthetic";
    double epsilon = 0.01;
    int k_ref = 64;
    int quadrature_order = 0; ///< 0: k_ref + 10

    int sup_resolution = kDefaultSupResolution;
    bool timing = false; ///< record wall time; off keeps output reproducible

    /// Geometric sweep from delta_start down to delta_stop.
    std::vector<double> deltas() const;

    /// One message per invalid field; empty when valid.
    std::vector<std::string> problems() const;
};

struct ExperimentRecord
{
    double delta = 0.0;
    double n = 0.0;
    double gamma = 1.0;
    std::size_t cross_cardinality = 0;
    double error_l2 = 0.0;
    double error_c = 0.0;
    double noise_norm = 0.0;
    double wall_ms = 0.0;
    std::string case_label;
};

struct ExperimentResult
{
    ExperimentConfig config;
    int noise_support = 0;
    std::vector<ExperimentRecord> records; ///< decreasing delta
    std::optional<RateFit> fit_l2;
    std::optional<RateFit> fit_c;
    std::optional<double> theoretical_l2;
    std::optional<double> theoretical_c;
};

/// Sweeps delta: selects (n, gamma), perturbs, applies the method and measures
/// the error against the coefficient-space derivative of the full k_ref grid.
/// Throws ConfigError for an invalid config and AdmissibilityError from the
/// parameter selection.
ExperimentResult run_convergence_study(const ExperimentConfig& config);

/// Slope fit over the records; drops the two largest-delta points when the
/// residual exceeds 0.1. Empty with fewer than 4 points or a zero error.
std::optional<RateFit> fit_records(const std::vector<ExperimentRecord>& records, Metric metric);

struct RadiusConfig
{
    std::vector<int> N_values{8, 16, 32, 64};
    ClassParams cls{2.0, 6.0};
    int r1 = 2;
    int r2 = 1;
    double p = 2.0;
    int sup_resolution = kDefaultSupResolution;
};

struct RadiusRecord
{
    int N = 0;
    double delta = 0.0;
    double n_selected = 0.0; ///< from the selection rule
    double n_used = 0.0;     ///< largest n with card(cross) <= N
    double gamma = 1.0;
    std::size_t cross_cardinality = 0;
    std::vector<int> selected_k;
    LowerBoundReport check_c;
    LowerBoundReport check_l2;
    double lower_c = 0.0;  ///< c_bar / 2 N^{-mu+2r1-1/s+3/2}
    double lower_l2 = 0.0; ///< c_dbar N^{-mu+2r1-1/s+1/2}
    double method_error_c = 0.0;
    double method_error_l2 = 0.0;
    double witness_distance = 0.0;
    /// |f1^(r1,r2)(1,1)| for the even- and odd-skew witness selections built
    /// off the same cross; empty when the band lacks room for that selection.
    std::optional<double> endpoint_even_skew;
    std::optional<double> endpoint_odd_skew;
};

struct RadiusReport
{
    RadiusConfig config;
    WitnessConstants constants;
    std::vector<RadiusRecord> records;
    double theoretical_exponent_c = 0.0;  ///< -mu + 2r1 - 1/s + 3/2
    double theoretical_exponent_l2 = 0.0; ///< -mu + 2r1 - 1/s + 1/2
    RateFit fit_lower_c;
    RateFit fit_lower_l2;
    RateFit fit_method_c;
    RateFit fit_method_l2;
    bool lower_below_method = false;
    bool exponents_agree = false; ///< |method slope - lower slope| <= 0.2 in both metrics
};

constexpr double kRadiusExponentTolerance = 0.2;

/// For each N: delta at the indistinguishability threshold, gamma from the
/// selection rule, the largest cross with at most N indices, and the witness
/// pair built off that cross fed to the method as adversarial data.
RadiusReport run_radius_study(const RadiusConfig& config);

} // namespace hcdiff

#endif // HCDIFF_HARNESS_HPP
