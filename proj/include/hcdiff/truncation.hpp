#ifndef HCDIFF_TRUNCATION_HPP
#define HCDIFF_TRUNCATION_HPP

#include "hcdiff/spectral.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hcdiff
{

enum class Metric
{
    l2,
    c,
};

std::string_view to_string(Metric metric);

/// Hyperbolic-cross truncation method parameters.
struct MethodParams
{
    double n = 1.0;
    double gamma = 1.0;
    int r1 = 1;
    int r2 = 1;

    /// Throws ParameterError unless r1 >= r2 >= 1, gamma >= 1 and n > 0.
    void validate() const;
};

/// Coefficients of the truncated derivative: the data restricted to the
/// cross Gamma_{n,gamma}, differentiated in coefficient space.
CoeffGrid apply_method(const CoeffGrid& c_delta, const MethodParams& params);

struct SelectionInput
{
    double delta = 1e-3;
    double p = 2.0;
    ClassParams cls;
    int r1 = 1;
    int r2 = 1;
    Metric metric = Metric::l2;
    /// Forces gamma; must lie in one of the intervals of gamma_intervals().
    std::optional<double> gamma_override;
};

/// Extra logarithmic factor in the error bound for gamma in an interval.
enum class RateClass
{
    clean,               ///< pure power of delta
    log_sqrt,            ///< ln^{1/2}
    log_one_minus_inv_s, ///< ln^{1-1/s}
    log,                 ///< ln
    equal_orders_log,    ///< ln^{3/2-1/s} (L2) or ln^{2-1/s} (C), r1 = r2
};

std::string_view to_string(RateClass rate);

/// Interval of gamma values (a single point when lo == hi) with a common
/// error order. n for gamma in the interval is (delta / L^{q})^{-1/(mu-1/p+1/s)}
/// with L = max(ln(1/delta), 1) and q = n_log_power.
struct GammaInterval
{
    double lo = 1.0;
    double hi = 1.0;
    bool lo_closed = true;
    bool hi_closed = true;
    RateClass rate = RateClass::clean;
    double n_log_power = 0.0;
    std::string label;

    bool is_point() const noexcept { return lo == hi; }
    bool contains(double gamma) const noexcept;
    double midpoint() const noexcept { return 0.5 * (lo + hi); }
};

/// Throws AdmissibilityError when mu is too small for (r1, s, metric).
void check_admissibility(const SelectionInput& input);

/// All gamma intervals and exceptional points for the input, sorted by lo.
std::vector<GammaInterval> gamma_intervals(const SelectionInput& input);

struct Selection
{
    double n = 0.0;
    double gamma = 1.0;
    std::string case_label;
};

/// Orders-of-magnitude parameter choice with all constants set to 1.
/// Default gamma is the midpoint of the leftmost clean interval, or 1 when
/// r1 = r2.
Selection select_parameters(const SelectionInput& input);

/// Power of delta in the error bound: (mu - 2r1 + 1/s - 1/2)/(mu - 1/p + 1/s)
/// for L2 and (mu - 2r1 + 1/s - 3/2)/(mu - 1/p + 1/s) for C.
double theoretical_error_exponent(const SelectionInput& input);

/// max(ln(1/delta), 1)
double clamped_log(double delta);

} // namespace hcdiff

#endif // HCDIFF_TRUNCATION_HPP
