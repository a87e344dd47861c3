#include "hcdiff/truncation.hpp"

#include "hcdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hcdiff
{

std::string_view to_string(Metric metric)
{
    return metric == Metric::l2 ? "l2" : "c";
}

std::string_view to_string(RateClass rate)
{
    switch (rate)
    {
    case RateClass::clean:
        return "clean";
    case RateClass::log_sqrt:
        return "ln^(1/2)";
    case RateClass::log_one_minus_inv_s:
        return "ln^(1-1/s)";
    case RateClass::log:
        return "ln";
    case RateClass::equal_orders_log:
        return "equal-orders-log";
    }
    return "unknown";
}

void MethodParams::validate() const
{
    if (r2 < 1 || r1 < r2)
        throw ParameterError("method requires r1 >= r2 >= 1");
    if (!(gamma >= 1.0))
        throw ParameterError("method requires gamma >= 1");
    if (!(n > 0.0) || !std::isfinite(n))
        throw ParameterError("method requires a positive finite n");
}

CoeffGrid apply_method(const CoeffGrid& c_delta, const MethodParams& params)
{
    params.validate();
    const HyperbolicCross cross = build_cross(params.n, params.gamma, params.r1, params.r2);
    return mixed_derivative_coeffs(restrict_to_cross(c_delta, cross), params.r1, params.r2);
}

bool GammaInterval::contains(double gamma) const noexcept
{
    const bool above = lo_closed ? gamma >= lo : gamma > lo;
    const bool below = hi_closed ? gamma <= hi : gamma < hi;
    return above && below;
}

double clamped_log(double delta)
{
    return std::max(std::log(1.0 / delta), 1.0);
}

namespace
{
double inv(double p)
{
    return std::isinf(p) ? 0.0 : 1.0 / p;
}

double rate_denominator(const SelectionInput& in)
{
    return in.cls.mu - inv(in.p) + 1.0 / in.cls.s;
}

void validate_orders(const SelectionInput& in)
{
    in.cls.validate();
    if (in.r2 < 1 || in.r1 < in.r2)
        throw ParameterError("derivative orders must satisfy r1 >= r2 >= 1");
    if (!(in.p >= 1.0))
        throw ParameterError("noise norm exponent p must be >= 1");
}

GammaInterval open_interval(double lo, double hi, const std::string& label)
{
    return GammaInterval{lo, hi, false, false, RateClass::clean, 0.0, label};
}

GammaInterval point(double at, RateClass rate, double n_log_power, const std::string& label)
{
    return GammaInterval{at, at, true, true, rate, n_log_power, label};
}
} // namespace

void check_admissibility(const SelectionInput& in)
{
    validate_orders(in);
    const double bound = in.metric == Metric::l2 ? 2.0 * in.r1 + 0.5 - 1.0 / in.cls.s
                                                 : 2.0 * in.r1 - 1.0 / in.cls.s + 1.5;
    if (!(in.cls.mu > bound))
    {
        std::ostringstream msg;
        msg << "admissibility violated for metric " << to_string(in.metric) << ": need mu > "
            << (in.metric == Metric::l2 ? "2*r1 + 1/2 - 1/s" : "2*r1 - 1/s + 3/2") << " = " << bound
            << " (got mu = " << in.cls.mu << ", r1 = " << in.r1 << ", s = " << in.cls.s << ")";
        throw AdmissibilityError(msg.str());
    }
}

std::vector<GammaInterval> gamma_intervals(const SelectionInput& in)
{
    check_admissibility(in);
    const double mu = in.cls.mu;
    const double inv_s = 1.0 / in.cls.s;
    const int r1 = in.r1;
    const int r2 = in.r2;
    std::vector<GammaInterval> out;

    if (r1 == r2)
    {
        out.push_back(point(1.0, RateClass::equal_orders_log, inv(in.p) - inv_s, "equal-orders"));
        return out;
    }

    if (in.metric == Metric::l2)
    {
        const double e1 = (mu - 2 * r2 + inv_s - 0.5) / (mu - 2 * r1 + inv_s + 0.5);
        const double e2 = (mu - 2 * r2 + inv_s + 0.5) / (mu - 2 * r1 + inv_s + 0.5);
        const double e3 = (mu - 2 * r2 + inv_s - 0.5) / (mu - 2 * r1 + inv_s - 0.5);
        GammaInterval first = open_interval(1.0, e1, "unequal-orders/clean-interval");
        first.lo_closed = true;
        out.push_back(first);
        out.push_back(point(e1, RateClass::log_sqrt, 0.5, "unequal-orders/log-sqrt-point"));
        out.push_back(open_interval(e1, e2, "unequal-orders/clean-interval"));
        out.push_back(point(e2, RateClass::log_one_minus_inv_s, 1.0 - inv_s, "unequal-orders/log-power-point"));
        out.push_back(open_interval(e2, e3, "unequal-orders/clean-interval"));
        out.push_back(point(e3, RateClass::log_sqrt, 0.5, "unequal-orders/log-sqrt-point"));
        return out;
    }

    const double d = mu - 2 * r1 + inv_s;
    if (r1 == r2 + 1)
    {
        const double ga = (d + 2.5) / (d + 0.5);
        const double gb = (d + 0.5) / (d - 1.5);
        out.push_back(point(1.0, RateClass::log, 0.0, "adjacent-orders/gamma-one"));
        out.push_back(open_interval(1.0, ga, "adjacent-orders/clean-interval"));
        out.push_back(point(ga, RateClass::log_one_minus_inv_s, 1.0 - inv_s, "adjacent-orders/log-power-point"));
        out.push_back(open_interval(ga, gb, "adjacent-orders/clean-interval"));
        out.push_back(point(gb, RateClass::log, 1.0, "adjacent-orders/log-point"));
        return out;
    }

    const double a = mu - 2 * r2 + inv_s;
    const double e1 = (a - 1.5) / (d + 0.5);
    const double e2 = (a + 0.5) / (d + 0.5);
    const double e3 = (a - 1.5) / (d - 1.5);
    GammaInterval first = open_interval(1.0, e1, "separated-orders/clean-interval");
    first.lo_closed = true;
    out.push_back(first);
    out.push_back(point(e1, RateClass::log, 1.0, "separated-orders/log-point"));
    out.push_back(open_interval(e1, e2, "separated-orders/clean-interval"));
    out.push_back(point(e2, RateClass::log_one_minus_inv_s, 1.0 - inv_s, "separated-orders/log-power-point"));
    out.push_back(open_interval(e2, e3, "separated-orders/clean-interval"));
    out.push_back(point(e3, RateClass::log, 1.0, "separated-orders/log-point"));
    return out;
}

Selection select_parameters(const SelectionInput& in)
{
    if (!(in.delta > 0.0 && in.delta < 1.0))
        throw ParameterError("delta must lie in (0, 1)");
    const std::vector<GammaInterval> intervals = gamma_intervals(in);

    const GammaInterval* chosen = nullptr;
    double gamma = 1.0;
    if (in.gamma_override)
    {
        gamma = *in.gamma_override;
        // exceptional points first, so a forced boundary value picks up its log factor
        for (const auto& iv : intervals)
            if (iv.is_point() && iv.contains(gamma))
                chosen = &iv;
        if (!chosen)
            for (const auto& iv : intervals)
                if (iv.contains(gamma))
                {
                    chosen = &iv;
                    break;
                }
        if (!chosen)
        {
            std::ostringstream msg;
            msg << "gamma = " << gamma << " lies outside every admissible interval (";
            for (std::size_t i = 0; i < intervals.size(); ++i)
                msg << (i ? ", " : "") << (intervals[i].lo_closed ? "[" : "(") << intervals[i].lo << ", "
                    << intervals[i].hi << (intervals[i].hi_closed ? "]" : ")");
            msg << ")";
            throw AdmissibilityError(msg.str());
        }
    }
    else
    {
        for (const auto& iv : intervals)
            if (iv.rate == RateClass::clean && !iv.is_point())
            {
                chosen = &iv;
                break;
            }
        if (!chosen)
            chosen = &intervals.front();
        gamma = chosen->is_point() ? chosen->lo : chosen->midpoint();
    }

    const double L = clamped_log(in.delta);
    Selection sel;
    sel.gamma = gamma;
    sel.n = std::pow(in.delta / std::pow(L, chosen->n_log_power), -1.0 / rate_denominator(in));
    sel.case_label = std::string(to_string(in.metric)) + "/" + chosen->label;
    return sel;
}

double theoretical_error_exponent(const SelectionInput& in)
{
    check_admissibility(in);
    const double shift = in.metric == Metric::l2 ? 0.5 : 1.5;
    return (in.cls.mu - 2.0 * in.r1 + 1.0 / in.cls.s - shift) / rate_denominator(in);
}

} // namespace hcdiff
