#ifndef HCDIFF_LOWERBOUND_HPP
#define HCDIFF_LOWERBOUND_HPP

#include "hcdiff/spectral.hpp"

#include <set>
#include <string_view>
#include <vector>

namespace hcdiff
{

struct WitnessConstants
{
    double c_tilde = 0.0; ///< (1 + 4^{s mu})^{-1/s}, keeps ||f1||_{s,mu} <= 1
    double c_bar = 0.0;   ///< constant of the uniform-metric lower bound
    double c_dbar = 0.0;  ///< constant of the L2 lower bound
};

WitnessConstants witness_constants(int r1, int r2, const ClassParams& params);

/// Which band indices carry the bump. even_skew and odd_skew take every
/// admissible k of that parity first (ascending), then fill up with the other.
enum class WitnessSelection
{
    smallest,
    even_skew,
    odd_skew,
};

std::string_view to_string(WitnessSelection s);

/** Pair of class functions that no algorithm can tell apart from N
 *  delta-perturbed coefficients taken off the excluded index set.
 *
 *  f2 = c_tilde phi_0 phi_0, and f1 adds N entries of equal size
 *  c_tilde N^{-mu-1/s} r2^{-mu} at (k, r2) with N + r1 <= k <= 3N + r1.
 */
class WitnessPair
{
  public:
    const CoeffGrid& f1() const noexcept { return f1_; }
    const CoeffGrid& f2() const noexcept { return f2_; }
    int N() const noexcept { return n_; }
    int r1() const noexcept { return r1_; }
    int r2() const noexcept { return r2_; }
    const ClassParams& params() const noexcept { return params_; }
    const std::vector<int>& selected_k() const noexcept { return selected_k_; }
    const WitnessConstants& constants() const noexcept { return constants_; }
    /// Common value of the band entries.
    double band_value() const noexcept { return band_value_; }

    /// f1 - f2 (the band entries).
    CoeffGrid difference() const;

  private:
    friend WitnessPair build_witness_pair(int, int, int, const ClassParams&, const std::set<IndexPair>&,
                                          WitnessSelection);

    CoeffGrid f1_;
    CoeffGrid f2_;
    int n_ = 0;
    int r1_ = 1;
    int r2_ = 1;
    ClassParams params_;
    std::vector<int> selected_k_;
    WitnessConstants constants_;
    double band_value_ = 0.0;
};

/// Picks N indices k in [N + r1, 3N + r1] with (k, r2) not excluded; by
/// default the N smallest.
/// Throws InfeasibilityError when fewer than N remain and ParameterError for
/// N < 1 or r1 < r2.
WitnessPair build_witness_pair(int N, int r1, int r2, const ClassParams& params,
                               const std::set<IndexPair>& excluded = {},
                               WitnessSelection selection = WitnessSelection::smallest);

/// ||f1 - f2||_p over coefficients.
double witness_lp_distance(const WitnessPair& w, double p);

/// c_tilde r2^{-mu} N^{-mu-1/s+1/p}
double witness_lp_distance_closed_form(const WitnessPair& w, double p);

struct LowerBoundReport
{
    double measured = 0.0;
    double bound = 0.0;
    bool passed = false;
};

/// |f1^{(r1,r2)}(1,1)| against c_bar N^{-mu+2r1-1/s+3/2}.
LowerBoundReport verify_lower_bound_C(const WitnessPair& w);

/// ||f1^{(r1,r2)}||_{L2} against c_dbar N^{-mu+2r1-1/s+1/2}.
LowerBoundReport verify_lower_bound_L2(const WitnessPair& w);

/// Smallest N for which the witness pair is delta-indistinguishable in l_p:
/// (r2^mu delta / c_tilde)^{-1/(mu+1/s-1/p)}.
double min_N_for_delta(double delta, double p, const ClassParams& params, int r2);

/// Inverse of min_N_for_delta: the delta whose threshold equals N.
double delta_for_N(double N, double p, const ClassParams& params, int r2);

} // namespace hcdiff

#endif // HCDIFF_LOWERBOUND_HPP
