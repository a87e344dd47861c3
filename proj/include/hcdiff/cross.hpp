#ifndef HCDIFF_CROSS_HPP
#define HCDIFF_CROSS_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace hcdiff
{

/** Hyperbolic cross {(k, j) : k >= r1, j >= r2, k j^gamma <= n}.
 *
 *  n is real; the set depends on it only through floors, which are taken
 *  with a relative guard of 1e-12 so that boundaries landing a few ulps
 *  below an integer still include that integer.
 */
class HyperbolicCross
{
  public:
    HyperbolicCross(double n, double gamma, int r1, int r2);

    double n() const noexcept { return n_; }
    double gamma() const noexcept { return gamma_; }
    int r1() const noexcept { return r1_; }
    int r2() const noexcept { return r2_; }

    /// Sorted by (k, j).
    const std::vector<std::pair<int, int>>& indices() const noexcept { return indices_; }
    std::size_t cardinality() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }

    /// Membership by binary search over the materialised list.
    bool contains(int k, int j) const;

    /// Membership by the defining inequality, with the same guard.
    static bool satisfies(double n, double gamma, int r1, int r2, int k, int j);

    /// Largest k and j present (0 when empty).
    int max_k() const noexcept;
    int max_j() const noexcept;

  private:
    double n_;
    double gamma_;
    int r1_;
    int r2_;
    std::vector<std::pair<int, int>> indices_;
};

/// Throws ParameterError when gamma < 1 or r1, r2 < 1.
HyperbolicCross build_cross(double n, double gamma, int r1, int r2);

inline std::size_t cardinality(const HyperbolicCross& cross) { return cross.cardinality(); }

/// floor(x) allowing x to sit up to 1e-12 relative below an integer.
long long guarded_floor(double x);

} // namespace hcdiff

#endif // HCDIFF_CROSS_HPP
