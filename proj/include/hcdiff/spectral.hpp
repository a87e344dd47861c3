#ifndef HCDIFF_SPECTRAL_HPP
#define HCDIFF_SPECTRAL_HPP

#include "hcdiff/cross.hpp"

#include <Eigen/Core>

#include <map>
#include <utility>
#include <vector>

namespace hcdiff
{

using IndexPair = std::pair<int, int>;

/** Sparse grid of bivariate Fourier-Legendre coefficients c_{k,j}.
 *
 *  Iteration is in (k, j) lexicographic order. Stored values are finite;
 *  zeros may be omitted, and every operation treats a missing entry as 0.
 */
class CoeffGrid
{
  public:
    using Map = std::map<IndexPair, double>;

    CoeffGrid() = default;
    CoeffGrid(std::initializer_list<std::pair<const IndexPair, double>> entries);

    /// Grid from a dense matrix whose (k, j) entry is c_{k,j}; exact zeros dropped.
    static CoeffGrid from_dense(const Eigen::MatrixXd& dense);

    /// Sets c_{k,j}; throws ParameterError on negative index or non-finite value.
    void set(int k, int j, double value);
    /// Adds to c_{k,j}; an entry whose sum is exactly zero is removed.
    void add(int k, int j, double value);
    double at(int k, int j) const;
    bool contains(int k, int j) const { return entries_.count({k, j}) != 0; }

    const Map& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    /// Largest k / j index present, -1 when empty.
    int max_k() const noexcept;
    int max_j() const noexcept;

    /// Dense (rows x cols) matrix, rows indexed by k; entries beyond the shape
    /// are ignored. Default shape covers every stored entry.
    Eigen::MatrixXd to_dense() const;
    Eigen::MatrixXd to_dense(int rows, int cols) const;

    /// Copy with exact zeros removed.
    CoeffGrid pruned() const;

    /// Entrywise (k, j) row / column of the grid as 1-D coefficients.
    Eigen::VectorXd row(int k) const;
    Eigen::VectorXd column(int j) const;

    friend bool operator==(const CoeffGrid&, const CoeffGrid&) = default;

  private:
    Map entries_;
};

CoeffGrid operator+(const CoeffGrid& a, const CoeffGrid& b);
CoeffGrid operator-(const CoeffGrid& a, const CoeffGrid& b);
CoeffGrid operator*(double alpha, const CoeffGrid& c);

/// Smoothness class L^mu_{s,2}: weight (max(1,k) max(1,j))^{s mu} on |c|^s.
struct ClassParams
{
    double s = 2.0;
    double mu = 1.0;

    /// Throws ParameterError unless s >= 1 and mu > 0.
    void validate() const;
};

/// (sum (max(1,k) max(1,j))^{s mu} |c_{k,j}|^s)^{1/s}
double class_norm(const CoeffGrid& c, const ClassParams& params);

/// sqrt(sum c^2): the L2 norm of the synthesised function.
double parseval_l2_norm(const CoeffGrid& c);

/// sum c_{k,j} phi_k(t) phi_j(tau), one Clenshaw sum per row.
double synth_eval(const CoeffGrid& c, double t, double tau);

/// Tensor values V_t C V_tau^T on the given node sets; result(i, l) is the
/// synthesised function at (t_i, tau_l).
Eigen::MatrixXd synth_tensor(const CoeffGrid& c, const Eigen::VectorXd& t_nodes, const Eigen::VectorXd& tau_nodes);

/// Coefficients of d^{r1+r2} f / dt^{r1} dtau^{r2}. r1 or r2 may be zero.
CoeffGrid mixed_derivative_coeffs(const CoeffGrid& c, int r1, int r2);

/// Dense version of mixed_derivative_coeffs; rows k, columns j.
Eigen::MatrixXd mixed_derivative_dense(const Eigen::MatrixXd& c, int r1, int r2);

/// Chebyshev-clustered points cos(pi i / (resolution - 1)), i = 0..resolution-1.
Eigen::VectorXd chebyshev_points(int resolution);

/// max |synth| over the resolution x resolution tensor of Chebyshev points.
double sup_norm_on_grid(const CoeffGrid& c, int resolution);

constexpr int kDefaultSupResolution = 257;

/// Entries of c whose index lies in the cross.
CoeffGrid restrict_to_cross(const CoeffGrid& c, const HyperbolicCross& cross);

} // namespace hcdiff

#endif // HCDIFF_SPECTRAL_HPP
