#ifndef HCDIFF_LEGENDRE_HPP
#define HCDIFF_LEGENDRE_HPP

#include "hcdiff/error.hpp"

#include <Eigen/Core>

#include <cmath>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace hcdiff
{

/// sqrt(k + 1/2), the normalisation of the orthonormal Legendre function
/// phi_k = sqrt(k + 1/2) P_k. Values for k below a few thousand are tabulated
/// once on first use.
double half_root(int k);

namespace detail
{
template <typename Scalar>
void check_unit_interval(Scalar t)
{
    using std::abs;
    if (!(abs(t) <= Scalar(1)))
        throw DomainError("Legendre evaluation requires |t| <= 1");
}
} // namespace detail

/** Orthonormal Legendre function phi_k(t) = sqrt(k + 1/2) P_k(t).
 *
 *  P_k is computed by the three-term recurrence
 *  \f[ (l+1) P_{l+1}(t) = (2l+1) t P_l(t) - l P_{l-1}(t). \f]
 */
template <typename Scalar = double>
Scalar eval_phi(int k, Scalar t)
{
    detail::check_unit_interval(t);
    if (k < 0)
        throw ParameterError("Legendre index must be non-negative");

    Scalar p_prev(0);
    Scalar p(1);
    for (int l = 0; l < k; ++l)
    {
        const Scalar p_next = (Scalar(2 * l + 1) * t * p - Scalar(l) * p_prev) / Scalar(l + 1);
        p_prev = p;
        p = p_next;
    }
    return Scalar(half_root(k)) * p;
}

/** r-th derivative of phi_k at t.
 *
 *  Differentiating the three-term recurrence q times gives
 *  \f[ (l+1) P^{(q)}_{l+1} = (2l+1)(t P^{(q)}_l + q P^{(q-1)}_l) - l P^{(q)}_{l-1}, \f]
 *  which is regular at t = +-1, so no endpoint limits are needed.
 *  Exactly zero for k < r.
 */
template <typename Scalar = double>
Scalar eval_phi_derivative(int k, int r, Scalar t)
{
    detail::check_unit_interval(t);
    if (k < 0 || r < 0)
        throw ParameterError("Legendre index and derivative order must be non-negative");
    if (k < r)
        return Scalar(0);

    // prev[q] = P_{l-1}^{(q)}, cur[q] = P_l^{(q)}
    std::vector<Scalar> prev(static_cast<std::size_t>(r) + 1, Scalar(0));
    std::vector<Scalar> cur(static_cast<std::size_t>(r) + 1, Scalar(0));
    std::vector<Scalar> next(static_cast<std::size_t>(r) + 1, Scalar(0));
    cur[0] = Scalar(1);
    for (int l = 0; l < k; ++l)
    {
        for (int q = 0; q <= r; ++q)
        {
            const Scalar lower = q > 0 ? Scalar(q) * cur[q - 1] : Scalar(0);
            next[q] = (Scalar(2 * l + 1) * (t * cur[q] + lower) - Scalar(l) * prev[q]) / Scalar(l + 1);
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    return Scalar(half_root(k)) * cur[r];
}

/// Sum_k a_k phi_k(t) for dense coefficients a_0..a_{K}, by Clenshaw's
/// backward recurrence on the classical P_k.
template <typename Scalar = double>
Scalar clenshaw_dense(std::span<const Scalar> a, Scalar t)
{
    detail::check_unit_interval(t);
    const int n = static_cast<int>(a.size());
    if (n == 0)
        return Scalar(0);

    // P_{l+1} = alpha_l P_l + beta_l P_{l-1}, alpha_l = (2l+1)t/(l+1), beta_l = -l/(l+1)
    Scalar b1(0); // b_{l+1}
    Scalar b2(0); // b_{l+2}
    for (int l = n - 1; l >= 1; --l)
    {
        const Scalar alpha = Scalar(2 * l + 1) * t / Scalar(l + 1);
        const Scalar beta_next = -Scalar(l + 1) / Scalar(l + 2);
        const Scalar b = a[l] * Scalar(half_root(l)) + alpha * b1 + beta_next * b2;
        b2 = b1;
        b1 = b;
    }
    // S = c_0 P_0 + b_1 P_1 + beta_1 P_0 b_2
    return a[0] * Scalar(half_root(0)) + t * b1 - Scalar(0.5) * b2;
}

/// Matrix V with V(i, k) = phi_k(x_i) for k = 0..degree.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
phi_matrix(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, int degree)
{
    const Eigen::Index rows = x.size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> v(rows, degree + 1);
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        const Scalar t = x(i);
        detail::check_unit_interval(t);
        Scalar p_prev(0);
        Scalar p(1);
        for (int l = 0; l <= degree; ++l)
        {
            v(i, l) = Scalar(half_root(l)) * p;
            const Scalar p_next = (Scalar(2 * l + 1) * t * p - Scalar(l) * p_prev) / Scalar(l + 1);
            p_prev = p;
            p = p_next;
        }
    }
    return v;
}

/// Sparse 1-D Fourier-Legendre coefficients, sorted by index.
class Coeffs1D
{
  public:
    using Entry = std::pair<int, double>;

    Coeffs1D() = default;
    Coeffs1D(std::initializer_list<Entry> entries);
    explicit Coeffs1D(std::vector<Entry> entries);

    /// Sparse view of a dense vector; exact zeros are dropped.
    static Coeffs1D from_dense(const Eigen::VectorXd& dense);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Largest stored index, or -1 when empty.
    int max_index() const noexcept { return entries_.empty() ? -1 : entries_.back().first; }

    /// Coefficient at k (0 when absent).
    double operator[](int k) const;

    /// Dense vector a_0..a_{max_index()}.
    Eigen::VectorXd to_dense() const;

    friend bool operator==(const Coeffs1D&, const Coeffs1D&) = default;

  private:
    std::vector<Entry> entries_;
};

Coeffs1D operator*(double alpha, const Coeffs1D& a);

/// Dense Mueller step: input a_0..a_K, output b_0..b_{K-1} with
/// b_l = 2 sqrt(l+1/2) sum_{k > l, k + l odd} sqrt(k+1/2) a_k.
Eigen::VectorXd muller_differentiate_dense(const Eigen::Ref<const Eigen::VectorXd>& a);

/// Coefficients of d/dt (sum_k a_k phi_k).
Coeffs1D muller_differentiate(const Coeffs1D& a);

/// Coefficients of the r-th derivative.
Coeffs1D muller_differentiate_iterated(const Coeffs1D& a, int r);

/// Sum_k a_k phi_k(t).
double clenshaw_eval(const Coeffs1D& a, double t);

} // namespace hcdiff

#endif // HCDIFF_LEGENDRE_HPP
