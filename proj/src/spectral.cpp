#include "hcdiff/spectral.hpp"

#include "hcdiff/error.hpp"
#include "hcdiff/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hcdiff
{

CoeffGrid::CoeffGrid(std::initializer_list<std::pair<const IndexPair, double>> entries)
{
    for (const auto& [idx, v] : entries)
        set(idx.first, idx.second, v);
}

CoeffGrid CoeffGrid::from_dense(const Eigen::MatrixXd& dense)
{
    CoeffGrid out;
    for (Eigen::Index k = 0; k < dense.rows(); ++k)
        for (Eigen::Index j = 0; j < dense.cols(); ++j)
            if (dense(k, j) != 0.0)
                out.set(static_cast<int>(k), static_cast<int>(j), dense(k, j));
    return out;
}

void CoeffGrid::set(int k, int j, double value)
{
    if (k < 0 || j < 0)
        throw ParameterError("CoeffGrid: negative index");
    if (!std::isfinite(value))
        throw ParameterError("CoeffGrid: non-finite value");
    entries_[{k, j}] = value;
}

void CoeffGrid::add(int k, int j, double value)
{
    const double sum = at(k, j) + value;
    if (sum == 0.0 && k >= 0 && j >= 0)
        entries_.erase({k, j});
    else
        set(k, j, sum);
}

double CoeffGrid::at(int k, int j) const
{
    auto it = entries_.find({k, j});
    return it == entries_.end() ? 0.0 : it->second;
}

int CoeffGrid::max_k() const noexcept
{
    return entries_.empty() ? -1 : entries_.rbegin()->first.first;
}

int CoeffGrid::max_j() const noexcept
{
    int m = -1;
    for (const auto& [idx, v] : entries_)
        m = std::max(m, idx.second);
    return m;
}

Eigen::MatrixXd CoeffGrid::to_dense() const
{
    return to_dense(max_k() + 1, max_j() + 1);
}

Eigen::MatrixXd CoeffGrid::to_dense(int rows, int cols) const
{
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& [idx, v] : entries_)
        if (idx.first < rows && idx.second < cols)
            dense(idx.first, idx.second) = v;
    return dense;
}

CoeffGrid CoeffGrid::pruned() const
{
    CoeffGrid out;
    for (const auto& [idx, v] : entries_)
        if (v != 0.0)
            out.entries_.emplace_hint(out.entries_.end(), idx, v);
    return out;
}

Eigen::VectorXd CoeffGrid::row(int k) const
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(max_j() + 1);
    for (auto it = entries_.lower_bound({k, 0}); it != entries_.end() && it->first.first == k; ++it)
        v(it->first.second) = it->second;
    return v;
}

Eigen::VectorXd CoeffGrid::column(int j) const
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(max_k() + 1);
    for (const auto& [idx, value] : entries_)
        if (idx.second == j)
            v(idx.first) = value;
    return v;
}

namespace
{
template <typename Op>
CoeffGrid combine(const CoeffGrid& a, const CoeffGrid& b, Op op)
{
    CoeffGrid out;
    auto ia = a.begin();
    auto ib = b.begin();
    auto emit = [&out](const IndexPair& idx, double v) {
        if (v != 0.0)
            out.set(idx.first, idx.second, v);
    };
    while (ia != a.end() || ib != b.end())
    {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first))
        {
            emit(ia->first, op(ia->second, 0.0));
            ++ia;
        }
        else if (ia == a.end() || ib->first < ia->first)
        {
            emit(ib->first, op(0.0, ib->second));
            ++ib;
        }
        else
        {
            emit(ia->first, op(ia->second, ib->second));
            ++ia;
            ++ib;
        }
    }
    return out;
}
} // namespace

CoeffGrid operator+(const CoeffGrid& a, const CoeffGrid& b)
{
    return combine(a, b, [](double x, double y) { return x + y; });
}

CoeffGrid operator-(const CoeffGrid& a, const CoeffGrid& b)
{
    return combine(a, b, [](double x, double y) { return x - y; });
}

CoeffGrid operator*(double alpha, const CoeffGrid& c)
{
    CoeffGrid out;
    for (const auto& [idx, v] : c)
        if (alpha * v != 0.0)
            out.set(idx.first, idx.second, alpha * v);
    return out;
}

void ClassParams::validate() const
{
    if (!(s >= 1.0) || !std::isfinite(s))
        throw ParameterError("class parameter s must satisfy 1 <= s < inf");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ParameterError("class parameter mu must be positive");
}

double class_norm(const CoeffGrid& c, const ClassParams& params)
{
    params.validate();
    double sum = 0.0;
    for (const auto& [idx, v] : c)
    {
        const double weight = std::max(1, idx.first) * static_cast<double>(std::max(1, idx.second));
        sum += std::pow(weight, params.s * params.mu) * std::pow(std::abs(v), params.s);
    }
    return std::pow(sum, 1.0 / params.s);
}

double parseval_l2_norm(const CoeffGrid& c)
{
    double sum = 0.0;
    for (const auto& [idx, v] : c)
        sum += v * v;
    return std::sqrt(sum);
}

double synth_eval(const CoeffGrid& c, double t, double tau)
{
    detail::check_unit_interval(t);
    detail::check_unit_interval(tau);
    if (c.empty())
        return 0.0;

    std::vector<double> row_sums(static_cast<std::size_t>(c.max_k()) + 1, 0.0);
    std::vector<double> row;
    auto it = c.begin();
    while (it != c.end())
    {
        const int k = it->first.first;
        row.clear();
        for (; it != c.end() && it->first.first == k; ++it)
        {
            row.resize(static_cast<std::size_t>(it->first.second) + 1, 0.0);
            row[static_cast<std::size_t>(it->first.second)] = it->second;
        }
        row_sums[static_cast<std::size_t>(k)] = clenshaw_dense<double>(row, tau);
    }
    return clenshaw_dense<double>(row_sums, t);
}

Eigen::MatrixXd synth_tensor(const CoeffGrid& c, const Eigen::VectorXd& t_nodes, const Eigen::VectorXd& tau_nodes)
{
    if (c.empty())
        return Eigen::MatrixXd::Zero(t_nodes.size(), tau_nodes.size());
    const Eigen::MatrixXd dense = c.to_dense();
    const Eigen::MatrixXd vt = phi_matrix<double>(t_nodes, static_cast<int>(dense.rows()) - 1);
    const Eigen::MatrixXd vtau = phi_matrix<double>(tau_nodes, static_cast<int>(dense.cols()) - 1);
    return vt * dense * vtau.transpose();
}

namespace
{
// One Mueller step along the row index of m: (K+1) x J -> K x J.
Eigen::MatrixXd muller_rows(const Eigen::MatrixXd& m)
{
    const Eigen::Index len = m.rows();
    if (len <= 1)
        return Eigen::MatrixXd(0, m.cols());

    Eigen::MatrixXd out(len - 1, m.cols());
    Eigen::RowVectorXd suffix_even = Eigen::RowVectorXd::Zero(m.cols());
    Eigen::RowVectorXd suffix_odd = Eigen::RowVectorXd::Zero(m.cols());
    for (Eigen::Index l = len - 2; l >= 0; --l)
    {
        const Eigen::Index k = l + 1;
        ((k & 1) ? suffix_odd : suffix_even) += half_root(static_cast<int>(k)) * m.row(k);
        out.row(l) = 2.0 * half_root(static_cast<int>(l)) * (((l + 1) & 1) ? suffix_odd : suffix_even);
    }
    return out;
}
} // namespace

Eigen::MatrixXd mixed_derivative_dense(const Eigen::MatrixXd& c, int r1, int r2)
{
    if (r1 < 0 || r2 < 0)
        throw ParameterError("derivative orders must be non-negative");
    Eigen::MatrixXd d = c;
    for (int i = 0; i < r1 && d.rows() > 0; ++i)
        d = muller_rows(d);
    Eigen::MatrixXd dt = d.transpose();
    for (int i = 0; i < r2 && dt.rows() > 0; ++i)
        dt = muller_rows(dt);
    return dt.transpose();
}

CoeffGrid mixed_derivative_coeffs(const CoeffGrid& c, int r1, int r2)
{
    if (c.empty())
        return {};
    return CoeffGrid::from_dense(mixed_derivative_dense(c.to_dense(), r1, r2));
}

Eigen::VectorXd chebyshev_points(int resolution)
{
    if (resolution < 2)
        throw ParameterError("sup-norm grid resolution must be at least 2");
    Eigen::VectorXd x(resolution);
    for (int i = 0; i < resolution; ++i)
        x(i) = std::cos(std::numbers::pi * i / (resolution - 1));
    // exact endpoints
    x(0) = 1.0;
    x(resolution - 1) = -1.0;
    return x;
}

double sup_norm_on_grid(const CoeffGrid& c, int resolution)
{
    const Eigen::VectorXd x = chebyshev_points(resolution);
    if (c.empty())
        return 0.0;
    return synth_tensor(c, x, x).cwiseAbs().maxCoeff();
}

CoeffGrid restrict_to_cross(const CoeffGrid& c, const HyperbolicCross& cross)
{
    CoeffGrid out;
    for (const auto& [idx, v] : c)
        if (cross.contains(idx.first, idx.second))
            out.set(idx.first, idx.second, v);
    return out;
}

} // namespace hcdiff
