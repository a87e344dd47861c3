#include "hcdiff/legendre.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hcdiff
{

namespace
{
constexpr int kHalfRootTableSize = 8192;

const std::vector<double>& half_root_table()
{
    static const std::vector<double> table = [] {
        std::vector<double> t(kHalfRootTableSize);
        for (int k = 0; k < kHalfRootTableSize; ++k)
            t[k] = std::sqrt(k + 0.5);
        return t;
    }();
    return table;
}
} // namespace

double half_root(int k)
{
    if (k >= 0 && k < kHalfRootTableSize)
        return half_root_table()[static_cast<std::size_t>(k)];
    return std::sqrt(k + 0.5);
}

Coeffs1D::Coeffs1D(std::initializer_list<Entry> entries)
    : Coeffs1D(std::vector<Entry>(entries))
{
}

Coeffs1D::Coeffs1D(std::vector<Entry> entries)
    : entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        if (entries_[i].first < 0)
            throw ParameterError("Coeffs1D: negative index");
        if (!std::isfinite(entries_[i].second))
            throw ParameterError("Coeffs1D: non-finite value");
        if (i > 0 && entries_[i].first == entries_[i - 1].first)
            throw ParameterError("Coeffs1D: duplicate index");
    }
}

Coeffs1D Coeffs1D::from_dense(const Eigen::VectorXd& dense)
{
    std::vector<Entry> out;
    for (Eigen::Index k = 0; k < dense.size(); ++k)
        if (dense(k) != 0.0)
            out.emplace_back(static_cast<int>(k), dense(k));
    return Coeffs1D(std::move(out));
}

double Coeffs1D::operator[](int k) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const Entry& e, int key) { return e.first < key; });
    return (it != entries_.end() && it->first == k) ? it->second : 0.0;
}

Eigen::VectorXd Coeffs1D::to_dense() const
{
    Eigen::VectorXd dense = Eigen::VectorXd::Zero(max_index() + 1);
    for (const auto& [k, v] : entries_)
        dense(k) = v;
    return dense;
}

Coeffs1D operator*(double alpha, const Coeffs1D& a)
{
    std::vector<Coeffs1D::Entry> out;
    out.reserve(a.size());
    for (const auto& [k, v] : a.entries())
        if (alpha * v != 0.0)
            out.emplace_back(k, alpha * v);
    return Coeffs1D(std::move(out));
}

Eigen::VectorXd muller_differentiate_dense(const Eigen::Ref<const Eigen::VectorXd>& a)
{
    const Eigen::Index len = a.size();
    if (len <= 1)
        return Eigen::VectorXd();

    Eigen::VectorXd b(len - 1);
    // suffix[parity] = sum over k > l with k of that parity of sqrt(k+1/2) a_k
    std::array<double, 2> suffix{0.0, 0.0};
    for (Eigen::Index l = len - 2; l >= 0; --l)
    {
        const Eigen::Index k = l + 1;
        suffix[static_cast<std::size_t>(k & 1)] += half_root(static_cast<int>(k)) * a(k);
        b(l) = 2.0 * half_root(static_cast<int>(l)) * suffix[static_cast<std::size_t>((l + 1) & 1)];
    }
    return b;
}

Coeffs1D muller_differentiate(const Coeffs1D& a)
{
    if (a.empty())
        return {};
    return Coeffs1D::from_dense(muller_differentiate_dense(a.to_dense()));
}

Coeffs1D muller_differentiate_iterated(const Coeffs1D& a, int r)
{
    if (r < 1)
        throw ParameterError("derivative order must be positive");
    if (a.empty())
        return {};
    Eigen::VectorXd dense = a.to_dense();
    for (int i = 0; i < r && dense.size() > 0; ++i)
        dense = muller_differentiate_dense(dense);
    return Coeffs1D::from_dense(dense);
}

double clenshaw_eval(const Coeffs1D& a, double t)
{
    detail::check_unit_interval(t);
    const Eigen::VectorXd dense = a.to_dense();
    return clenshaw_dense<double>(std::span<const double>(dense.data(), static_cast<std::size_t>(dense.size())), t);
}

} // namespace hcdiff
