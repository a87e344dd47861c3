#include "hcdiff/cross.hpp"
#include "hcdiff/error.hpp"
#include "hcdiff/legendre.hpp"
#include "hcdiff/spectral.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace hcdiff;
using doctest::Approx;

namespace
{
CoeffGrid random_grid(std::uint64_t seed, int K, int count)
{
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> index(0, K);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    CoeffGrid c;
    while (static_cast<int>(c.size()) < count)
        c.set(index(gen), index(gen), coef(gen));
    return c;
}
} // namespace

TEST_CASE("CoeffGrid basics")
{
    CoeffGrid c{{{2, 1}, 3.0}, {{0, 0}, 1.0}};
    CHECK(c.size() == 2);
    CHECK(c.at(2, 1) == 3.0);
    CHECK(c.at(5, 5) == 0.0);
    CHECK(c.max_k() == 2);
    CHECK(c.max_j() == 1);
    CHECK(c.entries().begin()->first == IndexPair{0, 0});

    c.add(2, 1, -3.0);
    CHECK_FALSE(c.contains(2, 1));
    CHECK_THROWS_AS(c.set(-1, 0, 1.0), ParameterError);
    CHECK_THROWS_AS(c.set(0, 0, NAN), ParameterError);

    const Eigen::MatrixXd dense = CoeffGrid{{{1, 2}, 4.0}}.to_dense();
    CHECK(dense.rows() == 2);
    CHECK(dense.cols() == 3);
    CHECK(CoeffGrid::from_dense(dense) == CoeffGrid{{{1, 2}, 4.0}});

    const CoeffGrid a{{{1, 1}, 1.0}};
    CHECK((a - a).empty());
    CHECK((a + a).at(1, 1) == 2.0);
    CHECK((0.0 * a).empty());
}

TEST_CASE("class_norm")
{
    CHECK(class_norm(CoeffGrid{{{2, 3}, 1.0}}, ClassParams{2, 2}) == Approx(36.0).epsilon(1e-15));
    for (double s : {1.0, 2.0, 3.5})
        CHECK(class_norm(CoeffGrid{{{0, 0}, 0.5}}, ClassParams{s, 4.0}) == Approx(0.5).epsilon(1e-15));
    CHECK(class_norm(CoeffGrid{{{1, 1}, 3.0}, {{2, 2}, 4.0}}, ClassParams{2, 1}) ==
          Approx(std::sqrt(265.0)).epsilon(1e-14));
    CHECK_THROWS_AS(ClassParams({0.5, 1.0}).validate(), ParameterError);
    CHECK_THROWS_AS(ClassParams({2.0, 0.0}).validate(), ParameterError);
}

TEST_CASE("parseval_l2_norm")
{
    CHECK(parseval_l2_norm(CoeffGrid{{{0, 0}, 3.0}}) == 3.0);
    CHECK(parseval_l2_norm(CoeffGrid{}) == 0.0);
    CHECK(parseval_l2_norm(CoeffGrid{{{1, 2}, 3.0}, {{4, 4}, 4.0}}) == Approx(5.0).epsilon(1e-15));
}

TEST_CASE("synth_eval")
{
    CHECK(synth_eval(CoeffGrid{{{0, 0}, 2.0}}, 0.3, -0.9) == Approx(1.0).epsilon(1e-15));
    CHECK(synth_eval(CoeffGrid{{{5, 2}, 1.0}}, 0.1, -0.4) ==
          Approx(eval_phi(5, 0.1) * eval_phi(2, -0.4)).epsilon(1e-14));

    const CoeffGrid c = random_grid(3, 12, 50);
    double direct = 0.0;
    for (const auto& [idx, v] : c)
        direct += v * eval_phi(idx.first, 0.33) * eval_phi(idx.second, 0.71);
    CHECK(std::abs(synth_eval(c, 0.33, 0.71) - direct) < 1e-12);

    Eigen::VectorXd t(3), tau(2);
    t << -1.0, 0.33, 1.0;
    tau << 0.71, -0.2;
    const Eigen::MatrixXd values = synth_tensor(c, t, tau);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(values(a, b) == Approx(synth_eval(c, t(a), tau(b))).epsilon(1e-12));
}

TEST_CASE("mixed_derivative_coeffs")
{
    const CoeffGrid d = mixed_derivative_coeffs(CoeffGrid{{{1, 1}, 1.0}}, 1, 1);
    CHECK(d.size() == 1);
    CHECK(d.at(0, 0) == Approx(3.0).epsilon(1e-15));
    CHECK(mixed_derivative_coeffs(CoeffGrid{{{0, 5}, 7.0}}, 1, 1).empty());

    const CoeffGrid c = random_grid(5, 10, 30);
    const CoeffGrid once = mixed_derivative_coeffs(c, 2, 1);
    const CoeffGrid scaled = mixed_derivative_coeffs(-2.5 * c, 2, 1);
    for (const auto& [idx, v] : once)
        CHECK(scaled.at(idx.first, idx.second) == Approx(-2.5 * v).epsilon(1e-13));
}

TEST_CASE("differentiating t then tau equals tau then t")
{
    const CoeffGrid c = random_grid(8, 15, 80);
    const CoeffGrid t_first = mixed_derivative_coeffs(mixed_derivative_coeffs(c, 2, 0), 0, 1);
    const CoeffGrid tau_first = mixed_derivative_coeffs(mixed_derivative_coeffs(c, 0, 1), 2, 0);
    const CoeffGrid both = mixed_derivative_coeffs(c, 2, 1);
    CHECK(t_first.size() == tau_first.size());
    double scale = 0.0;
    for (const auto& [idx, v] : both)
        scale = std::max(scale, std::abs(v));
    for (const auto& [idx, v] : both)
    {
        CHECK(std::abs(t_first.at(idx.first, idx.second) - v) <= 1e-12 * scale);
        CHECK(std::abs(tau_first.at(idx.first, idx.second) - v) <= 1e-12 * scale);
    }
}

TEST_CASE("coefficient derivatives agree with finite differences")
{
    // The stencils divide by h^(r1+r2) = 1e-16 at worst, so the function is
    // summed in 50-digit arithmetic to keep cancellation out of the check.
    using Wide = boost::multiprecision::cpp_bin_float_50;
    const CoeffGrid c = random_grid(21, 12, 40);
    const Wide h("1e-4");
    auto f = [&](const Wide& t, const Wide& tau) {
        Wide sum = 0;
        for (const auto& [idx, v] : c)
            sum += Wide(v) * eval_phi<Wide>(idx.first, t) * eval_phi<Wide>(idx.second, tau);
        return sum;
    };
    for (int r1 = 1; r1 <= 2; ++r1)
        for (int r2 = 1; r2 <= 2; ++r2)
        {
            const CoeffGrid d = mixed_derivative_coeffs(c, r1, r2);
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b)
                {
                    const double t = -0.8 + 0.4 * a, tau = -0.8 + 0.4 * b;
                    const Wide wt(t), wtau(tau);
                    // tensor central differences of orders r1, r2
                    auto stencil = [](int r) {
                        return r == 1 ? std::vector<std::pair<int, double>>{{-1, -0.5}, {1, 0.5}}
                                      : std::vector<std::pair<int, double>>{{-1, 1.0}, {0, -2.0}, {1, 1.0}};
                    };
                    Wide sum = 0;
                    for (const auto& [i, wi] : stencil(r1))
                        for (const auto& [j, wj] : stencil(r2))
                            sum += Wide(wi * wj) * f(wt + i * h, wtau + j * h);
                    const double fd = static_cast<double>(sum / pow(h, r1 + r2));
                    const double exact = synth_eval(d, t, tau);
                    CHECK(std::abs(fd - exact) <= 1e-4 * std::max(1.0, std::abs(exact)));
                }
        }
}

TEST_CASE("sup_norm_on_grid")
{
    for (int res : {2, 11, 257})
        CHECK(sup_norm_on_grid(CoeffGrid{{{0, 0}, 2.0}}, res) == Approx(1.0).epsilon(1e-15));
    CHECK(sup_norm_on_grid(CoeffGrid{{{3, 0}, 1.0}}, 101) == Approx(std::sqrt(7.0) / 2.0).epsilon(1e-14));

    const CoeffGrid c = random_grid(4, 20, 60);
    CHECK(sup_norm_on_grid(c, 201) >= sup_norm_on_grid(c, 11));
    CHECK_THROWS_AS(chebyshev_points(1), ParameterError);
    const Eigen::VectorXd x = chebyshev_points(5);
    CHECK(x(0) == 1.0);
    CHECK(x(4) == -1.0);
}

TEST_CASE("restrict_to_cross")
{
    const CoeffGrid c{{{1, 1}, 1.0}, {{9, 9}, 1.0}};
    const HyperbolicCross cross = build_cross(4, 1, 1, 1);
    CHECK(restrict_to_cross(c, cross) == CoeffGrid{{{1, 1}, 1.0}});
    CHECK(restrict_to_cross(c, build_cross(0.5, 1, 1, 1)).empty());

    const CoeffGrid big = random_grid(9, 30, 200);
    const HyperbolicCross wide = build_cross(40, 1.5, 1, 1);
    const CoeffGrid once = restrict_to_cross(big, wide);
    CHECK(restrict_to_cross(once, wide) == once);
    for (const auto& [idx, v] : once)
        CHECK(wide.contains(idx.first, idx.second));
}

TEST_CASE("class_norm is a norm, monotone in mu")
{
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> scale(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const CoeffGrid a = random_grid(100 + trial, 15, 25);
        const CoeffGrid b = random_grid(200 + trial, 15, 25);
        const ClassParams p{1.0 + trial % 3, 0.5 + trial % 4};
        const double alpha = scale(gen);
        CHECK(class_norm(alpha * a, p) == Approx(std::abs(alpha) * class_norm(a, p)).epsilon(1e-12));
        CHECK(class_norm(a + b, p) <= (class_norm(a, p) + class_norm(b, p)) * (1.0 + 1e-12));
    }

    CoeffGrid positive;
    for (const auto& [idx, v] : random_grid(31, 12, 30))
        positive.set(idx.first + 1, idx.second + 1, v);
    double previous = 0.0;
    for (double mu = 0.5; mu <= 5.0; mu += 0.5)
    {
        const double n = class_norm(positive, ClassParams{2.0, mu});
        CHECK(n >= previous);
        previous = n;
    }
}
