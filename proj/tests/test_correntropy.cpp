#include "ccorr/correntropy.hpp"
#include "ccorr/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

using ccorr::Complex;
using ccorr::KernelConfig;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent product-form oracle: G^C_{s}(a + jb) = G_s(a) G_s(b), written out by hand.
double real_kernel_by_hand(double x, double s)
{
    return std::exp(-x * x / (2.0 * s * s)) / (std::sqrt(2.0 * kPi) * s);
}

double trapezoid_weight(std::size_t i, std::size_t n)
{
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

} // namespace

TEST_CASE("KernelConfig rejects non-positive and non-finite bandwidths")
{
    CHECK_THROWS_AS(KernelConfig(0.0), ccorr::DomainError);
    CHECK_THROWS_AS(KernelConfig(-1.0), ccorr::DomainError);
    CHECK_THROWS_AS(KernelConfig(std::numeric_limits<double>::quiet_NaN()), ccorr::DomainError);
    CHECK_THROWS_AS(KernelConfig(std::numeric_limits<double>::infinity()), ccorr::DomainError);
    CHECK(KernelConfig(0.25).sigma() == 0.25);
    CHECK(KernelConfig(2.0).widened().sigma() == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-15));
}

TEST_CASE("gaussian_kernel values")
{
    CHECK(ccorr::gaussian_kernel(0.0, KernelConfig(1.0)) == doctest::Approx(0.39894228040143267794).epsilon(1e-15));
    // 40-digit evaluation of the closed form at x=1, sigma=2.
    CHECK(ccorr::gaussian_kernel(1.0, KernelConfig(2.0)) == doctest::Approx(0.17603266338214973889).epsilon(1e-14));
    CHECK_THROWS_AS(ccorr::gaussian_kernel(std::numeric_limits<double>::quiet_NaN(), KernelConfig(1.0)),
                    ccorr::DomainError);
    CHECK_THROWS_AS(ccorr::gaussian_kernel(-std::numeric_limits<double>::infinity(), KernelConfig(1.0)),
                    ccorr::DomainError);
}

TEST_CASE("gaussian_kernel is positive, even and peaks at zero")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> arg(-6.0, 6.0);
    std::uniform_real_distribution<double> bw(0.2, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = arg(rng);
        const KernelConfig cfg(bw(rng));
        const double g = ccorr::gaussian_kernel(a, cfg);
        CHECK(g > 0.0);
        CHECK(g == ccorr::gaussian_kernel(-a, cfg));
        CHECK(g <= ccorr::gaussian_kernel(0.0, cfg));
    }
}

TEST_CASE("complex_gaussian_kernel values")
{
    CHECK(ccorr::complex_gaussian_kernel({0.0, 0.0}, KernelConfig(1.0)) ==
          doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
    CHECK(ccorr::complex_gaussian_kernel({1.0, 1.0}, KernelConfig(1.0)) ==
          doctest::Approx(0.05854983152431916069).epsilon(1e-14));
    CHECK_THROWS_AS(ccorr::complex_gaussian_kernel({std::numeric_limits<double>::quiet_NaN(), 0.0}, KernelConfig(1.0)),
                    ccorr::DomainError);
}

TEST_CASE("complex kernel factorizes and is conjugation/negation symmetric")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> arg(-5.0, 5.0);
    std::uniform_real_distribution<double> bw(0.5, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = arg(rng);
        const double b = arg(rng);
        const double s = bw(rng);
        const KernelConfig cfg(s);
        const double gc = ccorr::complex_gaussian_kernel({a, b}, cfg);
        const double product = real_kernel_by_hand(a, s) * real_kernel_by_hand(b, s);
        CHECK(gc > 0.0);
        CHECK(std::abs(gc - product) <= 1e-13 * product);
        CHECK(gc == ccorr::complex_gaussian_kernel({a, -b}, cfg));
        CHECK(gc == ccorr::complex_gaussian_kernel({-a, -b}, cfg));
    }
}

TEST_CASE("parzen_density peaks at a single datum")
{
    const std::vector<std::vector<double>> one{{0.3, -1.1}};
    const std::vector<double> q{0.3, -1.1};
    const double s = 0.8;
    CHECK(ccorr::parzen_density(one, q, KernelConfig(s)) == doctest::Approx(1.0 / (2.0 * kPi * s * s)).epsilon(1e-14));
}

TEST_CASE("parzen_density integrates to one (trapezoid over +-8 sigma)")
{
    const KernelConfig cfg(1.0);
    SUBCASE("L = 1")
    {
        const std::vector<std::vector<double>> samples{{-1.3}, {0.2}, {0.25}, {2.7}, {4.0}};
        const double lo = -1.3 - 8.0;
        const double hi = 4.0 + 8.0;
        const std::size_t n = 4001;
        const double h = (hi - lo) / static_cast<double>(n - 1);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> q{lo + h * static_cast<double>(i)};
            total += trapezoid_weight(i, n) * ccorr::parzen_density(samples, q, cfg);
        }
        CHECK(std::abs(total * h - 1.0) <= 1e-3);
    }
    SUBCASE("L = 2")
    {
        const std::vector<std::vector<double>> samples{{-1.0, 0.5}, {0.0, 0.0}, {1.5, -2.0}, {0.7, 0.9}, {-2.2, 1.1}};
        const double lo_x = -2.2 - 8.0, hi_x = 1.5 + 8.0;
        const double lo_y = -2.0 - 8.0, hi_y = 1.1 + 8.0;
        const std::size_t n = 301;
        const double hx = (hi_x - lo_x) / static_cast<double>(n - 1);
        const double hy = (hi_y - lo_y) / static_cast<double>(n - 1);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::vector<double> q{lo_x + hx * static_cast<double>(i), lo_y + hy * static_cast<double>(j)};
                total += trapezoid_weight(i, n) * trapezoid_weight(j, n) * ccorr::parzen_density(samples, q, cfg);
            }
        CHECK(std::abs(total * hx * hy - 1.0) <= 1e-3);
    }
}

TEST_CASE("parzen_density is invariant to sample order")
{
    std::vector<std::vector<double>> samples{{0.1, 2.0}, {-1.0, 0.4}, {3.3, -0.2}, {0.0, 0.0}};
    const std::vector<double> q{0.5, 0.5};
    const KernelConfig cfg(0.9);
    const double ref = ccorr::parzen_density(samples, q, cfg);
    std::sort(samples.begin(), samples.end());
    do {
        CHECK(ccorr::parzen_density(samples, q, cfg) == doctest::Approx(ref).epsilon(1e-14));
    } while (std::next_permutation(samples.begin(), samples.end()));
}

TEST_CASE("parzen_density shape and domain errors")
{
    const KernelConfig cfg(1.0);
    const std::vector<std::vector<double>> ragged{{0.0, 1.0}, {2.0}};
    const std::vector<double> q2{0.0, 0.0};
    CHECK_THROWS_AS(ccorr::parzen_density(ragged, q2, cfg), ccorr::ShapeError);
    const std::vector<std::vector<double>> ok{{0.0, 1.0}};
    const std::vector<double> q1{0.0};
    CHECK_THROWS_AS(ccorr::parzen_density(ok, q1, cfg), ccorr::ShapeError);
    const std::vector<std::vector<double>> none;
    CHECK_THROWS_AS(ccorr::parzen_density(none, q2, cfg), ccorr::DomainError);
}

TEST_CASE("parzen_density converges to the true density as N grows")
{
    // Standard normal data, fixed small bandwidth; estimate at 0 within 3 standard errors.
    const KernelConfig cfg(0.1);
    const double truth = 1.0 / std::sqrt(2.0 * kPi);
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal(0.0, 1.0);
    double previous_error = std::numeric_limits<double>::infinity();
    for (std::size_t n : {1000u, 10000u, 100000u}) {
        std::vector<std::vector<double>> samples(n);
        double sum = 0.0, sum_sq = 0.0;
        const std::vector<double> q{0.0};
        for (auto& s : samples) {
            s = {normal(rng)};
            const double k = ccorr::gaussian_kernel(s[0], cfg);
            sum += k;
            sum_sq += k * k;
        }
        const double est = ccorr::parzen_density(samples, q, cfg);
        CHECK(est == doctest::Approx(sum / static_cast<double>(n)).epsilon(1e-12));
        const double mean = sum / static_cast<double>(n);
        const double se = std::sqrt((sum_sq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
        CHECK(std::abs(est - truth) <= 3.0 * se);
        previous_error = std::min(previous_error, std::abs(est - truth));
    }
    CHECK(previous_error < 0.02);
}

TEST_CASE("correntropy_real fixed values")
{
    const std::vector<double> x{1.0, -2.0, 3.5};
    CHECK(ccorr::correntropy_real(x, x, KernelConfig(1.0)) == doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))).epsilon(1e-14));

    const std::vector<double> a{0.0, 2.0};
    const std::vector<double> b{0.0, 0.0};
    CHECK(ccorr::correntropy_real(a, b, KernelConfig(1.0)) == doctest::Approx(0.19293583306451340965).epsilon(1e-14));
}

TEST_CASE("correntropy_real is invariant to pair order and checks shapes")
{
    std::vector<std::pair<double, double>> pairs{{0.1, 0.3}, {2.0, -1.0}, {-0.5, -0.4}, {4.0, 3.0}};
    auto eval = [&] {
        std::vector<double> x, y;
        for (auto [a, b] : pairs) {
            x.push_back(a);
            y.push_back(b);
        }
        return ccorr::correntropy_real(x, y, KernelConfig(0.7));
    };
    const double ref = eval();
    std::reverse(pairs.begin(), pairs.end());
    CHECK(eval() == doctest::Approx(ref).epsilon(1e-14));
    std::rotate(pairs.begin(), pairs.begin() + 1, pairs.end());
    CHECK(eval() == doctest::Approx(ref).epsilon(1e-14));

    const std::vector<double> three{1, 2, 3}, two{1, 2}, empty;
    CHECK_THROWS_AS(ccorr::correntropy_real(three, two, KernelConfig(1.0)), ccorr::ShapeError);
    CHECK_THROWS_AS(ccorr::correntropy_real(empty, empty, KernelConfig(1.0)), ccorr::DomainError);
}

TEST_CASE("complex_correntropy fixed values")
{
    const std::vector<Complex> c{{1.0, 2.0}, {-0.5, 0.0}, {3.0, -3.0}};
    for (double s : {0.5, 1.0, 2.0})
        CHECK(std::abs(ccorr::complex_correntropy(c, c, KernelConfig(s)) - 1.0 / (4.0 * kPi * s * s)) <= 1e-12);

    // 40-digit evaluation of (1/N) sum G_{s sqrt2}(x-y) G_{s sqrt2}(z-s), sigma = 0.7.
    const std::vector<Complex> c1{{0.3, -1.2}, {2.0, 0.5}, {-0.75, 0.25}};
    const std::vector<Complex> c2{{-0.4, 0.1}, {1.5, 1.5}, {0.0, -2.0}};
    const double v = ccorr::complex_correntropy(c1, c2, KernelConfig(0.7));
    CHECK(v == doctest::Approx(0.049478897935461081683).epsilon(1e-13));

    double brute = 0.0;
    const double wide = 0.7 * std::numbers::sqrt2;
    for (std::size_t n = 0; n < c1.size(); ++n)
        brute += real_kernel_by_hand(c1[n].real() - c2[n].real(), wide) *
                 real_kernel_by_hand(c1[n].imag() - c2[n].imag(), wide);
    CHECK(v == doctest::Approx(brute / 3.0).epsilon(1e-13));
}

TEST_CASE("complex_correntropy of real data factorizes through correntropy_real")
{
    const std::vector<double> x{0.5, -1.0, 2.0, 0.0};
    const std::vector<double> y{0.0, 1.0, 2.5, -3.0};
    std::vector<Complex> cx, cy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cx.emplace_back(x[i], 0.0);
        cy.emplace_back(y[i], 0.0);
    }
    for (double s : {0.3, 1.0, 4.0}) {
        const KernelConfig cfg(s);
        const double expect = ccorr::correntropy_real(x, y, cfg) * ccorr::gaussian_kernel(0.0, cfg.widened());
        CHECK(ccorr::complex_correntropy(cx, cy, cfg) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("complex_correntropy bounds and bandwidth monotonicity")
{
    std::mt19937_64 rng(13);
    std::normal_distribution<double> normal(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Complex> c1(7), c2(7);
        for (std::size_t i = 0; i < c1.size(); ++i) {
            c1[i] = {normal(rng), normal(rng)};
            c2[i] = {normal(rng), normal(rng)};
        }
        double previous = 0.0;
        for (double s : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double v = ccorr::complex_correntropy(c1, c2, KernelConfig(s));
            const double peak = 1.0 / (4.0 * kPi * s * s);
            CHECK(v > 0.0);
            CHECK(v < peak);
            const double normalized = v / peak;
            CHECK(normalized >= previous);
            previous = normalized;
        }
    }
}

TEST_CASE("complex_correntropy rejects mismatched or non-finite input")
{
    const std::vector<Complex> a{{1, 0}, {2, 0}}, b{{1, 0}};
    CHECK_THROWS_AS(ccorr::complex_correntropy(a, b, KernelConfig(1.0)), ccorr::ShapeError);
    const std::vector<Complex> bad{{1, 0}, {std::numeric_limits<double>::infinity(), 0}};
    CHECK_THROWS_AS(ccorr::complex_correntropy(a, bad, KernelConfig(1.0)), ccorr::DomainError);
}

TEST_CASE("taylor_second_order_approx")
{
    const std::vector<Complex> c1{{1.0, -2.0}, {3.0, 0.5}, {-4.0, 1.0}, {0.0, 2.5}};
    const std::vector<Complex> c2{{-1.0, 1.0}, {0.0, -0.5}, {-1.0, -2.0}, {2.0, 0.0}};
    double mean_sq = 0.0, max_abs = 0.0;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        mean_sq += std::norm(c1[i] - c2[i]);
        max_abs = std::max(max_abs, std::abs(c1[i] - c2[i]));
    }
    mean_sq /= static_cast<double>(c1.size());
    REQUIRE(max_abs <= 5.0);

    SUBCASE("identical sequences give the constant term exactly")
    {
        for (double s : {0.5, 3.0})
            CHECK(ccorr::taylor_second_order_approx(c1, c1, KernelConfig(s)) == 1.0 / (4.0 * kPi * s * s));
    }
    SUBCASE("remainder obeys the next-term bound at sigma = 50")
    {
        const double s = 50.0;
        const KernelConfig cfg(s);
        const double diff = std::abs(ccorr::complex_correntropy(c1, c2, cfg) - ccorr::taylor_second_order_approx(c1, c2, cfg));
        const double bound = (1.0 / (4.0 * kPi * s * s)) * std::pow(max_abs, 4) / (32.0 * std::pow(s, 4));
        CHECK(diff <= bound);
    }
    SUBCASE("16 pi sigma^4 (peak - V) tends to the mean squared modulus")
    {
        double rel[2];
        int k = 0;
        for (double s : {10.0, 100.0}) {
            const double v = ccorr::complex_correntropy(c1, c2, KernelConfig(s));
            const double recovered = 16.0 * kPi * std::pow(s, 4) * (1.0 / (4.0 * kPi * s * s) - v);
            rel[k++] = std::abs(recovered - mean_sq) / mean_sq;
        }
        CHECK(rel[1] < rel[0]);
        // Leading relative correction is mean|c|^4 / (8 sigma^2 mean|c|^2); a 10x larger sigma shrinks it ~100x.
        CHECK(rel[1] <= rel[0] / 50.0);
    }
    CHECK_THROWS_AS(ccorr::taylor_second_order_approx(c1, std::vector<Complex>{{0, 0}}, KernelConfig(1.0)),
                    ccorr::ShapeError);
}
