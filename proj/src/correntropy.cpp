#include "ccorr/correntropy.hpp"

#include "ccorr/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ccorr {

namespace {

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v))
        throw DomainError(std::string(what) + " must be finite");
}

void require_finite(Complex c, const char* what)
{
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError(std::string(what) + " must be finite");
}

template <typename T>
void require_paired(std::span<const T> a, std::span<const T> b)
{
    if (a.size() != b.size())
        throw ShapeError("paired sequences differ in length (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    if (a.empty())
        throw DomainError("sequences must hold at least one sample");
}

// sum_n exp(-|c1_n - c2_n|^2 / (2 s^2)), validated.
double complex_exponent_sum(std::span<const Complex> c1, std::span<const Complex> c2, double s2)
{
    require_paired(c1, c2);
    double acc = 0.0;
    for (std::size_t n = 0; n < c1.size(); ++n) {
        require_finite(c1[n], "complex sample");
        require_finite(c2[n], "complex sample");
        acc += std::exp(-std::norm(c1[n] - c2[n]) / (2.0 * s2));
    }
    return acc;
}

} // namespace

KernelConfig::KernelConfig(double sigma) : sigma_(sigma)
{
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw DomainError("kernel size sigma must be finite and > 0, got " + std::to_string(sigma));
}

double KernelConfig::real_peak() const noexcept
{
    return 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma_);
}

double KernelConfig::complex_peak() const noexcept
{
    return 1.0 / (2.0 * std::numbers::pi * sigma_ * sigma_);
}

KernelConfig KernelConfig::widened() const
{
    return KernelConfig(sigma_ * std::numbers::sqrt2);
}

double gaussian_kernel(double x, const KernelConfig& cfg)
{
    require_finite(x, "kernel argument");
    return cfg.real_peak() * std::exp(-x * x / (2.0 * cfg.variance()));
}

double complex_gaussian_kernel(Complex c, const KernelConfig& cfg)
{
    require_finite(c, "kernel argument");
    return cfg.complex_peak() * std::exp(-std::norm(c) / (2.0 * cfg.variance()));
}

double parzen_density(std::span<const std::vector<double>> samples,
                      std::span<const double> query,
                      const KernelConfig& cfg)
{
    if (samples.empty())
        throw DomainError("parzen_density needs at least one sample");
    const std::size_t dim = query.size();
    if (dim == 0)
        throw ShapeError("parzen_density query has dimension 0");
    for (double q : query)
        require_finite(q, "query coordinate");

    double acc = 0.0;
    for (std::size_t n = 0; n < samples.size(); ++n) {
        const auto& s = samples[n];
        if (s.size() != dim)
            throw ShapeError("sample " + std::to_string(n) + " has dimension " + std::to_string(s.size()) +
                             ", query has " + std::to_string(dim));
        double prod = 1.0;
        for (std::size_t l = 0; l < dim; ++l) {
            require_finite(s[l], "sample coordinate");
            prod *= gaussian_kernel(query[l] - s[l], cfg);
        }
        acc += prod;
    }
    return acc / static_cast<double>(samples.size());
}

double correntropy_real(std::span<const double> x, std::span<const double> y, const KernelConfig& cfg)
{
    require_paired(x, y);
    const KernelConfig wide = cfg.widened();
    double acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        require_finite(x[n], "sample");
        require_finite(y[n], "sample");
        acc += gaussian_kernel(x[n] - y[n], wide);
    }
    return acc / static_cast<double>(x.size());
}

double complex_correntropy(std::span<const Complex> c1, std::span<const Complex> c2, const KernelConfig& cfg)
{
    const KernelConfig wide = cfg.widened();
    const double sum = complex_exponent_sum(c1, c2, wide.variance());
    return wide.complex_peak() * sum / static_cast<double>(c1.size());
}

double taylor_second_order_approx(std::span<const Complex> c1,
                                  std::span<const Complex> c2,
                                  const KernelConfig& cfg)
{
    require_paired(c1, c2);
    double mean_sq = 0.0;
    for (std::size_t n = 0; n < c1.size(); ++n) {
        require_finite(c1[n], "complex sample");
        require_finite(c2[n], "complex sample");
        mean_sq += std::norm(c1[n] - c2[n]);
    }
    mean_sq /= static_cast<double>(c1.size());

    const double s2 = cfg.variance();
    const double pi = std::numbers::pi;
    return 1.0 / (4.0 * pi * s2) - mean_sq / (16.0 * pi * s2 * s2);
}

} // namespace ccorr
