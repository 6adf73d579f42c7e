#ifndef CCORR_CORRENTROPY_HPP
#define CCORR_CORRENTROPY_HPP

#include <complex>
#include <span>
#include <vector>

namespace ccorr {

/// One complex sample; real and imaginary parts are the ordered pair (re, im).
using Complex = std::complex<double>;

/// Gaussian kernel bandwidth. Always the base sigma: estimators apply the
/// sqrt(2) inflation themselves.
class KernelConfig {
public:
    /// Throws DomainError unless sigma is finite and strictly positive.
    explicit KernelConfig(double sigma);

    double sigma() const noexcept { return sigma_; }
    double variance() const noexcept { return sigma_ * sigma_; }

    /// Peak of the real kernel, 1/(sqrt(2 pi) sigma).
    double real_peak() const noexcept;
    /// Peak of the complex kernel, 1/(2 pi sigma^2).
    double complex_peak() const noexcept;

    /// Same config with bandwidth scaled by sqrt(2), as used inside the estimators.
    KernelConfig widened() const;

private:
    double sigma_;
};

double gaussian_kernel(double x, const KernelConfig& cfg);

/// G^C_sigma(c) = exp(-|c|^2 / (2 sigma^2)) / (2 pi sigma^2).
double complex_gaussian_kernel(Complex c, const KernelConfig& cfg);

/// L-dimensional Parzen estimate with a product Gaussian kernel sharing one
/// bandwidth across dimensions. Every sample and the query must have the same
/// dimension L >= 1.
double parzen_density(std::span<const std::vector<double>> samples,
                      std::span<const double> query,
                      const KernelConfig& cfg);

/// (1/N) sum G_{sqrt2 sigma}(x_n - y_n). Doubles as the estimate of the
/// density of the event X = Y.
double correntropy_real(std::span<const double> x,
                        std::span<const double> y,
                        const KernelConfig& cfg);

/// (1/N) sum G^C_{sqrt2 sigma}(c1_n - c2_n); lies in (0, 1/(4 pi sigma^2)].
double complex_correntropy(std::span<const Complex> c1,
                           std::span<const Complex> c2,
                           const KernelConfig& cfg);

/// Constant plus covariance term of the expansion of complex_correntropy in
/// |c|^2 / sigma^2:  1/(4 pi sigma^2) - mean|c1 - c2|^2 / (16 pi sigma^4).
double taylor_second_order_approx(std::span<const Complex> c1,
                                  std::span<const Complex> c2,
                                  const KernelConfig& cfg);

} // namespace ccorr

#endif // CCORR_CORRENTROPY_HPP
