#ifndef CCORR_ADAPTIVE_HPP
#define CCORR_ADAPTIVE_HPP

#include "ccorr/correntropy.hpp"
#include "ccorr/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ccorr {

/// Filter taps w; the model output is y = w^H x.
using WeightVector = std::vector<Complex>;

struct SolverOptions {
    double sigma = 1.0;
    int max_iter = 100;
    double tol = 1e-8;
    double reg_delta = 1e-3;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Running state of a recursive filter (MCCC or complex RLS).
///
/// R accumulates kernel-weighted x x^H, P accumulates kernel-weighted d* x.
/// R is re-symmetrized after every update so it stays exactly Hermitian.
struct FilterState {
    WeightVector w;
    ComplexMatrix R;
    std::vector<Complex> P;
    std::size_t n = 0;

    std::size_t taps() const noexcept { return w.size(); }
};

struct BatchResult {
    WeightVector weights;
    int iterations = 0;
    bool converged = false;
};

/// w^H x
Complex predict(std::span<const Complex> w, std::span<const Complex> x);

/// Per-sample weight used by the MCCC solvers: the complex kernel at
/// bandwidth sigma*sqrt(2) scaled to unit peak, exp(-|e|^2 / (4 sigma^2)).
/// The scale cancels in the fixed-point equation, and keeping the peak at 1
/// makes reg_delta mean the same thing for every sigma.
double mccc_sample_weight(Complex error, double sigma);

/// Solves (R + reg_delta*I) w = P without forming an inverse.
WeightVector solve_weights(const ComplexMatrix& R, std::span<const Complex> P, double reg_delta);

/// Iterates the fixed-point equation
///   w <- [sum g_n x_n x_n^H + delta I]^-1 [sum g_n d_n* x_n],  g_n = g(d_n - w^H x_n)
/// from w0 until the relative weight change drops below opts.tol.
/// X holds one input vector per row (N x M, N >= M).
BatchResult mccc_batch_fixed_point(const ComplexMatrix& X,
                                   std::span<const Complex> d,
                                   const SolverOptions& opts,
                                   std::span<const Complex> w0);

/// Overload starting from w = 0.
BatchResult mccc_batch_fixed_point(const ComplexMatrix& X, std::span<const Complex> d, const SolverOptions& opts);

/// w = 0, R = reg_delta * I, P = 0, n = 0.
FilterState mccc_recursive_init(std::size_t taps, const SolverOptions& opts);

/// One MCCC update. The kernel weight uses the a-priori error computed with
/// the incoming state's weights.
FilterState mccc_recursive_step(FilterState state, std::span<const Complex> x, Complex d, const SolverOptions& opts);

/// One exponentially weighted complex RLS update, lambda in (0, 1]:
/// R <- lambda R + x x^H, P <- lambda P + d* x, w <- R^-1 P.
FilterState crls_step(FilterState state, std::span<const Complex> x, Complex d, double forgetting_lambda);

/// Sample MCCC objective, (1/N) sum G^C_{sqrt2 sigma}(d_n - w^H x_n).
double mccc_cost(const ComplexMatrix& X, std::span<const Complex> d, std::span<const Complex> w, double sigma);

} // namespace ccorr

#endif // CCORR_ADAPTIVE_HPP
