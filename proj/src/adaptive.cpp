#include "ccorr/adaptive.hpp"

#include "ccorr/errors.hpp"

#include <cmath>
#include <string>

namespace ccorr {

namespace {

bool all_finite(std::span<const Complex> v)
{
    for (const Complex& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            return false;
    return true;
}

void require_finite_sample(std::span<const Complex> x, Complex d)
{
    if (!all_finite(x) || !std::isfinite(d.real()) || !std::isfinite(d.imag()))
        throw DomainError("input sample contains a non-finite value");
}

void require_state_matches(const FilterState& state, std::span<const Complex> x)
{
    const std::size_t m = state.taps();
    if (m == 0 || state.R.rows() != m || state.R.cols() != m || state.P.size() != m)
        throw ShapeError("filter state has inconsistent dimensions");
    if (x.size() != m)
        throw ShapeError("input vector has length " + std::to_string(x.size()) + ", filter has " +
                         std::to_string(m) + " taps");
}

} // namespace

void SolverOptions::validate() const
{
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw ConfigError("sigma must be finite and > 0");
    if (max_iter < 1)
        throw ConfigError("max_iter must be >= 1");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw ConfigError("tol must be finite and > 0");
    if (!std::isfinite(reg_delta) || reg_delta < 0.0)
        throw ConfigError("reg_delta must be finite and >= 0");
}

Complex predict(std::span<const Complex> w, std::span<const Complex> x)
{
    if (w.size() != x.size())
        throw ShapeError("predict: " + std::to_string(w.size()) + " weights against input of length " +
                         std::to_string(x.size()));
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i)
        acc += std::conj(w[i]) * x[i];
    return acc;
}

double mccc_sample_weight(Complex error, double sigma)
{
    return std::exp(-std::norm(error) / (4.0 * sigma * sigma));
}

WeightVector solve_weights(const ComplexMatrix& R, std::span<const Complex> P, double reg_delta)
{
    if (!std::isfinite(reg_delta) || reg_delta < 0.0)
        throw DomainError("reg_delta must be finite and >= 0");
    return hermitian_solve(R, P, reg_delta);
}

BatchResult mccc_batch_fixed_point(const ComplexMatrix& X,
                                   std::span<const Complex> d,
                                   const SolverOptions& opts,
                                   std::span<const Complex> w0)
{
    opts.validate();
    const std::size_t n_samples = X.rows();
    const std::size_t taps = X.cols();
    if (taps == 0)
        throw ShapeError("input matrix has no columns");
    if (d.size() != n_samples)
        throw ShapeError("desired signal has " + std::to_string(d.size()) + " samples, input matrix has " +
                         std::to_string(n_samples) + " rows");
    if (w0.size() != taps)
        throw ShapeError("initial weights have length " + std::to_string(w0.size()) + ", expected " +
                         std::to_string(taps));
    if (n_samples < taps)
        throw DomainError("batch solver needs N >= M (got N=" + std::to_string(n_samples) +
                          ", M=" + std::to_string(taps) + ")");
    for (std::size_t n = 0; n < n_samples; ++n)
        require_finite_sample(X.row(n), d[n]);

    BatchResult result;
    result.weights.assign(w0.begin(), w0.end());

    for (int sweep = 1; sweep <= opts.max_iter; ++sweep) {
        ComplexMatrix R(taps, taps);
        std::vector<Complex> P(taps);
        for (std::size_t n = 0; n < n_samples; ++n) {
            const auto x = X.row(n);
            const double g = mccc_sample_weight(d[n] - predict(result.weights, x), opts.sigma);
            if (!std::isfinite(g))
                throw NumericError("non-finite kernel weight at sweep " + std::to_string(sweep) + ", sample " +
                                   std::to_string(n));
            R.add_outer(x, g);
            const Complex gd = g * std::conj(d[n]);
            for (std::size_t i = 0; i < taps; ++i)
                P[i] += gd * x[i];
        }
        R.symmetrize();

        WeightVector next;
        try {
            next = solve_weights(R, P, opts.reg_delta);
        } catch (const Error& e) {
            rethrow_with_context(e, "batch fixed point, sweep " + std::to_string(sweep));
        }
        if (!all_finite(next))
            throw NumericError("non-finite weights at sweep " + std::to_string(sweep));

        double change = 0.0;
        for (std::size_t i = 0; i < taps; ++i)
            change += std::norm(next[i] - result.weights[i]);
        change = std::sqrt(change);
        const double ref = 1.0 + norm2(result.weights);

        result.weights = std::move(next);
        result.iterations = sweep;
        if (change <= opts.tol * ref) {
            result.converged = true;
            break;
        }
    }
    return result;
}

BatchResult mccc_batch_fixed_point(const ComplexMatrix& X, std::span<const Complex> d, const SolverOptions& opts)
{
    const WeightVector zero(X.cols());
    return mccc_batch_fixed_point(X, d, opts, zero);
}

FilterState mccc_recursive_init(std::size_t taps, const SolverOptions& opts)
{
    opts.validate();
    if (taps == 0)
        throw ConfigError("filter needs at least one tap");
    FilterState state;
    state.w.assign(taps, Complex{});
    state.R = ComplexMatrix::identity(taps, opts.reg_delta);
    state.P.assign(taps, Complex{});
    state.n = 0;
    return state;
}

FilterState mccc_recursive_step(FilterState state, std::span<const Complex> x, Complex d, const SolverOptions& opts)
{
    opts.validate();
    require_state_matches(state, x);
    require_finite_sample(x, d);

    const Complex e = d - predict(state.w, x);
    const double g = mccc_sample_weight(e, opts.sigma);

    state.R.add_outer(x, g);
    state.R.symmetrize();
    const Complex gd = g * std::conj(d);
    for (std::size_t i = 0; i < state.taps(); ++i)
        state.P[i] += gd * x[i];

    // reg_delta already lives in R from initialization.
    state.w = solve_weights(state.R, state.P, 0.0);
    if (!all_finite(state.w))
        throw NumericError("non-finite weights after recursive step " + std::to_string(state.n + 1));
    ++state.n;
    return state;
}

FilterState crls_step(FilterState state, std::span<const Complex> x, Complex d, double forgetting_lambda)
{
    if (!(forgetting_lambda > 0.0 && forgetting_lambda <= 1.0))
        throw ConfigError("forgetting factor must lie in (0, 1]");
    require_state_matches(state, x);
    require_finite_sample(x, d);

    const std::size_t m = state.taps();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            state.R(i, j) *= forgetting_lambda;
        state.P[i] *= forgetting_lambda;
    }
    state.R.add_outer(x, 1.0);
    state.R.symmetrize();
    const Complex dc = std::conj(d);
    for (std::size_t i = 0; i < m; ++i)
        state.P[i] += dc * x[i];

    state.w = solve_weights(state.R, state.P, 0.0);
    if (!all_finite(state.w))
        throw NumericError("non-finite weights after RLS step " + std::to_string(state.n + 1));
    ++state.n;
    return state;
}

double mccc_cost(const ComplexMatrix& X, std::span<const Complex> d, std::span<const Complex> w, double sigma)
{
    if (X.rows() != d.size())
        throw ShapeError("mccc_cost: " + std::to_string(X.rows()) + " input rows against " +
                         std::to_string(d.size()) + " desired samples");
    std::vector<Complex> y(X.rows());
    for (std::size_t n = 0; n < X.rows(); ++n)
        y[n] = predict(w, X.row(n));
    return complex_correntropy(d, y, KernelConfig(sigma));
}

} // namespace ccorr
