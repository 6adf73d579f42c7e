#include "ccorr/sysid.hpp"

#include "ccorr/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace ccorr {

Rng trial_rng(std::uint64_t seed, std::uint64_t trial_index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial_index), static_cast<std::uint32_t>(trial_index >> 32)};
    return Rng(seq);
}

void NoiseModel::validate() const
{
    if (components.empty())
        throw ConfigError("noise model needs at least one component");
    double total = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        const std::string where = "noise component " + std::to_string(i);
        if (!(c.weight >= 0.0 && c.weight <= 1.0))
            throw ConfigError(where + ": weight must lie in [0, 1]");
        if (!std::isfinite(c.mean))
            throw ConfigError(where + ": mean must be finite");
        if (!std::isfinite(c.scale) || c.scale <= 0.0)
            throw ConfigError(where + ": scale must be finite and > 0");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("noise component weights sum to " + std::to_string(total) + ", expected 1");
}

double NoiseModel::component_stddev(std::size_t i) const
{
    const double s = components.at(i).scale;
    return convention == ScaleConvention::StdDev ? s : std::sqrt(s);
}

double NoiseModel::variance() const
{
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const double sd = component_stddev(i);
        const auto& c = components[i];
        mean += c.weight * c.mean;
        second += c.weight * (sd * sd + c.mean * c.mean);
    }
    return second - mean * mean;
}

NoiseModel NoiseModel::impulsive_default()
{
    return NoiseModel{{{0.95, 0.0, 0.05}, {0.05, 0.0, 5.0}}, ScaleConvention::StdDev};
}

void ExperimentConfig::validate() const
{
    if (true_weights.empty())
        throw ConfigError("true_weights must hold at least one tap");
    for (const Complex& w : true_weights)
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw ConfigError("true_weights must be finite");
    if (n_iterations < 1)
        throw ConfigError("n_iterations must be >= 1");
    if (n_trials < 1)
        throw ConfigError("n_trials must be >= 1");
    noise.validate();
    if (sigma_list.empty())
        throw ConfigError("sigma_list must not be empty");
    for (double s : sigma_list)
        if (!std::isfinite(s) || s <= 0.0)
            throw ConfigError("sigma_list entries must be finite and > 0");
    if (!(rls_lambda > 0.0 && rls_lambda <= 1.0))
        throw ConfigError("rls_lambda must lie in (0, 1]");
    if (!std::isfinite(reg_delta) || reg_delta < 0.0)
        throw ConfigError("reg_delta must be finite and >= 0");
}

ExperimentConfig ExperimentConfig::benchmark_default()
{
    ExperimentConfig cfg;
    cfg.true_weights = {{1.0, -2.0}, {-3.0, 4.0}};
    cfg.n_iterations = 300;
    cfg.n_trials = 50;
    cfg.noise = NoiseModel::impulsive_default();
    cfg.sigma_list = {1.0, 2.0, 4.0};
    cfg.rls_lambda = 1.0;
    cfg.reg_delta = 1e-3;
    cfg.seed = 20170101;
    return cfg;
}

const char* to_string(Algorithm a) noexcept
{
    return a == Algorithm::Mccc ? "mccc" : "crls";
}

std::vector<Complex> sample_complex_gaussian_input(std::size_t taps, Rng& rng, bool unit_total_variance)
{
    std::normal_distribution<double> normal(0.0, unit_total_variance ? std::sqrt(0.5) : 1.0);
    std::vector<Complex> x(taps);
    for (auto& c : x) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
    }
    return x;
}

namespace {

double sample_mixture_part(const NoiseModel& model, Rng& rng)
{
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double u = uniform(rng);
    std::size_t pick = model.components.size() - 1;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < model.components.size(); ++i) {
        cumulative += model.components[i].weight;
        if (u < cumulative) {
            pick = i;
            break;
        }
    }
    std::normal_distribution<double> normal(model.components[pick].mean, model.component_stddev(pick));
    return normal(rng);
}

} // namespace

Complex sample_mixture_noise(const NoiseModel& model, Rng& rng)
{
    model.validate();
    const double re = sample_mixture_part(model, rng);
    const double im = sample_mixture_part(model, rng);
    return {re, im};
}

Dataset synthesize_dataset(const ExperimentConfig& cfg, int trial_index)
{
    cfg.validate();
    Rng rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(trial_index));
    const std::size_t taps = cfg.true_weights.size();
    const auto n = static_cast<std::size_t>(cfg.n_iterations);

    Dataset data{ComplexMatrix(n, taps), std::vector<Complex>(n), cfg.true_weights};
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = sample_complex_gaussian_input(taps, rng, cfg.unit_total_variance);
        std::copy(x.begin(), x.end(), data.X.row(i).begin());
        const Complex eta = cfg.clean ? Complex{} : sample_mixture_noise(cfg.noise, rng);
        data.d[i] = predict(cfg.true_weights, x) + eta;
    }
    return data;
}

double wsnr_db(std::span<const Complex> w_true, std::span<const Complex> w_est)
{
    if (w_true.size() != w_est.size())
        throw ShapeError("wsnr_db: weight vectors of length " + std::to_string(w_true.size()) + " and " +
                         std::to_string(w_est.size()));
    double signal = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < w_true.size(); ++i) {
        signal += std::norm(w_true[i]);
        error += std::norm(w_true[i] - w_est[i]);
    }
    if (error == 0.0)
        return kWsnrCapDb;
    return std::min(kWsnrCapDb, 10.0 * std::log10(signal / error));
}

WsnrTrace run_trial(const ExperimentConfig& cfg, int trial_index)
{
    const Dataset data = synthesize_dataset(cfg, trial_index);
    const std::size_t taps = cfg.true_weights.size();
    const auto n = static_cast<std::size_t>(cfg.n_iterations);

    std::vector<SolverOptions> mccc_opts;
    std::vector<FilterState> states;
    WsnrTrace trace;
    for (double sigma : cfg.sigma_list) {
        SolverOptions opts;
        opts.sigma = sigma;
        opts.reg_delta = cfg.reg_delta;
        mccc_opts.push_back(opts);
        states.push_back(mccc_recursive_init(taps, opts));
        trace.series.push_back({Algorithm::Mccc, sigma, std::vector<double>(n)});
    }
    {
        SolverOptions opts;
        opts.reg_delta = cfg.reg_delta;
        states.push_back(mccc_recursive_init(taps, opts));
        trace.series.push_back({Algorithm::ComplexRls, 0.0, std::vector<double>(n)});
    }

    const std::size_t n_mccc = mccc_opts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.X.row(i);
        try {
            for (std::size_t f = 0; f < states.size(); ++f) {
                states[f] = f < n_mccc ? mccc_recursive_step(std::move(states[f]), x, data.d[i], mccc_opts[f])
                                       : crls_step(std::move(states[f]), x, data.d[i], cfg.rls_lambda);
                trace.series[f].wsnr_db[i] = wsnr_db(data.w_true, states[f].w);
            }
        } catch (const Error& e) {
            rethrow_with_context(e, "trial " + std::to_string(trial_index) + ", iteration " + std::to_string(i + 1));
        }
    }
    return trace;
}

WsnrTrace average_traces(std::span<const WsnrTrace> traces, AverageMode mode)
{
    if (traces.empty())
        throw DomainError("cannot average an empty set of traces");
    WsnrTrace out = traces.front();
    const std::size_t n_series = out.series.size();
    const std::size_t n_iter = out.n_iterations();
    for (const auto& t : traces) {
        if (t.series.size() != n_series)
            throw ShapeError("traces hold different numbers of series");
        for (std::size_t s = 0; s < n_series; ++s)
            if (t.series[s].wsnr_db.size() != n_iter || t.series[s].algorithm != out.series[s].algorithm ||
                t.series[s].sigma != out.series[s].sigma)
                throw ShapeError("traces have different layouts");
    }

    const auto count = static_cast<double>(traces.size());
    for (std::size_t s = 0; s < n_series; ++s) {
        for (std::size_t i = 0; i < n_iter; ++i) {
            double acc = 0.0;
            for (const auto& t : traces) {
                const double db = t.series[s].wsnr_db[i];
                acc += mode == AverageMode::Decibel ? db : std::pow(10.0, -db / 10.0);
            }
            const double mean = acc / count;
            out.series[s].wsnr_db[i] =
                mode == AverageMode::Decibel ? mean : std::min(kWsnrCapDb, -10.0 * std::log10(mean));
        }
    }
    return out;
}

WsnrTrace monte_carlo_average(const ExperimentConfig& cfg, unsigned threads)
{
    cfg.validate();
    const auto n_trials = static_cast<std::size_t>(cfg.n_trials);
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_trials));

    std::vector<WsnrTrace> traces(n_trials);
    std::vector<std::exception_ptr> failures(n_trials);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t t = next++; t < n_trials; t = next++) {
            try {
                traces[t] = run_trial(cfg, static_cast<int>(t));
            } catch (...) {
                failures[t] = std::current_exception();
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    // Report the lowest failing trial so the error does not depend on scheduling.
    for (const auto& f : failures)
        if (f)
            std::rethrow_exception(f);

    return average_traces(traces, cfg.average_mode);
}

} // namespace ccorr
