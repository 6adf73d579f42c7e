#ifndef CCORR_SYSID_HPP
#define CCORR_SYSID_HPP

#include "ccorr/adaptive.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ccorr {

using Rng = std::mt19937_64;

/// Generator for one trial. Seeded from (seed, trial_index) only, so trials
/// can run in any order or concurrently without changing their data.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial_index);

/// How the second parameter of N(mu, s) is read.
enum class ScaleConvention { StdDev, Variance };

struct MixtureComponent {
    double weight = 1.0;
    double mean = 0.0;
    double scale = 1.0;  // std or variance, see NoiseModel::convention
};

/// Finite Gaussian mixture, drawn independently for the real and imaginary parts.
struct NoiseModel {
    std::vector<MixtureComponent> components;
    ScaleConvention convention = ScaleConvention::StdDev;

    /// Throws ConfigError unless weights lie in [0,1] and sum to 1 within 1e-12
    /// and every scale is finite and > 0.
    void validate() const;
    /// Standard deviation of component i under the configured convention.
    double component_stddev(std::size_t i) const;
    /// Per-part variance of the mixture.
    double variance() const;

    /// 0.95 N(0, 0.05) + 0.05 N(0, 5.0), second argument read as a standard deviation.
    static NoiseModel impulsive_default();
};

enum class AverageMode {
    Decibel,  // mean of per-trial dB values
    Linear,   // dB of the mean normalized weight-error power
};

struct ExperimentConfig {
    WeightVector true_weights;
    int n_iterations = 300;
    int n_trials = 50;
    NoiseModel noise;
    std::vector<double> sigma_list;
    double rls_lambda = 1.0;
    double reg_delta = 1e-3;
    std::uint64_t seed = 0;

    /// Replace the noise by zero (noiseless pathway for recovery checks).
    bool clean = false;
    /// Scale inputs so E|x_i|^2 = 1 instead of 1 per part.
    bool unit_total_variance = false;
    AverageMode average_mode = AverageMode::Decibel;

    void validate() const;

    /// w = [1-2j, -3+4j], 300 iterations, 50 trials, sigma in {1, 2, 4},
    /// impulsive mixture noise, lambda = 1, delta = 1e-3.
    static ExperimentConfig benchmark_default();
};

enum class Algorithm { Mccc, ComplexRls };

const char* to_string(Algorithm a) noexcept;

struct WsnrSeries {
    Algorithm algorithm = Algorithm::Mccc;
    double sigma = 0.0;  // kernel size; unused for RLS
    std::vector<double> wsnr_db;
};

/// Learning curves, one series per filter: MCCC for each sigma in the
/// configured order, then complex RLS.
struct WsnrTrace {
    std::vector<WsnrSeries> series;

    std::size_t n_iterations() const noexcept { return series.empty() ? 0 : series.front().wsnr_db.size(); }
};

struct Dataset {
    ComplexMatrix X;  // n_iterations x M
    std::vector<Complex> d;
    WeightVector w_true;
};

inline constexpr double kWsnrCapDb = 300.0;

std::vector<Complex> sample_complex_gaussian_input(std::size_t taps, Rng& rng, bool unit_total_variance = false);

Complex sample_mixture_noise(const NoiseModel& model, Rng& rng);

Dataset synthesize_dataset(const ExperimentConfig& cfg, int trial_index);

/// 10 log10(|w|^2 / |w - w_est|^2), clamped to kWsnrCapDb.
double wsnr_db(std::span<const Complex> w_true, std::span<const Complex> w_est);

WsnrTrace run_trial(const ExperimentConfig& cfg, int trial_index);

/// Per-iteration average over trials, in the order given. Every trace must
/// have the same layout.
WsnrTrace average_traces(std::span<const WsnrTrace> traces, AverageMode mode);

/// Runs all trials (on up to `threads` worker threads; 0 picks the hardware
/// concurrency) and averages them. The result does not depend on `threads`.
WsnrTrace monte_carlo_average(const ExperimentConfig& cfg, unsigned threads = 0);

} // namespace ccorr

#endif // CCORR_SYSID_HPP
