#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sieveboot {

double sample_mean(std::span<const double> series);

/// T^{1/2 - d} (ybar - mu).
double renormalized_mean(std::span<const double> series, double d, double mu = 0.0);

enum class AcvfDivisor { T, T_minus_k };
enum class Centering { sample_mean, zero };

/// sum_{t=1}^{T-k} (y(t) - c)(y(t+k) - c) / divisor.
double sample_acvf(std::span<const double> series, std::size_t k,
                   AcvfDivisor divisor = AcvfDivisor::T, Centering center = Centering::sample_mean);

/// Sample autocovariances for lags 0..maxlag in one pass over the data.
std::vector<double> sample_acvf_all(std::span<const double> series, std::size_t maxlag,
                                    AcvfDivisor divisor = AcvfDivisor::T,
                                    Centering center = Centering::sample_mean);

/// Mean-corrected lag-k autocorrelation (ratio of the raw sums, divisor free).
double sample_acf(std::span<const double> series, std::size_t k);

/// Autocorrelation with the mean known to be zero.
double sample_acf_zero_mean(std::span<const double> series, std::size_t k);

/// Periodogram on the Fourier frequencies lambda_j = 2 pi j / T,
/// j = 1..floor((T-1)/2); I(lambda) = |sum_t y(t) e^{-i lambda t}|^2 / (2 pi T).
struct Periodogram {
    std::size_t T = 0;
    std::vector<double> frequencies;
    std::vector<double> ordinates;
};

Periodogram periodogram(std::span<const double> series);

enum class MemoryMethod { local_whittle, gph };

struct MemoryEstimate {
    double d_hat = 0.0;
    MemoryMethod method = MemoryMethod::local_whittle;
    std::size_t bandwidth = 0;
    double offset = 0.0;     // already included in d_hat
    double objective = 0.0;  // local Whittle R(d_hat); unused for GPH
};

/// R(d) = log((1/N) sum_{j<=N} lambda_j^{2d} I_j) - (2d/N) sum_{j<=N} log lambda_j.
double local_whittle_objective(const Periodogram& pgram, std::size_t N, double d);

/// Local Whittle estimate: argmin of R over [-0.49, 0.49] by a 97-point grid
/// followed by golden-section refinement inside the bracketing cell.
MemoryEstimate local_whittle(const Periodogram& pgram, std::size_t N, double offset = 0.0);

/// Log-periodogram regression on x_j = -2 log(2 sin(lambda_j / 2)); d_hat is
/// the OLS slope.
MemoryEstimate gph(const Periodogram& pgram, std::size_t N, double offset = 0.0);

/// Default bandwidth floor(T^0.65).
std::size_t default_bandwidth(std::size_t T);

std::string to_string(MemoryMethod m);
MemoryMethod memory_method_from_string(const std::string& s);

}  // namespace sieveboot
