#include "sieveboot/stats.hpp"

#include "sieveboot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sieveboot {

double sample_mean(std::span<const double> series) {
    if (series.empty()) throw DomainError("sample_mean: empty series");
    return std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
}

double renormalized_mean(std::span<const double> series, double d, double mu) {
    const double T = static_cast<double>(series.size());
    return std::pow(T, 0.5 - d) * (sample_mean(series) - mu);
}

std::vector<double> sample_acvf_all(std::span<const double> series, std::size_t maxlag,
                                    AcvfDivisor divisor, Centering center) {
    const std::size_t T = series.size();
    if (maxlag >= T) throw DomainError("sample_acvf: lag must be < T");
    const double c = center == Centering::sample_mean ? sample_mean(series) : 0.0;
    std::vector<double> x(series.begin(), series.end());
    if (c != 0.0)
        for (auto& v : x) v -= c;
    std::vector<double> out(maxlag + 1);
    for (std::size_t k = 0; k <= maxlag; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t + k < T; ++t) s += x[t] * x[t + k];
        const double div = divisor == AcvfDivisor::T ? static_cast<double>(T)
                                                     : static_cast<double>(T - k);
        out[k] = s / div;
    }
    return out;
}

double sample_acvf(std::span<const double> series, std::size_t k, AcvfDivisor divisor,
                   Centering center) {
    const std::size_t T = series.size();
    if (k >= T) throw DomainError("sample_acvf: lag must be < T");
    const double c = center == Centering::sample_mean ? sample_mean(series) : 0.0;
    double s = 0.0;
    for (std::size_t t = 0; t + k < T; ++t) s += (series[t] - c) * (series[t + k] - c);
    return s / (divisor == AcvfDivisor::T ? static_cast<double>(T) : static_cast<double>(T - k));
}

namespace {

double acf_ratio(std::span<const double> series, std::size_t k, double c, const char* who) {
    const std::size_t T = series.size();
    if (k < 1 || k >= T) throw DomainError(std::string(who) + ": lag must satisfy 1 <= k < T");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        const double a = series[t] - c;
        den += a * a;
        if (t + k < T) num += a * (series[t + k] - c);
    }
    if (!(den > 0.0)) throw NumericalError(std::string(who) + ": zero variance");
    return num / den;
}

}  // namespace

double sample_acf(std::span<const double> series, std::size_t k) {
    if (series.empty()) throw DomainError("sample_acf: empty series");
    return acf_ratio(series, k, sample_mean(series), "sample_acf");
}

double sample_acf_zero_mean(std::span<const double> series, std::size_t k) {
    return acf_ratio(series, k, 0.0, "sample_acf_zero_mean");
}

Periodogram periodogram(std::span<const double> series) {
    const std::size_t T = series.size();
    if (T < 4) throw DomainError("periodogram: need at least 4 observations");
    const std::size_t n = (T - 1) / 2;
    // Table of e^{-i 2 pi m / T}; the phase j*t is reduced mod T exactly.
    std::vector<double> cs(T), sn(T);
    for (std::size_t m = 0; m < T; ++m) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(T);
        cs[m] = std::cos(ang);
        sn[m] = std::sin(ang);
    }
    Periodogram p;
    p.T = T;
    p.frequencies.resize(n);
    p.ordinates.resize(n);
    const double norm = 2.0 * std::numbers::pi * static_cast<double>(T);
    for (std::size_t j = 1; j <= n; ++j) {
        double re = 0.0;
        double im = 0.0;
        std::size_t phase = j;  // j * t mod T with t starting at 1
        for (std::size_t t = 0; t < T; ++t) {
            re += series[t] * cs[phase];
            im -= series[t] * sn[phase];
            phase += j;
            if (phase >= T) phase -= T;
        }
        p.frequencies[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(T);
        p.ordinates[j - 1] = (re * re + im * im) / norm;
    }
    return p;
}

namespace {

void check_bandwidth(const Periodogram& pgram, std::size_t N, const char* who) {
    if (N < 2 || 2 * N >= pgram.T || N > pgram.ordinates.size())
        throw DomainError(std::string(who) + ": bandwidth must satisfy 2 <= N < T/2");
}

}  // namespace

double local_whittle_objective(const Periodogram& pgram, std::size_t N, double d) {
    double s = 0.0;
    double log_sum = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double ll = std::log(pgram.frequencies[j]);
        s += std::exp(2.0 * d * ll) * pgram.ordinates[j];
        log_sum += ll;
    }
    const double Nd = static_cast<double>(N);
    return std::log(s / Nd) - 2.0 * d * log_sum / Nd;
}

MemoryEstimate local_whittle(const Periodogram& pgram, std::size_t N, double offset) {
    check_bandwidth(pgram, N, "local_whittle");
    const bool any_positive = std::any_of(pgram.ordinates.begin(), pgram.ordinates.begin() + N,
                                          [](double v) { return v > 0.0; });
    if (!any_positive) throw NumericalError("local_whittle: all periodogram ordinates are zero");

    constexpr double lo = -0.49;
    constexpr double hi = 0.49;
    constexpr int grid_points = 97;
    const double step = (hi - lo) / (grid_points - 1);
    int best = 0;
    double best_val = local_whittle_objective(pgram, N, lo);
    for (int i = 1; i < grid_points; ++i) {
        const double v = local_whittle_objective(pgram, N, lo + step * i);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = lo + step * std::max(best - 1, 0);
    double b = lo + step * std::min(best + 1, grid_points - 1);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = local_whittle_objective(pgram, N, x1);
    double f2 = local_whittle_objective(pgram, N, x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = local_whittle_objective(pgram, N, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = local_whittle_objective(pgram, N, x2);
        }
    }
    double d = 0.5 * (a + b);
    double val = local_whittle_objective(pgram, N, d);
    // Keep the grid winner if refinement did not improve on it.
    if (best_val < val) {
        d = lo + step * best;
        val = best_val;
    }
    MemoryEstimate est;
    est.method = MemoryMethod::local_whittle;
    est.bandwidth = N;
    est.offset = offset;
    est.d_hat = d + offset;
    est.objective = val;
    return est;
}

MemoryEstimate gph(const Periodogram& pgram, std::size_t N, double offset) {
    check_bandwidth(pgram, N, "gph");
    std::vector<double> x(N), y(N);
    for (std::size_t j = 0; j < N; ++j) {
        if (!(pgram.ordinates[j] > 0.0)) throw NumericalError("gph: zero periodogram ordinate");
        x[j] = -2.0 * std::log(2.0 * std::sin(pgram.frequencies[j] / 2.0));
        y[j] = std::log(pgram.ordinates[j]);
    }
    const double Nd = static_cast<double>(N);
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / Nd;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / Nd;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        sxy += (x[j] - mx) * (y[j] - my);
        sxx += (x[j] - mx) * (x[j] - mx);
    }
    MemoryEstimate est;
    est.method = MemoryMethod::gph;
    est.bandwidth = N;
    est.offset = offset;
    est.d_hat = sxy / sxx + offset;
    return est;
}

std::size_t default_bandwidth(std::size_t T) {
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(T), 0.65)));
}

std::string to_string(MemoryMethod m) {
    return m == MemoryMethod::gph ? "gph" : "local_whittle";
}

MemoryMethod memory_method_from_string(const std::string& s) {
    if (s == "local_whittle") return MemoryMethod::local_whittle;
    if (s == "gph") return MemoryMethod::gph;
    throw DomainError("unknown memory estimator '" + s + "'");
}

}  // namespace sieveboot
