#include "sieveboot/ar_sieve.hpp"

#include "sieveboot/errors.hpp"
#include "sieveboot/stats.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

namespace sieveboot {

std::string to_string(SieveMethod m) {
    switch (m) {
        case SieveMethod::yule_walker: return "yule_walker";
        case SieveMethod::burg: return "burg";
        case SieveMethod::least_squares: return "least_squares";
    }
    return "unknown";
}

SieveMethod sieve_method_from_string(const std::string& s) {
    if (s == "yule_walker" || s == "yw") return SieveMethod::yule_walker;
    if (s == "burg") return SieveMethod::burg;
    if (s == "least_squares" || s == "ls") return SieveMethod::least_squares;
    throw DomainError("unknown sieve estimator '" + s + "'");
}

namespace {

std::vector<double> centered_copy(std::span<const double> series, double& mean) {
    mean = sample_mean(series);
    std::vector<double> x(series.begin(), series.end());
    for (auto& v : x) v -= mean;
    return x;
}

double mean_square(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s / static_cast<double>(x.size());
}

// Burg recursion to order h; `powers` receives E_0..E_h when non-null.
ArCoefficients burg_impl(std::span<const double> x, std::size_t h, std::vector<double>* powers) {
    const std::size_t T = x.size();
    if (h >= T) throw DomainError("burg: order must be < T");
    std::vector<double> f(x.begin(), x.end());
    std::vector<double> b(x.begin(), x.end());
    ArCoefficients out;
    out.phi.reserve(h);
    out.pacf.reserve(h);
    double E = mean_square(x);
    if (powers) powers->assign(1, E);
    std::vector<double> prev;
    for (std::size_t m = 1; m <= h; ++m) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t t = m; t < T; ++t) {
            num += f[t] * b[t - 1];
            den += f[t] * f[t] + b[t - 1] * b[t - 1];
        }
        if (!(den > 0.0)) throw NumericalError("burg: zero prediction-error power at order " + std::to_string(m));
        const double k = -2.0 * num / den;
        prev = out.phi;
        out.phi.push_back(k);
        for (std::size_t j = 1; j < m; ++j) out.phi[j - 1] = prev[j - 1] + k * prev[m - j - 1];
        out.pacf.push_back(-k);
        E *= (1.0 - k * k);
        if (powers) powers->push_back(E);
        for (std::size_t t = T - 1; t >= m; --t) {
            const double ft = f[t];
            const double bt = b[t - 1];
            f[t] = ft + k * bt;
            b[t] = bt + k * ft;
        }
    }
    out.sigma2 = E;
    return out;
}

}  // namespace

ArCoefficients yule_walker_coefficients(const AcvfSequence& acvf, std::size_t h) {
    const LevinsonSolution sol = levinson_solve(acvf, h);
    return {sol.phi, sol.sigma2, sol.pacf};
}

ArCoefficients yule_walker_coefficients(std::span<const double> centered, std::size_t h) {
    if (h >= centered.size()) throw DomainError("yule_walker: order must be < T");
    AcvfSequence acvf{sample_acvf_all(centered, h, AcvfDivisor::T, Centering::zero)};
    return yule_walker_coefficients(acvf, h);
}

ArCoefficients burg_coefficients(std::span<const double> centered, std::size_t h) {
    return burg_impl(centered, h, nullptr);
}

ArCoefficients least_squares_coefficients(std::span<const double> centered, std::size_t h) {
    const std::size_t T = centered.size();
    if (h >= T) throw DomainError("least_squares: order must be < T");
    ArCoefficients out;
    if (h == 0) {
        out.sigma2 = mean_square(centered);
        return out;
    }
    const std::size_t n = T - h;
    if (n < h) throw NumericalError("least_squares: fewer equations than coefficients");
    Eigen::MatrixXd X(n, h);
    Eigen::VectorXd y(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t t = r + h;
        y(r) = centered[t];
        for (std::size_t j = 1; j <= h; ++j) X(r, j - 1) = centered[t - j];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < static_cast<Eigen::Index>(h))
        throw NumericalError("least_squares: singular design at order " + std::to_string(h));
    const Eigen::VectorXd beta = qr.solve(y);
    out.phi.resize(h);
    for (std::size_t j = 0; j < h; ++j) out.phi[j] = -beta(j);
    out.sigma2 = (y - X * beta).squaredNorm() / static_cast<double>(n);
    return out;
}

std::vector<double> native_variances(std::span<const double> centered, std::size_t max_order,
                                     SieveMethod method) {
    switch (method) {
        case SieveMethod::burg: {
            std::vector<double> powers;
            burg_impl(centered, max_order, &powers);
            return powers;
        }
        case SieveMethod::yule_walker: {
            AcvfSequence acvf{sample_acvf_all(centered, max_order, AcvfDivisor::T, Centering::zero)};
            std::vector<double> v{acvf[0]};
            const LevinsonSolution sol = levinson_solve(acvf, max_order);
            for (double k : sol.pacf) v.push_back(v.back() * (1.0 - k * k));
            return v;
        }
        case SieveMethod::least_squares: {
            std::vector<double> v;
            for (std::size_t h = 0; h <= max_order; ++h)
                v.push_back(least_squares_coefficients(centered, h).sigma2);
            return v;
        }
    }
    throw DomainError("native_variances: unknown method");
}

SieveFit fit_with_coefficients(std::span<const double> series, SieveMethod method,
                               std::vector<double> phi_bar, double sigma2_bar) {
    const std::size_t T = series.size();
    const std::size_t h = phi_bar.size();
    if (T < 2 || h >= T) throw DomainError("fit: need T >= max(h + 1, 2)");
    double mean = 0.0;
    const std::vector<double> x = centered_copy(series, mean);

    std::vector<double> e(T);
    for (std::size_t t = 0; t < T; ++t) {
        double v = x[t];
        for (std::size_t j = 1; j <= h; ++j) {
            // circular start: y(1-j) = y(T-j+1)
            const std::size_t idx = t >= j ? t - j : t + T - j;
            v += phi_bar[j - 1] * x[idx];
        }
        e[t] = v;
    }
    const double em = sample_mean(e);
    double ss = 0.0;
    for (double v : e) ss += (v - em) * (v - em);
    const double s = std::sqrt(ss / static_cast<double>(T));
    if (!(s > 0.0)) throw NumericalError("fit: residuals have zero variance");
    for (auto& v : e) v = (v - em) / s;

    SieveFit out;
    out.method = method;
    out.h = h;
    out.phi_bar = std::move(phi_bar);
    out.sigma2_bar = sigma2_bar;
    out.residuals_std = std::move(e);
    out.T = T;
    out.mean = mean;
    return out;
}

SieveFit fit(std::span<const double> series, std::size_t h, SieveMethod method) {
    const std::size_t T = series.size();
    if (T < 2 || h >= T) throw DomainError("fit: need T >= max(h + 1, 2)");
    double mean = 0.0;
    const std::vector<double> x = centered_copy(series, mean);
    if (!(mean_square(x) > 0.0)) throw NumericalError("fit: constant series");
    ArCoefficients c;
    switch (method) {
        case SieveMethod::yule_walker: c = yule_walker_coefficients(x, h); break;
        case SieveMethod::burg: c = burg_coefficients(x, h); break;
        case SieveMethod::least_squares: c = least_squares_coefficients(x, h); break;
    }
    if (!(c.sigma2 > 0.0)) throw NumericalError("fit: non-positive innovation variance");
    return fit_with_coefficients(series, method, std::move(c.phi), c.sigma2);
}

std::size_t aic_search_cap(std::size_t T) {
    const double l = std::log(static_cast<double>(T));
    const auto m = static_cast<std::size_t>(std::floor(l * l));
    return std::min(m, T - 1);
}

OrderSelection select_order_aic(std::span<const double> series, SieveMethod method) {
    const std::size_t T = series.size();
    if (T < 8) throw DomainError("select_order_aic: need T >= 8");
    double mean = 0.0;
    const std::vector<double> x = centered_copy(series, mean);
    if (!(mean_square(x) > 0.0)) throw NumericalError("select_order_aic: constant series");
    OrderSelection sel;
    sel.method = method;
    sel.max_order = aic_search_cap(T);
    const std::vector<double> v = native_variances(x, sel.max_order, method);
    const double Td = static_cast<double>(T);
    sel.aic_trace.resize(v.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < v.size(); ++h) {
        const double aic = (v[h] > 0.0 ? std::log(v[h]) : -std::numeric_limits<double>::infinity()) +
                           2.0 * static_cast<double>(h) / Td;
        sel.aic_trace[h] = aic;
        if (aic < best) {
            best = aic;
            sel.h_hat = h;
        }
    }
    return sel;
}

double coefficient_error(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) throw DomainError("coefficient_error: order mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < estimate.size(); ++j) {
        const double diff = estimate[j] - truth[j];
        s += diff * diff;
    }
    return s;
}

double yw_coefficient_error(const SieveFit& fit, const LevinsonSolution& truth) {
    if (fit.h != truth.order) throw DomainError("yw_coefficient_error: order mismatch");
    return coefficient_error(fit.phi_bar, truth.phi);
}

}  // namespace sieveboot
