#pragma once

#include "sieveboot/acvf.hpp"
#include "sieveboot/levinson.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sieveboot {

enum class SieveMethod { yule_walker, burg, least_squares };

std::string to_string(SieveMethod m);
SieveMethod sieve_method_from_string(const std::string& s);

/// Fitted AR(h) sieve in the prediction-error convention
/// e(t) = y(t) + sum_j phi_bar[j-1] y(t-j), plus the standardized circular
/// residuals used as the resampling population.
struct SieveFit {
    SieveMethod method = SieveMethod::burg;
    std::size_t h = 0;
    std::vector<double> phi_bar;
    double sigma2_bar = 0.0;
    std::vector<double> residuals_std;  // mean 0, variance 1 (divisor T)
    std::size_t T = 0;
    double mean = 0.0;                  // removed before fitting
};

/// Estimator output before residuals are formed.
struct ArCoefficients {
    std::vector<double> phi;
    double sigma2 = 0.0;
    std::vector<double> pacf;  // reflection coefficients (YW, Burg); empty for LS
};

/// Estimators on already-centered data.
ArCoefficients yule_walker_coefficients(std::span<const double> centered, std::size_t h);
ArCoefficients yule_walker_coefficients(const AcvfSequence& acvf, std::size_t h);
ArCoefficients burg_coefficients(std::span<const double> centered, std::size_t h);
ArCoefficients least_squares_coefficients(std::span<const double> centered, std::size_t h);

/// Native residual variance of each order 0..max_order: Levinson stage
/// variances (YW), Burg prediction-error powers, or RSS/(T-h) (LS).
std::vector<double> native_variances(std::span<const double> centered, std::size_t max_order,
                                     SieveMethod method);

/// Fit AR(h) by `method` after removing the sample mean, then form
/// e(t) = sum_{j=0}^{h} phi(j) y(t-j) with y(1-j) = y(T-j+1) and standardize.
SieveFit fit(std::span<const double> series, std::size_t h, SieveMethod method);

/// Residual construction for given coefficients (series is centered here).
SieveFit fit_with_coefficients(std::span<const double> series, SieveMethod method,
                               std::vector<double> phi_bar, double sigma2_bar);

struct OrderSelection {
    std::size_t h_hat = 0;
    std::size_t max_order = 0;     // M_T = floor((ln T)^2), capped at T - 1
    std::vector<double> aic_trace; // log(sigma2_h) + 2h/T for h = 0..M_T
    SieveMethod method = SieveMethod::burg;
};

std::size_t aic_search_cap(std::size_t T);

/// argmin_{h=0..M_T} log(sigma2_h) + 2h/T; ties go to the smaller h.
OrderSelection select_order_aic(std::span<const double> series, SieveMethod method);

/// sum_j |phi_bar(j) - phi(j)|^2.
double yw_coefficient_error(const SieveFit& fit, const LevinsonSolution& truth);
double coefficient_error(std::span<const double> estimate, std::span<const double> truth);

}  // namespace sieveboot
