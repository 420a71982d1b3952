#pragma once

#include <cstddef>
#include <vector>

namespace sieveboot {

/// Zero-mean Gaussian ARFIMA(1,d,0): (1 - L)^d (1 - phi L) y(t) = e(t),
/// Var e(t) = sigma2.
struct ArfimaSpec {
    double d = 0.0;
    double phi = 0.0;
    double sigma2 = 1.0;

    /// Throws DomainError unless |d| < 0.5, |phi| < 1, sigma2 > 0.
    void validate() const;
};

/// Autocovariances gamma(0..K).
struct AcvfSequence {
    std::vector<double> values;

    std::size_t maxlag() const noexcept { return values.empty() ? 0 : values.size() - 1; }
    double operator[](std::size_t k) const { return values[k]; }
    double rho(std::size_t k) const { return values[k] / values[0]; }
};

/// Fractional noise autocovariances: gamma(0) = sigma2 Gamma(1-2d)/Gamma(1-d)^2,
/// gamma(k) = gamma(k-1) (k-1+d)/(k-d).
AcvfSequence fn_acvf(double d, double sigma2, std::size_t maxlag);

/// Gauss hypergeometric series 2F1(a, b; c; z) for |z| < 1, summed until the
/// geometric bound on the remaining tail falls below rel_tol * |sum|.
/// Throws NumericalError after max_terms terms.
double hyp2f1(double a, double b, double c, double z, double rel_tol = 1e-12,
              std::size_t max_terms = 200000);

/// Exact ARFIMA(1,d,0) autocovariances. With w = (1 - phi L) y fractional
/// noise, gamma_y(h) = [C(h) + S(h) + phi^h (C(0) - gamma_w(0))] / (1 - phi^2), where
/// C(h) = sum_{m>=0} phi^m gamma_w(h+m) = gamma_w(h) 2F1(h+d, 1; h+1-d; phi) and
/// S(h) = sum_{m=1}^{h} phi^m gamma_w(h-m).
AcvfSequence arfima_acvf(const ArfimaSpec& spec, std::size_t maxlag);

/// Var of the sample mean of T observations:
/// (1/T) sum_{|k|<T} (1 - |k|/T) gamma(k). Needs maxlag >= T-1.
double exact_mean_variance(const AcvfSequence& acvf, std::size_t T);

struct Asymptotics {
    double omega2 = 0.0;           // {sigma kappa(1)}^2 Gamma(1-2d) / [(1+2d) Gamma(1+d) Gamma(1-d)]
    double mean_var_approx = 0.0;  // T^{2d-1} omega2
    double acvf_bias = 0.0;        // -omega2 T^{2d-1}, the same at every lag
};

/// Large-T approximations for the mean and the sample autocovariances,
/// with kappa(1) = 1/(1 - phi).
Asymptotics asymptotics(const ArfimaSpec& spec, std::size_t T);

/// log|Gamma(x)| and the sign of Gamma(x).
struct SignedLogGamma {
    double log_abs = 0.0;
    int sign = 1;
};
SignedLogGamma log_gamma(double x);

}  // namespace sieveboot
