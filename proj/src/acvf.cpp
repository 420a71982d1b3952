#include "sieveboot/acvf.hpp"

#include "sieveboot/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

namespace sieveboot {

void ArfimaSpec::validate() const {
    if (!(std::abs(d) < 0.5)) throw DomainError("ArfimaSpec: |d| must be < 0.5, got " + std::to_string(d));
    if (!(std::abs(phi) < 1.0))
        throw DomainError("ArfimaSpec: |phi| must be < 1, got " + std::to_string(phi));
    if (!(sigma2 > 0.0)) throw DomainError("ArfimaSpec: sigma2 must be positive");
}

SignedLogGamma log_gamma(double x) {
    int sign = 1;
    const double v = boost::math::lgamma(x, &sign);
    return {v, sign};
}

namespace {

// Ratio Gamma(num...) / Gamma(den...) evaluated in log space.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double log_sum = 0.0;
    int sign = 1;
    for (double x : num) {
        const auto g = log_gamma(x);
        log_sum += g.log_abs;
        sign *= g.sign;
    }
    for (double x : den) {
        const auto g = log_gamma(x);
        log_sum -= g.log_abs;
        sign *= g.sign;
    }
    return sign * std::exp(log_sum);
}

}  // namespace

AcvfSequence fn_acvf(double d, double sigma2, std::size_t maxlag) {
    if (!(std::abs(d) < 0.5)) throw DomainError("fn_acvf: |d| must be < 0.5, got " + std::to_string(d));
    if (!(sigma2 > 0.0)) throw DomainError("fn_acvf: sigma2 must be positive");
    AcvfSequence out;
    out.values.resize(maxlag + 1);
    out.values[0] = sigma2 * gamma_ratio({1.0 - 2.0 * d}, {1.0 - d, 1.0 - d});
    for (std::size_t k = 1; k <= maxlag; ++k) {
        const auto kd = static_cast<double>(k);
        out.values[k] = out.values[k - 1] * (kd - 1.0 + d) / (kd - d);
    }
    return out;
}

double hyp2f1(double a, double b, double c, double z, double rel_tol, std::size_t max_terms) {
    if (!(std::abs(z) < 1.0)) throw DomainError("hyp2f1: requires |z| < 1");
    if (c <= 0.0 && c == std::floor(c))
        throw DomainError("hyp2f1: c must not be a non-positive integer");
    double sum = 1.0;
    double term = 1.0;
    for (std::size_t n = 0; n < max_terms; ++n) {
        const auto nd = static_cast<double>(n);
        const double ratio = (a + nd) * (b + nd) / ((c + nd) * (nd + 1.0)) * z;
        term *= ratio;
        if (term == 0.0) return sum;
        sum += term;
        // The term ratio tends monotonically to z, so the tail is bounded by a
        // geometric series in max(|ratio|, |z|).
        const double r = std::max(std::abs(ratio), std::abs(z));
        if (std::abs(term) * r / (1.0 - r) <= rel_tol * std::abs(sum))
            return sum;
    }
    throw NumericalError("hyp2f1: series did not converge within " + std::to_string(max_terms) +
                         " terms");
}

AcvfSequence arfima_acvf(const ArfimaSpec& spec, std::size_t maxlag) {
    spec.validate();
    const AcvfSequence w = fn_acvf(spec.d, spec.sigma2, maxlag);
    if (spec.phi == 0.0) return w;
    const double phi = spec.phi;
    const double d = spec.d;
    const double scale = 1.0 / (1.0 - phi * phi);

    auto forward_sum = [&](std::size_t h) {
        if (w.values[h] == 0.0) return 0.0;
        const auto hd = static_cast<double>(h);
        return w.values[h] * hyp2f1(hd + d, 1.0, hd + 1.0 - d, phi);
    };

    AcvfSequence out;
    out.values.resize(maxlag + 1);
    const double c0 = forward_sum(0);
    double back = 0.0;        // S(h)
    double phi_pow = 1.0;     // phi^h
    for (std::size_t h = 0; h <= maxlag; ++h) {
        if (h > 0) {
            back = phi * (w.values[h - 1] + back);
            phi_pow *= phi;
        }
        const double ch = h == 0 ? c0 : forward_sum(h);
        out.values[h] = scale * (ch + back + phi_pow * (c0 - w.values[0]));
    }
    return out;
}

double exact_mean_variance(const AcvfSequence& acvf, std::size_t T) {
    if (T == 0) throw DomainError("exact_mean_variance: T must be positive");
    if (acvf.values.size() < T)
        throw DomainError("exact_mean_variance: need autocovariances up to lag T-1 = " +
                          std::to_string(T - 1));
    const auto Td = static_cast<double>(T);
    double s = 0.0;
    for (std::size_t k = T - 1; k >= 1; --k) s += (1.0 - static_cast<double>(k) / Td) * acvf.values[k];
    return (acvf.values[0] + 2.0 * s) / Td;
}

Asymptotics asymptotics(const ArfimaSpec& spec, std::size_t T) {
    spec.validate();
    if (T < 2) throw DomainError("asymptotics: T must be at least 2");
    const double d = spec.d;
    const double kappa1 = 1.0 / (1.0 - spec.phi);
    const double g = gamma_ratio({1.0 - 2.0 * d}, {1.0 + d, 1.0 - d});
    Asymptotics a;
    a.omega2 = spec.sigma2 * kappa1 * kappa1 * g / (1.0 + 2.0 * d);
    a.mean_var_approx = std::pow(static_cast<double>(T), 2.0 * d - 1.0) * a.omega2;
    a.acvf_bias = -a.mean_var_approx;
    return a;
}

}  // namespace sieveboot
