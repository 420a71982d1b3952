#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sieveboot {

/// Truncated binomial expansion of (1 - z)^d.
struct FracFilter {
    double d = 0.0;
    std::vector<double> coeffs;  // alpha_0 .. alpha_{n-1}, alpha_0 == 1

    std::size_t size() const noexcept { return coeffs.size(); }
};

/// Coefficients of (1 - z)^d by the product recursion
/// alpha_j = alpha_{j-1} * (j - 1 - d) / j. Requires d > -1 and n >= 1.
FracFilter frac_coeffs(double d, std::size_t n);

/// Expanding-window filter w(t) = sum_{j=0}^{t-1} alpha_j y(t-j), t = 1..T.
/// No pre-sample values enter; output length equals input length.
std::vector<double> apply_frac_filter(std::span<const double> series, double d);

/// Same filter with precomputed coefficients (coeffs.size() >= series.size()).
/// Writes into `out`, which must have series.size() elements.
void apply_frac_filter(std::span<const double> series, const FracFilter& filter,
                       std::span<double> out);

}  // namespace sieveboot
