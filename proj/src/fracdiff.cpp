#include "sieveboot/fracdiff.hpp"

#include "sieveboot/errors.hpp"

#include <algorithm>
#include <string>

namespace sieveboot {

FracFilter frac_coeffs(double d, std::size_t n) {
    if (!(d > -1.0)) throw DomainError("frac_coeffs: d must exceed -1, got " + std::to_string(d));
    if (n == 0) throw DomainError("frac_coeffs: filter length must be positive");
    FracFilter f;
    f.d = d;
    f.coeffs.resize(n);
    f.coeffs[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        const auto jd = static_cast<double>(j);
        f.coeffs[j] = f.coeffs[j - 1] * ((jd - 1.0 - d) / jd);
    }
    return f;
}

void apply_frac_filter(std::span<const double> series, const FracFilter& filter,
                       std::span<double> out) {
    const std::size_t n = series.size();
    if (n == 0) throw DomainError("apply_frac_filter: empty series");
    if (filter.size() < n) throw DomainError("apply_frac_filter: filter shorter than series");
    if (out.size() != n) throw DomainError("apply_frac_filter: output length mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    const double* a = filter.coeffs.data();
    // Scatter form: every input contributes to all later outputs.
    for (std::size_t s = 0; s < n; ++s) {
        const double v = series[s];
        double* o = out.data() + s;
        const std::size_t len = n - s;
        for (std::size_t j = 0; j < len; ++j) o[j] += v * a[j];
    }
}

std::vector<double> apply_frac_filter(std::span<const double> series, double d) {
    if (series.empty()) throw DomainError("apply_frac_filter: empty series");
    const FracFilter filter = frac_coeffs(d, series.size());
    std::vector<double> out(series.size());
    apply_frac_filter(series, filter, out);
    return out;
}

}  // namespace sieveboot
