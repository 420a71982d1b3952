#include "sieveboot/bootstrap.hpp"

#include "sieveboot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sieveboot {

std::string to_string(BootstrapKind k) {
    switch (k) {
        case BootstrapKind::sbs: return "sbs";
        case BootstrapKind::pfsbs: return "pfsbs";
        case BootstrapKind::fpfbs: return "fpfbs";
    }
    return "unknown";
}

BootstrapKind bootstrap_kind_from_string(const std::string& s) {
    if (s == "sbs") return BootstrapKind::sbs;
    if (s == "pfsbs") return BootstrapKind::pfsbs;
    if (s == "fpfbs") return BootstrapKind::fpfbs;
    throw DomainError("unknown bootstrap method '" + s + "'");
}

double AdmissibleWindow::clamp(double d) const noexcept {
    return std::min(std::max(d, lower()), upper());
}

std::string BootstrapMethod::label() const {
    std::ostringstream os;
    os << to_string(kind);
    if (kind == BootstrapKind::fpfbs && fixed_d != 0.5) os << "_d" << fixed_d;
    if (fixed_order) os << "_h" << *fixed_order;
    if (estimator != SieveMethod::burg) os << "_" << to_string(estimator);
    if (kind == BootstrapKind::pfsbs) {
        if (memory_estimator != MemoryMethod::local_whittle) os << "_" << to_string(memory_estimator);
        if (memory_offset != 0.0) os << "_off" << memory_offset;
    }
    return os.str();
}

SieveFit fit_sieve(std::span<const double> series, const BootstrapMethod& method) {
    const std::size_t h =
        method.fixed_order ? *method.fixed_order : select_order_aic(series, method.estimator).h_hat;
    return fit(series, h, method.estimator);
}

SieveResampler::SieveResampler(std::span<const double> series, SieveFit fit)
    : centered_(series.begin(), series.end()), fit_(std::move(fit)) {
    if (fit_.T != centered_.size()) throw DomainError("SieveResampler: fit does not match series");
    if (fit_.h >= centered_.size()) throw DomainError("SieveResampler: order must be < T");
    for (auto& v : centered_) v -= fit_.mean;
    scale_ = std::sqrt(fit_.sigma2_bar);
}

void SieveResampler::draw(RandomStream& rng, std::span<double> out) const {
    const std::size_t T = centered_.size();
    const std::size_t h = fit_.h;
    if (out.size() != T) throw DomainError("SieveResampler: output length must equal T");
    // tau uniform on {h, ..., T} (1-based); y*(1-j) = y(tau-j+1), j = 1..h.
    const std::size_t tau = h + rng.index(T - h + 1);

    // buf[h + t] holds y*(t + 1); buf[0..h-1] are the starting values.
    thread_local std::vector<double> buf;
    buf.resize(T + h);
    for (std::size_t i = 0; i < h; ++i) buf[i] = centered_[tau - h + i];
    const double* phi = fit_.phi_bar.data();
    const double* res = fit_.residuals_std.data();
    for (std::size_t t = 0; t < T; ++t) {
        double v = scale_ * res[rng.index(T)];
        const double* past = buf.data() + h + t;  // past[-j] = y*(t+1-j)
        for (std::size_t j = 1; j <= h; ++j) v -= phi[j - 1] * past[-static_cast<std::ptrdiff_t>(j)];
        buf[h + t] = v;
    }
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(h), buf.end(), out.begin());
}

std::vector<double> SieveResampler::draw(RandomStream& rng) const {
    std::vector<double> out(centered_.size());
    draw(rng, out);
    return out;
}

std::vector<double> sbs_draw(std::span<const double> series, const SieveFit& fit, RandomStream& rng) {
    if (fit.h >= series.size()) throw DomainError("sbs_draw: order must be < T");
    return SieveResampler(series, fit).draw(rng);
}

std::vector<double> pfsbs_draw(std::span<const double> series, double d_pre,
                               const BootstrapMethod& config, RandomStream& rng) {
    if (!config.window.contains(d_pre))
        throw DomainError("pfsbs_draw: pre-filter exponent " + std::to_string(d_pre) +
                          " outside the admissible window");
    const std::vector<double> w = apply_frac_filter(series, d_pre);
    const SieveResampler resampler(w, fit_sieve(w, config));
    const std::vector<double> w_star = resampler.draw(rng);
    return apply_frac_filter(w_star, -d_pre);
}

PrefilterChoice choose_prefilter(std::span<const double> series, const BootstrapMethod& method) {
    PrefilterChoice c;
    switch (method.kind) {
        case BootstrapKind::sbs: return c;
        case BootstrapKind::fpfbs: c.raw = method.fixed_d; break;
        case BootstrapKind::pfsbs: {
            const Periodogram p = periodogram(series);
            const auto N = static_cast<std::size_t>(
                std::floor(std::pow(static_cast<double>(series.size()), method.bandwidth_exponent)));
            const MemoryEstimate est = method.memory_estimator == MemoryMethod::gph
                                           ? gph(p, N, method.memory_offset)
                                           : local_whittle(p, N, method.memory_offset);
            c.raw = est.d_hat;
            break;
        }
    }
    c.d = method.window.clamp(c.raw);
    c.clamped = c.d != c.raw;
    return c;
}

std::vector<double> BootstrapGenerator::filtered_series(std::span<const double> series,
                                                        const BootstrapMethod& method,
                                                        PrefilterChoice& choice, bool& prefiltered) {
    choice = choose_prefilter(series, method);
    prefiltered = method.kind != BootstrapKind::sbs;
    if (!prefiltered) return {series.begin(), series.end()};
    return apply_frac_filter(series, choice.d);
}

BootstrapGenerator::BootstrapGenerator(std::span<const double> series, const BootstrapMethod& method)
    : filtered_(filtered_series(series, method, prefilter_, prefiltered_)),
      resampler_(filtered_, fit_sieve(filtered_, method)) {
    if (prefiltered_) inverse_ = frac_coeffs(-prefilter_.d, series.size());
}

void BootstrapGenerator::draw(RandomStream& rng, std::span<double> out) const {
    if (!prefiltered_) {
        resampler_.draw(rng, out);
        return;
    }
    thread_local std::vector<double> w;
    w.resize(out.size());
    resampler_.draw(rng, w);
    apply_frac_filter(w, inverse_, out);
}

std::vector<double> BootstrapGenerator::draw(RandomStream& rng) const {
    std::vector<double> out(filtered_.size());
    draw(rng, out);
    return out;
}

AcvfSequence sieve_implied_acvf(const SieveFit& fit, const AcvfSequence& sample_acvf,
                                std::size_t maxlag) {
    const std::size_t h = fit.h;
    if (sample_acvf.values.size() <= h)
        throw DomainError("sieve_implied_acvf: need sample autocovariances up to lag h");
    AcvfSequence out;
    out.values.resize(maxlag + 1);
    for (std::size_t k = 0; k <= maxlag; ++k) {
        if (k <= h) {
            out.values[k] = sample_acvf.values[k];
            continue;
        }
        double v = 0.0;
        for (std::size_t j = 1; j <= h; ++j) v -= fit.phi_bar[j - 1] * out.values[k - j];
        out.values[k] = v;
    }
    return out;
}

double sorted_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw DomainError("sorted_quantile: empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Interval percentile_set(std::span<const double> draws, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("percentile_set: alpha must be in (0, 1)");
    if (draws.size() < 20) throw DomainError("percentile_set: need at least 20 draws");
    const double m = sample_mean(draws);
    std::vector<double> sq(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) sq[i] = (draws[i] - m) * (draws[i] - m);
    std::sort(sq.begin(), sq.end());
    const double q = sorted_quantile(sq, 1.0 - alpha);
    const double hw = std::sqrt(q);
    return {m - hw, m + hw, m, hw};
}

}  // namespace sieveboot
