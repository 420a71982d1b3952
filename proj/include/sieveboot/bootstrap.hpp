#pragma once

#include "sieveboot/acvf.hpp"
#include "sieveboot/ar_sieve.hpp"
#include "sieveboot/fracdiff.hpp"
#include "sieveboot/random.hpp"
#include "sieveboot/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sieveboot {

enum class BootstrapKind { sbs, pfsbs, fpfbs };

std::string to_string(BootstrapKind k);
BootstrapKind bootstrap_kind_from_string(const std::string& s);

/// Pre-filter exponents are kept inside [-0.5 + margin, 0.5 - margin].
struct AdmissibleWindow {
    double margin = 1e-3;

    double lower() const noexcept { return -0.5 + margin; }
    double upper() const noexcept { return 0.5 - margin; }
    bool contains(double d) const noexcept { return d >= lower() && d <= upper(); }
    double clamp(double d) const noexcept;
};

struct BootstrapMethod {
    BootstrapKind kind = BootstrapKind::sbs;
    /// Nominal fixed pre-filter for fpfbs; clamped into the window when used.
    double fixed_d = 0.5;
    /// Empty means AIC order selection.
    std::optional<std::size_t> fixed_order;
    SieveMethod estimator = SieveMethod::burg;
    /// Per-replication pre-filter estimate for pfsbs.
    MemoryMethod memory_estimator = MemoryMethod::local_whittle;
    double bandwidth_exponent = 0.65;
    double memory_offset = 0.0;
    AdmissibleWindow window;

    /// Stable name used for output files and for rng stream separation.
    std::string label() const;
};

/// SieveFit per the method's order rule and estimator.
SieveFit fit_sieve(std::span<const double> series, const BootstrapMethod& method);

/// Steps SB2-SB3 for one series and its fitted sieve. Each draw consumes one
/// uniform for the starting block tau in {h..T}, then T resampling indices.
/// Paths are on the centered scale: y*(1-j) = (y - ybar)(tau-j+1).
class SieveResampler {
public:
    SieveResampler(std::span<const double> series, SieveFit fit);

    void draw(RandomStream& rng, std::span<double> out) const;
    std::vector<double> draw(RandomStream& rng) const;

    const SieveFit& fit() const noexcept { return fit_; }
    std::size_t length() const noexcept { return centered_.size(); }

private:
    std::vector<double> centered_;
    SieveFit fit_;
    double scale_;
};

std::vector<double> sbs_draw(std::span<const double> series, const SieveFit& fit, RandomStream& rng);

/// Pre-filter with (1-z)^{d_pre}, run the sieve bootstrap on the filtered
/// series, then invert with the expanding-window (1-z)^{-d_pre}.
std::vector<double> pfsbs_draw(std::span<const double> series, double d_pre,
                               const BootstrapMethod& config, RandomStream& rng);

/// Pre-filter exponent the method would use on `series`.
struct PrefilterChoice {
    double d = 0.0;
    double raw = 0.0;      // before clamping (estimate + offset, or nominal fixed value)
    bool clamped = false;
};
PrefilterChoice choose_prefilter(std::span<const double> series, const BootstrapMethod& method);

/// Everything needed to draw bootstrap paths for one observed series and one
/// method; prepared once per replication and then drawn from B times.
class BootstrapGenerator {
public:
    BootstrapGenerator(std::span<const double> series, const BootstrapMethod& method);

    void draw(RandomStream& rng, std::span<double> out) const;
    std::vector<double> draw(RandomStream& rng) const;

    const SieveFit& fit() const noexcept { return resampler_.fit(); }
    const PrefilterChoice& prefilter() const noexcept { return prefilter_; }
    bool prefiltered() const noexcept { return prefiltered_; }

private:
    static std::vector<double> filtered_series(std::span<const double> series,
                                               const BootstrapMethod& method,
                                               PrefilterChoice& choice, bool& prefiltered);

    PrefilterChoice prefilter_;
    bool prefiltered_ = false;
    std::vector<double> filtered_;
    SieveResampler resampler_;
    FracFilter inverse_;
};

/// gammabar(k) = gammahat(k) for k <= h, then sum_{j=0}^{h} phi_bar(j) gammabar(k-j) = 0.
AcvfSequence sieve_implied_acvf(const SieveFit& fit, const AcvfSequence& sample_acvf,
                                std::size_t maxlag);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double center = 0.0;
    double half_width = 0.0;
};

/// Scalar elliptical percentile set: {s : (s - mean)^2 <= q}, q the
/// empirical (1 - alpha) quantile (linear interpolation) of the squared
/// centered draws.
Interval percentile_set(std::span<const double> draws, double alpha);

/// Linear-interpolation quantile of already sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

}  // namespace sieveboot
