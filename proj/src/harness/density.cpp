#include "sieveboot/harness/density.hpp"

#include "sieveboot/bootstrap.hpp"
#include "sieveboot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sieveboot::harness {

namespace {

constexpr double kDensityFloor = 1e-12;

double interpolate(std::span<const double> x, std::span<const double> y, double t, bool* clipped) {
    if (t <= x.front() || t >= x.back()) {
        if (clipped) *clipped = t < x.front() || t > x.back();
        return t <= x.front() ? y.front() : y.back();
    }
    if (clipped) *clipped = false;
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const double w = (t - x[j - 1]) / (x[j] - x[j - 1]);
    return y[j - 1] + w * (y[j] - y[j - 1]);
}

void fill_cdf(DensityEstimate& est) {
    est.cdf.assign(est.x.size(), 0.0);
    for (std::size_t i = 1; i < est.x.size(); ++i)
        est.cdf[i] = est.cdf[i - 1] + 0.5 * (est.pdf[i] + est.pdf[i - 1]) * (est.x[i] - est.x[i - 1]);
}

}  // namespace

std::string to_string(DensitySource s) {
    switch (s) {
        case DensitySource::mc: return "MC";
        case DensitySource::sbs: return "SBS";
        case DensitySource::pfsbs: return "PFSBS";
        case DensitySource::fpfbs: return "FPFBS";
        case DensitySource::edgeworth: return "Edgeworth";
        case DensitySource::exact_normal: return "ExactNormal";
        case DensitySource::other: return "other";
    }
    return "other";
}

DensitySource density_source_for(BootstrapKind k) {
    switch (k) {
        case BootstrapKind::sbs: return DensitySource::sbs;
        case BootstrapKind::pfsbs: return DensitySource::pfsbs;
        case BootstrapKind::fpfbs: return DensitySource::fpfbs;
    }
    return DensitySource::other;
}

double DensityEstimate::pdf_at(double t, bool* clipped) const {
    if (x.empty()) throw DomainError("DensityEstimate: empty grid");
    const double v = interpolate(x, pdf, t, clipped);
    return (t < x.front() || t > x.back()) ? 0.0 : v;
}

double DensityEstimate::cdf_at(double t, bool* clipped) const {
    if (x.empty()) throw DomainError("DensityEstimate: empty grid");
    return interpolate(x, cdf, t, clipped);
}

double silverman_bandwidth(std::span<const double> points) {
    const std::size_t n = points.size();
    if (n < 2) throw DomainError("silverman_bandwidth: need at least two points");
    double mean = 0.0;
    for (double v : points) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : points) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    std::vector<double> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    double spread = std::min(sd, iqr / 1.349);
    if (!(spread > 0.0)) spread = sd;  // heavy ties: fall back to sd
    if (!(spread > 0.0)) throw NumericalError("silverman_bandwidth: degenerate spread");
    return 1.06 * spread * std::pow(static_cast<double>(n), -0.2);
}

std::vector<double> kde_grid(std::span<const double> points, double bandwidth, std::size_t n,
                             double pad_bandwidths) {
    if (points.empty() || n < 2) throw DomainError("kde_grid: need points and n >= 2");
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    const double a = *lo - pad_bandwidths * bandwidth;
    const double b = *hi + pad_bandwidths * bandwidth;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

DensityEstimate kde(std::span<const double> points, std::span<const double> grid, double bandwidth,
                    DensitySource source) {
    if (points.size() < 2) throw DomainError("kde: need at least two points");
    if (grid.size() < 2) throw DomainError("kde: need at least two grid points");
    const double h = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(points);
    DensityEstimate est;
    est.source = source;
    est.bandwidth = h;
    est.x.assign(grid.begin(), grid.end());
    est.pdf.assign(grid.size(), 0.0);
    const double norm = 1.0 / (static_cast<double>(points.size()) * h * std::sqrt(2.0 * std::numbers::pi));
    std::vector<double> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    const double reach = 9.0 * h;  // exp(-40.5) is below double resolution relative to the peak
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto first = std::lower_bound(sorted.begin(), sorted.end(), grid[g] - reach);
        const auto last = std::upper_bound(first, sorted.end(), grid[g] + reach);
        double s = 0.0;
        for (auto it = first; it != last; ++it) {
            const double z = (grid[g] - *it) / h;
            s += std::exp(-0.5 * z * z);
        }
        est.pdf[g] = s * norm;
    }
    fill_cdf(est);
    return est;
}

DensityEstimate kde(std::span<const double> points, std::size_t n, double scale, DensitySource source) {
    const double h = scale * silverman_bandwidth(points);
    const std::vector<double> grid = kde_grid(points, h, n);
    return kde(points, grid, h, source);
}

DensityEstimate normal_density(std::span<const double> grid, double mean, double variance,
                               DensitySource source) {
    if (!(variance > 0.0)) throw DomainError("normal_density: variance must be positive");
    DensityEstimate est;
    est.source = source;
    est.x.assign(grid.begin(), grid.end());
    const double sd = std::sqrt(variance);
    for (double t : grid) {
        const double z = (t - mean) / sd;
        est.pdf.push_back(std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi)));
        est.cdf.push_back(0.5 * std::erfc(-z / std::numbers::sqrt2));
    }
    return est;
}

DensityEstimate from_edgeworth(const EdgeworthCurve& curve) {
    DensityEstimate est;
    est.source = DensitySource::edgeworth;
    est.x = curve.x;
    est.cdf = curve.cdf;
    est.pdf = curve.density;
    return est;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("trapezoid: length mismatch");
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

GofReport gof_measures(const DensityEstimate& subject, const DensityEstimate& comparator,
                       std::span<const double> mc_points) {
    if (mc_points.empty()) throw DomainError("gof_measures: no MC points");
    std::vector<double> s(mc_points.begin(), mc_points.end());
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    GofReport rep;
    rep.subject = to_string(subject.source);
    rep.comparator = to_string(comparator.source);
    std::vector<double> p_mc(n), p_bs(n);
    double sq = 0.0;
    double kl = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        bool c1 = false, c2 = false;
        const double a = comparator.pdf_at(s[j], &c1);
        const double b = subject.pdf_at(s[j], &c2);
        if (c1 || c2) ++rep.clipped;
        sq += (a - b) * (a - b);
        kl += std::log(std::max(a, kDensityFloor) / std::max(b, kDensityFloor));
        p_mc[j] = comparator.cdf_at(s[j]);
        p_bs[j] = subject.cdf_at(s[j]);
    }
    rep.rmsd = std::sqrt(sq / static_cast<double>(n));
    rep.kld = kl / static_cast<double>(n);
    // PP plot from (0,0) to (1,1) through the points at the sorted MC values.
    std::vector<double> u{0.0}, gap{0.0};
    for (std::size_t j = 0; j < n; ++j) {
        u.push_back(p_mc[j]);
        gap.push_back(std::abs(p_bs[j] - p_mc[j]));
    }
    u.push_back(1.0);
    gap.push_back(0.0);
    rep.gini = std::clamp(2.0 * trapezoid(u, gap), 0.0, 1.0);
    return rep;
}

double ks_distance(std::span<const double> sample, const DensityEstimate& reference) {
    if (sample.empty()) throw DomainError("ks_distance: empty sample");
    std::vector<double> s(sample.begin(), sample.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double F = reference.cdf_at(s[i]);
        d = std::max({d, std::abs(F - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - F)});
    }
    return d;
}

}  // namespace sieveboot::harness
