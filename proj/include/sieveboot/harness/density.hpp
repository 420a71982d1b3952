#pragma once

#include "sieveboot/bootstrap.hpp"
#include "sieveboot/edgeworth.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sieveboot::harness {

enum class DensitySource { mc, sbs, pfsbs, fpfbs, edgeworth, exact_normal, other };

std::string to_string(DensitySource s);
DensitySource density_source_for(BootstrapKind k);

struct DensityEstimate {
    std::vector<double> x;
    std::vector<double> pdf;
    std::vector<double> cdf;
    DensitySource source = DensitySource::other;
    double bandwidth = 0.0;  // kernel estimates only

    /// Linear interpolation; `clipped` is set when t lies outside the grid.
    double pdf_at(double t, bool* clipped = nullptr) const;
    double cdf_at(double t, bool* clipped = nullptr) const;
};

/// 1.06 min(sd, IQR/1.349) n^{-1/5}. Throws NumericalError on zero spread.
double silverman_bandwidth(std::span<const double> points);

/// Equally spaced grid covering the points padded by `pad_bandwidths` bandwidths.
std::vector<double> kde_grid(std::span<const double> points, double bandwidth, std::size_t n,
                             double pad_bandwidths = 5.0);

/// Gaussian kernel estimate on `grid`; bandwidth <= 0 selects the Silverman rule.
/// The cdf is the cumulative trapezoid of the pdf starting at 0.
DensityEstimate kde(std::span<const double> points, std::span<const double> grid,
                    double bandwidth = 0.0, DensitySource source = DensitySource::other);

/// Convenience: Silverman bandwidth times `scale` and a padded grid of n points.
DensityEstimate kde(std::span<const double> points, std::size_t n, double scale = 1.0,
                    DensitySource source = DensitySource::other);

DensityEstimate normal_density(std::span<const double> grid, double mean, double variance,
                               DensitySource source = DensitySource::exact_normal);

DensityEstimate from_edgeworth(const EdgeworthCurve& curve);

double trapezoid(std::span<const double> x, std::span<const double> y);

struct GofReport {
    double rmsd = 0.0;
    double kld = 0.0;
    double gini = 0.0;
    std::string subject;
    std::string comparator;
    std::size_t clipped = 0;  // MC points outside either grid
};

/// RMSD and KLD at the sorted MC points (densities floored at 1e-12), and
/// GINI = 2A with A = int |P_subject - P_comparator| dP_comparator by the
/// trapezoid rule over the PP-plot points.
GofReport gof_measures(const DensityEstimate& subject, const DensityEstimate& comparator,
                       std::span<const double> mc_points);

/// sup_t |F(t) - ECDF(t)| evaluated at the jumps of the ECDF.
double ks_distance(std::span<const double> sample, const DensityEstimate& reference);

}  // namespace sieveboot::harness
