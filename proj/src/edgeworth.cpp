#include "sieveboot/edgeworth.hpp"

#include "sieveboot/errors.hpp"
#include "sieveboot/levinson.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace sieveboot {
namespace {

// tr(X Y) without forming the product.
double trace_of_product(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    return X.cwiseProduct(Y.transpose()).sum();
}

constexpr std::array<double, 4> kCumulantScale{1.0, 2.0, 8.0, 48.0};  // 2^{r-1}(r-1)!

std::array<double, 4> cumulants_from_product(const Eigen::MatrixXd& M, int r_max) {
    std::array<double, 4> tr{};
    tr[0] = M.trace();
    if (r_max >= 2) {
        const Eigen::MatrixXd M2 = M * M;
        tr[1] = M2.trace();
        if (r_max >= 3) tr[2] = trace_of_product(M2, M);
        if (r_max >= 4) tr[3] = trace_of_product(M2, M2);
    }
    std::array<double, 4> kappa{};
    for (int r = 0; r < r_max; ++r) kappa[r] = kCumulantScale[r] * tr[r];
    return kappa;
}

void check_validity(double d, const EdgeworthOptions& opt) {
    if (d >= 0.1 && !opt.allow_invalid_d)
        throw DomainError("edgeworth: expansion is valid only for d < 0.1 (got d = " +
                          std::to_string(d) + ")");
}

}  // namespace

ToeplitzCov ToeplitzCov::from_acvf(const AcvfSequence& acvf, std::size_t T) {
    if (T == 0 || acvf.values.size() < T)
        throw DomainError("ToeplitzCov: need autocovariances up to lag T-1");
    // Positive definiteness: every Durbin-Levinson stage variance is positive.
    levinson_solve(AcvfSequence{{acvf.values.begin(), acvf.values.begin() + static_cast<std::ptrdiff_t>(T)}},
                   T - 1);
    ToeplitzCov cov;
    const auto n = static_cast<Eigen::Index>(T);
    cov.sigma.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            cov.sigma(i, j) = acvf.values[static_cast<std::size_t>(std::abs(i - j))];
    return cov;
}

Eigen::MatrixXd build_B(std::size_t T, std::size_t k, double rho_k, double c) {
    if (k < 1 || k >= T) throw DomainError("build_B: lag must satisfy 1 <= k < T");
    const auto n = static_cast<Eigen::Index>(T);
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + kk < n; ++i) {
        B(i, i + kk) = 0.5;
        B(i + kk, i) = 0.5;
    }
    B.diagonal().array() -= rho_k + c / std::sqrt(static_cast<double>(T));
    return B;
}

std::vector<double> quadform_cumulants(const Eigen::MatrixXd& B, const ToeplitzCov& sigma, int r_max) {
    if (r_max < 1 || r_max > 4) throw DomainError("quadform_cumulants: r_max must be in 1..4");
    if (B.rows() != sigma.sigma.rows() || B.cols() != sigma.sigma.cols() || B.rows() != B.cols())
        throw DomainError("quadform_cumulants: dimension mismatch");
    const std::array<double, 4> k = cumulants_from_product(B * sigma.sigma, r_max);
    return {k.begin(), k.begin() + r_max};
}

EdgeworthPoint edgeworth_from_cumulants(const std::array<double, 4>& kappa, bool first_order_only) {
    if (!(kappa[1] > 0.0)) throw NumericalError("edgeworth: non-positive variance cumulant");
    EdgeworthPoint p;
    p.kappa = kappa;
    const double sd = std::sqrt(kappa[1]);
    p.u = -kappa[0] / sd;
    p.eta3 = kappa[2] / (sd * sd * sd);
    p.eta4 = first_order_only ? 0.0 : kappa[3] / (kappa[1] * kappa[1]);
    const double u = p.u;
    const double h2 = u * u - 1.0;
    const double h3 = u * u * u - 3.0 * u;
    const double h5 = u * u * u * u * u - 10.0 * u * u * u + 15.0 * u;
    const double g = std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
    const double G = 0.5 * std::erfc(-u / std::numbers::sqrt2);
    double correction = p.eta3 / 6.0 * h2;
    if (!first_order_only) correction += p.eta4 / 24.0 * h3 + p.eta3 * p.eta3 / 72.0 * h5;
    p.cdf = G - correction * g;
    return p;
}

EdgeworthEvaluator::EdgeworthEvaluator(std::size_t k, const AcvfSequence& acvf, std::size_t T,
                                       double d, EdgeworthOptions options)
    : k_(k), T_(T), options_(options) {
    check_validity(d, options_);
    if (k < 1 || k >= T) throw DomainError("edgeworth: lag must satisfy 1 <= k < T");
    sigma_ = ToeplitzCov::from_acvf(acvf, T).sigma;
    gamma0_ = acvf.values[0];
    rho_ = acvf.values[k] / gamma0_;
    // A Sigma row i = (Sigma row i-k + Sigma row i+k) / 2.
    const auto n = static_cast<Eigen::Index>(T);
    const auto kk = static_cast<Eigen::Index>(k);
    a_sigma_ = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i - kk >= 0) a_sigma_.row(i) += 0.5 * sigma_.row(i - kk);
        if (i + kk < n) a_sigma_.row(i) += 0.5 * sigma_.row(i + kk);
    }
    if (options_.trace_polynomial) {
        const Eigen::MatrixXd& P = a_sigma_;
        const Eigen::MatrixXd& S = sigma_;
        const Eigen::MatrixXd PP = P * P;
        const Eigen::MatrixXd PS = P * S;
        const Eigen::MatrixXd SS = S * S;
        auto& w = words_;
        w.p = P.trace();
        w.s = S.trace();
        w.pp = PP.trace();
        w.ps = PS.trace();
        w.ss = SS.trace();
        w.ppp = trace_of_product(PP, P);
        w.pps = trace_of_product(PP, S);
        w.pss = trace_of_product(P, SS);
        w.sss = trace_of_product(SS, S);
        w.pppp = trace_of_product(PP, PP);
        w.ppps = trace_of_product(PP, PS);
        w.ppss = trace_of_product(PP, SS);
        w.psps = trace_of_product(PS, PS);
        w.psss = trace_of_product(PS, SS);
        w.ssss = trace_of_product(SS, SS);
    }
    const std::array<double, 4> k0 = options_.trace_polynomial ? cumulants_polynomial(rho_)
                                                               : cumulants_dense(rho_);
    sd_ = std::sqrt(k0[1]) / (static_cast<double>(T) * gamma0_);
}

std::array<double, 4> EdgeworthEvaluator::cumulants_dense(double shift) const {
    const Eigen::MatrixXd M = a_sigma_ - shift * sigma_;
    return cumulants_from_product(M, 4);
}

std::array<double, 4> EdgeworthEvaluator::cumulants_polynomial(double s) const {
    // tr[(P - sS)^r] expanded over cyclic classes of words.
    const auto& w = words_;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double s4 = s2 * s2;
    const std::array<double, 4> tr{
        w.p - s * w.s,
        w.pp - 2.0 * s * w.ps + s2 * w.ss,
        w.ppp - 3.0 * s * w.pps + 3.0 * s2 * w.pss - s3 * w.sss,
        w.pppp - 4.0 * s * w.ppps + s2 * (4.0 * w.ppss + 2.0 * w.psps) - 4.0 * s3 * w.psss + s4 * w.ssss};
    std::array<double, 4> kappa{};
    for (int r = 0; r < 4; ++r) kappa[r] = kCumulantScale[r] * tr[r];
    return kappa;
}

EdgeworthPoint EdgeworthEvaluator::at(double c) const {
    const double shift = rho_ + c / std::sqrt(static_cast<double>(T_));
    const std::array<double, 4> kappa =
        options_.trace_polynomial ? cumulants_polynomial(shift) : cumulants_dense(shift);
    EdgeworthPoint p = edgeworth_from_cumulants(kappa, options_.first_order_only);
    p.c = c;
    return p;
}

EdgeworthPoint edgeworth_cdf_W(double c, std::size_t k, const AcvfSequence& acvf, std::size_t T,
                               double d, EdgeworthOptions options) {
    return EdgeworthEvaluator(k, acvf, T, d, options).at(c);
}

std::vector<double> default_rho0_grid(const EdgeworthEvaluator& ev, double half_width_sd) {
    const double sd = ev.asymptotic_sd();
    const double step = sd / 25.0;
    const auto n = static_cast<int>(std::round(half_width_sd * 25.0));
    std::vector<double> grid;
    grid.reserve(2 * n + 1);
    for (int i = -n; i <= n; ++i) grid.push_back(ev.rho() + step * i);
    return grid;
}

EdgeworthCurve edgeworth_density_rho0(const EdgeworthEvaluator& ev, std::span<const double> grid) {
    if (grid.size() < 3) throw DomainError("edgeworth_density_rho0: need at least 3 grid points");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw DomainError("edgeworth_density_rho0: grid must be increasing");
    const std::size_t n = grid.size();
    EdgeworthCurve curve;
    curve.k = ev.lag();
    curve.rho_k = ev.rho();
    curve.x.assign(grid.begin(), grid.end());
    curve.cdf.resize(n);
    curve.kappa.resize(n);
    const double rootT = std::sqrt(static_cast<double>(ev.length()));

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const EdgeworthPoint p = ev.at(rootT * (grid[i] - ev.rho()));
            curve.cdf[i] = p.cdf;
            curve.kappa[i] = p.kappa;
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(ev.options().threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }

    curve.density.resize(n);
    curve.valid.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
        curve.density[i] = (curve.cdf[hi] - curve.cdf[lo]) / (grid[hi] - grid[lo]);
        curve.valid[i] = curve.density[i] >= 0.0 && curve.cdf[i] >= 0.0 && curve.cdf[i] <= 1.0;
        if (i > 0 && curve.cdf[i] < curve.cdf[i - 1]) curve.monotone = false;
    }
    return curve;
}

EdgeworthCurve edgeworth_density_rho0(std::size_t k, const AcvfSequence& acvf, std::size_t T,
                                      double d, std::span<const double> grid,
                                      EdgeworthOptions options) {
    return edgeworth_density_rho0(EdgeworthEvaluator(k, acvf, T, d, options), grid);
}

}  // namespace sieveboot
