#pragma once

#include "sieveboot/acvf.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace sieveboot {

/// Dense T x T covariance Toeplitz(gamma(0..T-1)), checked positive definite.
struct ToeplitzCov {
    Eigen::MatrixXd sigma;

    static ToeplitzCov from_acvf(const AcvfSequence& acvf, std::size_t T);
    std::size_t dim() const noexcept { return static_cast<std::size_t>(sigma.rows()); }
};

/// A_{T,k} (1/2 on the k-th off-diagonals) minus (rho_k + c / sqrt(T)) I_T.
Eigen::MatrixXd build_B(std::size_t T, std::size_t k, double rho_k, double c);

/// kappa_r = 2^{r-1} (r-1)! tr[(B Sigma)^r], r = 1..r_max (r_max <= 4), the
/// cumulants of x'Bx for x ~ N(0, Sigma).
std::vector<double> quadform_cumulants(const Eigen::MatrixXd& B, const ToeplitzCov& sigma,
                                       int r_max = 4);

struct EdgeworthOptions {
    /// Evaluate even when d >= 0.1, where the fourth-order expansion is not valid.
    bool allow_invalid_d = false;
    /// Keep only the skewness term (r = 3 expansion).
    bool first_order_only = false;
    /// Expand tr[(P - sS)^r] as polynomials in s once per curve instead of a
    /// dense product per point; agrees with the dense path to rounding.
    bool trace_polynomial = false;
    /// Worker threads for curve evaluation.
    unsigned threads = 1;
};

struct EdgeworthPoint {
    double c = 0.0;
    double cdf = 0.0;
    double u = 0.0;
    double eta3 = 0.0;
    double eta4 = 0.0;
    std::array<double, 4> kappa{};
};

/// Edgeworth CDF P(Q < 0) given the cumulants of Q:
/// G(u) - {eta3/6 H2(u) + eta4/24 H3(u) + eta3^2/72 H5(u)} g(u), u = -kappa1/sqrt(kappa2).
EdgeworthPoint edgeworth_from_cumulants(const std::array<double, 4>& kappa,
                                        bool first_order_only = false);

/// Precomputes Sigma and A Sigma for one (k, acvf, T) so the CDF of
/// W_k = sqrt(T)(rho0hat(k) - rho(k)) can be evaluated at many points.
class EdgeworthEvaluator {
public:
    EdgeworthEvaluator(std::size_t k, const AcvfSequence& acvf, std::size_t T, double d,
                       EdgeworthOptions options = {});

    EdgeworthPoint at(double c) const;

    double rho() const noexcept { return rho_; }
    std::size_t lag() const noexcept { return k_; }
    std::size_t length() const noexcept { return T_; }
    /// sqrt(kappa_2 at c = 0) / (T gamma(0)): large-sample sd of rho0hat(k).
    double asymptotic_sd() const noexcept { return sd_; }
    const EdgeworthOptions& options() const noexcept { return options_; }

private:
    std::array<double, 4> cumulants_dense(double shift) const;
    std::array<double, 4> cumulants_polynomial(double shift) const;

    std::size_t k_;
    std::size_t T_;
    double rho_;
    double gamma0_;
    EdgeworthOptions options_;
    Eigen::MatrixXd sigma_;
    Eigen::MatrixXd a_sigma_;
    // Traces of words in P = A Sigma and S = Sigma, for the polynomial path.
    struct WordTraces {
        double p, s, pp, ps, ss, ppp, pps, pss, sss, pppp, ppps, ppss, psps, psss, ssss;
    };
    WordTraces words_{};
    double sd_ = 0.0;
};

/// F~_{W_k}(c). Throws DomainError when d >= 0.1 unless overridden.
EdgeworthPoint edgeworth_cdf_W(double c, std::size_t k, const AcvfSequence& acvf, std::size_t T,
                               double d, EdgeworthOptions options = {});

struct EdgeworthCurve {
    std::size_t k = 0;
    double rho_k = 0.0;
    std::vector<double> x;        // rho0hat scale
    std::vector<double> cdf;
    std::vector<double> density;  // central differences of cdf in x
    std::vector<std::array<double, 4>> kappa;
    std::vector<bool> valid;      // density >= 0 and 0 <= cdf <= 1
    bool monotone = true;
};

/// Grid rho(k) +/- half_width_sd asymptotic sds with step sd / 25.
std::vector<double> default_rho0_grid(const EdgeworthEvaluator& ev, double half_width_sd = 6.0);

/// CDF on the rho0hat scale F(x) = F~(sqrt(T)(x - rho(k))) and its density.
EdgeworthCurve edgeworth_density_rho0(const EdgeworthEvaluator& ev, std::span<const double> grid);
EdgeworthCurve edgeworth_density_rho0(std::size_t k, const AcvfSequence& acvf, std::size_t T,
                                      double d, std::span<const double> grid,
                                      EdgeworthOptions options = {});

}  // namespace sieveboot
