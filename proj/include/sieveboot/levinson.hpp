#pragma once

#include "sieveboot/acvf.hpp"
#include "sieveboot/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sieveboot {

/// Order-h solution of the Yule-Walker equations
///   sum_{j=0}^{h} phi_h(j) gamma(j - k) = delta_0(k) sigma2_h,  k = 0..h,
/// in the prediction-error convention phi_h(0) = 1,
/// e_h(t) = sum_{j=0}^{h} phi_h(j) y(t-j). So an AR(1) with coefficient a has
/// phi_1(1) = -a. pacf[j-1] is the j-th partial autocorrelation.
struct LevinsonSolution {
    std::size_t order = 0;
    std::vector<double> phi;   // phi_h(1..h)
    double sigma2 = 0.0;
    std::vector<double> pacf;  // kappa_1..kappa_h
};

/// Durbin-Levinson recursion up to order h. Throws NumericalError if a stage
/// prediction variance is not strictly positive.
LevinsonSolution levinson_solve(const AcvfSequence& acvf, std::size_t h);

/// Exact Gaussian sampler for N(0, Toeplitz(gamma(0..T-1))) via the
/// Durbin-Levinson innovations form
///   y(t) = yhat_{t-1}(t) + sqrt(v_{t-1}) z_t.
/// All predictor coefficients are computed once (O(T^2) memory) so repeated
/// draws cost O(T^2) multiply-adds each.
class GaussianSimulator {
public:
    GaussianSimulator(const AcvfSequence& acvf, std::size_t T);

    std::size_t length() const noexcept { return T_; }

    std::vector<double> draw(RandomStream& rng) const;
    void draw(RandomStream& rng, std::span<double> out) const;

    /// Path from caller-supplied standard normal innovations z_1..z_T.
    void from_innovations(std::span<const double> z, std::span<double> out) const;

    /// Stage prediction variances v_0..v_{T-1}.
    const std::vector<double>& stage_variances() const noexcept { return var_; }

private:
    std::size_t T_;
    std::vector<double> coef_;    // row t (length t) holds weights on y(0..t-1)
    std::vector<std::size_t> offset_;
    std::vector<double> sd_;
    std::vector<double> var_;
};

/// One exact Gaussian path of length T. Needs acvf.maxlag() >= T-1.
std::vector<double> simulate_gaussian(const AcvfSequence& acvf, std::size_t T, RandomStream& rng);

}  // namespace sieveboot
