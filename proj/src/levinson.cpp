#include "sieveboot/levinson.hpp"

#include "sieveboot/errors.hpp"

#include <cmath>
#include <string>

namespace sieveboot {

LevinsonSolution levinson_solve(const AcvfSequence& acvf, std::size_t h) {
    if (acvf.values.empty() || acvf.maxlag() < h)
        throw DomainError("levinson_solve: need autocovariances up to lag " + std::to_string(h));
    const auto& g = acvf.values;
    if (!(g[0] > 0.0)) throw NumericalError("levinson_solve: gamma(0) must be positive");

    // a holds predictor weights: yhat(t) = sum_j a[j-1] y(t-j).
    std::vector<double> a;
    std::vector<double> prev;
    a.reserve(h);
    LevinsonSolution sol;
    sol.order = h;
    sol.pacf.reserve(h);
    double v = g[0];
    for (std::size_t m = 1; m <= h; ++m) {
        double num = g[m];
        for (std::size_t j = 1; j < m; ++j) num -= a[j - 1] * g[m - j];
        const double kappa = num / v;
        prev = a;
        a.push_back(kappa);
        for (std::size_t j = 1; j < m; ++j) a[j - 1] = prev[j - 1] - kappa * prev[m - j - 1];
        v *= (1.0 - kappa * kappa);
        if (!(v > 0.0) || !(std::abs(kappa) < 1.0))
            throw NumericalError("levinson_solve: non-positive prediction variance at order " +
                                 std::to_string(m));
        sol.pacf.push_back(kappa);
    }
    sol.phi.resize(h);
    for (std::size_t j = 0; j < h; ++j) sol.phi[j] = -a[j];
    sol.sigma2 = v;
    return sol;
}

GaussianSimulator::GaussianSimulator(const AcvfSequence& acvf, std::size_t T) : T_(T) {
    if (T == 0) throw DomainError("GaussianSimulator: T must be positive");
    if (acvf.values.size() < T)
        throw DomainError("GaussianSimulator: need autocovariances up to lag T-1 = " +
                          std::to_string(T - 1));
    const auto& g = acvf.values;
    if (!(g[0] > 0.0)) throw NumericalError("GaussianSimulator: gamma(0) must be positive");

    offset_.resize(T);
    std::size_t total = 0;
    for (std::size_t t = 0; t < T; ++t) {
        offset_[t] = total;
        total += t;
    }
    coef_.resize(total);
    var_.resize(T);
    sd_.resize(T);

    std::vector<double> a;  // order-m predictor weights on lags 1..m
    std::vector<double> prev;
    a.reserve(T);
    double v = g[0];
    var_[0] = v;
    for (std::size_t m = 1; m < T; ++m) {
        double num = g[m];
        for (std::size_t j = 1; j < m; ++j) num -= a[j - 1] * g[m - j];
        const double kappa = num / v;
        prev = a;
        a.push_back(kappa);
        for (std::size_t j = 1; j < m; ++j) a[j - 1] = prev[j - 1] - kappa * prev[m - j - 1];
        v *= (1.0 - kappa * kappa);
        if (!(v > 0.0))
            throw NumericalError("GaussianSimulator: non-positive prediction variance at order " +
                                 std::to_string(m));
        var_[m] = v;
        // Row m predicts y(m) from y(0..m-1); weight on y(s) is a[m-s-1].
        double* row = coef_.data() + offset_[m];
        for (std::size_t s = 0; s < m; ++s) row[s] = a[m - s - 1];
    }
    for (std::size_t t = 0; t < T; ++t) sd_[t] = std::sqrt(var_[t]);
}

void GaussianSimulator::from_innovations(std::span<const double> z, std::span<double> out) const {
    if (z.size() != T_ || out.size() != T_)
        throw DomainError("GaussianSimulator: innovation/output length must equal T");
    for (std::size_t t = 0; t < T_; ++t) {
        const double* row = coef_.data() + offset_[t];
        double pred = 0.0;
        for (std::size_t s = 0; s < t; ++s) pred += row[s] * out[s];
        out[t] = pred + sd_[t] * z[t];
    }
}

void GaussianSimulator::draw(RandomStream& rng, std::span<double> out) const {
    std::vector<double> z(T_);
    for (auto& v : z) v = rng.normal();
    from_innovations(z, out);
}

std::vector<double> GaussianSimulator::draw(RandomStream& rng) const {
    std::vector<double> out(T_);
    draw(rng, out);
    return out;
}

std::vector<double> simulate_gaussian(const AcvfSequence& acvf, std::size_t T, RandomStream& rng) {
    return GaussianSimulator(acvf, T).draw(rng);
}

}  // namespace sieveboot
