#include "sieveboot/errors.hpp"
#include "sieveboot/fracdiff.hpp"
#include "sieveboot/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sieveboot;

TEST(FracCoeffs, IntegerDifferencing) {
    const auto f = frac_coeffs(1.0, 4);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_DOUBLE_EQ(f.coeffs[0], 1.0);
    EXPECT_DOUBLE_EQ(f.coeffs[1], -1.0);
    EXPECT_DOUBLE_EQ(f.coeffs[2], 0.0);
    EXPECT_DOUBLE_EQ(f.coeffs[3], 0.0);
}

TEST(FracCoeffs, IdentityFilter) {
    const auto f = frac_coeffs(0.0, 3);
    EXPECT_EQ(f.coeffs, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(FracCoeffs, FirstTermsAtPointFour) {
    const auto f = frac_coeffs(0.4, 3);
    EXPECT_DOUBLE_EQ(f.coeffs[0], 1.0);
    EXPECT_NEAR(f.coeffs[1], -0.4, 1e-15);
    EXPECT_NEAR(f.coeffs[2], -0.12, 1e-15);
}

TEST(FracCoeffs, MatchesGammaRatioForm) {
    // alpha_j = Gamma(j - d) / (Gamma(j + 1) Gamma(-d)), evaluated with std::lgamma.
    const double d = 0.3;
    const auto f = frac_coeffs(d, 60);
    for (std::size_t j = 1; j < 60; ++j) {
        const double log_mag = std::lgamma(j - d) - std::lgamma(j + 1.0) - std::lgamma(-d);
        // Gamma(-d) < 0 and Gamma(j - d) > 0 for j >= 1, so alpha_j < 0.
        EXPECT_NEAR(f.coeffs[j], -std::exp(log_mag), 1e-13);
    }
}

TEST(FracCoeffs, NegativeForPositiveD) {
    for (double d : {0.05, 0.3, 0.49, 0.9}) {
        const auto f = frac_coeffs(d, 500);
        for (std::size_t j = 1; j < f.size(); ++j) ASSERT_LT(f.coeffs[j], 0.0) << d << " " << j;
    }
}

TEST(FracCoeffs, RejectsBadArguments) {
    EXPECT_THROW(frac_coeffs(-1.0, 3), DomainError);
    EXPECT_THROW(frac_coeffs(0.2, 0), DomainError);
}

TEST(FracCoeffs, ParsevalPartialSum) {
    // sum_j alpha_j(-d)^2 = Gamma(1 - 2d) / Gamma(1 - d)^2.
    const double d = 0.3;
    const auto f = frac_coeffs(-d, 1000000);
    double s = 0.0;
    for (double a : f.coeffs) s += a * a;
    const double target = std::tgamma(1.0 - 2.0 * d) / std::pow(std::tgamma(1.0 - d), 2);
    EXPECT_NEAR(s / target, 1.0, 0.01);
}

TEST(ApplyFracFilter, ZeroIsIdentity) {
    const std::vector<double> y{1.5, -2.0, 0.25, 7.0};
    EXPECT_EQ(apply_frac_filter(y, 0.0), y);
}

TEST(ApplyFracFilter, DifferencesConstant) {
    const std::vector<double> y{3.0, 3.0, 3.0};
    const auto w = apply_frac_filter(y, 1.0);
    EXPECT_DOUBLE_EQ(w[0], 3.0);
    EXPECT_DOUBLE_EQ(w[1], 0.0);
    EXPECT_DOUBLE_EQ(w[2], 0.0);
}

TEST(ApplyFracFilter, DirectConvolution) {
    RandomStream rng(11, 0);
    std::vector<double> y(40);
    for (auto& v : y) v = rng.normal();
    const double d = 0.35;
    const auto w = apply_frac_filter(y, d);
    const auto a = frac_coeffs(d, y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
        double s = 0.0;
        for (std::size_t j = 0; j <= t; ++j) s += a.coeffs[j] * y[t - j];
        EXPECT_NEAR(w[t], s, 1e-12);
    }
}

TEST(ApplyFracFilter, RoundTrip) {
    RandomStream rng(12, 0);
    for (double d : {0.4, -0.45, 0.9, -0.9, 0.1}) {
        std::vector<double> y(200);
        for (auto& v : y) v = rng.normal();
        const auto back = apply_frac_filter(apply_frac_filter(y, d), -d);
        for (std::size_t t = 0; t < y.size(); ++t) ASSERT_NEAR(back[t], y[t], 1e-10) << d;
    }
}

TEST(ApplyFracFilter, PrecomputedMatchesConvenience) {
    RandomStream rng(13, 0);
    std::vector<double> y(64);
    for (auto& v : y) v = rng.normal();
    const FracFilter f = frac_coeffs(-0.25, 100);
    std::vector<double> out(y.size());
    apply_frac_filter(y, f, out);
    const auto ref = apply_frac_filter(y, -0.25);
    for (std::size_t t = 0; t < y.size(); ++t) EXPECT_NEAR(out[t], ref[t], 1e-13);
}

TEST(ApplyFracFilter, ShortCoefficientsRejected) {
    const std::vector<double> y(10, 1.0);
    std::vector<double> out(10);
    EXPECT_THROW(apply_frac_filter(y, frac_coeffs(0.2, 5), out), DomainError);
}
