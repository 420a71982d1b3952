#include "sieveboot/acvf.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/levinson.hpp"
#include "sieveboot/random.hpp"
#include "sieveboot/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

using namespace sieveboot;

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> normals(std::size_t T, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    std::vector<double> y(T);
    for (auto& v : y) v = rng.normal();
    return y;
}

Periodogram synthetic(std::size_t T, double (*shape)(double, double), double param) {
    Periodogram p;
    p.T = T;
    for (std::size_t j = 1; j <= (T - 1) / 2; ++j) {
        const double lam = 2 * std::numbers::pi * j / T;
        p.frequencies.push_back(lam);
        p.ordinates.push_back(shape(lam, param));
    }
    return p;
}

}  // namespace

TEST(SampleMean, Basic) {
    EXPECT_DOUBLE_EQ(sample_mean(std::vector<double>{1, 2, 3}), 2.0);
    EXPECT_THROW(sample_mean(std::vector<double>{}), DomainError);
}

TEST(RenormalizedMean, Cases) {
    const std::vector<double> y{1.0, 2.0, 6.0, -1.0};
    EXPECT_NEAR(renormalized_mean(y, 0.0, 0.0), 2.0 * 2.0, 1e-14);
    EXPECT_DOUBLE_EQ(renormalized_mean(y, 0.3, 2.0), 0.0);
    EXPECT_NEAR(renormalized_mean(y, 0.4, 0.0), std::pow(4.0, 0.1) * 2.0, 1e-14);
}

TEST(SampleAcvf, ConstantSeries) {
    const std::vector<double> y(10, 3.5);
    for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(sample_acvf(y, k), 0.0);
}

TEST(SampleAcvf, DivisorsDifferByFactor) {
    const auto y = normals(50, 1);
    for (std::size_t k : {0u, 1u, 7u, 49u}) {
        const double a = sample_acvf(y, k, AcvfDivisor::T);
        const double b = sample_acvf(y, k, AcvfDivisor::T_minus_k);
        EXPECT_NEAR(a, b * (50.0 - k) / 50.0, 1e-14);
    }
}

TEST(SampleAcvf, AlternatingZeroCentered) {
    const std::vector<double> y{1, -1, 1, -1};
    EXPECT_DOUBLE_EQ(sample_acvf(y, 1, AcvfDivisor::T, Centering::zero), -0.75);
}

TEST(SampleAcvf, AllMatchesSingle) {
    const auto y = normals(80, 2);
    const auto all = sample_acvf_all(y, 10, AcvfDivisor::T_minus_k);
    for (std::size_t k = 0; k <= 10; ++k)
        EXPECT_NEAR(all[k], sample_acvf(y, k, AcvfDivisor::T_minus_k), 1e-14);
    EXPECT_THROW(sample_acvf(y, 80), DomainError);
}

TEST(SampleAcf, Bounds) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto y = normals(30, 10 + s);
        for (std::size_t k = 1; k < 30; ++k) {
            EXPECT_LE(std::abs(sample_acf(y, k)), 1.0);
            EXPECT_LE(std::abs(sample_acf_zero_mean(y, k)), 1.0);
        }
    }
}

TEST(SampleAcf, AlternatingZeroMean) {
    std::vector<double> y(100);
    for (std::size_t t = 0; t < 100; ++t) y[t] = t % 2 ? -1.0 : 1.0;
    EXPECT_NEAR(sample_acf_zero_mean(y, 1), -0.99, 1e-15);
}

TEST(SampleAcf, Invariances) {
    const auto y = normals(60, 3);
    std::vector<double> affine(y), scaled(y);
    for (auto& v : affine) v = -2.5 * v + 7.0;
    for (auto& v : scaled) v = 3.0 * v;
    for (std::size_t k : {1u, 4u}) {
        EXPECT_NEAR(sample_acf(affine, k), sample_acf(y, k), 1e-13);
        EXPECT_NEAR(sample_acf_zero_mean(scaled, k), sample_acf_zero_mean(y, k), 1e-13);
    }
}

TEST(SampleAcf, Errors) {
    const std::vector<double> y(10, 1.0);
    EXPECT_THROW(sample_acf(y, 0), DomainError);
    EXPECT_THROW(sample_acf(y, 10), DomainError);
    EXPECT_THROW(sample_acf(y, 1), NumericalError);
}

TEST(SampleAcf, NegativeBiasForFractionalNoise) {
    const std::size_t T = 500;
    const auto g = fn_acvf(0.2, 1.0, T - 1);
    const GaussianSimulator sim(g, T);
    RandomStream rng(2024, 0);
    std::vector<double> r;
    std::vector<double> y(T);
    for (int i = 0; i < 1000; ++i) {
        sim.draw(rng, y);
        r.push_back(sample_acf(y, 1));
    }
    EXPECT_LT(median(r), 0.25);
}

TEST(Periodogram, ConstantSeriesZero) {
    const auto p = periodogram(std::vector<double>(20, 4.0));
    for (double v : p.ordinates) EXPECT_NEAR(v, 0.0, 1e-25);
}

TEST(Periodogram, DirectDftOracle) {
    const auto y = normals(37, 4);
    const auto p = periodogram(y);
    ASSERT_EQ(p.ordinates.size(), 18u);
    for (std::size_t j = 1; j <= 18; ++j) {
        std::complex<double> s = 0;
        for (std::size_t t = 1; t <= 37; ++t)
            s += y[t - 1] * std::polar(1.0, -2 * std::numbers::pi * double(j) * double(t) / 37.0);
        EXPECT_NEAR(p.ordinates[j - 1], std::norm(s) / (2 * std::numbers::pi * 37), 1e-12);
    }
}

TEST(Periodogram, ParsevalOddLength) {
    // For odd T: (2 pi / T) 2 sum_j I_j = sum (y - ybar)^2 / T.
    const auto y = normals(101, 5);
    const auto p = periodogram(y);
    double s = 0;
    for (double v : p.ordinates) s += v;
    const double m = sample_mean(y);
    double ss = 0;
    for (double v : y) ss += (v - m) * (v - m);
    EXPECT_NEAR(4 * std::numbers::pi * s / 101.0, ss / 101.0, 1e-12);
}

TEST(Periodogram, PureCosinePeak) {
    const std::size_t T = 64;
    std::vector<double> y(T);
    for (std::size_t t = 1; t <= T; ++t) y[t - 1] = std::cos(2 * std::numbers::pi * 5 * double(t) / T);
    const auto p = periodogram(y);
    for (std::size_t j = 0; j < p.ordinates.size(); ++j)
        if (j != 4) {
            EXPECT_GE(p.ordinates[4], 10 * p.ordinates[j]);
        }
}

TEST(LocalWhittle, FlatOrdinates) {
    const auto p = synthetic(501, [](double, double) { return 2.0; }, 0);
    EXPECT_NEAR(local_whittle(p, 50).d_hat, 0.0, 1e-8);
}

TEST(LocalWhittle, ExactPowerLaw) {
    const auto p = synthetic(501, [](double l, double d) { return std::pow(l, -2 * d); }, 0.3);
    const auto est = local_whittle(p, 56);
    EXPECT_NEAR(est.d_hat, 0.3, 0.005);
    EXPECT_NEAR(local_whittle_objective(p, 56, est.d_hat - est.offset), est.objective, 1e-9);
}

TEST(LocalWhittle, OffsetIsAdded) {
    const auto p = synthetic(501, [](double l, double d) { return std::pow(l, -2 * d); }, 0.1);
    EXPECT_NEAR(local_whittle(p, 56, 0.05).d_hat - local_whittle(p, 56).d_hat, 0.05, 1e-12);
}

TEST(LocalWhittle, GridAndGoldenSectionAgreeAtOptimum) {
    // The objective is smooth and convex here; refinement must not worsen the best grid value.
    const auto y = normals(300, 6);
    const auto p = periodogram(y);
    const auto est = local_whittle(p, default_bandwidth(300));
    for (int i = 0; i < 97; ++i) {
        const double d = -0.49 + 0.98 * i / 96.0;
        EXPECT_LE(est.objective, local_whittle_objective(p, default_bandwidth(300), d) + 1e-12);
    }
}

TEST(LocalWhittle, FractionalNoiseMedian) {
    const std::size_t T = 500;
    const GaussianSimulator sim(fn_acvf(0.4, 1.0, T - 1), T);
    RandomStream rng(31, 0);
    std::vector<double> d, y(T);
    for (int i = 0; i < 1000; ++i) {
        sim.draw(rng, y);
        d.push_back(local_whittle(periodogram(y), default_bandwidth(T)).d_hat);
    }
    const double m = median(d);
    EXPECT_GE(m, 0.3);
    EXPECT_LE(m, 0.5);
}

TEST(LocalWhittle, BandwidthChecks) {
    const auto p = periodogram(normals(50, 1));
    EXPECT_THROW(local_whittle(p, 1), DomainError);
    EXPECT_THROW(local_whittle(p, 25), DomainError);
    EXPECT_EQ(default_bandwidth(500), 56u);
}

TEST(Gph, ExactLogLinear) {
    const auto p = synthetic(401, [](double l, double d) { return std::pow(2 * std::sin(l / 2), -2 * d); }, 0.2);
    EXPECT_NEAR(gph(p, 49).d_hat, 0.2, 1e-12);
}

TEST(Gph, FlatOrdinates) {
    const auto p = synthetic(401, [](double, double) { return 0.7; }, 0);
    EXPECT_NEAR(gph(p, 49).d_hat, 0.0, 1e-13);
}

TEST(Gph, FractionalNoiseMedian) {
    const std::size_t T = 500;
    const GaussianSimulator sim(fn_acvf(0.2, 1.0, T - 1), T);
    RandomStream rng(32, 0);
    std::vector<double> d, y(T);
    for (int i = 0; i < 1000; ++i) {
        sim.draw(rng, y);
        d.push_back(gph(periodogram(y), default_bandwidth(T)).d_hat);
    }
    EXPECT_NEAR(median(d), 0.2, 0.1);
}

TEST(MemoryMethodNames, RoundTrip) {
    EXPECT_EQ(memory_method_from_string(to_string(MemoryMethod::gph)), MemoryMethod::gph);
    EXPECT_EQ(memory_method_from_string(to_string(MemoryMethod::local_whittle)), MemoryMethod::local_whittle);
    EXPECT_THROW(memory_method_from_string("x"), DomainError);
}
