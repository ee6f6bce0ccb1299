#include <gtest/gtest.h>

#include <lpcs/gd_estimator.hpp>

#include <numbers>

#include "oracles.hpp"

using namespace lpcs;

namespace {

MeasurementSet full(const ComplexSignal& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return MeasurementSet(idx, x.samples, x.size());
}

MeasurementSet random_noisy_set(Rng& rng, std::size_t n, std::size_t m) {
    auto x = synthesize_sparse_signal(reference_components(), n);
    for (auto& v : x.samples) v += cplx{rng.normal(), rng.normal()};
    return sample_measurements(x, m, rng);
}

} // namespace

TEST(NormExponent, RejectsBelowOne) {
    EXPECT_THROW(NormExponent{0.5}, std::invalid_argument);
    EXPECT_NO_THROW(NormExponent{1.0});
    EXPECT_NO_THROW(NormExponent{3.7});
}

TEST(RotatedSamples, BinZeroIsIdentity) {
    Rng        rng(3);
    const auto ms = random_noisy_set(rng, 128, 64);
    const auto r  = rotated_samples(ms, 0);
    for (std::size_t i = 0; i < ms.size(); ++i) EXPECT_EQ(r[i], ms.values()[i]);
}

TEST(RotatedSamples, PerfectDemodulation) {
    const std::vector<SpectralComponent> c{{5, 2.5, 0.7}};
    const auto                           r = rotated_samples(full(synthesize_sparse_signal(c, 32)), 5);
    for (auto v : r) EXPECT_LT(std::abs(v - std::polar(2.5, 0.7)), 1e-12);
}

TEST(RotatedSamples, ReferenceSignalAtBin16) {
    const auto r = rotated_samples(full(synthesize_sparse_signal(reference_components(), 128)), 16);
    for (std::size_t n = 0; n < 128; ++n) {
        const double t        = 2.0 * std::numbers::pi * static_cast<double>(n) / 128.0;
        const cplx   expected = 4.0 + 3.0 * oracle::expj(16.0 * t) + 2.0 * oracle::expj(48.0 * t);
        EXPECT_LT(std::abs(r[n] - expected), 1e-12) << n;
    }
}

TEST(RobustTransform, MeanMatchesDftAtFullSampling) {
    Rng           rng(11);
    ComplexSignal x(64);
    for (auto& v : x.samples) v = {rng.normal(), rng.normal()};
    const auto X  = dft(x);
    const auto ms = full(x);
    for (std::size_t k = 0; k < 64; ++k) EXPECT_LT(std::abs(robust_transform_estimate(ms, k, NormExponent{2.0}) - X[k]), 1e-12);
}

TEST(RobustTransform, MedianRejectsOutlier) {
    const MeasurementSet ms({0, 1, 2}, {cplx{1, 0}, cplx{2, 0}, cplx{100, 0}}, 4);
    EXPECT_EQ(robust_transform_estimate(ms, 0, NormExponent{1.0}), cplx(2.0, 0.0));
}

TEST(RobustTransform, ConstantSetIsItsOwnLocation) {
    const cplx           c{0.3, -1.2};
    const MeasurementSet ms({0, 2, 3, 5}, std::vector<cplx>(4, c), 8);
    EXPECT_LT(std::abs(robust_transform_estimate(ms, 0, NormExponent{3.0}) - c), 1e-12);
}

TEST(RobustTransform, GeneralExponentMatchesGridSearch) {
    Rng rng(19);
    for (double L : {1.5, 3.0, 4.0}) {
        std::vector<cplx> v(15);
        for (auto& x : v) x = {rng.normal(), rng.normal()};
        v[3] = {8.0, -5.0};
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        const MeasurementSet ms(idx, v, 32);
        const auto           got    = robust_transform_estimate(ms, 0, NormExponent{L});
        const auto           expect = oracle::grid_lp_location(v, L);
        EXPECT_LT(std::abs(got - expect), 1e-6) << "L=" << L;
    }
}

TEST(RobustTransform, EmptySetRejected) {
    EXPECT_THROW((void)robust_transform_estimate(MeasurementSet({}, {}, 8), 0, NormExponent{2.0}), std::invalid_argument);
}

TEST(GeneralizedDeviation, RequiresTwoMeasurements) {
    EXPECT_THROW((void)generalized_deviation(MeasurementSet({1}, {cplx{1, 0}}, 8), NormExponent{2.0}), std::invalid_argument);
}

TEST(GeneralizedDeviation, ZeroAtNoiselessSingleComponent) {
    const std::vector<SpectralComponent> c{{9, 1.7, 0.4}};
    const auto                           x = synthesize_sparse_signal(c, 64);
    Rng                                  rng(4);
    for (std::size_t m : {2u, 5u, 32u}) {
        for (double L : {1.0, 2.0, 3.0}) {
            const auto gd = generalized_deviation(sample_measurements(x, m, rng), NormExponent{L});
            EXPECT_LT(gd[9], 1e-12);
        }
    }
}

TEST(GeneralizedDeviation, SquaredNormIsBiasedVariance) {
    Rng        rng(12);
    const auto ms = random_noisy_set(rng, 128, 64);
    const auto gd = generalized_deviation(ms, NormExponent{2.0});
    for (std::size_t k : {0u, 16u, 77u}) {
        const auto r    = rotated_samples(ms, k);
        cplx       mean = 0.0;
        for (auto v : r) mean += v;
        mean /= 64.0;
        double var = 0.0;
        for (auto v : r) var += std::norm(v - mean);
        EXPECT_NEAR(gd[k], var / 64.0, 1e-12 * var);
    }
}

TEST(GeneralizedDeviation, NonnegativePhaseAndScaleProperties) {
    Rng rng(2718);
    for (int rep = 0; rep < 50; ++rep) {
        const auto   ms    = random_noisy_set(rng, 128, 2 + rng.below(120));
        const double L     = 1.0 + 2.0 * rng.uniform01();
        const double theta = 2.0 * std::numbers::pi * rng.uniform01();
        const double c     = 0.1 + 10.0 * rng.uniform01();
        const auto   gd    = generalized_deviation(ms, NormExponent{L});
        const auto   rot   = generalized_deviation(ms.scaled(std::polar(1.0, theta)), NormExponent{L});
        const auto   sc    = generalized_deviation(ms.scaled(cplx{c, 0.0}), NormExponent{L});
        for (std::size_t k = 0; k < gd.size(); ++k) {
            ASSERT_GE(gd[k], 0.0);
            ASSERT_NEAR(rot[k], gd[k], 1e-10 * std::max(1.0, gd[k]));
            ASSERT_NEAR(sc[k], std::pow(c, L) * gd[k], 1e-10 * sc[k]);
        }
        const auto argmin = [](const GDProfile& p) { return std::min_element(p.values.begin(), p.values.end()) - p.values.begin(); };
        EXPECT_EQ(argmin(gd), argmin(sc));
    }
}

TEST(GeneralizedDeviation, ExhaustiveSubsetsMatchDirectFormula) {
    // N = 8, M = 4: all C(8,4) = 70 subsets
    const std::vector<SpectralComponent> c{{1, 1.0, 0.3}, {3, 0.6, -1.1}};
    const auto                           x = synthesize_sparse_signal(c, 8);
    for (double L : {1.0, 2.0, 3.0}) {
        std::vector<double> lib(8, 0.0);
        std::vector<double> ref(8, 0.0);
        int                 count = 0;
        oracle::for_each_subset(8, 4, [&](const std::vector<std::size_t>& idx) {
            std::vector<cplx> vals;
            for (auto n : idx) vals.push_back(x[n]);
            const auto gd     = generalized_deviation(MeasurementSet(idx, vals, 8), NormExponent{L});
            const auto direct = oracle::direct_gd(idx, x.samples, 8, L);
            for (std::size_t k = 0; k < 8; ++k) {
                lib[k] += gd[k];
                ref[k] += direct[k];
            }
            ++count;
        });
        ASSERT_EQ(count, 70);
        for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(lib[k] / 70.0, ref[k] / 70.0, 1e-12) << "L=" << L << " k=" << k;
    }
}

TEST(GeneralizedDeviation, SignalBinsBelowEveryOtherBin) {
    const auto x = synthesize_sparse_signal(reference_components(), 128);
    for (double L : {1.0, 2.0, 3.0}) {
        Rng       rng(1000 + static_cast<int>(L));
        const int trials = 2000;
        int       ok     = 0;
        for (int t = 0; t < trials; ++t) {
            const auto gd      = generalized_deviation(sample_measurements(x, 64, rng), NormExponent{L});
            const auto worst   = std::max({gd[16], gd[32], gd[64]});
            double     best_ns = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < 128; ++k) {
                if (k != 16 && k != 32 && k != 64) best_ns = std::min(best_ns, gd[k]);
            }
            ok += worst < best_ns ? 1 : 0;
        }
        EXPECT_GE(ok, trials * 95 / 100) << "L=" << L;
    }
}

TEST(AnalyticRatio, ReferenceAmplitudes) {
    const auto comps = reference_components();
    EXPECT_DOUBLE_EQ(analytic_gd_ratio(comps, 0, NormExponent{2.0}), 13.0 / 29.0);
    EXPECT_DOUBLE_EQ(analytic_gd_ratio(comps, 1, NormExponent{2.0}), 20.0 / 29.0);
    EXPECT_DOUBLE_EQ(analytic_gd_ratio(comps, 2, NormExponent{2.0}), 25.0 / 29.0);
    const std::vector<SpectralComponent> one{{3, 2.0, 0.0}};
    EXPECT_EQ(analytic_gd_ratio(one, 0, NormExponent{3.0}), 0.0);
    EXPECT_THROW((void)analytic_gd_ratio(comps, 3, NormExponent{2.0}), std::invalid_argument);
}

TEST(AnalyticRatio, MonteCarloAgreesForSquaredNorm) {
    const auto          x = synthesize_sparse_signal(reference_components(), 128);
    Rng                 rng(606);
    std::vector<double> acc(128, 0.0);
    for (int t = 0; t < 2000; ++t) {
        const auto gd = generalized_deviation(sample_measurements(x, 64, rng), NormExponent{2.0});
        for (std::size_t k = 0; k < 128; ++k) acc[k] += gd[k];
    }
    double ns = 0.0;
    for (std::size_t k = 0; k < 128; ++k) {
        if (k != 16 && k != 32 && k != 64) ns += acc[k];
    }
    ns /= 125.0;
    const auto comps = reference_components();
    EXPECT_NEAR(acc[16] / ns, analytic_gd_ratio(comps, 0, NormExponent{2.0}), 0.05);
    EXPECT_NEAR(acc[32] / ns, analytic_gd_ratio(comps, 1, NormExponent{2.0}), 0.05);
    EXPECT_NEAR(acc[64] / ns, analytic_gd_ratio(comps, 2, NormExponent{2.0}), 0.05);
}
