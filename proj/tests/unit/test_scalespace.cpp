#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tempscale/errors.hpp"
#include "tempscale/scalespace.hpp"
#include "tempscale/scaletime.hpp"

using namespace tempscale;

namespace {

std::vector<double> impulse(std::size_t n, std::size_t at = 0) {
    std::vector<double> x(n, 0.0);
    x[at] = 1.0;
    return x;
}

// Direct recursion y_k[i] = y_k[i-1] + a_k (y_{k-1}[i] - y_k[i-1]) over every stage.
std::vector<std::vector<double>> cascade(const std::vector<double>& x, const std::vector<double>& a) {
    std::vector<std::vector<double>> out;
    std::vector<double> prev = x;
    for (double ak : a) {
        std::vector<double> y(x.size());
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += ak * (prev[i] - s);
            y[i] = s;
        }
        out.push_back(y);
        prev = y;
    }
    return out;
}

}  // namespace

TEST(Ladder, LogarithmicSmallCase) {
    const auto l = build_ladder(LogarithmicParams{2.0, 1.0, 3, 0});
    ASSERT_EQ(l.size(), 3u);
    EXPECT_NEAR(l.tau[0], 1.0 / 16, 1e-15);
    EXPECT_NEAR(l.tau[1], 1.0 / 4, 1e-15);
    EXPECT_NEAR(l.tau[2], 1.0, 1e-15);
    EXPECT_NEAR(l.mu[0], 0.25, 1e-15);
    EXPECT_NEAR(l.mu[1], std::sqrt(3.0) / 4, 1e-15);
    EXPECT_NEAR(l.mu[2], std::sqrt(3.0) / 2, 1e-15);
}

TEST(Ladder, VarianceAdditivity) {
    for (double c : {std::sqrt(2.0), 1.6, 2.0}) {
        const auto l = build_log_ladder(c, 300.0, 9, 8);
        double acc = 0.0;
        for (std::size_t k = 0; k < l.size(); ++k) {
            acc += l.mu[k] * l.mu[k];
            EXPECT_NEAR(acc / l.tau[k], 1.0, 1e-12);
        }
        double stages = 0.0;
        for (double m : l.stage_mu()) stages += m * m;
        EXPECT_NEAR(stages / l.tau.back(), 1.0, 1e-12);
        EXPECT_EQ(l.stage_mu().size(), l.size() + 8);
    }
}

TEST(Ladder, UniformAndGeometric) {
    const auto u = build_ladder(UniformVarianceParams{1.0, 4});
    EXPECT_EQ(u.tau, (std::vector<double>{1, 2, 3, 4}));
    const auto g = build_log_ladder(std::sqrt(2.0), 256.0, 8);
    for (std::size_t k = 1; k < g.size(); ++k) EXPECT_NEAR(g.tau[k] / g.tau[k - 1], 2.0, 1e-12);
    EXPECT_NEAR(g.tau.back(), 256.0, 1e-12);
}

TEST(Ladder, Errors) {
    EXPECT_THROW(build_log_ladder(1.0, 1.0, 3), DomainError);
    EXPECT_THROW(build_log_ladder(2.0, 0.0, 3), DomainError);
    EXPECT_THROW(build_log_ladder(2.0, 1.0, 0), DomainError);
    EXPECT_THROW(build_uniform_ladder(0.0, 3), DomainError);
}

TEST(Smooth, MatchesDirectCascade) {
    const auto l = build_uniform_ladder(1.5, 5);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    std::vector<double> x(300);
    for (auto& v : x) v = nd(rng);
    const auto s = smooth(x, 1.0, l, Discretization::BackwardEuler);
    const auto ref = cascade(x, std::vector<double>(5, 1.0 / (1.0 + 1.5)));
    for (std::size_t k = 0; k < 5; ++k)
        for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s.L(k, i), ref[k][i], 1e-12);
}

TEST(Smooth, VarianceMatchedStageHasExactVariance) {
    for (double mu : {0.3, 1.0, 4.0}) {
        const double a = stage_coefficient(mu, 1.0, Discretization::VarianceMatched);
        // Geometric distribution with success probability a: variance (1-a)/a^2.
        EXPECT_NEAR((1.0 - a) / (a * a), mu * mu, 1e-12);
        EXPECT_NEAR(stage_coefficient(mu, 1.0, Discretization::BackwardEuler), 1.0 / (1.0 + mu), 1e-15);
    }
}

TEST(Smooth, ImpulseHasUnitMassAndIsCausal) {
    const auto l = build_uniform_ladder(2.0, 6);
    const auto s = smooth(impulse(400, 50), 1.0, l);
    for (std::size_t k = 0; k < l.size(); ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < 400; ++i) {
            sum += s.L(k, i);
            if (i < 50) {
                EXPECT_EQ(s.L(k, i), 0.0);
            }
        }
        EXPECT_NEAR(sum, 1.0, 1e-10);
    }
    EXPECT_THROW(smooth(std::vector<double>{}, 1.0, l), DomainError);
}

TEST(Smooth, LogLadderModeNearScaleTimeDelay) {
    const double c = std::sqrt(2.0), tau = 256.0;
    const auto l = build_log_ladder(c, tau, 6);
    const double delta = map_parameters(tau, c).delta;
    const auto be = impulse_response(l, l.size() - 1, 1.0, Discretization::BackwardEuler);
    EXPECT_NEAR(static_cast<double>(oracle::argmax(be.values)), delta, 2.0);
    // The variance-matched mode sits a few samples early at dt = 1 and converges as dt shrinks.
    const auto vm = impulse_response(l, l.size() - 1, 0.02);
    EXPECT_NEAR(0.02 * static_cast<double>(oracle::argmax(vm.values)), delta, 0.2);
}

TEST(Smooth, ConstantSignalStaysConstantFromSteadyState) {
    const auto l = build_log_ladder(std::sqrt(2.0), 64.0, 6);
    IntegratorState st(l, 1.0);
    st.prime(5.0);
    for (int i = 0; i < 500; ++i)
        for (double v : stream_step(st, 5.0)) EXPECT_NEAR(v, 5.0, 1e-10);
}

TEST(Stream, EqualsBatchExactly) {
    const auto l = build_log_ladder(std::sqrt(2.0), 128.0, 7);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ud(-1, 1);
    std::vector<double> x(700);
    for (auto& v : x) v = ud(rng);
    const auto batch = smooth(x, 0.5, l);
    IntegratorState st(l, 0.5);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto out = stream_step(st, x[i]);
        for (std::size_t k = 0; k < l.size(); ++k) ASSERT_EQ(out[k], batch.L(k, i));
    }
}

TEST(Stream, ZerosAfterHistoryDecay) {
    const auto l = build_uniform_ladder(1.0, 6);
    IntegratorState st(l, 1.0);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ud(-1, 1);
    for (int i = 0; i < 50; ++i) stream_step(st, ud(rng));
    double prev = 1e300;
    for (int i = 0; i < 400; ++i) {
        const auto out = stream_step(st, 0.0);
        double m = 0.0;
        for (double v : out) m = std::max(m, std::abs(v));
        EXPECT_LE(m, prev + 1e-15);
        prev = m;
    }
    EXPECT_LT(prev, 1e-10);
}

TEST(Stream, UninitializedStateIsUsageError) {
    IntegratorState st;
    EXPECT_THROW(stream_step(st, 1.0), UsageError);
    EXPECT_THROW(st.prime(1.0), UsageError);
}

TEST(Derivative, BackwardDifferences) {
    const double dt = 0.01, w = 2.0;
    const std::size_t n = 2000;
    Plane p(1, n);
    for (std::size_t i = 0; i < n; ++i) p(0, i) = std::sin(w * dt * i);
    const auto d2 = backward_difference(p, dt, 2);
    const auto d1 = backward_difference(p, dt, 1);
    for (std::size_t i = 10; i < n; i += 37) {
        EXPECT_NEAR(d2(0, i), -w * w * std::sin(w * dt * i), 3 * w * w * w * dt);
        EXPECT_NEAR(d1(0, i), w * std::cos(w * dt * i), w * w * dt);
    }
    EXPECT_EQ(d1(0, 0), d1(0, 1));
    EXPECT_EQ(d2(0, 0), d2(0, 2));
    EXPECT_EQ(d2(0, 1), d2(0, 2));

    Plane c(2, 50, 3.0);
    for (int order : {1, 2}) {
        const auto d = backward_difference(c, dt, order);
        for (double v : d.data()) EXPECT_EQ(v, 0.0);
    }
}

TEST(Derivative, RampSlopeAtCoarseLevel) {
    const auto l = build_log_ladder(std::sqrt(2.0), 64.0, 5);
    std::vector<double> x(2000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.25 * i;
    auto s = smooth(x, 1.0, l);
    compute_derivatives(s);
    EXPECT_NEAR(s.derivative(1)(l.size() - 1, 1999), 0.25, 1e-6);
    EXPECT_NEAR(s.derivative(2)(l.size() - 1, 1999), 0.0, 1e-6);
}

TEST(GaussianPath, ImpulseIsSymmetricSampledGaussian) {
    const std::vector<double> tau{4.0, 16.0};
    const auto s = smooth_gaussian(impulse(201, 100), 1.0, tau);
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t j = 1; j < 40; ++j) EXPECT_NEAR(s.L(k, 100 - j), s.L(k, 100 + j), 1e-15);
        EXPECT_NEAR(s.L(k, 100), oracle::gaussian(0.0, tau[k]), 2e-3);
        EXPECT_EQ(s.delay[k], 0.0);
    }
}

TEST(GaussianPath, SineAttenuation) {
    const double dt = 0.01, w = 1.5, tau = 0.8;
    std::vector<double> x(6000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(w * dt * i);
    const std::vector<double> tl{tau};
    const auto s = smooth_gaussian(x, dt, tl);
    const double g = std::exp(-w * w * tau / 2);
    for (std::size_t i = 1000; i < 5000; i += 53) EXPECT_NEAR(s.L(0, i), g * x[i], 1e-4);
}

TEST(GaussianPath, SemiGroup) {
    std::vector<double> x(1500);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.05 * i) + 0.3 * std::cos(0.21 * i);
    const std::vector<double> t1{9.0}, t2{16.0}, t12{25.0};
    const auto a = smooth_gaussian(x, 1.0, t1);
    const auto row = a.L.row(0);
    const auto b = smooth_gaussian(std::vector<double>(row.begin(), row.end()), 1.0, t2);
    const auto c = smooth_gaussian(x, 1.0, t12);
    for (std::size_t i = 200; i < 1300; ++i) EXPECT_NEAR(b.L(0, i), c.L(0, i), 1e-6);
}

TEST(Delay, UniformBackwardEuler) {
    const double mu = 4.0;
    const auto l = build_uniform_ladder(mu, 8);
    for (std::size_t k = 0; k < l.size(); ++k) {
        const double K = static_cast<double>(k + 1);
        EXPECT_NEAR(measure_delay(l, k, 0.05, Discretization::BackwardEuler), mu * (K - 1), 0.05 + 1e-3) << k;
    }
    EXPECT_NEAR(measure_delay(l, 0, 1.0), 0.0, 1.0);
}

TEST(Delay, VarianceMatchedNegativeBinomialMode) {
    const double mu = 3.0;
    const auto l = build_uniform_ladder(mu, 6);
    const double a = stage_coefficient(mu, 1.0, Discretization::VarianceMatched);
    for (std::size_t k = 1; k < l.size(); ++k) {
        const int K = static_cast<int>(k + 1);
        std::vector<double> pmf(400);
        for (int n = 0; n < 400; ++n)
            pmf[n] = std::exp(std::lgamma(n + K) - std::lgamma(n + 1) - std::lgamma(K) + K * std::log(a) +
                              n * std::log1p(-a));
        EXPECT_NEAR(measure_delay(l, k, 1.0), static_cast<double>(oracle::argmax(pmf)), 1.0);
    }
}

TEST(Delay, LogLadderAgainstScaleTime) {
    const auto l = build_log_ladder(2.0, 1.0, 1);
    EXPECT_NEAR(measure_delay(l, 0, 1e-3) / map_parameters(1.0, 2.0).delta, 1.0, 0.10);
    const auto m = build_log_ladder(std::sqrt(2.0), 1024.0, 10);
    const auto d = measure_delays(m, 1.0);
    for (std::size_t k = 1; k < d.size(); ++k) EXPECT_GE(d[k], d[k - 1]);
}

TEST(Invariants, NonCreationOfExtrema) {
    std::mt19937 rng(2024);
    std::normal_distribution<double> nd;
    const auto l = build_log_ladder(std::sqrt(2.0), 256.0, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x(256, 0.0);
        for (std::size_t i = 64; i < 200; ++i) x[i] = nd(rng);
        const auto s = smooth(x, 1.0, l);
        std::size_t prev = count_extrema(x);
        for (std::size_t k = 0; k < l.size(); ++k) {
            const auto row = s.L.row(k);
            const std::size_t n = count_extrema(row);
            ASSERT_LE(n, prev) << "trial " << trial << " level " << k;
            prev = n;
        }
    }
}

TEST(Invariants, LogLadderSelfSimilarity) {
    const double c = std::sqrt(2.0), dt = 0.05;
    const auto l = build_log_ladder(c, 64.0, 6);
    const auto a = impulse_response(l, 2, dt);
    const auto b = impulse_response(l, 3, dt);
    // b(t) ~ a(t / c) / c
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < b.values.size(); ++i) {
        const double u = dt * i / c / dt;
        const auto j = static_cast<std::size_t>(u);
        if (j + 1 >= a.values.size()) break;
        const double av = a.values[j] + (u - j) * (a.values[j + 1] - a.values[j]);
        worst = std::max(worst, std::abs(b.values[i] - av / c));
        peak = std::max(peak, b.values[i]);
    }
    EXPECT_LT(worst / peak, 0.05);
}

TEST(Invariants, CountExtrema) {
    EXPECT_EQ(count_extrema(std::vector<double>{0, 1, 0, 1, 0}), 3u);
    EXPECT_EQ(count_extrema(std::vector<double>{1, 2, 3}), 0u);
    EXPECT_EQ(count_extrema(std::vector<double>{1, 1, 1}), 0u);
}
