#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "edsm/elastic.hpp"
#include "edsm/errors.hpp"
#include "edsm/indicators.hpp"
#include "oracles.hpp"

using namespace edsm;

namespace {

const Medium kMedium(1.0, 1.0, 8 * kPi);

double rel(const CVec2& a, const CVec2& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST(Medium, WaveNumbers) {
    const WaveNumbers k = wave_numbers(kMedium);
    EXPECT_NEAR(k.kp, 14.510394913874, 1e-11);
    EXPECT_NEAR(k.ks, 25.132741228718, 1e-11);
    EXPECT_NEAR(k.ks / k.kp, std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(wave_numbers(Medium(0, 1, 1)).kp, 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(wave_numbers(Medium(0, 1, 1)).ks, 1.0);
    EXPECT_EQ(wave_numbers(Medium(2, 1, 2)).kp, 1.0);
    EXPECT_EQ(wave_numbers(Medium(2, 1, 2)).ks, 2.0);
}

TEST(Medium, RejectsInvalidParameters) {
    EXPECT_THROW(Medium(1, 0, 1), InvalidArgument);
    EXPECT_THROW(Medium(-3, 1, 1), InvalidArgument);
    EXPECT_THROW(Medium(1, 1, 0), InvalidArgument);
    EXPECT_THROW(PlaneWave(WaveMode::P, Vec2(1, 1)), InvalidArgument);
}

TEST(PlaneWave, FieldAtOrigin) {
    const CVec2 p = plane_wave_field(PlaneWave(WaveMode::P, Vec2(1, 0)), Vec2::Zero(), kMedium);
    const CVec2 s = plane_wave_field(PlaneWave(WaveMode::S, Vec2(1, 0)), Vec2::Zero(), kMedium);
    EXPECT_EQ(p, CVec2(1, 0));
    EXPECT_EQ(s, CVec2(0, 1));
}

TEST(PlaneWave, HelmholtzAndPolarization) {
    const Medium med(1.0, 1.0, 2.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double ang = kPi * u(rng);
        const Vec2 d(std::cos(ang), std::sin(ang));
        const Vec2 x = trial == 0 ? Vec2(0.3, 0.7) : Vec2(u(rng), u(rng));
        for (WaveMode mode : {WaveMode::P, WaveMode::S}) {
            const PlaneWave w(mode, d);
            auto f = [&](const Vec2& y) { return plane_wave_field(w, y, med); };
            const double k = mode == WaveMode::P ? med.kp() : med.ks();
            const CVec2 res = oracle::laplacian(f, x, 1e-3) + k * k * f(x);
            EXPECT_LE(res.norm(), 1e-6 * k * k);
            const Eigen::Matrix2cd g = oracle::gradient(f, x, 1e-3);
            const cplx div = g(0, 0) + g(1, 1);
            const cplx curl = g(1, 0) - g(0, 1);
            // P waves are curl-free, S waves divergence-free.
            EXPECT_LE(std::abs(mode == WaveMode::P ? curl : div), 1e-6 * k);
        }
    }
}

TEST(PlaneWave, TractionClosedForms) {
    const Vec2 d = Vec2(3, 4) / 5.0;
    const CVec2 tp = plane_wave_traction(PlaneWave(WaveMode::P, d), Vec2::Zero(), d, kMedium);
    const CVec2 ts = plane_wave_traction(PlaneWave(WaveMode::S, d), Vec2::Zero(), d, kMedium);
    EXPECT_LE(rel(tp, (kI * kMedium.kp() * 3.0 * d.cast<cplx>()).eval()), 1e-14);
    EXPECT_LE(rel(ts, (kI * kMedium.ks() * perp(d).cast<cplx>()).eval()), 1e-14);
}

TEST(PlaneWave, TractionMatchesFiniteDifferences) {
    const Medium med(1.5, 0.8, 3.0);
    const Vec2 nu = Vec2(1, -2).normalized();
    for (WaveMode mode : {WaveMode::P, WaveMode::S}) {
        const PlaneWave w(mode, Vec2(0.6, 0.8));
        const Vec2 x(0.4, -1.1);
        auto f = [&](const Vec2& y) { return plane_wave_field(w, y, med); };
        const CVec2 fd = oracle::traction(oracle::gradient(f, x, 1e-3), nu, med.lambda(), med.mu());
        EXPECT_LE(rel(plane_wave_traction(w, x, nu, med), fd), 1e-6);
    }
}

TEST(GreensTensor, Symmetry) {
    const Vec2 x(1, 0), y(0, 0.5);
    const CMat2 a = greens_tensor(x, y, kMedium);
    const CMat2 b = greens_tensor(y, x, kMedium);
    EXPECT_LE((a - b).norm(), 1e-12 * a.norm());
    EXPECT_LE((a - a.transpose()).norm(), 1e-12 * a.norm());
    EXPECT_THROW(greens_tensor(x, x, kMedium), InvalidArgument);
}

TEST(GreensTensor, SolvesNavier) {
    const Vec2 y(0, 0);
    for (const Vec2& q : {Vec2(1, 0), Vec2(0, 1)}) {
        auto f = [&](const Vec2& x) { return CVec2(greens_tensor(x, y, kMedium) * q.cast<cplx>()); };
        const Vec2 x(2, 1);
        const CVec2 res = oracle::lame_operator(f, x, 1, 1, 1e-3) + kMedium.omega() * kMedium.omega() * f(x);
        EXPECT_LE(res.norm(), 1e-4 * kMedium.omega() * kMedium.omega() * f(x).norm());
    }
}

TEST(GreensTensor, FarFieldAsymptotics) {
    const FarFieldPair c = farfield_prefactors(kMedium);
    for (double ang : {0.3, 2.0}) {
        const Vec2 xhat(std::cos(ang), std::sin(ang));
        const Vec2 q(0.6, -0.8);
        const double r = 200.0;
        const CVec2 u = greens_tensor(r * xhat, Vec2::Zero(), kMedium) * q.cast<cplx>();
        const FarFieldPair ff = point_source_farfield(xhat, Vec2::Zero(), q, kMedium);
        const CVec2 asym = c.p * std::exp(kI * kMedium.kp() * r) / std::sqrt(r) * ff.p * xhat.cast<cplx>() +
                           c.s * std::exp(kI * kMedium.ks() * r) / std::sqrt(r) * ff.s * perp(xhat).cast<cplx>();
        EXPECT_LE(rel(asym, u), 1e-3);
    }
}

// The paper's prefactor e^{iπ/4}/√(8πω) holds when λ + 2μ = 1 and μ = 1.
TEST(GreensTensor, PrefactorsReduceForUnitModuli) {
    const Medium unit(-1.0, 1.0, 5.0);
    const FarFieldPair c = farfield_prefactors(unit);
    const cplx expected = std::exp(kI * kPi / 4.0) / std::sqrt(8 * kPi * 5.0);
    EXPECT_LE(std::abs(c.p - expected), 1e-15);
    EXPECT_LE(std::abs(c.s - expected), 1e-15);
}

TEST(GreensTensor, DecayExponent) {
    const Vec2 q(1, 0);
    // Sample amplitude envelopes at two radii along a fixed direction.
    auto envelope = [&](double r) {
        double mx = 0.0;
        for (int k = 0; k < 40; ++k) {
            const double rr = r + 0.01 * k;
            const CVec2 u = greens_tensor(rr * Vec2(0.8, 0.6), Vec2::Zero(), kMedium) * q.cast<cplx>();
            mx = std::max(mx, u.norm());
        }
        return mx;
    };
    const double slope = std::log(envelope(1000.0) / envelope(10.0)) / std::log(100.0);
    EXPECT_NEAR(slope, -0.5, 0.05);
}

TEST(TractionKernel, MatchesFiniteDifferences) {
    const Vec2 x(1, 1), y(0, 0), nu(0, 1);
    const CMat2 k = greens_traction_kernel(x, y, nu, kMedium);
    // Column j of T_{ν(y)} Φ(x, y) is the traction in y of y ↦ Φ(x, y) e_j.
    CMat2 t;
    for (int j = 0; j < 2; ++j) {
        auto f = [&](const Vec2& yy) { return CVec2(greens_tensor(x, yy, kMedium).col(j)); };
        t.col(j) = oracle::traction(oracle::gradient(f, y, 1e-4), nu, 1, 1);
    }
    EXPECT_LE((k - t.transpose()).norm(), 1e-5 * k.norm());

    const CMat2 px = point_source_traction(x, y, Vec2(0.6, 0.8), kMedium);
    CMat2 tx;
    for (int j = 0; j < 2; ++j) {
        auto f = [&](const Vec2& xx) { return CVec2(greens_tensor(xx, y, kMedium).col(j)); };
        tx.col(j) = oracle::traction(oracle::gradient(f, x, 1e-4), Vec2(0.6, 0.8), 1, 1);
    }
    EXPECT_LE((px - tx).norm(), 1e-5 * px.norm());
    EXPECT_THROW(greens_traction_kernel(x, x, nu, kMedium), InvalidArgument);
}

TEST(TractionKernel, AmplitudeRatioAtLargeSeparation) {
    const Vec2 nu(0, 1);
    auto envelope = [&](double r) {
        double mx = 0.0;
        for (int k = 0; k < 60; ++k) {
            const double rr = r + 0.005 * k;
            mx = std::max(mx, greens_traction_kernel(rr * Vec2(0.6, 0.8), Vec2::Zero(), nu, kMedium).norm());
        }
        return mx;
    };
    EXPECT_NEAR(envelope(400.0) / envelope(100.0), 0.5, 0.1);
}

TEST(PointSourceFarField, Values) {
    const Vec2 xhat = Vec2(1, 2).normalized();
    const Vec2 q = Vec2(-3, 1).normalized();
    const FarFieldPair origin = point_source_farfield(xhat, Vec2::Zero(), q, kMedium);
    EXPECT_EQ(origin.p, cplx(q.dot(xhat), 0.0));
    EXPECT_EQ(point_source_farfield(Vec2(1, 0), Vec2::Zero(), Vec2(0, 1), kMedium).s, cplx(1.0, 0.0));
    const FarFieldPair moved = point_source_farfield(xhat, Vec2(2.5, -1), q, kMedium);
    EXPECT_NEAR(std::abs(moved.p), std::abs(q.dot(xhat)), 1e-15);

    // Samples at the direction grid coincide with the indicator test vectors.
    const int m = 8;
    const Vec2 z(0.7, -0.2);
    const TestVectors tv = test_vectors(z, q, m, kMedium);
    for (int i = 0; i < 2 * m; ++i) {
        const FarFieldPair f = point_source_farfield(unit_direction(kPi * i / m), z, q, kMedium);
        EXPECT_LE(std::abs(f.p - tv.p[i]), 1e-15);
        EXPECT_LE(std::abs(f.s - tv.s[i]), 1e-15);
    }
}
