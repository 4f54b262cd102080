#include "edsm/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "edsm/errors.hpp"

namespace edsm {
namespace {

constexpr double kEps = 1e-17;
constexpr double kTiny = 1e-300;
constexpr double kSeriesLimit = 2.0;
constexpr double kAsymptoticLimit = 20.0;
constexpr int kMaxIterations = 100000;

// Ascending series; accurate to a few ulps for x <= 2.
BesselJY01 series_jy01(double x) {
    const double h = 0.5 * x;
    const double q = -h * h;
    const double two_over_pi = 2.0 / kPi;
    const double log_term = std::log(h) + std::numbers::egamma;

    // J_0 and the harmonic-weighted sum for Y_0.
    double term = 1.0, j0 = 1.0, y0_sum = 0.0, harmonic = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        j0 += term;
        y0_sum -= harmonic * term;
        if (std::abs(term) < kEps * std::abs(j0)) break;
    }

    // J_1 and the Y_1 sum with weights H_k + H_{k+1}.
    term = h;
    double j1 = h;
    double hk = 0.0, hk1 = 1.0;
    double y1_sum = (hk + hk1) * term;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        hk = hk1;
        hk1 += 1.0 / (k + 1);
        j1 += term;
        y1_sum += (hk + hk1) * term;
        if (std::abs(term) < kEps * std::abs(j1)) break;
    }

    BesselJY01 r;
    r.j0 = j0;
    r.j1 = j1;
    r.y0 = two_over_pi * (log_term * j0 + y0_sum);
    r.y1 = two_over_pi * log_term * j1 - two_over_pi / x - y1_sum / kPi;
    return r;
}

// Steed's method with ν = 0: CF1 for J_1/J_0, complex CF2 for (J'+iY')/(J+iY).
BesselJY01 steed_jy01(double x) {
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / kPi;

    int isign = 1;
    double h = kTiny, b = 0.0, d = 0.0, c = h;
    int it = 0;
    for (; it < kMaxIterations; ++it) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b - 1.0 / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (it == kMaxIterations) throw NumericError("Bessel CF1 did not converge");
    const double rjl = isign * kTiny;
    const double rjpl = h * rjl;
    const double f = rjpl / rjl;

    double a = 0.25;
    double p = -0.5 * xi, q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    double fact = a * xi / (p * p + q * q);
    double cr = br + q * fact, ci = bi + p * fact;
    double den = br * br + bi * bi;
    double dr = br / den, di = -bi / den;
    double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (it = 2; it < kMaxIterations; ++it) {
        a += 2 * (it - 1);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
    }
    if (it == kMaxIterations) throw NumericError("Bessel CF2 did not converge");

    const double gam = (p - f) / q;
    double rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    const double rymu = rjmu * gam;
    const double rymup = rymu * (p + q / gam);

    BesselJY01 r;
    r.j0 = rjmu;
    r.j1 = -f * rjmu;  // J_0' = -J_1
    r.y0 = rymu;
    r.y1 = -rymup;
    return r;
}

// Hankel asymptotic expansion, summed until terms stop decreasing.
BesselJY01 asymptotic_jy01(double x) {
    cplx h[2];
    for (int nu = 0; nu < 2; ++nu) {
        const double mu4 = 4.0 * nu * nu;
        cplx sum = 1.0, ik = 1.0;
        double ak = 1.0, prev = std::numeric_limits<double>::infinity();
        for (int k = 1; k < 200; ++k) {
            const double odd = 2.0 * k - 1.0;
            ak *= (mu4 - odd * odd) / (8.0 * k * x);
            if (std::abs(ak) > prev) break;
            prev = std::abs(ak);
            ik *= kI;
            sum += ik * ak;
            if (std::abs(ak) < kEps) break;
        }
        const cplx phase = std::polar(1.0, x) * std::polar(1.0, -(nu * 0.5 + 0.25) * kPi);
        h[nu] = std::sqrt(2.0 / (kPi * x)) * phase * sum;
    }
    return {h[0].real(), h[1].real(), h[0].imag(), h[1].imag()};
}

double series_jn(int order, double x) {
    const double h = 0.5 * x;
    const double q = -h * h;
    double term = 1.0;
    for (int k = 1; k <= order; ++k) term *= h / k;
    double sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

BesselJY01 bessel_jy01(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InvalidArgument("Bessel argument must be positive and finite");
    }
    if (x <= kSeriesLimit) return series_jy01(x);
    if (x < kAsymptoticLimit) return steed_jy01(x);
    return asymptotic_jy01(x);
}

double bessel_j(int order, double x) {
    if (order < 0 || order > 3) throw InvalidArgument("bessel_j order must be in 0..3");
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("bessel_j needs finite x >= 0");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (order >= 2 && x <= 4.0) return series_jn(order, x);
    const BesselJY01 b = bessel_jy01(x);
    double jm = b.j0, j = b.j1;
    if (order == 0) return jm;
    for (int n = 1; n < order; ++n) {
        const double next = 2.0 * n / x * j - jm;
        jm = j;
        j = next;
    }
    return j;
}

cplx hankel1(int order, double x) {
    if (order != 0 && order != 1) throw InvalidArgument("hankel1 order must be 0 or 1");
    if (!(x > 0.0)) throw InvalidArgument("hankel1 needs x > 0");
    const BesselJY01 b = bessel_jy01(x);
    return order == 0 ? cplx(b.j0, b.y0) : cplx(b.j1, b.y1);
}

cplx circular_harmonic(int alpha, int beta, double phi) {
    if (alpha < 0 || alpha > 3 || std::abs(beta) != alpha) {
        throw InvalidArgument("circular_harmonic needs 0 <= alpha <= 3 and |beta| = alpha, got (" +
                              std::to_string(alpha) + "," + std::to_string(beta) + ")");
    }
    return std::sqrt(1.0 / kTwoPi) * std::polar(1.0, beta * phi);
}

}  // namespace edsm
