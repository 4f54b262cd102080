#include "edsm/elastic.hpp"

#include <cmath>
#include <string>

#include "edsm/errors.hpp"
#include "edsm/specfun.hpp"

namespace edsm {

Medium::Medium(double lambda, double mu, double omega)
    : lambda_(lambda), mu_(mu), omega_(omega) {
    if (!std::isfinite(lambda) || !std::isfinite(mu) || !std::isfinite(omega)) {
        throw InvalidArgument("medium parameters must be finite");
    }
    if (!(mu > 0.0)) throw InvalidArgument("Lamé constant mu must be positive");
    if (!(lambda + 2.0 * mu > 0.0)) throw InvalidArgument("lambda + 2 mu must be positive");
    if (!(omega > 0.0)) throw InvalidArgument("circular frequency omega must be positive");
    kp_ = omega / std::sqrt(lambda + 2.0 * mu);
    ks_ = omega / std::sqrt(mu);
}

WaveNumbers wave_numbers(const Medium& medium) { return {medium.kp(), medium.ks()}; }

std::string_view to_string(WaveMode mode) { return mode == WaveMode::P ? "P" : "S"; }

PlaneWave::PlaneWave(WaveMode m, Vec2 d) : mode(m), direction(std::move(d)) {
    if (std::abs(direction.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("plane wave direction must be a unit vector");
    }
}

CVec2 plane_wave_field(const PlaneWave& wave, const Vec2& x, const Medium& medium) {
    const Vec2& d = wave.direction;
    if (wave.mode == WaveMode::P) {
        return std::polar(1.0, medium.kp() * x.dot(d)) * d.cast<cplx>();
    }
    return std::polar(1.0, medium.ks() * x.dot(d)) * perp(d).cast<cplx>();
}

CVec2 plane_wave_traction(const PlaneWave& wave, const Vec2& x, const Vec2& normal,
                          const Medium& medium) {
    // ∇u = ik e^{ik x·d} a dᵀ with polarization a; the traction follows directly.
    const Vec2& d = wave.direction;
    const double lambda = medium.lambda(), mu = medium.mu();
    const bool p = wave.mode == WaveMode::P;
    const double k = p ? medium.kp() : medium.ks();
    const Vec2 a = p ? d : perp(d);
    const double div = a.dot(d);
    const double curl = a.y() * d.x() - a.x() * d.y();
    const Vec2 t = 2.0 * mu * d.dot(normal) * a + lambda * div * normal - mu * curl * perp(normal);
    return (kI * k * std::polar(1.0, k * x.dot(d))) * t.cast<cplx>();
}

namespace kernel {
namespace {

// Shared algebra for the radial coefficients over cylinder functions Z0, Z1.
Radial radial_from_cylinder(double r, const Medium& medium, cplx z0s, cplx z1s, cplx z0p,
                            cplx z1p) {
    const double kp = medium.kp(), ks = medium.ks();
    const double w2 = medium.omega() * medium.omega();
    const cplx c_mu = kI / (4.0 * medium.mu());
    const cplx c_w = kI / (4.0 * w2);
    const cplx g = ks * z1s - kp * z1p;
    const cplx h = ks * ks * z0s - kp * kp * z0p;
    Radial c;
    c.a = c_mu * z0s - c_w * g / r;
    c.da = -c_mu * ks * z1s - c_w * (h / r - 2.0 * g / (r * r));
    c.b = c_w * (-h + 2.0 * g / r);
    c.db = c_w * (ks * ks * ks * z1s - kp * kp * kp * z1p + 2.0 * h / r - 4.0 * g / (r * r));
    return c;
}

}  // namespace

Radial greens_radial(double r, const Medium& medium) {
    const BesselJY01 s = bessel_jy01(medium.ks() * r);
    const BesselJY01 p = bessel_jy01(medium.kp() * r);
    return radial_from_cylinder(r, medium, {s.j0, s.y0}, {s.j1, s.y1}, {p.j0, p.y0},
                                {p.j1, p.y1});
}

Radial log_radial(double r, const Medium& medium) {
    const BesselJY01 s = bessel_jy01(medium.ks() * r);
    const BesselJY01 p = bessel_jy01(medium.kp() * r);
    const cplx f = 2.0 * kI / kPi;
    return radial_from_cylinder(r, medium, f * s.j0, f * s.j1, f * p.j0, f * p.j1);
}

void radial_pair(double r, const Medium& medium, Radial& full, Radial& log) {
    const BesselJY01 s = bessel_jy01(medium.ks() * r);
    const BesselJY01 p = bessel_jy01(medium.kp() * r);
    full = radial_from_cylinder(r, medium, {s.j0, s.y0}, {s.j1, s.y1}, {p.j0, p.y0},
                                {p.j1, p.y1});
    const cplx f = 2.0 * kI / kPi;
    log = radial_from_cylinder(r, medium, f * s.j0, f * s.j1, f * p.j0, f * p.j1);
}

CMat2 assemble(const Radial& c, const Vec2& dhat) {
    const Eigen::Matrix2d dd = dhat * dhat.transpose();
    return c.a * CMat2::Identity() + c.b * dd.cast<cplx>();
}

CMat2 traction(const Radial& c, const Vec2& dhat, double r, const Vec2& normal,
               const Medium& medium) {
    const double lambda = medium.lambda(), mu = medium.mu();
    const double dn = dhat.dot(normal);
    const Eigen::Matrix2d dd = dhat * dhat.transpose();
    const Eigen::Matrix2d nd = normal * dhat.transpose();
    const Eigen::Matrix2d sym = nd + nd.transpose() - 2.0 * dn * dd;
    const Eigen::Matrix2d rot = perp(normal) * perp(dhat).transpose();
    const cplx b_r = c.b / r;
    CMat2 t = (2.0 * mu * c.da * dn) * CMat2::Identity();
    t += (2.0 * mu * c.db * dn) * dd.cast<cplx>();
    t += (2.0 * mu * b_r) * sym.cast<cplx>();
    t += (lambda * (c.da + c.db + b_r)) * nd.cast<cplx>();
    t -= (mu * (c.da - b_r)) * rot.cast<cplx>();
    return t;
}

double kelvin_a0(const Medium& medium) {
    const double lambda = medium.lambda(), mu = medium.mu();
    return -(lambda + 3.0 * mu) / (4.0 * kPi * mu * (lambda + 2.0 * mu));
}

double kelvin_b0(const Medium& medium) {
    const double lambda = medium.lambda(), mu = medium.mu();
    return (lambda + mu) / (4.0 * kPi * mu * (lambda + 2.0 * mu));
}

}  // namespace kernel

namespace {

double separation(const Vec2& x, const Vec2& y, Vec2& dhat) {
    const Vec2 d = x - y;
    const double r = d.norm();
    if (!(r > 0.0)) throw InvalidArgument("Green's tensor is singular at x = y");
    dhat = d / r;
    return r;
}

}  // namespace

CMat2 greens_tensor(const Vec2& x, const Vec2& y, const Medium& medium) {
    Vec2 dhat;
    const double r = separation(x, y, dhat);
    return kernel::assemble(kernel::greens_radial(r, medium), dhat);
}

CMat2 point_source_traction(const Vec2& x, const Vec2& y, const Vec2& normal_x,
                            const Medium& medium) {
    Vec2 dhat;
    const double r = separation(x, y, dhat);
    return kernel::traction(kernel::greens_radial(r, medium), dhat, r, normal_x, medium);
}

CMat2 greens_traction_kernel(const Vec2& x, const Vec2& y, const Vec2& normal_y,
                             const Medium& medium) {
    return point_source_traction(y, x, normal_y, medium).transpose();
}

FarFieldPair point_source_farfield(const Vec2& xhat, const Vec2& y, const Vec2& q,
                                   const Medium& medium) {
    const double phase = -xhat.dot(y);
    return {std::polar(1.0, medium.kp() * phase) * q.dot(xhat),
            std::polar(1.0, medium.ks() * phase) * q.dot(perp(xhat))};
}

FarFieldPair farfield_prefactors(const Medium& medium) {
    const cplx base = std::polar(1.0, 0.25 * kPi) / std::sqrt(8.0 * kPi * medium.omega());
    return {base / std::pow(medium.lambda() + 2.0 * medium.mu(), 0.75),
            base / std::pow(medium.mu(), 0.75)};
}

}  // namespace edsm
