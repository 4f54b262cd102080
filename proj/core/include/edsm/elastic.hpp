#pragma once

#include <string_view>

#include "edsm/types.hpp"

namespace edsm {

//---------------------------------------------------------------------------//
/*!
 * Homogeneous isotropic elastic medium at circular frequency ω.
 *
 * Requires μ > 0, λ + 2μ > 0 and ω > 0.
 */
class Medium {
  public:
    Medium(double lambda, double mu, double omega);

    double lambda() const { return lambda_; }
    double mu() const { return mu_; }
    double omega() const { return omega_; }
    double kp() const { return kp_; }
    double ks() const { return ks_; }

  private:
    double lambda_, mu_, omega_, kp_, ks_;
};

struct WaveNumbers {
    double kp, ks;
};

WaveNumbers wave_numbers(const Medium& medium);

enum class WaveMode { P, S };

std::string_view to_string(WaveMode mode);

struct PlaneWave {
    PlaneWave(WaveMode mode, Vec2 direction);

    WaveMode mode;
    Vec2 direction;
};

// P: d e^{ik_p x·d};  S: d⊥ e^{ik_s x·d}.
CVec2 plane_wave_field(const PlaneWave& wave, const Vec2& x, const Medium& medium);

// T_ν applied to the plane wave at x.
CVec2 plane_wave_traction(const PlaneWave& wave, const Vec2& x, const Vec2& normal,
                          const Medium& medium);

// Navier fundamental solution Φ(x, y); throws for x = y.
CMat2 greens_tensor(const Vec2& x, const Vec2& y, const Medium& medium);

// Columns are T_{ν(x)} applied in x to the columns of Φ(x, y).
CMat2 point_source_traction(const Vec2& x, const Vec2& y, const Vec2& normal_x,
                            const Medium& medium);

// [T_{ν(y)} Φ(x, y)]^T, the traction taken in the y variable.
CMat2 greens_traction_kernel(const Vec2& x, const Vec2& y, const Vec2& normal_y,
                             const Medium& medium);

struct FarFieldPair {
    cplx p, s;
};

// Φ∞_p = e^{-ik_p x̂·y}(q·x̂),  Φ∞_s = e^{-ik_s x̂·y}(q·x̂⊥).
FarFieldPair point_source_farfield(const Vec2& xhat, const Vec2& y, const Vec2& q,
                                   const Medium& medium);

// Factors c_p, c_s with u(x) ≈ c_p e^{ik_p r}/√r u∞_p x̂ + c_s e^{ik_s r}/√r u∞_s x̂⊥.
// They reduce to e^{iπ/4}/√(8πω) when λ + 2μ = 1 and μ = 1.
FarFieldPair farfield_prefactors(const Medium& medium);

namespace kernel {

// Φ = A(r) I + B(r) d̂d̂ᵀ with d = x - y, plus the radial derivatives.
struct Radial {
    cplx a, da, b, db;
};

// Full Green's tensor coefficients at r > 0.
Radial greens_radial(double r, const Medium& medium);

// Coefficients of ln r in the Green's tensor: the same formulas with every
// Hankel function replaced by (2i/π)J.
Radial log_radial(double r, const Medium& medium);

// Both of the above from one set of Bessel evaluations.
void radial_pair(double r, const Medium& medium, Radial& full, Radial& log);

// Φ as a matrix from radial coefficients and the unit separation direction.
CMat2 assemble(const Radial& c, const Vec2& dhat);

// T_ν applied in x to the columns of A I + B d̂d̂ᵀ.
CMat2 traction(const Radial& c, const Vec2& dhat, double r, const Vec2& normal,
               const Medium& medium);

// Elastostatic Kelvin constants: Γ = a0 ln r I + b0 d̂d̂ᵀ.
double kelvin_a0(const Medium& medium);
double kelvin_b0(const Medium& medium);

}  // namespace kernel

}  // namespace edsm
