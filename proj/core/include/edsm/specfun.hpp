#pragma once

#include "edsm/types.hpp"

namespace edsm {

// J_0, J_1, Y_0, Y_1 at one argument, computed together.
struct BesselJY01 {
    double j0, j1, y0, y1;
};

// Requires x > 0.
BesselJY01 bessel_jy01(double x);

// J_order(x) for order 0..3 and x >= 0; absolute error below 1e-12 up to x = 500.
double bessel_j(int order, double x);

// H^{(1)}_order(x) for order 0 or 1 and x > 0.
cplx hankel1(int order, double x);

// γ e^{iβφ} with γ = 1/sqrt(2π); requires 0 <= alpha <= 3 and |beta| = alpha.
cplx circular_harmonic(int alpha, int beta, double phi);

}  // namespace edsm
