#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "edsm/msr.hpp"

namespace edsm {

//---------------------------------------------------------------------------//
/*!
 * Rectangular sampling grid with nx × ny equally spaced points.
 *
 * Point (a, b) is (x0 + a(x1-x0)/(nx-1), y0 + b(y1-y0)/(ny-1)); values are
 * stored with a varying fastest, i.e. index b*nx + a.
 */
struct SamplingGrid {
    SamplingGrid() = default;
    SamplingGrid(double x0, double x1, double y0, double y1, int nx, int ny);

    double x0 = -6.0, x1 = 6.0, y0 = -6.0, y1 = 6.0;
    int nx = 321, ny = 321;

    int size() const { return nx * ny; }
    double x(int a) const { return nx == 1 ? x0 : x0 + a * (x1 - x0) / (nx - 1); }
    double y(int b) const { return ny == 1 ? y0 : y0 + b * (y1 - y0) / (ny - 1); }
    Vec2 point(int index) const { return Vec2(x(index % nx), y(index / nx)); }

    bool operator==(const SamplingGrid&) const = default;
};

enum class IndicatorKind { FF, PP, SS };

std::string_view to_string(IndicatorKind kind);
IndicatorKind indicator_kind_from_string(std::string_view name);

struct IndicatorField {
    SamplingGrid grid;
    std::vector<double> values;
    IndicatorKind kind = IndicatorKind::FF;
    Vec2 q = Vec2(1.0, 0.0);
    bool normalized = false;
    bool squared = false;

    double max() const;
    int argmax() const;
};

struct TestVectors {
    Eigen::VectorXcd p, s;
};

// φ^p_z(θ_i) = e^{-ik_p z·θ_i}(q·θ_i) and φ^s_z(θ_i) = e^{-ik_s z·θ_i}(q·θ_i⊥), θ_i = iπ/m.
TestVectors test_vectors(const Vec2& z, const Vec2& q, int m, const Medium& medium);

// Quadrature weight π/m of the direction grid.
inline double direction_weight(int m) { return kPi / m; }

// Batched evaluation of w²|gᴴ F g| over the grid. Grid points are processed in
// fixed chunks so results do not depend on the thread count.
IndicatorField indicator(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q,
                         IndicatorKind kind);

IndicatorField indicator_ff(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q);
IndicatorField indicator_pp(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q);
IndicatorField indicator_ss(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q);

// Indicator at scattered points rather than a grid.
std::vector<double> indicator_at(const MSRMatrix& msr, const std::vector<Vec2>& points,
                                 const Vec2& q, IndicatorKind kind);

// Optionally squares, then divides by the maximum. Throws for an all-zero field.
IndicatorField normalize_field(const IndicatorField& field, bool square);

}  // namespace edsm
