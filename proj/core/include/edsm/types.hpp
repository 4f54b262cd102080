#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace edsm {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Anticlockwise rotation by pi/2: v⊥ = (-v2, v1). Used for every
/// perpendicular in the library (far fields, tractions, test functions).
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline Vec2 unit_direction(double angle) { return Vec2(std::cos(angle), std::sin(angle)); }

}  // namespace edsm
