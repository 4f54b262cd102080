#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "edsm/types.hpp"

namespace edsm {

enum class CurveKind { Circle, Peanut, Pear, Kite };

std::string_view to_string(CurveKind kind);
CurveKind curve_kind_from_string(std::string_view name);

//---------------------------------------------------------------------------//
/*!
 * Smooth, counterclockwise, 2π-periodic obstacle boundary
 *
 *   Circle: c + ρ (cos t, sin t)
 *   Peanut: c + ρ sqrt(3 cos²t + 1) (cos t, sin t)
 *   Pear:   c + ρ (2 + 0.3 cos 3t) (cos t, sin t)
 *   Kite:   c + ρ (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
 */
class BoundaryCurve {
  public:
    BoundaryCurve(CurveKind kind, Vec2 center, double scale);

    CurveKind kind() const { return kind_; }
    const Vec2& center() const { return center_; }
    double scale() const { return scale_; }

    Vec2 point(double t) const;
    Vec2 tangent(double t) const;            // x'(t)
    Vec2 second_derivative(double t) const;  // x''(t)

    // "kite@(0,0)x1" style label, parseable by curve_from_description.
    std::string description() const;

  private:
    CurveKind kind_;
    Vec2 center_;
    double scale_;
};

BoundaryCurve curve_from_description(std::string_view text);

Vec2 curve_point(const BoundaryCurve& curve, double t);
Vec2 curve_tangent(const BoundaryCurve& curve, double t);

// Clockwise rotation of the unit tangent; points out of the enclosed region.
Vec2 outward_normal(const BoundaryCurve& curve, double t);

struct QuadratureNode {
    double t;
    Vec2 point;
    Vec2 normal;
    Vec2 velocity;      // x'(t)
    Vec2 acceleration;  // x''(t)
    double speed;       // |x'(t)|
    double weight;      // (2π/n)|x'(t)|
};

// Trapezoidal nodes t_k = 2πk/n. Requires even n >= 8.
std::vector<QuadratureNode> boundary_quadrature(const BoundaryCurve& curve, int n);

enum class BoundaryCondition { Dirichlet, Neumann };

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(std::string_view name);

struct SceneComponent {
    BoundaryCurve curve;
    BoundaryCondition bc;
};

//---------------------------------------------------------------------------//
/*!
 * Ordered union of obstacles with pairwise disjoint closures.
 *
 * Disjointness is checked on 512 boundary samples per component: the
 * smallest distance between samples of different components must exceed
 * 1e-6, and no sample of one component may lie inside another.
 */
class Scene {
  public:
    explicit Scene(std::vector<SceneComponent> components);

    const std::vector<SceneComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }

    // Maximum distance from the origin to the boundary (sampled densely).
    double circumradius() const;
    // Mean of the component centers.
    Vec2 centroid() const;

    // Point-in-obstacle test via winding numbers of a dense polygon.
    bool contains(const Vec2& z) const;
    // Distance from z to the nearest boundary point.
    double distance_to_boundary(const Vec2& z) const;

    // "kite@(0,0)x1+peanut@(3,-3)x1"; boundary conditions are not included.
    std::string description() const;

    // Same scene with every component's boundary condition replaced.
    Scene with_boundary_condition(BoundaryCondition bc) const;

  private:
    std::vector<SceneComponent> components_;
    std::vector<std::vector<Vec2>> polygons_;
};

Scene scene_from_description(std::string_view text, BoundaryCondition bc);

}  // namespace edsm
