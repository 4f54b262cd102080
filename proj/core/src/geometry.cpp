#include "edsm/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "edsm/errors.hpp"

namespace edsm {
namespace {

constexpr int kDisjointSamples = 512;
constexpr double kDisjointThreshold = 1e-6;
constexpr int kPolygonSamples = 2048;

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view s, std::string_view context) {
    double v = 0.0;
    auto first = s.data();
    auto last = s.data() + s.size();
    while (first != last && *first == ' ') ++first;
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw InvalidArgument("cannot parse number '" + std::string(s) + "' in '" +
                              std::string(context) + "'");
    }
    return v;
}

// Radial profile s(t) and its derivatives for the star-shaped curves.
struct Radial {
    double s, ds, dds;
};

Radial radial_profile(CurveKind kind, double t) {
    switch (kind) {
        case CurveKind::Circle:
            return {1.0, 0.0, 0.0};
        case CurveKind::Peanut: {
            const double c = std::cos(t);
            const double s = std::sqrt(3.0 * c * c + 1.0);
            const double ds = -1.5 * std::sin(2.0 * t) / s;
            const double dds = (-3.0 * std::cos(2.0 * t) - ds * ds) / s;
            return {s, ds, dds};
        }
        case CurveKind::Pear:
            return {2.0 + 0.3 * std::cos(3.0 * t), -0.9 * std::sin(3.0 * t),
                    -2.7 * std::cos(3.0 * t)};
        case CurveKind::Kite:
            break;
    }
    return {0.0, 0.0, 0.0};
}

double winding_number(const std::vector<Vec2>& poly, const Vec2& z) {
    double total = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = poly[k] - z;
        const Vec2 b = poly[(k + 1) % n] - z;
        total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
    return total / kTwoPi;
}

double segment_distance(const Vec2& a, const Vec2& b, const Vec2& z) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    double s = len2 > 0.0 ? (z - a).dot(ab) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return (a + s * ab - z).norm();
}

std::vector<Vec2> sample_curve(const BoundaryCurve& c, int n) {
    std::vector<Vec2> pts(n);
    for (int k = 0; k < n; ++k) pts[k] = c.point(kTwoPi * k / n);
    return pts;
}

}  // namespace

std::string_view to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::Circle: return "circle";
        case CurveKind::Peanut: return "peanut";
        case CurveKind::Pear: return "pear";
        case CurveKind::Kite: return "kite";
    }
    return "?";
}

CurveKind curve_kind_from_string(std::string_view name) {
    if (name == "circle" || name == "disk") return CurveKind::Circle;
    if (name == "peanut") return CurveKind::Peanut;
    if (name == "pear") return CurveKind::Pear;
    if (name == "kite") return CurveKind::Kite;
    throw InvalidArgument("unknown curve kind '" + std::string(name) + "'");
}

BoundaryCurve::BoundaryCurve(CurveKind kind, Vec2 center, double scale)
    : kind_(kind), center_(std::move(center)), scale_(scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidArgument("curve scale must be positive, got " + format_number(scale));
    }
    if (!center_.allFinite()) throw InvalidArgument("curve center must be finite");
}

Vec2 BoundaryCurve::point(double t) const {
    if (kind_ == CurveKind::Kite) {
        return center_ + scale_ * Vec2(std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65,
                                       1.5 * std::sin(t));
    }
    const Radial r = radial_profile(kind_, t);
    return center_ + scale_ * r.s * Vec2(std::cos(t), std::sin(t));
}

Vec2 BoundaryCurve::tangent(double t) const {
    if (kind_ == CurveKind::Kite) {
        return scale_ * Vec2(-std::sin(t) - 1.3 * std::sin(2.0 * t), 1.5 * std::cos(t));
    }
    const Radial r = radial_profile(kind_, t);
    const Vec2 e(std::cos(t), std::sin(t));
    return scale_ * (r.ds * e + r.s * perp(e));
}

Vec2 BoundaryCurve::second_derivative(double t) const {
    if (kind_ == CurveKind::Kite) {
        return scale_ * Vec2(-std::cos(t) - 2.6 * std::cos(2.0 * t), -1.5 * std::sin(t));
    }
    const Radial r = radial_profile(kind_, t);
    const Vec2 e(std::cos(t), std::sin(t));
    return scale_ * ((r.dds - r.s) * e + 2.0 * r.ds * perp(e));
}

std::string BoundaryCurve::description() const {
    return std::string(to_string(kind_)) + "@(" + format_number(center_.x()) + "," +
           format_number(center_.y()) + ")x" + format_number(scale_);
}

BoundaryCurve curve_from_description(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto at = text.find('@');
    const auto open = text.find('(');
    const auto comma = text.find(',');
    const auto close = text.find(')');
    if (at == std::string_view::npos || open != at + 1 || comma == std::string_view::npos ||
        close == std::string_view::npos || comma > close || close + 1 >= text.size() ||
        text[close + 1] != 'x') {
        throw InvalidArgument("malformed curve description '" + std::string(text) + "'");
    }
    const CurveKind kind = curve_kind_from_string(text.substr(0, at));
    const double cx = parse_number(text.substr(open + 1, comma - open - 1), text);
    const double cy = parse_number(text.substr(comma + 1, close - comma - 1), text);
    const double scale = parse_number(text.substr(close + 2), text);
    return BoundaryCurve(kind, Vec2(cx, cy), scale);
}

Vec2 curve_point(const BoundaryCurve& curve, double t) { return curve.point(t); }

Vec2 curve_tangent(const BoundaryCurve& curve, double t) { return curve.tangent(t); }

Vec2 outward_normal(const BoundaryCurve& curve, double t) {
    const Vec2 v = curve.tangent(t);
    const double speed = v.norm();
    if (!(speed > 0.0)) throw InvalidArgument("degenerate tangent at t=" + format_number(t));
    return Vec2(v.y(), -v.x()) / speed;
}

std::vector<QuadratureNode> boundary_quadrature(const BoundaryCurve& curve, int n) {
    if (n < 8 || n % 2 != 0) {
        throw InvalidArgument("boundary quadrature needs an even node count >= 8, got " +
                              std::to_string(n));
    }
    std::vector<QuadratureNode> nodes(n);
    for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * k / n;
        QuadratureNode& q = nodes[k];
        q.t = t;
        q.point = curve.point(t);
        q.velocity = curve.tangent(t);
        q.acceleration = curve.second_derivative(t);
        q.speed = q.velocity.norm();
        if (!(q.speed > 0.0)) throw InvalidArgument("degenerate tangent in quadrature");
        q.normal = Vec2(q.velocity.y(), -q.velocity.x()) / q.speed;
        q.weight = kTwoPi / n * q.speed;
    }
    return nodes;
}

std::string_view to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

BoundaryCondition boundary_condition_from_string(std::string_view name) {
    if (name == "dirichlet") return BoundaryCondition::Dirichlet;
    if (name == "neumann") return BoundaryCondition::Neumann;
    throw InvalidArgument("unknown boundary condition '" + std::string(name) + "'");
}

Scene::Scene(std::vector<SceneComponent> components) : components_(std::move(components)) {
    if (components_.empty()) throw InvalidArgument("scene needs at least one component");
    polygons_.reserve(components_.size());
    for (const auto& c : components_) polygons_.push_back(sample_curve(c.curve, kPolygonSamples));

    for (std::size_t a = 0; a < components_.size(); ++a) {
        const auto pa = sample_curve(components_[a].curve, kDisjointSamples);
        for (std::size_t b = a + 1; b < components_.size(); ++b) {
            const auto pb = sample_curve(components_[b].curve, kDisjointSamples);
            double dmin = std::numeric_limits<double>::infinity();
            for (const auto& x : pa)
                for (const auto& y : pb) dmin = std::min(dmin, (x - y).norm());
            const bool nested = std::abs(winding_number(polygons_[b], pa.front())) > 0.5 ||
                                std::abs(winding_number(polygons_[a], pb.front())) > 0.5;
            if (!(dmin > kDisjointThreshold) || nested) {
                throw InvalidArgument("scene components " + std::to_string(a) + " and " +
                                      std::to_string(b) + " are not disjoint");
            }
        }
    }
}

double Scene::circumradius() const {
    double r = 0.0;
    for (const auto& poly : polygons_)
        for (const auto& p : poly) r = std::max(r, p.norm());
    return r;
}

Vec2 Scene::centroid() const {
    Vec2 c = Vec2::Zero();
    for (const auto& comp : components_) c += comp.curve.center();
    return c / static_cast<double>(components_.size());
}

bool Scene::contains(const Vec2& z) const {
    for (const auto& poly : polygons_)
        if (std::abs(winding_number(poly, z)) > 0.5) return true;
    return false;
}

double Scene::distance_to_boundary(const Vec2& z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& poly : polygons_) {
        const std::size_t n = poly.size();
        for (std::size_t k = 0; k < n; ++k)
            d = std::min(d, segment_distance(poly[k], poly[(k + 1) % n], z));
    }
    return d;
}

std::string Scene::description() const {
    std::string out;
    for (std::size_t k = 0; k < components_.size(); ++k) {
        if (k) out += '+';
        out += components_[k].curve.description();
    }
    return out;
}

Scene Scene::with_boundary_condition(BoundaryCondition bc) const {
    auto comps = components_;
    for (auto& c : comps) c.bc = bc;
    return Scene(std::move(comps));
}

Scene scene_from_description(std::string_view text, BoundaryCondition bc) {
    std::vector<SceneComponent> comps;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto plus = text.find('+', start);
        // '+' may also appear as a number sign directly after '(' or ','.
        while (plus != std::string_view::npos && plus > 0 &&
               (text[plus - 1] == '(' || text[plus - 1] == ',' || text[plus - 1] == 'x' ||
                text[plus - 1] == 'e'))
            plus = text.find('+', plus + 1);
        const auto piece = text.substr(start, plus == std::string_view::npos ? text.size() - start
                                                                             : plus - start);
        comps.push_back({curve_from_description(piece), bc});
        if (plus == std::string_view::npos) break;
        start = plus + 1;
    }
    return Scene(std::move(comps));
}

}  // namespace edsm
