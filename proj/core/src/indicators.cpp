#include "edsm/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edsm/errors.hpp"

namespace edsm {
namespace {

constexpr int kChunk = 256;

void fill_test_columns(const std::vector<Vec2>& points, int first, int count, const Vec2& q,
                       int m, const Medium& medium, Eigen::MatrixXcd& phi_p,
                       Eigen::MatrixXcd& phi_s) {
    const int dirs = 2 * m;
    phi_p.resize(dirs, count);
    phi_s.resize(dirs, count);
    for (int i = 0; i < dirs; ++i) {
        const Vec2 theta = unit_direction(kPi * i / m);
        const double qp = q.dot(theta);
        const double qs = q.dot(perp(theta));
        for (int c = 0; c < count; ++c) {
            const double phase = -points[first + c].dot(theta);
            phi_p(i, c) = std::polar(qp, medium.kp() * phase);
            phi_s(i, c) = std::polar(qs, medium.ks() * phase);
        }
    }
}

std::vector<double> evaluate(const MSRMatrix& msr, const std::vector<Vec2>& points,
                             const Vec2& q, IndicatorKind kind) {
    const int m = msr.m();
    const int dirs = msr.directions();
    if (msr.pp.rows() != dirs || msr.pp.cols() != dirs || msr.ss.rows() != dirs ||
        msr.ss.cols() != dirs || msr.ps.rows() != dirs || msr.sp.rows() != dirs) {
        throw InvalidArgument("MSR block dimensions do not match m");
    }
    if (std::abs(q.norm() - 1.0) > 1e-12) throw InvalidArgument("polarization must be a unit vector");
    const Medium medium = msr.medium();
    const double w2 = direction_weight(m) * direction_weight(m);
    const Eigen::MatrixXcd full = kind == IndicatorKind::FF ? msr.full() : Eigen::MatrixXcd();

    const int total = static_cast<int>(points.size());
    const int chunks = (total + kChunk - 1) / kChunk;
    std::vector<double> out(total, 0.0);

#pragma omp parallel for schedule(dynamic, 1)
    for (int chunk = 0; chunk < chunks; ++chunk) {
        const int first = chunk * kChunk;
        const int count = std::min(kChunk, total - first);
        Eigen::MatrixXcd phi_p, phi_s;
        fill_test_columns(points, first, count, q, m, medium, phi_p, phi_s);
        Eigen::RowVectorXcd form;
        switch (kind) {
            case IndicatorKind::FF: {
                Eigen::MatrixXcd g(2 * dirs, count);
                g.topRows(dirs) = phi_p;
                g.bottomRows(dirs) = phi_s;
                const Eigen::MatrixXcd h = full * g;
                form = g.conjugate().cwiseProduct(h).colwise().sum();
                break;
            }
            case IndicatorKind::PP: {
                const Eigen::MatrixXcd h = msr.pp * phi_p;
                form = phi_p.conjugate().cwiseProduct(h).colwise().sum();
                break;
            }
            case IndicatorKind::SS: {
                const Eigen::MatrixXcd h = msr.ss * phi_s;
                form = phi_s.conjugate().cwiseProduct(h).colwise().sum();
                break;
            }
        }
        for (int c = 0; c < count; ++c) out[first + c] = w2 * std::abs(form[c]);
    }
    return out;
}

}  // namespace

SamplingGrid::SamplingGrid(double ax0, double ax1, double ay0, double ay1, int anx, int any)
    : x0(ax0), x1(ax1), y0(ay0), y1(ay1), nx(anx), ny(any) {
    if (!(x1 > x0) || !(y1 > y0)) throw InvalidArgument("grid ranges must be increasing");
    if (nx < 1 || ny < 1) throw InvalidArgument("grid needs at least one point per axis");
}

std::string_view to_string(IndicatorKind kind) {
    switch (kind) {
        case IndicatorKind::FF: return "ff";
        case IndicatorKind::PP: return "pp";
        case IndicatorKind::SS: return "ss";
    }
    return "?";
}

IndicatorKind indicator_kind_from_string(std::string_view name) {
    if (name == "ff" || name == "FF") return IndicatorKind::FF;
    if (name == "pp" || name == "PP") return IndicatorKind::PP;
    if (name == "ss" || name == "SS") return IndicatorKind::SS;
    throw InvalidArgument("unknown indicator kind '" + std::string(name) + "'");
}

double IndicatorField::max() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

int IndicatorField::argmax() const {
    if (values.empty()) throw InvalidArgument("empty indicator field");
    return static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
}

TestVectors test_vectors(const Vec2& z, const Vec2& q, int m, const Medium& medium) {
    if (m < 1) throw InvalidArgument("test vectors need m >= 1");
    if (std::abs(q.norm() - 1.0) > 1e-12) throw InvalidArgument("polarization must be a unit vector");
    Eigen::MatrixXcd p, s;
    fill_test_columns({z}, 0, 1, q, m, medium, p, s);
    return {p.col(0), s.col(0)};
}

IndicatorField indicator(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q,
                         IndicatorKind kind) {
    std::vector<Vec2> points(grid.size());
    for (int k = 0; k < grid.size(); ++k) points[k] = grid.point(k);
    IndicatorField f;
    f.grid = grid;
    f.kind = kind;
    f.q = q;
    f.values = evaluate(msr, points, q, kind);
    return f;
}

IndicatorField indicator_ff(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q) {
    return indicator(msr, grid, q, IndicatorKind::FF);
}

IndicatorField indicator_pp(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q) {
    return indicator(msr, grid, q, IndicatorKind::PP);
}

IndicatorField indicator_ss(const MSRMatrix& msr, const SamplingGrid& grid, const Vec2& q) {
    return indicator(msr, grid, q, IndicatorKind::SS);
}

std::vector<double> indicator_at(const MSRMatrix& msr, const std::vector<Vec2>& points,
                                 const Vec2& q, IndicatorKind kind) {
    return evaluate(msr, points, q, kind);
}

IndicatorField normalize_field(const IndicatorField& field, bool square) {
    if (field.values.empty()) throw InvalidArgument("cannot normalize an empty field");
    IndicatorField out = field;
    if (square)
        for (double& v : out.values) v *= v;
    const double mx = out.max();
    if (!(mx > 0.0) || !std::isfinite(mx)) {
        throw NumericError("cannot normalize a field whose maximum is not positive");
    }
    for (double& v : out.values) v /= mx;
    out.normalized = true;
    out.squared = field.squared || square;
    return out;
}

}  // namespace edsm
