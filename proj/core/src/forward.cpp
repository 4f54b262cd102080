#include "edsm/forward.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "edsm/errors.hpp"

namespace edsm {
namespace {

constexpr double kMaxCondition = 1e12;
constexpr int kMinNodes = 64;

// A(r) regular part at r = 0 for the Green's tensor diagonal.
cplx regular_a0(const Medium& medium) {
    const double ks = medium.ks(), kp = medium.kp();
    const double w2 = medium.omega() * medium.omega();
    const double g = std::numbers::egamma;
    auto c = [g](double k) {
        return cplx(0.5 * k * k, k * k / kPi * (std::log(0.5 * k) + g - 0.5));
    };
    const cplx h0 = cplx(1.0, 2.0 / kPi * (std::log(0.5 * ks) + g));
    return kI / (4.0 * medium.mu()) * h0 - kI / (4.0 * w2) * (c(ks) - c(kp));
}

Eigen::Matrix2d lift(const Vec2& v, const Vec2& normal, double a0, double b0,
                     const Medium& medium) {
    const double lambda = medium.lambda(), mu = medium.mu();
    const Eigen::Matrix2d nv = normal * v.transpose();
    return 2.0 * mu * b0 * (nv + nv.transpose()) + lambda * (a0 + b0) * nv -
           mu * (a0 - b0) * perp(normal) * perp(v).transpose();
}

void put(Eigen::MatrixXcd& a, int i, int j, const CMat2& block) {
    a.block<2, 2>(2 * i, 2 * j) = block;
}

void assemble_self_block(Eigen::MatrixXcd& a, const Discretization& disc, int offset, int n,
                         BoundaryCondition bc, const Medium& medium,
                         const std::vector<double>& rw, const std::vector<double>& qw) {
    const double a0 = kernel::kelvin_a0(medium);
    const double b0 = kernel::kelvin_b0(medium);
    const double c_mu = medium.mu() / (kTwoPi * (medium.lambda() + 2.0 * medium.mu()));
    const double h = kTwoPi / n;
    const cplx a_reg = regular_a0(medium);
    const CMat2 eye = CMat2::Identity();

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const QuadratureNode& xi = disc.nodes[offset + i];
        const Vec2 tau = xi.velocity / xi.speed;
        const Eigen::Matrix2d cauchy =
            c_mu * (xi.normal * tau.transpose() - tau * xi.normal.transpose());
        for (int j = 0; j < n; ++j) {
            const QuadratureNode& yj = disc.nodes[offset + j];
            const int k = ((i - j) % n + n) % n;
            CMat2 block;
            if (i == j) {
                if (bc == BoundaryCondition::Dirichlet) {
                    const CMat2 m1 = 0.5 * a0 * xi.speed * eye;
                    const CMat2 reg = a_reg * eye + b0 * (tau * tau.transpose()).cast<cplx>();
                    const CMat2 m2 = reg * xi.speed + m1 * std::log(xi.speed * xi.speed);
                    block = rw[0] * m1 + h * m2;
                } else {
                    const double kappa = xi.acceleration.dot(xi.normal) / xi.speed;
                    const Eigen::Matrix2d d =
                        lift(-xi.acceleration / (2.0 * xi.speed), xi.normal, a0, b0, medium) -
                        medium.mu() * a0 * kappa * Eigen::Matrix2d::Identity() +
                        2.0 * medium.mu() * b0 * kappa * tau * tau.transpose();
                    block = h * d.cast<cplx>() - 0.5 * eye;
                }
                put(a, offset + i, offset + j, block);
                continue;
            }
            const Vec2 diff = xi.point - yj.point;
            const double r = diff.norm();
            const Vec2 dhat = diff / r;
            const double s = std::sin(0.5 * (xi.t - yj.t));
            const double log4sin2 = std::log(4.0 * s * s);
            kernel::Radial full, logc;
            kernel::radial_pair(r, medium, full, logc);
            if (bc == BoundaryCondition::Dirichlet) {
                const CMat2 m1 = 0.5 * kernel::assemble(logc, dhat) * yj.speed;
                const CMat2 m2 = kernel::assemble(full, dhat) * yj.speed - m1 * log4sin2;
                block = rw[k] * m1 + h * m2;
            } else {
                const kernel::Radial kelvin{0.0, a0 / r, b0, 0.0};
                const CMat2 t_full = kernel::traction(full, dhat, r, xi.normal, medium);
                const CMat2 t_log = kernel::traction(logc, dhat, r, xi.normal, medium);
                const CMat2 t_static = kernel::traction(kelvin, dhat, r, xi.normal, medium);
                const double half_cot = 0.5 / std::tan(0.5 * (xi.t - yj.t));
                const CMat2 l1 = 0.5 * t_log * yj.speed;
                const CMat2 l2 = (t_full - t_static) * yj.speed - l1 * log4sin2;
                const CMat2 k0 = t_static * yj.speed - half_cot * cauchy.cast<cplx>();
                block = qw[k] * cauchy.cast<cplx>() + h * k0 + rw[k] * l1 + h * l2;
            }
            put(a, offset + i, offset + j, block);
        }
    }
}

void assemble_cross_block(Eigen::MatrixXcd& a, const Discretization& disc, int row_offset,
                          int col_offset, int n, BoundaryCondition bc, const Medium& medium) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const QuadratureNode& xi = disc.nodes[row_offset + i];
        for (int j = 0; j < n; ++j) {
            const QuadratureNode& yj = disc.nodes[col_offset + j];
            const Vec2 diff = xi.point - yj.point;
            const double r = diff.norm();
            const Vec2 dhat = diff / r;
            const kernel::Radial full = kernel::greens_radial(r, medium);
            const CMat2 block = bc == BoundaryCondition::Dirichlet
                                    ? kernel::assemble(full, dhat)
                                    : kernel::traction(full, dhat, r, xi.normal, medium);
            put(a, row_offset + i, col_offset + j, block * yj.weight);
        }
    }
}

BoundarySystem assemble_impl(const Scene& scene, const Medium& medium, int n) {
    if (n < kMinNodes || n % 2 != 0) {
        throw InvalidArgument("n_per_component must be even and at least " +
                              std::to_string(kMinNodes));
    }
    BoundarySystem sys{discretize(scene, n), medium, {}};
    const int total = sys.disc.size();
    sys.matrix.setZero(2 * total, 2 * total);
    const auto rw = quadrature::log_weights(n);
    const auto qw = quadrature::cot_weights(n);
    const int comps = static_cast<int>(scene.size());
    for (int c = 0; c < comps; ++c) {
        const BoundaryCondition bc = scene.components()[c].bc;
        for (int c2 = 0; c2 < comps; ++c2) {
            if (c == c2) {
                assemble_self_block(sys.matrix, sys.disc, c * n, n, bc, medium, rw, qw);
            } else {
                assemble_cross_block(sys.matrix, sys.disc, c * n, c2 * n, n, bc, medium);
            }
        }
    }
    if (!sys.matrix.allFinite()) throw NumericError("non-finite entries in the boundary system");
    return sys;
}

}  // namespace

Discretization discretize(const Scene& scene, int n_per_component) {
    Discretization d;
    d.n_per_component = n_per_component;
    int c = 0;
    for (const auto& comp : scene.components()) {
        auto nodes = boundary_quadrature(comp.curve, n_per_component);
        for (auto& q : nodes) {
            d.nodes.push_back(q);
            d.component.push_back(c);
            d.bc.push_back(comp.bc);
        }
        ++c;
    }
    return d;
}

BoundarySystem assemble_system(const Scene& scene, const Medium& medium, int n_per_component) {
    return assemble_impl(scene, medium, n_per_component);
}

BoundarySystem assemble_dirichlet_system(const Scene& scene, const Medium& medium,
                                         int n_per_component) {
    return assemble_impl(scene.with_boundary_condition(BoundaryCondition::Dirichlet), medium,
                         n_per_component);
}

BoundarySystem assemble_neumann_system(const Scene& scene, const Medium& medium,
                                       int n_per_component) {
    return assemble_impl(scene.with_boundary_condition(BoundaryCondition::Neumann), medium,
                         n_per_component);
}

FactoredSystem::FactoredSystem(BoundarySystem system)
    : system_(std::move(system)), lu_(system_.matrix) {
    rcond_ = lu_.rcond();
    // Eigen's estimator misreports exactly singular factors; a zero pivot settles it.
    const auto pivots = lu_.matrixLU().diagonal().cwiseAbs();
    if (!pivots.allFinite() || pivots.minCoeff() == 0.0) rcond_ = 0.0;
    if (!(rcond_ > 0.0) || !std::isfinite(rcond_) || 1.0 / rcond_ > kMaxCondition) {
        std::ostringstream msg;
        msg << "boundary system is numerically singular (condition estimate " << 1.0 / rcond_
            << " exceeds " << kMaxCondition << "); omega may be an eigenfrequency";
        throw NumericError(msg.str());
    }
}

Eigen::MatrixXcd FactoredSystem::solve(const Eigen::MatrixXcd& rhs) const {
    if (rhs.rows() != system_.matrix.rows()) {
        throw InvalidArgument("right-hand side has wrong number of rows");
    }
    Eigen::MatrixXcd x = lu_.solve(rhs);
    if (!x.allFinite()) throw NumericError("non-finite density");
    return x;
}

Eigen::VectorXcd incident_rhs(const Discretization& disc, const Medium& medium,
                              const Incident& incident) {
    const int n = disc.size();
    Eigen::VectorXcd rhs(2 * n);
    for (int k = 0; k < n; ++k) {
        const QuadratureNode& x = disc.nodes[k];
        const bool dirichlet = disc.bc[k] == BoundaryCondition::Dirichlet;
        CVec2 v;
        if (const auto* pw = std::get_if<PlaneWave>(&incident)) {
            v = dirichlet ? plane_wave_field(*pw, x.point, medium)
                          : plane_wave_traction(*pw, x.point, x.normal, medium);
        } else {
            const auto& ps = std::get<PointSource>(incident);
            const CMat2 g = dirichlet ? greens_tensor(x.point, ps.z, medium)
                                      : point_source_traction(x.point, ps.z, x.normal, medium);
            v = g * ps.q.cast<cplx>();
        }
        rhs.segment<2>(2 * k) = -v;
    }
    return rhs;
}

Density solve_density(const FactoredSystem& system, const Incident& incident) {
    Density d{system.disc(), {}};
    d.values = system.solve(incident_rhs(system.disc(), system.medium(), incident));
    return d;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> farfield_batch(
    const Discretization& disc, const Medium& medium, const std::vector<Vec2>& directions,
    const Eigen::MatrixXcd& densities) {
    const int n = disc.size();
    const int nd = static_cast<int>(directions.size());
    if (densities.rows() != 2 * n) throw InvalidArgument("density size mismatch");
    Eigen::MatrixXcd ep(nd, n), es(nd, n);
    for (int k = 0; k < n; ++k) {
        const QuadratureNode& y = disc.nodes[k];
        for (int j = 0; j < nd; ++j) {
            const double phase = -directions[j].dot(y.point);
            ep(j, k) = std::polar(y.weight, medium.kp() * phase);
            es(j, k) = std::polar(y.weight, medium.ks() * phase);
        }
    }
    Eigen::MatrixXcd psi1(n, densities.cols()), psi2(n, densities.cols());
    for (int k = 0; k < n; ++k) {
        psi1.row(k) = densities.row(2 * k);
        psi2.row(k) = densities.row(2 * k + 1);
    }
    Eigen::VectorXd x1(nd), x2(nd);
    for (int j = 0; j < nd; ++j) {
        x1[j] = directions[j].x();
        x2[j] = directions[j].y();
    }
    Eigen::MatrixXcd p1 = ep * psi1, p2 = ep * psi2;
    Eigen::MatrixXcd s1 = es * psi1, s2 = es * psi2;
    Eigen::MatrixXcd up = x1.asDiagonal() * p1 + x2.asDiagonal() * p2;
    Eigen::MatrixXcd us = x1.asDiagonal() * s2 - x2.asDiagonal() * s1;
    return {std::move(up), std::move(us)};
}

std::vector<FarFieldPair> farfield_from_density(const Density& density, const Medium& medium,
                                                const std::vector<Vec2>& directions) {
    const auto [up, us] = farfield_batch(density.disc, medium, directions, density.values);
    std::vector<FarFieldPair> out(directions.size());
    for (std::size_t j = 0; j < directions.size(); ++j) out[j] = {up(j, 0), us(j, 0)};
    return out;
}

MSRMatrix synthesize_msr(const Scene& scene, const Medium& medium, int m, int n_per_component) {
    if (m < 4) throw InvalidArgument("MSR needs m >= 4");
    MSRMetadata meta;
    meta.lambda = medium.lambda();
    meta.mu = medium.mu();
    meta.omega = medium.omega();
    meta.scene = scene.description();
    meta.bc = std::string(to_string(scene.components().front().bc));
    for (const auto& c : scene.components())
        if (c.bc != scene.components().front().bc) meta.bc = "mixed";
    MSRMatrix msr(m, meta);

    const FactoredSystem sys(assemble_system(scene, medium, n_per_component));
    const int dirs = 2 * m;
    std::vector<Vec2> directions(dirs);
    for (int i = 0; i < dirs; ++i) directions[i] = msr.direction(i);

    const int rows = 2 * sys.disc().size();
    Eigen::MatrixXcd rhs(rows, 2 * dirs);
#pragma omp parallel for schedule(static)
    for (int col = 0; col < 2 * dirs; ++col) {
        const WaveMode mode = col < dirs ? WaveMode::P : WaveMode::S;
        rhs.col(col) = incident_rhs(sys.disc(), medium, PlaneWave(mode, directions[col % dirs]));
    }
    const Eigen::MatrixXcd psi = sys.solve(rhs);
    const auto [up, us] = farfield_batch(sys.disc(), medium, directions, psi);
    msr.pp = up.leftCols(dirs);
    msr.sp = up.rightCols(dirs);
    msr.ps = us.leftCols(dirs);
    msr.ss = us.rightCols(dirs);
    return msr;
}

namespace quadrature {

std::vector<double> log_weights(int n) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("log_weights needs an even node count");
    const int half = n / 2;
    std::vector<double> w(n);
    for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int m = 1; m < half; ++m) sum += std::cos(m * kTwoPi * k / n) / m;
        const double alt = (k % 2 == 0) ? 1.0 : -1.0;
        w[k] = -kTwoPi / half * sum - kPi / (double(half) * half) * alt;
    }
    return w;
}

std::vector<double> cot_weights(int n) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("cot_weights needs an even node count");
    std::vector<double> w(n, 0.0);
    for (int k = 1; k < n; k += 2) w[k] = 2.0 * kPi / n / std::tan(kPi * k / n);
    return w;
}

}  // namespace quadrature

}  // namespace edsm
