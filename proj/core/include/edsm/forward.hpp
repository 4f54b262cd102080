#pragma once

#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "edsm/elastic.hpp"
#include "edsm/geometry.hpp"
#include "edsm/msr.hpp"

namespace edsm {

struct PointSource {
    Vec2 z;
    Vec2 q;
};

using Incident = std::variant<PlaneWave, PointSource>;

// Quadrature nodes of every component, in component order.
struct Discretization {
    std::vector<QuadratureNode> nodes;
    std::vector<int> component;
    std::vector<BoundaryCondition> bc;
    int n_per_component = 0;

    int size() const { return static_cast<int>(nodes.size()); }
};

Discretization discretize(const Scene& scene, int n_per_component);

//---------------------------------------------------------------------------//
/*!
 * Nyström matrix for the single-layer ansatz u = ∫ Φ(·, y) ψ(y) ds(y).
 *
 * Unknowns are interleaved as 2·node + component. Rows of a Dirichlet
 * component enforce Sψ = -u^in, rows of a Neumann component enforce
 * (-I/2 + K')ψ = -T_ν u^in.
 */
struct BoundarySystem {
    Discretization disc;
    Medium medium;
    Eigen::MatrixXcd matrix;
};

// Rows follow each component's own boundary condition.
BoundarySystem assemble_system(const Scene& scene, const Medium& medium, int n_per_component);
BoundarySystem assemble_dirichlet_system(const Scene& scene, const Medium& medium,
                                         int n_per_component);
BoundarySystem assemble_neumann_system(const Scene& scene, const Medium& medium,
                                       int n_per_component);

// LU factorization reused across right-hand sides. Rejects systems whose
// estimated condition number exceeds 1e12.
class FactoredSystem {
  public:
    explicit FactoredSystem(BoundarySystem system);

    const Discretization& disc() const { return system_.disc; }
    const Medium& medium() const { return system_.medium; }
    double rcond() const { return rcond_; }

    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;

  private:
    BoundarySystem system_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
    double rcond_ = 0.0;
};

// -u^in or -T_ν u^in at the nodes, per component boundary condition.
Eigen::VectorXcd incident_rhs(const Discretization& disc, const Medium& medium,
                              const Incident& incident);

struct Density {
    Discretization disc;
    Eigen::VectorXcd values;

    CVec2 at(int node) const { return values.segment<2>(2 * node); }
};

Density solve_density(const FactoredSystem& system, const Incident& incident);

std::vector<FarFieldPair> farfield_from_density(const Density& density, const Medium& medium,
                                                const std::vector<Vec2>& directions);

// Far fields for many densities at once: columns of `densities` are
// interleaved node vectors. Returns (p, s) blocks of size dirs × columns.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> farfield_batch(
    const Discretization& disc, const Medium& medium, const std::vector<Vec2>& directions,
    const Eigen::MatrixXcd& densities);

MSRMatrix synthesize_msr(const Scene& scene, const Medium& medium, int m, int n_per_component);

namespace quadrature {

// Weights R(k) of the logarithmic rule ∫ ln(4 sin²((t-τ)/2)) f(τ) dτ ≈ Σ R(i-j) f(τ_j).
std::vector<double> log_weights(int n);

// Weights Q(k) of the Cauchy rule PV∫ ½cot((t-τ)/2) f(τ) dτ ≈ Σ Q(i-j) f(τ_j).
std::vector<double> cot_weights(int n);

}  // namespace quadrature

}  // namespace edsm
