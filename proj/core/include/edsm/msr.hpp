#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "edsm/elastic.hpp"

namespace edsm {

struct MSRMetadata {
    double lambda = 1.0;
    double mu = 1.0;
    double omega = 8.0 * kPi;
    std::string scene;  // Scene::description()
    std::string bc;     // "dirichlet", "neumann" or "mixed"
    double delta = 0.0;
    std::optional<std::uint64_t> seed;
    std::string norm = "frobenius";
    std::string retrieval;  // empty unless produced by tikhonov_retrieve
};

//---------------------------------------------------------------------------//
/*!
 * Multi-static response matrix over 2m equidistant directions θ_i = iπ/m.
 *
 * Entry [j, i] of each block is the far field in observation direction x̂_j
 * for incidence d_i. Block names are (incident mode, far-field component):
 * ps is the s-far-field of P incidence, sp the p-far-field of S incidence.
 * The assembled layout is [[pp, sp], [ps, ss]].
 */
class MSRMatrix {
  public:
    MSRMatrix() = default;
    MSRMatrix(int m, MSRMetadata meta);

    int m() const { return m_; }
    int directions() const { return 2 * m_; }
    double angle(int i) const { return kPi * i / m_; }
    Vec2 direction(int i) const { return unit_direction(angle(i)); }

    Medium medium() const { return Medium(meta.lambda, meta.mu, meta.omega); }

    Eigen::MatrixXcd full() const;
    void set_full(const Eigen::MatrixXcd& full);

    double frobenius_norm() const;

    Eigen::MatrixXcd pp, ps, sp, ss;
    MSRMetadata meta;

  private:
    int m_ = 0;
};

// Antipodal index i -> (i + m) mod 2m, zero-based.
inline int antipode(int i, int m) { return (i + m) % (2 * m); }

// Counter-based SplitMix64: the k-th output for a given seed.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);

// Standard normal pair from uniforms at counters 2e and 2e+1 (Box-Muller).
std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t e);

// F + δ‖F‖(R1 + iR2)/‖R1 + iR2‖ on the assembled 4m×4m matrix, Frobenius norm.
MSRMatrix add_noise(const MSRMatrix& msr, double delta, std::uint64_t seed);

void write_msr(const MSRMatrix& msr, std::ostream& out);
MSRMatrix read_msr(std::istream& in);

void save_msr(const MSRMatrix& msr, const std::filesystem::path& path);
MSRMatrix load_msr(const std::filesystem::path& path);

}  // namespace edsm
