#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "edsm/indicators.hpp"
#include "edsm/msr.hpp"

namespace edsm {

// Half-open arc [begin, end) in radians, taken modulo 2π.
struct Arc {
    double begin, end;

    bool operator==(const Arc&) const = default;
};

// Zero-based direction indices i with θ_i = iπ/m inside any of the arcs.
std::vector<int> indices_in_arcs(int m, const std::vector<Arc>& arcs);

// `count` incident indices spread evenly over the 2m directions, starting at 0.
std::vector<int> evenly_spaced_indices(int m, int count);

struct ApertureMask {
    std::vector<int> observed;  // zero-based, sorted, unique
    std::vector<int> incident;

    static ApertureMask full(int m);
};

enum class Block { PP, PS, SP, SS };

//---------------------------------------------------------------------------//
/*!
 * MSR matrix with per-entry availability.
 *
 * Unknown entries are absent: value() returns nullopt for them and the stored
 * value is NaN, so they cannot enter a sum unnoticed.
 */
class MaskedMSR {
  public:
    using KnownMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

    MaskedMSR(int m, MSRMetadata meta);

    int m() const { return m_; }
    int directions() const { return 2 * m_; }
    const MSRMetadata& meta() const { return meta_; }

    bool known(Block b, int j, int i) const { return known_[index(b)](j, i); }
    std::optional<cplx> value(Block b, int j, int i) const;
    void set(Block b, int j, int i, cplx v);

    int known_count(Block b) const;
    const KnownMatrix& known_matrix(Block b) const { return known_[index(b)]; }

    // Copy with unknown entries replaced by zero.
    MSRMatrix zero_filled() const;

  private:
    static int index(Block b) { return static_cast<int>(b); }

    int m_;
    MSRMetadata meta_;
    std::array<Eigen::MatrixXcd, 4> values_;
    std::array<KnownMatrix, 4> known_;
};

// Entry (j, i) of every block is known iff j is observed and i is incident.
MaskedMSR apply_mask(const MSRMatrix& msr, const ApertureMask& mask);

// Fills unknown entries from their reciprocal partners (antipodal, transposed;
// ps and sp exchange roles). One pass over a snapshot; idempotent.
MaskedMSR reciprocity_fill(const MaskedMSR& masked);

struct RetrievalParams {
    double radius = 5.0;
    int n_boundary = 256;
    std::optional<double> alpha;  // default 1e-8 trace(AᴴA)/n_B per column

    bool operator==(const RetrievalParams&) const = default;
};

// Tikhonov extrapolation of each column's unknown rows from its known rows via
// a far-field single layer on the circle of the given radius. Known entries are
// kept. Throws if a column has no known rows.
MSRMatrix tikhonov_retrieve(const MaskedMSR& masked, const RetrievalParams& params);

// Regularized solution for one column: returns the coefficient vector c of
// (AᴴA + αI)c = Aᴴu for the rows `rows` of the far-field operator.
Eigen::VectorXcd tikhonov_coefficients(int m, double k, const RetrievalParams& params,
                                       const std::vector<int>& rows, const Eigen::VectorXcd& u,
                                       double alpha);

// Far-field operator rows A[j, l] = e^{-ik x̂_j·y_l}(2πR/n_B).
Eigen::MatrixXcd farfield_operator(int m, double k, double radius, int n_boundary,
                                   const std::vector<int>& rows);

// Indicator summed over known (j, i) pairs only.
IndicatorField limited_indicator(const MaskedMSR& masked, const SamplingGrid& grid,
                                 const Vec2& q, IndicatorKind kind);

}  // namespace edsm
