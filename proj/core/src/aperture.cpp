#include "edsm/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>

#include "edsm/errors.hpp"
#include "edsm/geometry.hpp"

namespace edsm {
namespace {

constexpr double kDefaultAlphaScale = 1e-8;

std::vector<int> normalized_indices(std::vector<int> v, int m, const char* what) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) throw InvalidArgument(std::string(what) + " direction set is empty");
    if (v.front() < 0 || v.back() >= 2 * m) {
        throw InvalidArgument(std::string(what) + " direction index out of range");
    }
    return v;
}

// Blocks whose far-field component is p use k_p.
bool p_component(Block b) { return b == Block::PP || b == Block::SP; }

}  // namespace

std::vector<int> indices_in_arcs(int m, const std::vector<Arc>& arcs) {
    std::vector<int> out;
    for (int i = 0; i < 2 * m; ++i) {
        const double theta = kPi * i / m;
        for (const Arc& a : arcs) {
            const double len = a.end - a.begin;
            if (!(len > 0.0)) throw InvalidArgument("arc must have end > begin");
            if (len >= kTwoPi) {
                out.push_back(i);
                break;
            }
            double rel = std::fmod(theta - a.begin, kTwoPi);
            if (rel < 0.0) rel += kTwoPi;
            // Directions within rounding of the arc's start belong to it.
            if (rel > kTwoPi - 1e-12) rel = 0.0;
            if (rel < len - 1e-12) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

std::vector<int> evenly_spaced_indices(int m, int count) {
    const int dirs = 2 * m;
    if (count < 1 || count > dirs) throw InvalidArgument("incident count out of range");
    std::vector<int> out(count);
    for (int k = 0; k < count; ++k) {
        out[k] = static_cast<int>(std::lround(static_cast<double>(k) * dirs / count)) % dirs;
    }
    return out;
}

ApertureMask ApertureMask::full(int m) {
    ApertureMask mask;
    for (int i = 0; i < 2 * m; ++i) {
        mask.observed.push_back(i);
        mask.incident.push_back(i);
    }
    return mask;
}

MaskedMSR::MaskedMSR(int m, MSRMetadata meta) : m_(m), meta_(std::move(meta)) {
    if (m < 1) throw InvalidArgument("masked MSR needs m >= 1");
    const int n = 2 * m;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int b = 0; b < 4; ++b) {
        values_[b] = Eigen::MatrixXcd::Constant(n, n, cplx(nan, nan));
        known_[b] = KnownMatrix::Constant(n, n, false);
    }
}

std::optional<cplx> MaskedMSR::value(Block b, int j, int i) const {
    if (!known(b, j, i)) return std::nullopt;
    return values_[index(b)](j, i);
}

void MaskedMSR::set(Block b, int j, int i, cplx v) {
    values_[index(b)](j, i) = v;
    known_[index(b)](j, i) = true;
}

int MaskedMSR::known_count(Block b) const { return static_cast<int>(known_[index(b)].count()); }

MSRMatrix MaskedMSR::zero_filled() const {
    MSRMatrix out(m_, meta_);
    Eigen::MatrixXcd* blocks[4] = {&out.pp, &out.ps, &out.sp, &out.ss};
    for (int b = 0; b < 4; ++b) {
        *blocks[b] = known_[b].select(values_[b], Eigen::MatrixXcd::Zero(2 * m_, 2 * m_));
    }
    return out;
}

MaskedMSR apply_mask(const MSRMatrix& msr, const ApertureMask& mask) {
    const int m = msr.m();
    const auto observed = normalized_indices(mask.observed, m, "observed");
    const auto incident = normalized_indices(mask.incident, m, "incident");
    MaskedMSR out(m, msr.meta);
    const Eigen::MatrixXcd* blocks[4] = {&msr.pp, &msr.ps, &msr.sp, &msr.ss};
    for (int b = 0; b < 4; ++b) {
        for (int i : incident)
            for (int j : observed) out.set(static_cast<Block>(b), j, i, (*blocks[b])(j, i));
    }
    return out;
}

MaskedMSR reciprocity_fill(const MaskedMSR& masked) {
    const int m = masked.m();
    const int n = masked.directions();
    MaskedMSR out = masked;
    // Partner block for each target: pp <- pp, ss <- ss, ps <- sp, sp <- ps.
    const std::pair<Block, Block> pairs[4] = {{Block::PP, Block::PP},
                                              {Block::SS, Block::SS},
                                              {Block::PS, Block::SP},
                                              {Block::SP, Block::PS}};
    for (const auto& [target, source] : pairs) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (masked.known(target, j, i)) continue;
                const auto v = masked.value(source, antipode(i, m), antipode(j, m));
                if (v) out.set(target, j, i, *v);
            }
        }
    }
    return out;
}

Eigen::MatrixXcd farfield_operator(int m, double k, double radius, int n_boundary,
                                   const std::vector<int>& rows) {
    const double w = kTwoPi * radius / n_boundary;
    Eigen::MatrixXcd a(rows.size(), n_boundary);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Vec2 xhat = unit_direction(kPi * rows[r] / m);
        for (int l = 0; l < n_boundary; ++l) {
            const Vec2 y = radius * unit_direction(kTwoPi * l / n_boundary);
            a(r, l) = std::polar(w, -k * xhat.dot(y));
        }
    }
    return a;
}

Eigen::VectorXcd tikhonov_coefficients(int m, double k, const RetrievalParams& params,
                                       const std::vector<int>& rows, const Eigen::VectorXcd& u,
                                       double alpha) {
    const Eigen::MatrixXcd a = farfield_operator(m, k, params.radius, params.n_boundary, rows);
    Eigen::MatrixXcd normal = a.adjoint() * a;
    normal.diagonal().array() += alpha;
    return normal.llt().solve(a.adjoint() * u);
}

MSRMatrix tikhonov_retrieve(const MaskedMSR& masked, const RetrievalParams& params) {
    if (params.alpha && !(*params.alpha > 0.0)) {
        throw InvalidArgument("Tikhonov parameter alpha must be positive");
    }
    if (params.n_boundary < 8) throw InvalidArgument("n_boundary must be at least 8");
    if (masked.meta().scene.empty()) {
        throw InvalidArgument("retrieval needs the scene description in the MSR metadata");
    }
    const double circumradius =
        scene_from_description(masked.meta().scene, BoundaryCondition::Dirichlet).circumradius();
    if (!(params.radius > circumradius)) {
        std::ostringstream msg;
        msg << "retrieval radius " << params.radius << " must exceed the scene circumradius "
            << circumradius;
        throw InvalidArgument(msg.str());
    }

    const int m = masked.m();
    const int n = masked.directions();
    const Medium medium(masked.meta().lambda, masked.meta().mu, masked.meta().omega);
    const double w = kTwoPi * params.radius / params.n_boundary;

    MSRMetadata meta = masked.meta();
    {
        std::ostringstream r;
        r.precision(17);
        r << "radius=" << params.radius << ";n_boundary=" << params.n_boundary << ";alpha=";
        if (params.alpha)
            r << *params.alpha;
        else
            r << "1e-8*trace/n_B";
        meta.retrieval = r.str();
    }
    MSRMatrix out(m, meta);
    Eigen::MatrixXcd* blocks[4] = {&out.pp, &out.ps, &out.sp, &out.ss};

    struct Factor {
        Eigen::MatrixXcd a_known;
        Eigen::MatrixXcd a_unknown;
        Eigen::LLT<Eigen::MatrixXcd> llt;
    };

    for (int b = 0; b < 4; ++b) {
        const Block block = static_cast<Block>(b);
        const double k = p_component(block) ? medium.kp() : medium.ks();
        std::map<std::vector<int>, Factor> cache;
        for (int i = 0; i < n; ++i) {
            std::vector<int> rows, missing;
            for (int j = 0; j < n; ++j) (masked.known(block, j, i) ? rows : missing).push_back(j);
            if (rows.empty()) {
                throw InvalidArgument("column " + std::to_string(i) + " of block " +
                                      std::to_string(b) + " has no known rows to retrieve from");
            }
            Eigen::VectorXcd u(rows.size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                u[r] = *masked.value(block, rows[r], i);
                (*blocks[b])(rows[r], i) = u[r];
            }
            if (missing.empty()) continue;

            auto it = cache.find(rows);
            if (it == cache.end()) {
                Factor f;
                f.a_known = farfield_operator(m, k, params.radius, params.n_boundary, rows);
                f.a_unknown = farfield_operator(m, k, params.radius, params.n_boundary, missing);
                const double alpha = params.alpha
                                         ? *params.alpha
                                         : kDefaultAlphaScale * static_cast<double>(rows.size()) *
                                               w * w;
                Eigen::MatrixXcd normal = f.a_known.adjoint() * f.a_known;
                normal.diagonal().array() += alpha;
                f.llt.compute(normal);
                if (f.llt.info() != Eigen::Success) {
                    throw NumericError("Tikhonov normal equations are not positive definite");
                }
                it = cache.emplace(rows, std::move(f)).first;
            }
            const Factor& f = it->second;
            const Eigen::VectorXcd c = f.llt.solve(f.a_known.adjoint() * u);
            const Eigen::VectorXcd pred = f.a_unknown * c;
            for (std::size_t r = 0; r < missing.size(); ++r) (*blocks[b])(missing[r], i) = pred[r];
        }
    }
    if (!out.full().allFinite()) throw NumericError("non-finite retrieved data");
    return out;
}

IndicatorField limited_indicator(const MaskedMSR& masked, const SamplingGrid& grid,
                                 const Vec2& q, IndicatorKind kind) {
    return indicator(masked.zero_filled(), grid, q, kind);
}

}  // namespace edsm
