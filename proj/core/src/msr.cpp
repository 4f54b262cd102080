#include "edsm/msr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "edsm/errors.hpp"

namespace edsm {
namespace {

constexpr const char* kVersion = "MSR/1";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

FormatError malformed(int line, const std::string& what) {
    return FormatError(FormatError::Kind::Malformed, line,
                       "line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, int line, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw malformed(line, "invalid number '" + s + "' for " + key);
    }
    return v;
}

}  // namespace

MSRMatrix::MSRMatrix(int m, MSRMetadata metadata) : meta(std::move(metadata)), m_(m) {
    if (m < 1) throw InvalidArgument("MSR needs m >= 1");
    const int n = 2 * m;
    pp.setZero(n, n);
    ps.setZero(n, n);
    sp.setZero(n, n);
    ss.setZero(n, n);
}

Eigen::MatrixXcd MSRMatrix::full() const {
    const int n = directions();
    Eigen::MatrixXcd f(2 * n, 2 * n);
    f.topLeftCorner(n, n) = pp;
    f.topRightCorner(n, n) = sp;
    f.bottomLeftCorner(n, n) = ps;
    f.bottomRightCorner(n, n) = ss;
    return f;
}

void MSRMatrix::set_full(const Eigen::MatrixXcd& f) {
    const int n = directions();
    if (f.rows() != 2 * n || f.cols() != 2 * n) {
        throw InvalidArgument("assembled MSR has wrong dimensions");
    }
    pp = f.topLeftCorner(n, n);
    sp = f.topRightCorner(n, n);
    ps = f.bottomLeftCorner(n, n);
    ss = f.bottomRightCorner(n, n);
}

double MSRMatrix::frobenius_norm() const {
    return std::sqrt(pp.squaredNorm() + ps.squaredNorm() + sp.squaredNorm() + ss.squaredNorm());
}

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t e) {
    // Uniforms in (0, 1) from the top 53 bits.
    auto uniform = [seed](std::uint64_t c) {
        return (static_cast<double>(splitmix64(seed, c) >> 11) + 0.5) * 0x1.0p-53;
    };
    const double u1 = uniform(2 * e);
    const double u2 = uniform(2 * e + 1);
    const double rho = std::sqrt(-2.0 * std::log(u1));
    return {rho * std::cos(kTwoPi * u2), rho * std::sin(kTwoPi * u2)};
}

MSRMatrix add_noise(const MSRMatrix& msr, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw InvalidArgument("noise level delta must be finite and non-negative");
    }
    MSRMatrix out = msr;
    out.meta.delta = delta;
    out.meta.seed = seed;
    out.meta.norm = "frobenius";
    if (delta == 0.0) return out;

    Eigen::MatrixXcd f = msr.full();
    const Eigen::Index n = f.rows();
    Eigen::MatrixXcd r(n, n);
    for (Eigen::Index row = 0; row < n; ++row) {
        for (Eigen::Index col = 0; col < n; ++col) {
            const auto [a, b] = normal_pair(seed, static_cast<std::uint64_t>(row * n + col));
            r(row, col) = cplx(a, b);
        }
    }
    const double fnorm = f.norm();
    const double rnorm = r.norm();
    if (!(rnorm > 0.0)) throw NumericError("degenerate noise sample");
    f += (delta * fnorm / rnorm) * r;
    out.set_full(f);
    return out;
}

void write_msr(const MSRMatrix& msr, std::ostream& out) {
    const auto& m = msr.meta;
    out << "#version=" << kVersion << '\n';
    out << "#m=" << msr.m() << '\n';
    out << "#lambda=" << fmt17(m.lambda) << '\n';
    out << "#mu=" << fmt17(m.mu) << '\n';
    out << "#omega=" << fmt17(m.omega) << '\n';
    out << "#scene=" << m.scene << '\n';
    out << "#bc=" << m.bc << '\n';
    out << "#delta=" << fmt17(m.delta) << '\n';
    out << "#seed=" << (m.seed ? std::to_string(*m.seed) : std::string("none")) << '\n';
    out << "#norm=" << m.norm << '\n';
    if (!m.retrieval.empty()) out << "#retrieval=" << m.retrieval << '\n';

    const Eigen::MatrixXcd f = msr.full();
    std::string line;
    for (Eigen::Index row = 0; row < f.rows(); ++row) {
        line.clear();
        for (Eigen::Index col = 0; col < f.cols(); ++col) {
            if (col) line += ' ';
            line += fmt17(f(row, col).real());
            line += ' ';
            line += fmt17(f(row, col).imag());
        }
        line += '\n';
        out << line;
    }
    if (!out) throw IoError("failed writing MSR data");
}

MSRMatrix read_msr(std::istream& in) {
    std::map<std::string, std::pair<std::string, int>> header;
    std::string line;
    int lineno = 0;
    while (in.peek() == '#') {
        std::getline(in, line);
        ++lineno;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw malformed(lineno, "header line without '='");
        header[line.substr(1, eq - 1)] = {line.substr(eq + 1), lineno};
    }

    auto require = [&](const char* key) -> const std::pair<std::string, int>& {
        const auto it = header.find(key);
        if (it == header.end()) {
            throw FormatError(FormatError::Kind::Malformed, lineno + 1,
                              std::string("missing header key '") + key + "'");
        }
        return it->second;
    };

    const auto& version = require("version");
    if (version.first != kVersion) {
        throw FormatError(FormatError::Kind::Version, version.second,
                          "line " + std::to_string(version.second) + ": unsupported version '" +
                              version.first + "', expected " + kVersion);
    }
    const auto& mline = require("m");
    int m = 0;
    {
        const auto& s = mline.first;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), m);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size() || m < 1) {
            throw malformed(mline.second, "invalid m '" + s + "'");
        }
    }
    MSRMetadata meta;
    meta.lambda = parse_double(require("lambda").first, require("lambda").second, "lambda");
    meta.mu = parse_double(require("mu").first, require("mu").second, "mu");
    meta.omega = parse_double(require("omega").first, require("omega").second, "omega");
    meta.scene = require("scene").first;
    meta.bc = require("bc").first;
    meta.delta = parse_double(require("delta").first, require("delta").second, "delta");
    const auto& seed = require("seed");
    if (seed.first != "none") {
        std::uint64_t v = 0;
        const auto res = std::from_chars(seed.first.data(), seed.first.data() + seed.first.size(), v);
        if (res.ec != std::errc() || res.ptr != seed.first.data() + seed.first.size()) {
            throw malformed(seed.second, "invalid seed '" + seed.first + "'");
        }
        meta.seed = v;
    }
    meta.norm = require("norm").first;
    if (auto it = header.find("retrieval"); it != header.end()) meta.retrieval = it->second.first;

    MSRMatrix msr(m, meta);
    const int n = 4 * m;
    Eigen::MatrixXcd f(n, n);
    int row = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (row >= n) {
            throw FormatError(FormatError::Kind::Dimension, lineno,
                              "line " + std::to_string(lineno) + ": more than " +
                                  std::to_string(n) + " data rows for m=" + std::to_string(m));
        }
        const char* p = line.data();
        const char* end = p + line.size();
        int values = 0;
        std::vector<double> buf;
        buf.reserve(2 * n);
        while (p < end) {
            while (p < end && *p == ' ') ++p;
            if (p >= end) break;
            double v = 0.0;
            const auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc()) {
                throw malformed(lineno, "invalid number in data row " + std::to_string(row + 1));
            }
            p = res.ptr;
            if (p < end && *p != ' ') {
                throw malformed(lineno, "invalid number in data row " + std::to_string(row + 1));
            }
            buf.push_back(v);
            ++values;
        }
        if (values != 2 * n) {
            throw malformed(lineno, "expected " + std::to_string(2 * n) + " values, found " +
                                        std::to_string(values));
        }
        for (int col = 0; col < n; ++col) f(row, col) = cplx(buf[2 * col], buf[2 * col + 1]);
        ++row;
    }
    if (row != n) {
        throw FormatError(FormatError::Kind::Dimension, lineno,
                          "line " + std::to_string(lineno) + ": found " + std::to_string(row) +
                              " data rows, expected " + std::to_string(n) + " for m=" +
                              std::to_string(m));
    }
    msr.set_full(f);
    return msr;
}

void save_msr(const MSRMatrix& msr, const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_msr(msr, out);
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

MSRMatrix load_msr(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_msr(in);
}

}  // namespace edsm
