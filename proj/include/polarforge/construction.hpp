#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <span>
#include <sstream>

#include "polarforge/common.hpp"

namespace polarforge {

enum class MetricKind { Bhattacharyya, GaLlrMean, Pw };
enum class MetricOrientation { LowerIsBetter, HigherIsBetter };

inline const char* metric_kind_name(MetricKind k) {
    switch (k) {
        case MetricKind::Bhattacharyya: return "bhattacharyya";
        case MetricKind::GaLlrMean: return "ga";
        case MetricKind::Pw: return "pw";
    }
    return "?";
}

/// Per-channel reliability scores in natural channel order (values[0] is
/// channel 1). Orientation tells the selector which end is reliable.
struct ReliabilityMetricVector {
    MetricKind kind;
    MetricOrientation orientation;
    std::vector<double> values;

    static ReliabilityMetricVector make(MetricKind kind, std::vector<double> values) {
        log2_exact(values.size(), "metric vector length");
        MetricOrientation o = kind == MetricKind::Bhattacharyya
                                  ? MetricOrientation::LowerIsBetter
                                  : MetricOrientation::HigherIsBetter;
        return ReliabilityMetricVector{kind, o, std::move(values)};
    }
};

// ---------------------------------------------------------------------------
// Gaussian-approximation check-node functions.
// ---------------------------------------------------------------------------

enum class GaVariant { PhiTwoSegment, Omega2, Omega3, Omega4 };

inline const char* ga_variant_name(GaVariant v) {
    switch (v) {
        case GaVariant::PhiTwoSegment: return "phi";
        case GaVariant::Omega2: return "omega2";
        case GaVariant::Omega3: return "omega3";
        case GaVariant::Omega4: return "omega4";
    }
    return "?";
}

/// Closed-form approximations of the check-node mean transfer function.
/// phi(0) = 1; each variant is a piecewise expression with its own
/// breakpoints and is (piecewise) strictly decreasing in t.
inline double phi_eval(double t, GaVariant v) {
    require(t >= 0.0, "phi argument must be >= 0");
    if (t == 0.0) return 1.0;
    switch (v) {
        case GaVariant::PhiTwoSegment:
            if (t < 10.0) return std::exp(-0.4527 * std::pow(t, 0.86) + 0.0218);
            return std::sqrt(M_PI / t) * std::exp(-t / 4.0) * (1.0 - 10.0 / (7.0 * t));
        case GaVariant::Omega2:
            if (t <= 7.063) return std::exp(0.012 * t * t - 0.421 * t);
            return std::exp(-0.294 * t - 0.317);
        case GaVariant::Omega3:
            if (t <= 0.636) return std::exp(0.0673 * t * t - 0.491 * t);
            if (t <= 9.225) return std::exp(-0.453 * std::pow(t, 0.86) + 0.022);
            return std::exp(-0.283 * t - 0.425);
        case GaVariant::Omega4:
            if (t <= 0.191) return std::exp(0.105 * t * t - 0.499 * t);
            if (t <= 0.742) return 0.998 * std::exp(0.053 * t * t - 0.480 * t);
            if (t <= 9.225) return std::exp(-0.453 * std::pow(t, 0.86) + 0.022);
            return std::exp(-0.283 * t - 0.425);
    }
    return 0.0;
}

namespace detail {
// Upper end of the inversion bracket. Means that would land above it are
// saturated there; at t=200 every variant is far below any value the
// recursion can ask for at double precision of interest.
inline constexpr double kPhiInvBracket = 200.0;
inline constexpr double kPhiInvTol = 1e-12;

// Bisection without the (0,1] argument check, clamping y >= 1 to t = 0.
// Used by the recursion where the two-segment form can slightly exceed 1
// near t -> 0+.
inline double phi_inverse_clamped(double y, GaVariant v) {
    if (y >= 1.0) return 0.0;
    if (y <= phi_eval(kPhiInvBracket, v)) return kPhiInvBracket;
    double lo = 0.0, hi = kPhiInvBracket;
    double mid = 0.0, val = 0.0;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        val = phi_eval(mid, v);
        if (std::abs(val - y) <= kPhiInvTol) return mid;
        (val > y) ? lo = mid : hi = mid;
        if (hi - lo < 1e-15) break;
    }
    if (std::abs(val - y) > kPhiInvTol)
        throw std::runtime_error("phi inversion did not reach tolerance");
    return mid;
}
}  // namespace detail

/// Monotone bracketed inversion of phi_eval: returns t with
/// |phi(t) - y| <= 1e-12. phi_inverse(1) = 0.
inline double phi_inverse(double y, GaVariant v) {
    require(y > 0.0 && y <= 1.0, "phi_inverse argument must be in (0,1]");
    return detail::phi_inverse_clamped(y, v);
}

// ---------------------------------------------------------------------------
// Bit-channel reliability evolution, natural channel order.
//
// Both recursions share the same pairing as the natural-order transform: at
// stage size h the pair (i, i+h) produces the check-combined value at i and
// the variable-combined value at i+h. With a constant initial vector this
// reproduces the classic single-channel recursion; with per-position initial
// values it yields the rate-matching-aware construction.
// ---------------------------------------------------------------------------

/// Erasure-probability evolution: Z- = a+b-ab, Z+ = ab (exact for the BEC).
/// Input: one Z value per code-bit position; output: one per bit channel.
inline std::vector<double> bec_bit_channel_z(std::vector<double> z) {
    const std::size_t size = z.size();
    log2_exact(size, "position vector length");
    for (std::size_t h = size / 2; h >= 1; h /= 2) {
        for (std::size_t s = 0; s < size; s += 2 * h)
            for (std::size_t i = s; i < s + h; ++i) {
                const double a = z[i], b = z[i + h];
                // a + b*(1-a) == a+b-ab, and is exactly 1 when a == 1
                const double zm = a + b * (1.0 - a);
                z[i] = zm > 1.0 ? 1.0 : zm;
                z[i + h] = a * b;
            }
        if (h == 1) break;
    }
    return z;
}

/// LLR-mean evolution under the Gaussian approximation:
/// m- = phi^{-1}(1 - (1 - phi(a))(1 - phi(b))), m+ = a + b.
inline std::vector<double> ga_bit_channel_means(std::vector<double> m, GaVariant v) {
    const std::size_t size = m.size();
    log2_exact(size, "position vector length");
    for (std::size_t h = size / 2; h >= 1; h /= 2) {
        for (std::size_t s = 0; s < size; s += 2 * h)
            for (std::size_t i = s; i < s + h; ++i) {
                const double a = m[i], b = m[i + h];
                double y = 1.0 - (1.0 - phi_eval(a, v)) * (1.0 - phi_eval(b, v));
                if (y > 1.0) y = 1.0;
                m[i] = detail::phi_inverse_clamped(y, v);
                m[i + h] = a + b;
            }
        if (h == 1) break;
    }
    return m;
}

/// Bhattacharyya parameters of the 2^n polarized channels of a BEC with
/// erasure probability epsilon.
inline ReliabilityMetricVector bhattacharyya_bec(int n, double epsilon) {
    require(n >= 0, "n must be >= 0");
    require(epsilon >= 0.0 && epsilon <= 1.0, "erasure probability must be in [0,1]");
    std::vector<double> z(std::size_t{1} << n, epsilon);
    return ReliabilityMetricVector::make(MetricKind::Bhattacharyya,
                                         bec_bit_channel_z(std::move(z)));
}

/// GA construction for BPSK over AWGN with noise std sigma: initial mean
/// 2/sigma^2 at every position, then the mean recursion with the selected
/// phi approximation.
inline ReliabilityMetricVector ga_llr_means(int n, double sigma,
                                            GaVariant v = GaVariant::PhiTwoSegment) {
    require(n >= 0, "n must be >= 0");
    require(sigma > 0.0, "sigma must be > 0");
    std::vector<double> m(std::size_t{1} << n, 2.0 / (sigma * sigma));
    return ReliabilityMetricVector::make(MetricKind::GaLlrMean,
                                         ga_bit_channel_means(std::move(m), v));
}

/// Polarization weight: PW(i) = sum over set bits b of (i-1) of beta^b,
/// where bit b corresponds to the beta-expansion digit with exponent b.
/// Channel-independent; larger is more reliable.
inline ReliabilityMetricVector pw_metrics(int n, double beta = std::pow(2.0, 0.25)) {
    require(n >= 0, "n must be >= 0");
    require(beta > 0.0, "beta must be > 0");
    std::vector<double> pow_beta(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) pow_beta[static_cast<std::size_t>(b)] = std::pow(beta, b);
    std::vector<double> w(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        double acc = 0.0;
        for (int b = 0; b < n; ++b)
            if (i >> b & 1u) acc += pow_beta[static_cast<std::size_t>(b)];
        w[i] = acc;
    }
    return ReliabilityMetricVector::make(MetricKind::Pw, std::move(w));
}

namespace detail {
// Reliability order of all channels, best first. Ties break toward the
// larger channel index.
inline std::vector<int> reliability_order(const ReliabilityMetricVector& metrics) {
    const int size = static_cast<int>(metrics.values.size());
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 1);
    const bool lower = metrics.orientation == MetricOrientation::LowerIsBetter;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double va = metrics.values[static_cast<std::size_t>(a - 1)];
        const double vb = metrics.values[static_cast<std::size_t>(b - 1)];
        if (va != vb) return lower ? va < vb : va > vb;
        return a > b;
    });
    return idx;
}
}  // namespace detail

/// The K most reliable channel indices (1-based, ascending). `excluded`
/// positions, when given, are never selected (used when shortening pins
/// source indices to frozen).
inline std::vector<int> select_info_set(const ReliabilityMetricVector& metrics, int count,
                                        std::span<const int> excluded = {}) {
    const int size = static_cast<int>(metrics.values.size());
    std::vector<uint8_t> banned(static_cast<std::size_t>(size), 0);
    for (int e : excluded) {
        require(e >= 1 && e <= size, "excluded index out of range");
        banned[static_cast<std::size_t>(e - 1)] = 1;
    }
    const int available =
        size - static_cast<int>(std::count(banned.begin(), banned.end(), uint8_t{1}));
    require(count >= 0 && count <= available, "K exceeds the number of selectable channels");
    std::vector<int> order = detail::reliability_order(metrics);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(count));
    for (int i : order) {
        if (static_cast<int>(chosen.size()) == count) break;
        if (!banned[static_cast<std::size_t>(i - 1)]) chosen.push_back(i);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

/// Union-of-events bound on the SC block error rate: min(1, sum of Z over
/// the information set).
inline double sc_bler_upper_bound(const ReliabilityMetricVector& z,
                                  std::span<const int> info_set) {
    require(z.kind == MetricKind::Bhattacharyya,
            "SC BLER bound requires Bhattacharyya metrics");
    double sum = 0.0;
    for (int i : info_set) {
        require(i >= 1 && i <= static_cast<int>(z.values.size()), "index out of range");
        sum += z.values[static_cast<std::size_t>(i - 1)];
    }
    return std::min(1.0, sum);
}

// ---------------------------------------------------------------------------
// Reliability sequence text format: header "# N=<N> kind=<kind>", then one
// 1-based channel index per line, most reliable first.
// ---------------------------------------------------------------------------

struct ReliabilitySequence {
    int block_len = 0;
    std::string kind;
    std::vector<int> order;  // best first, full permutation of [1..N]
};

inline ReliabilitySequence to_sequence(const ReliabilityMetricVector& metrics) {
    ReliabilitySequence seq;
    seq.block_len = static_cast<int>(metrics.values.size());
    seq.kind = metric_kind_name(metrics.kind);
    seq.order = detail::reliability_order(metrics);
    return seq;
}

inline void write_reliability_sequence(std::ostream& out, const ReliabilitySequence& seq) {
    out << "# N=" << seq.block_len << " kind=" << seq.kind << "\n";
    for (int i : seq.order) out << i << "\n";
}

inline void write_reliability_sequence(const std::string& path,
                                       const ReliabilitySequence& seq) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_reliability_sequence(out, seq);
}

inline ReliabilitySequence read_reliability_sequence(std::istream& in) {
    ReliabilitySequence seq;
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty reliability file");
    int parsed = 0;
    char kind_buf[32] = {0};
    parsed = std::sscanf(header.c_str(), "# N=%d kind=%31s", &seq.block_len, kind_buf);
    if (parsed != 2) throw std::runtime_error("bad reliability header: " + header);
    seq.kind = kind_buf;
    log2_exact(static_cast<std::size_t>(seq.block_len), "sequence length");
    int idx;
    while (in >> idx) seq.order.push_back(idx);
    if (static_cast<int>(seq.order.size()) != seq.block_len)
        throw std::runtime_error("reliability sequence length does not match header");
    std::vector<uint8_t> seen(static_cast<std::size_t>(seq.block_len), 0);
    for (int i : seq.order) {
        if (i < 1 || i > seq.block_len || seen[static_cast<std::size_t>(i - 1)])
            throw std::runtime_error("reliability sequence is not a permutation of [1..N]");
        seen[static_cast<std::size_t>(i - 1)] = 1;
    }
    return seq;
}

inline ReliabilitySequence read_reliability_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_reliability_sequence(in);
}

}  // namespace polarforge
