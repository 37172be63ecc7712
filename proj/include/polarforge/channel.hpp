#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "polarforge/common.hpp"

namespace polarforge {

/// Deterministic counter-seeded stream (splitmix64 core). Gaussian variates
/// come from an explicit Box-Muller transform of two stream uniforms, so a
/// given seed reproduces the same noise bit-exactly on every platform and
/// under any threading layout.
class RngStream {
  public:
    explicit RngStream(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    uint8_t next_bit() { return static_cast<uint8_t>(next_u64() >> 63); }

    /// Standard normal via Box-Muller; the second variate of each pair is
    /// cached and returned on the following call.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_unit();  // (0,1], keeps log finite
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

namespace detail {
inline uint64_t mix64(uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDull;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ull;
    x ^= x >> 33;
    return x;
}
}  // namespace detail

/// Per-frame seed as a pure function of (master_seed, snr_index,
/// frame_index); disjoint frames get independent streams regardless of
/// which worker runs them.
inline uint64_t frame_seed(uint64_t master_seed, uint64_t snr_index, uint64_t frame_index) {
    uint64_t h = detail::mix64(master_seed ^ 0x6A09E667F3BCC909ull);
    h = detail::mix64(h ^ (snr_index + 0xBB67AE8584CAA73Bull));
    h = detail::mix64(h ^ (frame_index + 0x3C6EF372FE94F82Bull));
    return h;
}

// ---------------------------------------------------------------------------
// BPSK / BI-AWGN
// ---------------------------------------------------------------------------

/// BPSK maps bit b to 1-2b; the received sample is that plus N(0, sigma^2).
inline std::vector<double> transmit_awgn(std::span<const uint8_t> bits, double sigma,
                                         RngStream& rng) {
    require(sigma > 0.0, "sigma must be > 0");
    std::vector<double> y(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        y[i] = (bits[i] ? -1.0 : 1.0) + sigma * rng.next_gaussian();
    return y;
}

/// Soft demodulation: L(y) = 2y/sigma^2, clamped.
inline double llr_awgn(double y, double sigma) {
    require(sigma > 0.0, "sigma must be > 0");
    return clamp_llr(2.0 * y / (sigma * sigma));
}

/// BEC transmission straight to LLRs: each position is erased (LLR 0) with
/// probability epsilon, otherwise a saturated LLR with the bit's sign.
inline LlrVec transmit_bec(std::span<const uint8_t> bits, double epsilon, RngStream& rng) {
    require(epsilon >= 0.0 && epsilon <= 1.0, "erasure probability must be in [0,1]");
    LlrVec llrs(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (rng.next_unit() < epsilon)
            llrs[i] = 0.0;
        else
            llrs[i] = bits[i] ? -kLlrSat : kLlrSat;
    }
    return llrs;
}

// ---------------------------------------------------------------------------
// SNR conventions (unit-energy BPSK)
// ---------------------------------------------------------------------------

enum class SnrRef { EsN0, EbN0 };

struct SnrPoint {
    double db = 0.0;
    SnrRef ref = SnrRef::EsN0;
    double rate = 1.0;  // code rate used for the Eb/N0 -> Es/N0 conversion
};

inline double eb_to_es_db(double eb_db, double rate) {
    require(rate > 0.0 && rate <= 1.0, "rate must be in (0,1]");
    return eb_db + 10.0 * std::log10(rate);
}

/// sigma^2 = 1 / (2 * 10^(EsN0/10)); Eb/N0 converts via Es = Eb * R.
inline double snr_to_sigma(const SnrPoint& point) {
    const double es_db = point.ref == SnrRef::EsN0 ? point.db : eb_to_es_db(point.db, point.rate);
    return std::sqrt(1.0 / (2.0 * std::pow(10.0, es_db / 10.0)));
}

}  // namespace polarforge
