#pragma once

#include <bit>
#include <cmath>
#include <optional>
#include <span>

#include "polarforge/common.hpp"
#include "polarforge/crc.hpp"
#include "polarforge/decode.hpp"
#include "polarforge/polar.hpp"

namespace polarforge {

/// Exact codeword weight spectrum of one (optionally CRC-concatenated)
/// polar code. payload_len is the enumerated dimension k; counts[w] is A_w.
struct WeightDistribution {
    int block_len = 0;
    int payload_len = 0;
    std::vector<uint64_t> counts;  // size N+1

    int d_min() const {
        for (int w = 1; w <= block_len; ++w)
            if (counts[static_cast<std::size_t>(w)] > 0) return w;
        return 0;  // no nonzero codeword
    }
};

namespace detail {
inline constexpr int kEnumerationBudgetBits = 24;

inline std::vector<uint64_t> pack_bits(const BitVec& bits) {
    std::vector<uint64_t> words((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) words[i / 64] |= uint64_t{1} << (i % 64);
    return words;
}
}  // namespace detail

/// Exhaustive weight enumeration over all 2^k payloads. The payload-to-
/// codeword map is linear, so codewords are visited in Gray-code order with
/// one basis-image XOR per step.
inline WeightDistribution enumerate_weights(const CodeSpec& spec,
                                            const std::optional<CrcSpec>& crc = {}) {
    const int k = crc ? spec.info_len - crc->degree : spec.info_len;
    require(k >= 0, "CRC degree exceeds K");
    require(k <= detail::kEnumerationBudgetBits,
            "payload dimension exceeds the 2^24 enumeration budget");
    if (crc) require(spec.info_len > crc->degree, "K must exceed the CRC degree");

    WeightDistribution wd;
    wd.block_len = spec.block_len;
    wd.payload_len = k;
    wd.counts.assign(static_cast<std::size_t>(spec.block_len) + 1, 0);

    // Codeword images of the payload unit vectors.
    std::vector<std::vector<uint64_t>> basis(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        BitVec payload(static_cast<std::size_t>(k), 0);
        payload[static_cast<std::size_t>(j)] = 1;
        BitVec info = crc ? crc_encode(payload, *crc) : payload;
        basis[static_cast<std::size_t>(j)] =
            detail::pack_bits(encode_natural(assemble_source(info, spec)));
    }

    std::vector<uint64_t> cw(static_cast<std::size_t>((spec.block_len + 63) / 64), 0);
    const uint64_t total = uint64_t{1} << k;
    uint64_t prev_gray = 0;
    for (uint64_t p = 0;; ++p) {
        int w = 0;
        for (uint64_t word : cw) w += std::popcount(word);
        ++wd.counts[static_cast<std::size_t>(w)];
        if (p + 1 == total) break;
        const uint64_t gray = (p + 1) ^ ((p + 1) >> 1);
        const int flipped = std::countr_zero(gray ^ prev_gray);
        prev_gray = gray;
        const std::vector<uint64_t>& img = basis[static_cast<std::size_t>(flipped)];
        for (std::size_t i = 0; i < cw.size(); ++i) cw[i] ^= img[i];
    }
    return wd;
}

struct UnionBound {
    double full = 0.0;      // sum over the whole spectrum
    double dominant = 0.0;  // A_dmin * Q(sqrt(2 dmin R Eb/N0)) term only
};

inline double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Union bound on the ML block error rate over BI-AWGN at the given bit
/// SNR: sum over w of A_w * Q(sqrt(2 w R Eb/N0)).
inline UnionBound union_bound(const WeightDistribution& wd, double rate, double eb_n0_db) {
    require(rate > 0.0 && rate <= 1.0, "rate must be in (0,1]");
    const double eb_lin = std::pow(10.0, eb_n0_db / 10.0);
    UnionBound b;
    const int dmin = wd.d_min();
    for (int w = 1; w <= wd.block_len; ++w) {
        const uint64_t a = wd.counts[static_cast<std::size_t>(w)];
        if (a == 0) continue;
        const double term =
            static_cast<double>(a) * gaussian_q(std::sqrt(2.0 * w * rate * eb_lin));
        b.full += term;
        if (w == dmin) b.dominant = term;
    }
    return b;
}

/// Brute-force maximum-likelihood decision: enumerates all 2^K payloads and
/// returns the one whose codeword minimizes the softplus cost
/// sum_i ln(1 + e^{-(1-2 x_i) L_i}). Ties break toward the
/// lexicographically smaller payload.
inline BitVec ml_oracle_decode(std::span<const double> channel_llrs, const CodeSpec& spec) {
    require(spec.info_len <= 16, "ML oracle budget is K <= 16");
    require(static_cast<int>(channel_llrs.size()) == spec.block_len,
            "LLR frame length must equal the block length");
    const uint64_t total = uint64_t{1} << spec.info_len;
    BitVec best_payload;
    double best_cost = std::numeric_limits<double>::infinity();
    BitVec payload(static_cast<std::size_t>(spec.info_len), 0);
    for (uint64_t p = 0; p < total; ++p) {
        for (int j = 0; j < spec.info_len; ++j)
            payload[static_cast<std::size_t>(j)] =
                static_cast<uint8_t>(p >> (spec.info_len - 1 - j) & 1u);
        const BitVec x = encode_natural(assemble_source(payload, spec));
        double cost = 0.0;
        for (int i = 0; i < spec.block_len; ++i)
            cost += detail::softplus(-(x[static_cast<std::size_t>(i)]
                                           ? -channel_llrs[static_cast<std::size_t>(i)]
                                           : channel_llrs[static_cast<std::size_t>(i)]));
        if (cost < best_cost) {
            best_cost = cost;
            best_payload = payload;
        }
    }
    return best_payload;
}

}  // namespace polarforge
