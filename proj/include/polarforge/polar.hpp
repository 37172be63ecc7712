#pragma once

#include <algorithm>
#include <cstdint>
#include <span>

#include "polarforge/common.hpp"

namespace polarforge {

/// Static identity of one polar code: block length N = 2^n, information set
/// (1-based channel indices, ascending) and the values assigned to frozen
/// positions (ascending over the frozen set, default all-zero).
struct CodeSpec {
    int n = 0;
    int block_len = 0;   // N
    int info_len = 0;    // K
    std::vector<int> info_set;      // 1-based, ascending
    BitVec frozen_values;           // size N-K

    // Derived lookups, 0-based positions.
    BitVec is_info;      // size N
    BitVec leaf_value;   // frozen value per position, 0 at info positions

    static CodeSpec create(int block_len, std::vector<int> info_set,
                           BitVec frozen_values = {}) {
        CodeSpec s;
        s.block_len = block_len;
        s.n = log2_exact(static_cast<std::size_t>(block_len), "block length");
        std::sort(info_set.begin(), info_set.end());
        require(std::adjacent_find(info_set.begin(), info_set.end()) == info_set.end(),
                "info set indices must be distinct");
        for (int i : info_set)
            require(i >= 1 && i <= block_len, "info set index out of [1,N]");
        s.info_len = static_cast<int>(info_set.size());
        require(s.info_len <= block_len, "K must be <= N");
        s.info_set = std::move(info_set);
        if (frozen_values.empty())
            frozen_values.assign(static_cast<std::size_t>(block_len - s.info_len), 0);
        require(static_cast<int>(frozen_values.size()) == block_len - s.info_len,
                "frozen_values must have length N-K");
        for (uint8_t b : frozen_values) require(b <= 1, "frozen values must be bits");
        s.frozen_values = std::move(frozen_values);

        s.is_info.assign(static_cast<std::size_t>(block_len), 0);
        for (int i : s.info_set) s.is_info[static_cast<std::size_t>(i - 1)] = 1;
        s.leaf_value.assign(static_cast<std::size_t>(block_len), 0);
        std::size_t fz = 0;
        for (int i = 0; i < block_len; ++i)
            if (!s.is_info[static_cast<std::size_t>(i)])
                s.leaf_value[static_cast<std::size_t>(i)] = s.frozen_values[fz++];
        return s;
    }

    bool frozen_at(int pos0) const { return !is_info[static_cast<std::size_t>(pos0)]; }
};

/// Bit-reversal permutation of [1..2^n]: pi[i-1] = 1 + reverse_bits(i-1, n).
/// Applying it twice is the identity.
inline std::vector<int> bit_reversal_permutation(int n) {
    require(n >= 0, "n must be >= 0");
    const int size = 1 << n;
    std::vector<int> pi(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        unsigned v = static_cast<unsigned>(i), r = 0;
        for (int b = 0; b < n; ++b) {
            r = (r << 1) | (v & 1u);
            v >>= 1;
        }
        pi[static_cast<std::size_t>(i)] = static_cast<int>(r) + 1;
    }
    return pi;
}

/// In-place polar transform x = u * F^{(x)n} over GF(2), natural order.
/// n butterfly stages, O(N log N) XORs. F is an involution, so this is also
/// its own inverse.
inline void polar_transform_inplace(BitVec& u) {
    const std::size_t size = u.size();
    log2_exact(size, "block length");
    for (std::size_t h = size / 2; h >= 1; h /= 2) {
        for (std::size_t s = 0; s < size; s += 2 * h)
            for (std::size_t i = s; i < s + h; ++i)
                u[i] = static_cast<uint8_t>(u[i] ^ u[i + h]);
        if (h == 1) break;
    }
}

inline BitVec encode_natural(BitVec u) {
    polar_transform_inplace(u);
    return u;
}

/// Bit-reversal order encoder: x = u * B_N * F^{(x)n}.
inline BitVec encode_bitrev(const BitVec& u) {
    const int n = log2_exact(u.size(), "block length");
    const std::vector<int> pi = bit_reversal_permutation(n);
    BitVec permuted(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        permuted[i] = u[static_cast<std::size_t>(pi[i] - 1)];
    polar_transform_inplace(permuted);
    return permuted;
}

/// Places payload bits on the information set (ascending index order) and the
/// configured frozen values elsewhere.
inline BitVec assemble_source(std::span<const uint8_t> payload, const CodeSpec& spec) {
    require(static_cast<int>(payload.size()) == spec.info_len,
            "payload length must equal K");
    BitVec u = spec.leaf_value;
    for (int k = 0; k < spec.info_len; ++k)
        u[static_cast<std::size_t>(spec.info_set[static_cast<std::size_t>(k)] - 1)] =
            payload[static_cast<std::size_t>(k)];
    return u;
}

/// Reads the information positions of a source block back out (inverse of
/// assemble_source on the payload part).
inline BitVec extract_payload(std::span<const uint8_t> u, const CodeSpec& spec) {
    require(static_cast<int>(u.size()) == spec.block_len, "source block length mismatch");
    BitVec payload(static_cast<std::size_t>(spec.info_len));
    for (int k = 0; k < spec.info_len; ++k)
        payload[static_cast<std::size_t>(k)] =
            u[static_cast<std::size_t>(spec.info_set[static_cast<std::size_t>(k)] - 1)];
    return payload;
}

}  // namespace polarforge
