#pragma once

#include <span>

#include "polarforge/common.hpp"
#include "polarforge/polar.hpp"

namespace polarforge {

enum class RateMatchMode { PunctureQup, ShortenRqus };
enum class TableOrder { BitReversed, Natural5G };

/// Deletion plan shrinking a mother codeword of length N = 2^n to M bits.
/// table[i]==0 marks code bit i+1 as deleted; `deleted` lists the same
/// positions 1-based ascending. The mother length is the smallest power of
/// two holding M, so 0 <= Q < N/2 (Q=0 allowed, then M=N).
struct RateMatchPlan {
    int mother_len = 0;   // N
    int target_len = 0;   // M
    int deletions = 0;    // Q = N - M
    RateMatchMode mode = RateMatchMode::PunctureQup;
    TableOrder order = TableOrder::BitReversed;
    BitVec table;               // length N, 1 = transmitted
    std::vector<int> deleted;   // 1-based ascending
};

namespace detail {
inline RateMatchPlan build_plan(int mother_len, int deletions, RateMatchMode mode,
                                TableOrder order) {
    const int n = log2_exact(static_cast<std::size_t>(mother_len), "mother length");
    require(deletions >= 0 && deletions < mother_len, "Q must satisfy 0 <= Q < N");
    const int target = mother_len - deletions;
    require(mother_len == 1 || target > mother_len / 2,
            "mother length must be the smallest power of two >= M");

    BitVec table(static_cast<std::size_t>(mother_len), 1);
    if (mode == RateMatchMode::PunctureQup) {
        for (int i = 0; i < deletions; ++i) table[static_cast<std::size_t>(i)] = 0;
    } else {
        for (int i = 0; i < deletions; ++i)
            table[static_cast<std::size_t>(mother_len - 1 - i)] = 0;
    }
    if (order == TableOrder::BitReversed) {
        const std::vector<int> pi = bit_reversal_permutation(n);
        BitVec permuted(table.size());
        for (std::size_t i = 0; i < table.size(); ++i)
            permuted[i] = table[static_cast<std::size_t>(pi[i] - 1)];
        table = std::move(permuted);
    }

    RateMatchPlan plan;
    plan.mother_len = mother_len;
    plan.target_len = target;
    plan.deletions = deletions;
    plan.mode = mode;
    plan.order = order;
    plan.table = std::move(table);
    for (int i = 0; i < mother_len; ++i)
        if (!plan.table[static_cast<std::size_t>(i)]) plan.deleted.push_back(i + 1);
    return plan;
}
}  // namespace detail

/// Quasi-uniform puncturing: the first Q table positions are zeroed, then
/// (in BitReversed order) the table is bit-reversal permuted. Natural5G
/// punctures the first Q code bits directly.
inline RateMatchPlan build_qup_table(int mother_len, int deletions,
                                     TableOrder order = TableOrder::BitReversed) {
    return detail::build_plan(mother_len, deletions, RateMatchMode::PunctureQup, order);
}

/// Reversal quasi-uniform shortening: mirror of QUP on the last Q positions.
inline RateMatchPlan build_rqus_table(int mother_len, int deletions,
                                      TableOrder order = TableOrder::BitReversed) {
    return detail::build_plan(mother_len, deletions, RateMatchMode::ShortenRqus, order);
}

/// Rate-matching mode rule: puncture at rate K/M <= 7/16, shorten above.
inline RateMatchMode select_mode(int info_len, int target_len) {
    require(info_len > 0 && info_len <= target_len, "need 0 < K <= M");
    return 16 * info_len <= 7 * target_len ? RateMatchMode::PunctureQup
                                           : RateMatchMode::ShortenRqus;
}

/// Deletes the planned positions from a mother codeword, preserving order.
/// In shortening mode every deleted bit must already be zero; a nonzero bit
/// means the information set was not restricted to keep them zero.
inline BitVec rate_match_apply(std::span<const uint8_t> codeword, const RateMatchPlan& plan) {
    require(static_cast<int>(codeword.size()) == plan.mother_len,
            "codeword length must equal the mother length");
    BitVec out;
    out.reserve(static_cast<std::size_t>(plan.target_len));
    for (int i = 0; i < plan.mother_len; ++i) {
        if (plan.table[static_cast<std::size_t>(i)]) {
            out.push_back(codeword[static_cast<std::size_t>(i)]);
        } else if (plan.mode == RateMatchMode::ShortenRqus) {
            require(codeword[static_cast<std::size_t>(i)] == 0,
                    "shortened code bit is nonzero; construction does not match the plan");
        }
    }
    return out;
}

/// Re-expands M received LLRs to the mother length: punctured positions are
/// unknown (LLR 0), shortened positions are known zero bits (+LLR_SAT).
inline LlrVec fill_llrs(std::span<const double> received, const RateMatchPlan& plan) {
    require(static_cast<int>(received.size()) == plan.target_len,
            "received length must equal the target length");
    const double missing = plan.mode == RateMatchMode::PunctureQup ? 0.0 : kLlrSat;
    LlrVec out(static_cast<std::size_t>(plan.mother_len), missing);
    std::size_t next = 0;
    for (int i = 0; i < plan.mother_len; ++i)
        if (plan.table[static_cast<std::size_t>(i)])
            out[static_cast<std::size_t>(i)] = received[next++];
    return out;
}

}  // namespace polarforge
