#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarforge {

// Hard bits are stored one per byte; LLRs follow the convention
// positive LLR => bit 0 is more likely.
using BitVec = std::vector<uint8_t>;
using LlrVec = std::vector<double>;

// Saturation magnitude for LLR arithmetic. Finite so that f/g updates and
// path metrics never produce inf/nan.
inline constexpr double kLlrSat = 300.0;

inline double clamp_llr(double v) {
    if (v > kLlrSat) return kLlrSat;
    if (v < -kLlrSat) return -kLlrSat;
    return v;
}

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// log2 of an exact power of two; throws otherwise.
inline int log2_exact(std::size_t v, const char* what = "length") {
    if (!is_power_of_two(v))
        throw std::invalid_argument(std::string(what) + " must be a power of two");
    int n = 0;
    while ((std::size_t{1} << n) < v) ++n;
    return n;
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace polarforge
