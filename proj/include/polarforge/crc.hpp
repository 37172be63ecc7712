#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "polarforge/common.hpp"

namespace polarforge {

/// CRC generator polynomial of degree m, coefficients MSB (x^m) first.
/// Plain polynomial division: zero initial register, no reflection, no
/// final XOR. Bit order is MSB-first throughout.
struct CrcSpec {
    int degree = 0;          // m
    BitVec poly;             // m+1 coefficients, poly.front()==1, poly.back()==1

    /// Parses a hexadecimal generator polynomial. If the hex value has
    /// exactly m+1 significant bits it is taken verbatim (leading x^m term
    /// included); with m or fewer bits an implicit leading x^m term is
    /// added. More than m+1 bits is an error, as is a zero constant term.
    static CrcSpec from_hex(const std::string& hex, int degree) {
        require(degree >= 1, "CRC degree must be >= 1");
        require(degree <= 63, "CRC degree above 63 is not supported");
        require(!hex.empty(), "empty CRC polynomial");
        std::size_t pos = 0;
        if (hex.size() > 2 && (hex[1] == 'x' || hex[1] == 'X')) pos = 2;
        uint64_t value = 0;
        int nibbles = 0;
        for (; pos < hex.size(); ++pos) {
            const char c = hex[pos];
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw std::invalid_argument("bad hex digit in CRC polynomial");
            require(++nibbles <= 16, "CRC polynomial hex too long");
            value = value << 4 | static_cast<uint64_t>(d);
        }
        require(value != 0, "CRC polynomial must be nonzero");
        int bits = 64 - __builtin_clzll(value);
        require(bits <= degree + 1, "CRC polynomial has more than m+1 bits");
        if (bits <= degree) value |= uint64_t{1} << degree;  // implicit leading term
        CrcSpec s;
        s.degree = degree;
        s.poly.resize(static_cast<std::size_t>(degree) + 1);
        for (int i = 0; i <= degree; ++i)
            s.poly[static_cast<std::size_t>(i)] =
                static_cast<uint8_t>(value >> (degree - i) & 1u);
        require(s.poly.back() == 1, "CRC polynomial must have constant term 1");
        return s;
    }
};

/// Remainder of payload * x^m modulo the generator, m bits MSB-first.
inline BitVec crc_remainder(std::span<const uint8_t> payload, const CrcSpec& spec) {
    const int m = spec.degree;
    BitVec reg(static_cast<std::size_t>(m), 0);
    for (uint8_t bit : payload) {
        const uint8_t fb = static_cast<uint8_t>(bit ^ reg[0]);
        for (int i = 0; i < m - 1; ++i)
            reg[static_cast<std::size_t>(i)] = static_cast<uint8_t>(
                reg[static_cast<std::size_t>(i + 1)] ^ (fb & spec.poly[static_cast<std::size_t>(i + 1)]));
        reg[static_cast<std::size_t>(m - 1)] = static_cast<uint8_t>(fb & spec.poly[static_cast<std::size_t>(m)]);
    }
    return reg;
}

/// Systematic CRC codeword: payload followed by the remainder bits.
inline BitVec crc_encode(std::span<const uint8_t> payload, const CrcSpec& spec) {
    BitVec out(payload.begin(), payload.end());
    BitVec rem = crc_remainder(payload, spec);
    out.insert(out.end(), rem.begin(), rem.end());
    return out;
}

/// True iff the block is divisible by the generator polynomial. Since the
/// constant term is 1, block mod g == 0 iff block*x^m mod g == 0.
inline bool crc_check(std::span<const uint8_t> block, const CrcSpec& spec) {
    require(static_cast<int>(block.size()) > spec.degree,
            "CRC check needs a block longer than the degree");
    BitVec rem = crc_remainder(block, spec);
    for (uint8_t b : rem)
        if (b) return false;
    return true;
}

/// Generator polynomials commonly paired with polar codes, by name.
inline const std::map<std::string, std::pair<std::string, int>>& crc_presets() {
    static const std::map<std::string, std::pair<std::string, int>> presets = {
        {"crc6", {"0x43", 6}},        {"crc6-opt", {"0x73", 6}},
        {"crc8", {"0x9F", 8}},        {"crc9", {"0x2CF", 9}},
        {"crc9-opt", {"0x269", 9}},   {"crc10", {"0x633", 10}},
        {"crc10-opt", {"0x75F", 10}}, {"crc16-n128", {"0x117B7", 16}},
        {"crc20-n128", {"0x1005D1", 20}}, {"crc24-n128", {"0x10001E5", 24}},
    };
    return presets;
}

/// Parses either "<hex>:<degree>" or a preset name.
inline CrcSpec parse_crc_argument(const std::string& arg) {
    auto it = crc_presets().find(arg);
    if (it != crc_presets().end())
        return CrcSpec::from_hex(it->second.first, it->second.second);
    const std::size_t colon = arg.find(':');
    require(colon != std::string::npos, "expected <hex>:<degree> or a preset name");
    return CrcSpec::from_hex(arg.substr(0, colon), std::stoi(arg.substr(colon + 1)));
}

}  // namespace polarforge
