#include <catch2/catch_amalgamated.hpp>

#include "polarforge/channel.hpp"
#include "polarforge/crc.hpp"
#include "support/oracles.hpp"

using namespace polarforge;

TEST_CASE("polynomial parsing") {
    // full m+1-bit pattern
    const CrcSpec crc6 = CrcSpec::from_hex("0x43", 6);
    CHECK(crc6.poly == BitVec{1, 0, 0, 0, 0, 1, 1});

    const CrcSpec crc20 = CrcSpec::from_hex("0x1005D1", 20);
    REQUIRE(crc20.poly.size() == 21);
    CHECK(crc20.poly.front() == 1);
    CHECK(crc20.poly.back() == 1);

    // 8 significant bits with m=8: implicit leading x^8 term
    const CrcSpec crc8 = CrcSpec::from_hex("0x9F", 8);
    CHECK(crc8.poly == BitVec{1, 1, 0, 0, 1, 1, 1, 1, 1});

    CHECK_THROWS_AS(CrcSpec::from_hex("0x3FF", 8), std::invalid_argument);  // > m+1 bits
    CHECK_THROWS_AS(CrcSpec::from_hex("0x42", 6), std::invalid_argument);   // constant term 0
    CHECK_THROWS_AS(CrcSpec::from_hex("", 6), std::invalid_argument);
    CHECK_THROWS_AS(CrcSpec::from_hex("0xzz", 6), std::invalid_argument);
    CHECK_THROWS_AS(CrcSpec::from_hex("0x3", 0), std::invalid_argument);

    // every preset parses and has the declared degree
    for (const auto& [name, preset] : crc_presets()) {
        const CrcSpec s = CrcSpec::from_hex(preset.first, preset.second);
        CHECK(s.degree == preset.second);
        CHECK(static_cast<int>(s.poly.size()) == preset.second + 1);
    }
    CHECK(parse_crc_argument("crc8").poly == crc8.poly);
    CHECK(parse_crc_argument("0x43:6").poly == crc6.poly);
}

TEST_CASE("crc_encode golden and oracle cross-check") {
    const CrcSpec crc6 = CrcSpec::from_hex("0x43", 6);

    CHECK(crc_encode(BitVec{0, 0, 0}, crc6) == BitVec(9, 0));
    // remainder of x^6 mod (x^6+x+1) is x+1
    CHECK(crc_encode(BitVec{1}, crc6) == BitVec{1, 0, 0, 0, 0, 1, 1});

    RngStream rng(21);
    for (const auto& [name, preset] : crc_presets()) {
        const CrcSpec spec = CrcSpec::from_hex(preset.first, preset.second);
        for (int rep = 0; rep < 20; ++rep) {
            BitVec payload(1 + rng.next_u64() % 40);
            for (auto& b : payload) b = rng.next_bit();
            CHECK(crc_remainder(payload, spec) ==
                  oracle::poly_mod(payload, spec.poly, spec.degree));
        }
    }
}

TEST_CASE("crc round trip over random payloads") {
    const CrcSpec crc8 = CrcSpec::from_hex("0x9F", 8);
    RngStream rng(5);
    for (int rep = 0; rep < 10000; ++rep) {
        BitVec payload(1 + rng.next_u64() % 64);
        for (auto& b : payload) b = rng.next_bit();
        CHECK(crc_check(crc_encode(payload, crc8), crc8));
    }
}

TEST_CASE("crc_check basics") {
    const CrcSpec crc6 = CrcSpec::from_hex("0x43", 6);
    CHECK(crc_check(BitVec(12, 0), crc6));
    CHECK_THROWS_AS(crc_check(BitVec(6, 0), crc6), std::invalid_argument);  // <= m
}

TEST_CASE("single-bit errors are always detected") {
    RngStream rng(9);
    for (const auto& [name, preset] : crc_presets()) {
        const CrcSpec spec = CrcSpec::from_hex(preset.first, preset.second);
        const std::size_t block_len = static_cast<std::size_t>(
            std::min(64, spec.degree + 24));
        BitVec payload(block_len - static_cast<std::size_t>(spec.degree));
        for (auto& b : payload) b = rng.next_bit();
        BitVec block = crc_encode(payload, spec);
        for (std::size_t i = 0; i < block.size(); ++i) {
            block[i] ^= 1;
            CHECK_FALSE(crc_check(block, spec));
            block[i] ^= 1;
        }
    }
}

TEST_CASE("bursts no longer than the degree are always detected") {
    RngStream rng(33);
    for (const auto& [name, preset] : crc_presets()) {
        const CrcSpec spec = CrcSpec::from_hex(preset.first, preset.second);
        BitVec payload(48);
        for (auto& b : payload) b = rng.next_bit();
        const BitVec block = crc_encode(payload, spec);
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t burst_len = 1 + rng.next_u64() % static_cast<uint64_t>(spec.degree);
            const std::size_t start = rng.next_u64() % (block.size() - burst_len + 1);
            BitVec corrupted = block;
            corrupted[start] ^= 1;  // burst endpoints are flipped, the middle is random
            if (burst_len > 1) corrupted[start + burst_len - 1] ^= 1;
            for (std::size_t i = start + 1; i + 1 < start + burst_len; ++i)
                corrupted[i] ^= rng.next_bit();
            CHECK_FALSE(crc_check(corrupted, spec));
        }
    }
}

TEST_CASE("crc linearity") {
    const CrcSpec crc9 = CrcSpec::from_hex("0x2CF", 9);
    RngStream rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        BitVec p(32), q(32);
        for (auto& b : p) b = rng.next_bit();
        for (auto& b : q) b = rng.next_bit();
        BitVec pq(32);
        for (std::size_t i = 0; i < 32; ++i) pq[i] = static_cast<uint8_t>(p[i] ^ q[i]);
        const BitVec rp = crc_remainder(p, crc9), rq = crc_remainder(q, crc9);
        BitVec rsum(rp.size());
        for (std::size_t i = 0; i < rp.size(); ++i)
            rsum[i] = static_cast<uint8_t>(rp[i] ^ rq[i]);
        CHECK(crc_remainder(pq, crc9) == rsum);
    }
}
