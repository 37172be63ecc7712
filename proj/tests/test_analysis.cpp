#include <catch2/catch_amalgamated.hpp>

#include "polarforge/analysis.hpp"
#include "polarforge/channel.hpp"
#include "polarforge/construction.hpp"
#include "support/oracles.hpp"

using namespace polarforge;
using Catch::Matchers::WithinAbs;

namespace {
CodeSpec make_code(int block_len, int info_len) {
    const int n = log2_exact(static_cast<std::size_t>(block_len));
    return CodeSpec::create(block_len,
                            select_info_set(bhattacharyya_bec(n, 0.5), info_len));
}
}  // namespace

TEST_CASE("weight distribution of the (8,4) code") {
    const CodeSpec spec = CodeSpec::create(8, {4, 6, 7, 8});
    const WeightDistribution wd = enumerate_weights(spec);
    CHECK(wd.counts[0] == 1);
    CHECK(wd.counts[4] == 14);
    CHECK(wd.counts[8] == 1);
    CHECK(wd.d_min() == 4);
    uint64_t total = 0;
    for (uint64_t c : wd.counts) total += c;
    CHECK(total == 16);
}

TEST_CASE("weight enumeration agrees with the matrix oracle") {
    RngStream rng(1);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 3);
        const int size = 1 << n;
        const int k = 2 + static_cast<int>(rng.next_u64() % 7);
        const CodeSpec spec = make_code(size, k);

        const auto f = oracle::kronecker_matrix(n);
        std::vector<uint64_t> expected(static_cast<std::size_t>(size) + 1, 0);
        for (uint64_t p = 0; p < (uint64_t{1} << k); ++p) {
            BitVec payload(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j)
                payload[static_cast<std::size_t>(j)] = static_cast<uint8_t>(p >> j & 1);
            const BitVec x = oracle::matmul_encode(assemble_source(payload, spec), f);
            ++expected[static_cast<std::size_t>(std::count(x.begin(), x.end(), uint8_t{1}))];
        }
        CHECK(enumerate_weights(spec).counts == expected);
    }
}

TEST_CASE("K=0 enumerates the single zero codeword") {
    const CodeSpec spec = CodeSpec::create(8, {});
    const WeightDistribution wd = enumerate_weights(spec);
    CHECK(wd.counts[0] == 1);
    uint64_t total = 0;
    for (uint64_t c : wd.counts) total += c;
    CHECK(total == 1);
    CHECK(wd.d_min() == 0);
}

TEST_CASE("enumeration budget is enforced") {
    const CodeSpec spec = make_code(1 << 10, 25);
    CHECK_THROWS_AS(enumerate_weights(spec), std::invalid_argument);
}

TEST_CASE("CRC concatenation does not shrink the minimum distance (32,16)") {
    const CrcSpec crc6 = CrcSpec::from_hex("0x43", 6);
    const CodeSpec plain = make_code(32, 16);
    const CodeSpec concat = make_code(32, 16 + crc6.degree);
    const WeightDistribution wd_plain = enumerate_weights(plain);
    const WeightDistribution wd_crc = enumerate_weights(concat, crc6);
    CHECK(wd_crc.payload_len == 16);
    CHECK(wd_crc.d_min() >= wd_plain.d_min());
}

TEST_CASE("distribution symmetry when the all-ones word is a codeword") {
    const CodeSpec spec = CodeSpec::create(8, {4, 6, 7, 8});
    // u = e_N encodes to all ones, and N is in the info set
    const WeightDistribution wd = enumerate_weights(spec);
    for (int w = 0; w <= 8; ++w)
        CHECK(wd.counts[static_cast<std::size_t>(w)] ==
              wd.counts[static_cast<std::size_t>(8 - w)]);
}

TEST_CASE("d_min equals the minimum row weight for nested Bhattacharyya sets") {
    // Exhaustive for N <= 32 over a range of K; any counterexample is
    // reported with its parameters.
    for (int n = 2; n <= 5; ++n) {
        const int size = 1 << n;
        for (int k = 1; k <= std::min(size, 12); ++k) {
            const CodeSpec spec = make_code(size, k);
            int min_row = size + 1;
            for (int i : spec.info_set)
                min_row = std::min(min_row, 1 << std::popcount(static_cast<unsigned>(i - 1)));
            const WeightDistribution wd = enumerate_weights(spec);
            INFO("N=" << size << " K=" << k << " d_min=" << wd.d_min()
                      << " min_row_weight=" << min_row);
            CHECK(wd.d_min() == min_row);
        }
    }
}

TEST_CASE("union bound basics") {
    WeightDistribution wd;
    wd.block_len = 8;
    wd.payload_len = 4;
    wd.counts.assign(9, 0);
    wd.counts[0] = 1;
    CHECK(union_bound(wd, 0.5, 4.0).full == 0.0);  // empty spectrum beyond w=0

    wd.counts[4] = 14;
    wd.counts[8] = 1;
    const UnionBound b = union_bound(wd, 0.5, 4.0);
    CHECK(b.full >= b.dominant);
    CHECK_THAT(b.full, WithinAbs(1.068226e-02, 1e-7));      // frozen from the Q-sum
    CHECK_THAT(b.dominant, WithinAbs(1.067857e-02, 1e-7));
    CHECK_THROWS_AS(union_bound(wd, 0.0, 4.0), std::invalid_argument);
}

TEST_CASE("ml oracle basics") {
    const CodeSpec spec = make_code(16, 8);
    RngStream rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        BitVec payload(8);
        for (auto& b : payload) b = rng.next_bit();
        const BitVec x = encode_natural(assemble_source(payload, spec));
        LlrVec llrs(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) llrs[i] = x[i] ? -kLlrSat : kLlrSat;
        CHECK(ml_oracle_decode(llrs, spec) == payload);
    }

    // single information bit: decision follows the aggregate LLR sign
    const CodeSpec one = CodeSpec::create(4, {4});
    CHECK(ml_oracle_decode(LlrVec{0.3, 0.2, 0.4, 0.9}, one) == BitVec{0});
    CHECK(ml_oracle_decode(LlrVec{-0.3, -0.2, -0.4, -0.9}, one) == BitVec{1});

    const CodeSpec big = make_code(1 << 10, 17);
    CHECK_THROWS_AS(ml_oracle_decode(LlrVec(1 << 10, 0.0), big), std::invalid_argument);
}
