#include <catch2/catch_amalgamated.hpp>

#include "polarforge/channel.hpp"
#include "polarforge/decode.hpp"
#include "polarforge/rate_match.hpp"
#include "polarforge/sim.hpp"

using namespace polarforge;

TEST_CASE("QUP reference table N=8 Q=3") {
    const RateMatchPlan plan = build_qup_table(8, 3, TableOrder::BitReversed);
    CHECK(plan.table == BitVec{0, 1, 0, 1, 0, 1, 1, 1});
    CHECK(plan.deleted == std::vector<int>{1, 3, 5});
    CHECK(plan.target_len == 5);

    const RateMatchPlan natural = build_qup_table(8, 3, TableOrder::Natural5G);
    CHECK(natural.deleted == std::vector<int>{1, 2, 3});

    const RateMatchPlan none = build_qup_table(8, 0);
    CHECK(none.table == BitVec(8, 1));
    CHECK(none.deleted.empty());
}

TEST_CASE("RQUS reference table N=8 Q=3") {
    const RateMatchPlan plan = build_rqus_table(8, 3, TableOrder::BitReversed);
    CHECK(plan.table == BitVec{1, 1, 1, 0, 1, 0, 1, 0});
    CHECK(plan.deleted == std::vector<int>{4, 6, 8});

    const RateMatchPlan natural = build_rqus_table(8, 3, TableOrder::Natural5G);
    CHECK(natural.deleted == std::vector<int>{6, 7, 8});

    CHECK(build_rqus_table(8, 0).table == BitVec(8, 1));
}

TEST_CASE("plan validation") {
    CHECK_THROWS_AS(build_qup_table(8, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_qup_table(8, -1), std::invalid_argument);
    CHECK_THROWS_AS(build_qup_table(6, 1), std::invalid_argument);   // not a power of two
    CHECK_THROWS_AS(build_qup_table(8, 4), std::invalid_argument);   // M <= N/2: wrong mother
    CHECK_NOTHROW(build_qup_table(8, 3));
}

TEST_CASE("mode selection rule at R = 7/16") {
    CHECK(select_mode(100, 400) == RateMatchMode::PunctureQup);   // R = 0.25
    CHECK(select_mode(300, 400) == RateMatchMode::ShortenRqus);   // R = 0.75
    CHECK(select_mode(7, 16) == RateMatchMode::PunctureQup);      // boundary included
    CHECK(select_mode(175, 400) == RateMatchMode::PunctureQup);   // 7/16 exactly
    CHECK(select_mode(176, 400) == RateMatchMode::ShortenRqus);   // just above
    CHECK_THROWS_AS(select_mode(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(select_mode(0, 4), std::invalid_argument);
}

TEST_CASE("apply deletes the planned positions in order") {
    const BitVec x{1, 0, 1, 1, 0, 0, 1, 1};  // a1..a8

    const RateMatchPlan qup = build_qup_table(8, 3);
    CHECK(rate_match_apply(x, qup) == BitVec{0, 1, 0, 1, 1});  // a2,a4,a6,a7,a8

    const RateMatchPlan rqus = build_rqus_table(8, 3);
    const BitVec zeroed{1, 0, 1, 0, 0, 0, 1, 0};  // zero at {4,6,8}
    CHECK(rate_match_apply(zeroed, rqus) == BitVec{1, 0, 1, 0, 1});  // a1,a2,a3,a5,a7

    CHECK(rate_match_apply(x, build_qup_table(8, 0)) == x);  // Q=0 identity

    CHECK_THROWS_AS(rate_match_apply(x, rqus), std::invalid_argument);  // nonzero shortened
    CHECK_THROWS_AS(rate_match_apply(BitVec(4, 0), qup), std::invalid_argument);
}

TEST_CASE("fill_llrs re-expands with the capacity conventions") {
    const LlrVec received{1.0, 2.0, 3.0, 4.0, 5.0};

    const RateMatchPlan qup = build_qup_table(8, 3);  // deleted {1,3,5}
    CHECK(fill_llrs(received, qup) == LlrVec{0.0, 1.0, 0.0, 2.0, 0.0, 3.0, 4.0, 5.0});

    const RateMatchPlan rqus = build_rqus_table(8, 3);  // deleted {4,6,8}
    CHECK(fill_llrs(received, rqus) ==
          LlrVec{1.0, 2.0, 3.0, kLlrSat, 4.0, kLlrSat, 5.0, kLlrSat});

    const RateMatchPlan none = build_qup_table(8, 0);
    const LlrVec eight{1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(fill_llrs(eight, none) == eight);

    CHECK_THROWS_AS(fill_llrs(eight, qup), std::invalid_argument);  // wrong length
}

TEST_CASE("table and deleted list stay mutually consistent") {
    RngStream rng(2);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);  // N in 4..64
        const int size = 1 << n;
        const int q = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(size / 2));
        const TableOrder order = rng.next_bit() ? TableOrder::BitReversed : TableOrder::Natural5G;
        const RateMatchPlan plan = rng.next_bit() ? build_qup_table(size, q, order)
                                                  : build_rqus_table(size, q, order);
        CHECK(static_cast<int>(std::count(plan.table.begin(), plan.table.end(), uint8_t{1})) ==
              plan.target_len);
        for (int d : plan.deleted) CHECK(plan.table[static_cast<std::size_t>(d - 1)] == 0);
        CHECK(static_cast<int>(plan.deleted.size()) == plan.deletions);
        CHECK(std::is_sorted(plan.deleted.begin(), plan.deleted.end()));
    }
}

TEST_CASE("shortened code bits are zero once the deleted sources are frozen") {
    // Exhaustive over N <= 32 and every payload of the restricted code.
    RngStream rng(4);
    for (int n = 2; n <= 5; ++n) {
        const int size = 1 << n;
        for (TableOrder order : {TableOrder::BitReversed, TableOrder::Natural5G}) {
            const int q = 1 + static_cast<int>(rng.next_u64() % static_cast<uint64_t>(size / 2 - 1));
            const RateMatchPlan plan = build_rqus_table(size, q, order);
            const int info_len = std::min(size - q, 6);

            ConstructionConfig cc;  // Bhattacharyya, eps 0.5
            const CodeSpec spec = construct_code(cc, size, info_len, &plan);
            for (int d : plan.deleted)
                CHECK(spec.frozen_at(d - 1));

            for (uint64_t p = 0; p < (uint64_t{1} << info_len); ++p) {
                BitVec payload(static_cast<std::size_t>(info_len));
                for (int j = 0; j < info_len; ++j)
                    payload[static_cast<std::size_t>(j)] = static_cast<uint8_t>(p >> j & 1);
                const BitVec x = encode_natural(assemble_source(payload, spec));
                for (int d : plan.deleted) CHECK(x[static_cast<std::size_t>(d - 1)] == 0);
            }
        }
    }
}

TEST_CASE("noiseless rate-matched round trip through SC") {
    RngStream rng(8);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);  // N in 4..64
        const int size = 1 << n;
        const int q = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(size / 2));
        const int target = size - q;
        const bool shorten = rng.next_bit();
        const RateMatchPlan plan = shorten ? build_rqus_table(size, q)
                                           : build_qup_table(size, q);
        const int info_len = 1 + static_cast<int>(rng.next_u64() %
                                                  static_cast<uint64_t>(target));

        ConstructionConfig cc;
        const CodeSpec spec = construct_code(cc, size, info_len, &plan);

        BitVec payload(static_cast<std::size_t>(info_len));
        for (auto& b : payload) b = rng.next_bit();
        const BitVec x = encode_natural(assemble_source(payload, spec));
        const BitVec tx = rate_match_apply(x, plan);
        LlrVec llrs(tx.size());
        for (std::size_t i = 0; i < tx.size(); ++i) llrs[i] = tx[i] ? -kLlrSat : kLlrSat;
        const DecodeOutcome out = sc_decode(fill_llrs(llrs, plan), spec);
        CHECK(out.payload == payload);
    }
}
