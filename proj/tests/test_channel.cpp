#include <catch2/catch_amalgamated.hpp>

#include "polarforge/channel.hpp"

using namespace polarforge;
using Catch::Matchers::WithinAbs;

TEST_CASE("rng streams are deterministic and seed-separated") {
    RngStream a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool any_diff = false;
    RngStream a2(42);
    for (int i = 0; i < 100; ++i) any_diff |= a2.next_u64() != c.next_u64();
    CHECK(any_diff);

    // frame seeds differ across all three coordinates
    CHECK(frame_seed(1, 0, 0) != frame_seed(1, 0, 1));
    CHECK(frame_seed(1, 0, 0) != frame_seed(1, 1, 0));
    CHECK(frame_seed(1, 0, 0) != frame_seed(2, 0, 0));

    // identical streams reproduce identical gaussians
    RngStream g1(7), g2(7);
    for (int i = 0; i < 100; ++i) CHECK(g1.next_gaussian() == g2.next_gaussian());
}

TEST_CASE("awgn transmit statistics") {
    RngStream rng(1);
    const std::size_t count = 1000000;
    BitVec zeros(count, 0);
    const std::vector<double> y = transmit_awgn(zeros, 1.0, rng);
    double sum = 0.0, sum2 = 0.0;
    for (double v : y) {
        sum += v - 1.0;  // noise component
        sum2 += (v - 1.0) * (v - 1.0);
    }
    const double mean = sum / static_cast<double>(count);
    const double var = sum2 / static_cast<double>(count) - mean * mean;
    CHECK(std::abs(mean) < 0.004);            // 4-sigma band for 1e6 draws
    CHECK(std::abs(var - 1.0) < 0.01);        // within 1%

    // sigma -> 0 limit: y approaches the BPSK symbols
    RngStream rng2(2);
    BitVec bits{0, 1, 0, 1};
    const std::vector<double> quiet = transmit_awgn(bits, 1e-9, rng2);
    for (std::size_t i = 0; i < bits.size(); ++i)
        CHECK_THAT(quiet[i], WithinAbs(bits[i] ? -1.0 : 1.0, 1e-6));

    CHECK_THROWS_AS(transmit_awgn(bits, 0.0, rng2), std::invalid_argument);
}

TEST_CASE("llr_awgn formula") {
    CHECK(llr_awgn(1.0, 1.0) == 2.0);
    CHECK(llr_awgn(0.0, 0.7) == 0.0);
    CHECK_THAT(llr_awgn(-3.0, std::sqrt(0.5)), WithinAbs(-12.0, 1e-12));
    CHECK(llr_awgn(1e9, 0.1) == kLlrSat);  // clamped
    CHECK_THROWS_AS(llr_awgn(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("llr mean matches the GA initialization assumption") {
    RngStream rng(3);
    const std::size_t count = 100000;
    BitVec zeros(count, 0);
    const double sigma = 0.9;
    const std::vector<double> y = transmit_awgn(zeros, sigma, rng);
    double sum = 0.0;
    for (double v : y) sum += llr_awgn(v, sigma);
    const double mean = sum / static_cast<double>(count);
    const double expected = 2.0 / (sigma * sigma);
    CHECK(std::abs(mean - expected) / expected < 0.02);
}

TEST_CASE("bec transmit") {
    RngStream rng(4);
    BitVec bits{0, 1, 1, 0};
    const LlrVec clean = transmit_bec(bits, 0.0, rng);
    CHECK(clean == LlrVec{kLlrSat, -kLlrSat, -kLlrSat, kLlrSat});

    const LlrVec erased = transmit_bec(bits, 1.0, rng);
    CHECK(erased == LlrVec(4, 0.0));

    // empirical erasure fraction within 1% of 0.5 over 1e6 symbols
    BitVec big(1000000, 0);
    const LlrVec out = transmit_bec(big, 0.5, rng);
    const auto erased_count = std::count(out.begin(), out.end(), 0.0);
    CHECK(std::abs(static_cast<double>(erased_count) / 1e6 - 0.5) < 0.01);

    CHECK_THROWS_AS(transmit_bec(bits, 1.5, rng), std::invalid_argument);
}

TEST_CASE("snr conversions") {
    CHECK_THAT(snr_to_sigma(SnrPoint{0.0, SnrRef::EsN0, 1.0}),
               WithinAbs(std::sqrt(0.5), 1e-15));
    CHECK_THAT(eb_to_es_db(0.0, 0.5), WithinAbs(-3.010299957, 1e-8));
    CHECK_THAT(snr_to_sigma(SnrPoint{0.0, SnrRef::EbN0, 0.5}),
               WithinAbs(snr_to_sigma(SnrPoint{-3.010299957, SnrRef::EsN0, 1.0}), 1e-9));
    // sigma^2 doubles for every -3.0103 dB
    const double s1 = snr_to_sigma(SnrPoint{2.0, SnrRef::EsN0, 1.0});
    const double s2 = snr_to_sigma(SnrPoint{2.0 - 3.010299957, SnrRef::EsN0, 1.0});
    CHECK_THAT(s2 * s2 / (s1 * s1), WithinAbs(2.0, 1e-9));

    CHECK_THROWS_AS(snr_to_sigma(SnrPoint{0.0, SnrRef::EbN0, 0.0}), std::invalid_argument);
}
