#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <thread>

#include "polarforge/analysis.hpp"
#include "polarforge/channel.hpp"
#include "polarforge/construction.hpp"
#include "polarforge/crc.hpp"
#include "polarforge/decode.hpp"
#include "polarforge/polar.hpp"
#include "polarforge/rate_match.hpp"

namespace polarforge {

// ---------------------------------------------------------------------------
// Campaign configuration
// ---------------------------------------------------------------------------

enum class ConstructionKind { Bhattacharyya, GaussApprox, PolarWeight };

struct ConstructionConfig {
    ConstructionKind kind = ConstructionKind::Bhattacharyya;
    double design_epsilon = 0.5;          // Bhattacharyya
    double design_sigma = 0.0;            // GA; must be set explicitly
    GaVariant variant = GaVariant::PhiTwoSegment;
    double beta = std::pow(2.0, 0.25);    // PW
};

enum class DecoderKind { Sc, Scl, Scs, CaScl, CaScs };

struct DecoderConfig {
    DecoderKind kind = DecoderKind::Sc;
    int list_size = 8;      // SCL / CA-SCL
    int stack_depth = 64;   // SCS / CA-SCS
    MetricMode metric = MetricMode::Exact;
    uint64_t max_pops = 0;  // CA-SCS pop budget; 0 = 32*N default
};

enum class ChannelKind { Awgn, Bec };

enum class RateMatchKind { None, Qup, Rqus, Auto };

struct RateMatchConfig {
    RateMatchKind kind = RateMatchKind::None;
    int target_len = 0;  // M; required unless kind == None
    TableOrder order = TableOrder::BitReversed;
};

struct StoppingRule {
    uint64_t min_block_errors = 100;
    uint64_t max_frames = 100000;
};

/// Full description of one Monte-Carlo campaign. `payload_len` is the
/// number of information bits k excluding any CRC; the polar information
/// count is k plus the CRC degree.
struct SimConfig {
    int mother_len = 0;   // N; 0 derives it from the rate-match target
    int payload_len = 0;  // k
    ConstructionConfig construction;
    std::optional<CrcSpec> crc;
    RateMatchConfig rate_match;
    DecoderConfig decoder;
    ChannelKind channel = ChannelKind::Awgn;
    std::vector<double> sweep;        // dB points for AWGN, epsilons for BEC
    SnrRef snr_ref = SnrRef::EbN0;    // AWGN only
    StoppingRule stop;
    uint64_t master_seed = 1;
    int workers = 0;                  // 0 = POLARFORGE_WORKERS or hardware
};

/// One sweep point's result. `snr_db` carries the erasure probability for
/// BEC points (snr_ref "eps"). elapsed_s is wall-clock and is reported on
/// stderr only; the CSV keeps that column deterministic (see run_campaign).
struct SimRecord {
    double snr_db = 0.0;
    std::string snr_ref;
    uint64_t frames = 0;
    uint64_t block_errors = 0;
    uint64_t bit_errors = 0;
    double bler = 0.0;
    double ber = 0.0;
    uint64_t crc_miss = 0;  // CRC passed but payload wrong
    double elapsed_s = 0.0;
};

// ---------------------------------------------------------------------------
// Code construction for a campaign (rate-matching aware)
// ---------------------------------------------------------------------------

namespace detail {

inline ReliabilityMetricVector construct_metrics(const ConstructionConfig& cfg, int mother_len,
                                                 const RateMatchPlan* plan) {
    const int n = log2_exact(static_cast<std::size_t>(mother_len), "mother length");
    switch (cfg.kind) {
        case ConstructionKind::Bhattacharyya: {
            require(cfg.design_epsilon >= 0.0 && cfg.design_epsilon <= 1.0,
                    "design epsilon must be in [0,1]");
            if (plan == nullptr) return bhattacharyya_bec(n, cfg.design_epsilon);
            // Punctured positions are zero-capacity (Z=1), shortened
            // positions are known (Z=0).
            std::vector<double> z(static_cast<std::size_t>(mother_len), cfg.design_epsilon);
            for (int d : plan->deleted)
                z[static_cast<std::size_t>(d - 1)] =
                    plan->mode == RateMatchMode::PunctureQup ? 1.0 : 0.0;
            return ReliabilityMetricVector::make(MetricKind::Bhattacharyya,
                                                 bec_bit_channel_z(std::move(z)));
        }
        case ConstructionKind::GaussApprox: {
            require(cfg.design_sigma > 0.0, "GA construction requires a design sigma");
            if (plan == nullptr) return ga_llr_means(n, cfg.design_sigma, cfg.variant);
            const double m0 = 2.0 / (cfg.design_sigma * cfg.design_sigma);
            std::vector<double> m(static_cast<std::size_t>(mother_len), m0);
            for (int d : plan->deleted)
                m[static_cast<std::size_t>(d - 1)] =
                    plan->mode == RateMatchMode::PunctureQup ? 0.0 : kLlrSat;
            return ReliabilityMetricVector::make(MetricKind::GaLlrMean,
                                                 ga_bit_channel_means(std::move(m), cfg.variant));
        }
        case ConstructionKind::PolarWeight:
            return pw_metrics(n, cfg.beta);
    }
    throw std::logic_error("unknown construction kind");
}

}  // namespace detail

/// Selects the information set for a (possibly rate-matched) code. With
/// shortening the deleted source indices are pinned frozen so the deleted
/// code bits are guaranteed zero (the transform is lower triangular).
inline CodeSpec construct_code(const ConstructionConfig& cfg, int mother_len, int info_len,
                               const RateMatchPlan* plan = nullptr) {
    ReliabilityMetricVector metrics = detail::construct_metrics(cfg, mother_len, plan);
    std::vector<int> excluded;
    if (plan != nullptr && plan->mode == RateMatchMode::ShortenRqus) excluded = plan->deleted;
    std::vector<int> info = select_info_set(metrics, info_len, excluded);
    return CodeSpec::create(mother_len, std::move(info));
}

// ---------------------------------------------------------------------------
// Frame pipeline
// ---------------------------------------------------------------------------

namespace detail {

/// Everything fixed for one sweep point. Immutable during the frame loop.
struct PointSetup {
    CodeSpec spec;
    std::optional<CrcSpec> crc;
    std::optional<RateMatchPlan> plan;
    int tx_len = 0;       // M
    int payload_len = 0;  // k
    ChannelKind channel = ChannelKind::Awgn;
    double sigma = 1.0;    // AWGN
    double epsilon = 0.0;  // BEC
    DecoderConfig decoder;
};

/// Per-worker decoder instances, reused frame to frame.
class DecoderRuntime {
  public:
    explicit DecoderRuntime(const PointSetup& s) : setup_(&s) {
        switch (s.decoder.kind) {
            case DecoderKind::Sc:
                sc_ = std::make_unique<ScDecoder>(s.spec, s.decoder.metric);
                break;
            case DecoderKind::Scl:
                scl_ = std::make_unique<SclDecoder>(s.spec, s.decoder.list_size, s.decoder.metric);
                break;
            case DecoderKind::CaScl:
                ca_scl_ = std::make_unique<CaSclDecoder>(s.spec, *s.crc, s.decoder.list_size,
                                                         s.decoder.metric);
                break;
            case DecoderKind::Scs:
                scs_ = std::make_unique<ScsDecoder>(s.spec, s.decoder.stack_depth, s.decoder.metric);
                break;
            case DecoderKind::CaScs: {
                const uint64_t budget = s.decoder.max_pops
                                            ? s.decoder.max_pops
                                            : ca_scs_default_budget(s.spec.block_len);
                scs_ = std::make_unique<ScsDecoder>(s.spec, s.decoder.stack_depth,
                                                    s.decoder.metric, budget,
                                                    ca_scs_default_width(s.decoder.stack_depth));
                break;
            }
        }
    }

    DecodeOutcome decode(std::span<const double> llrs) {
        switch (setup_->decoder.kind) {
            case DecoderKind::Sc: return sc_->decode(llrs);
            case DecoderKind::Scl: return scl_->decode(llrs).best;
            case DecoderKind::CaScl: return ca_scl_->decode(llrs);
            case DecoderKind::Scs: return scs_->decode(llrs);
            case DecoderKind::CaScs: return scs_->decode_crc_aided(llrs, *setup_->crc);
        }
        throw std::logic_error("unknown decoder kind");
    }

  private:
    const PointSetup* setup_;
    std::unique_ptr<ScDecoder> sc_;
    std::unique_ptr<SclDecoder> scl_;
    std::unique_ptr<CaSclDecoder> ca_scl_;
    std::unique_ptr<ScsDecoder> scs_;
};

struct FrameResult {
    bool block_error = false;
    uint32_t bit_errors = 0;
    bool crc_miss = false;
};

/// Pure function of (setup, master_seed, snr_index, frame_index).
inline FrameResult run_frame(const PointSetup& s, uint64_t master_seed, uint64_t snr_index,
                             uint64_t frame_index, DecoderRuntime& decoder) {
    RngStream rng(frame_seed(master_seed, snr_index, frame_index));

    BitVec payload(static_cast<std::size_t>(s.payload_len));
    for (auto& b : payload) b = rng.next_bit();
    const BitVec info = s.crc ? crc_encode(payload, *s.crc) : payload;
    const BitVec x = encode_natural(assemble_source(info, s.spec));
    const BitVec tx = s.plan ? rate_match_apply(x, *s.plan) : x;

    LlrVec llrs;
    if (s.channel == ChannelKind::Awgn) {
        const std::vector<double> y = transmit_awgn(tx, s.sigma, rng);
        llrs.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) llrs[i] = llr_awgn(y[i], s.sigma);
    } else {
        llrs = transmit_bec(tx, s.epsilon, rng);
    }
    if (s.plan) llrs = fill_llrs(llrs, *s.plan);

    const DecodeOutcome out = decoder.decode(llrs);
    FrameResult r;
    for (int i = 0; i < s.payload_len; ++i)
        if (out.payload[static_cast<std::size_t>(i)] != payload[static_cast<std::size_t>(i)])
            ++r.bit_errors;
    r.block_error = r.bit_errors > 0;
    r.crc_miss = r.block_error && out.crc == CrcStatus::Passed;
    return r;
}

inline int resolve_workers(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("POLARFORGE_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Campaign runner
// ---------------------------------------------------------------------------

namespace detail {

inline PointSetup build_point_setup(const SimConfig& cfg) {
    require(cfg.payload_len > 0, "payload length must be positive");

    PointSetup s;
    s.payload_len = cfg.payload_len;
    s.crc = cfg.crc;
    s.channel = cfg.channel;
    s.decoder = cfg.decoder;
    const int info_len = cfg.payload_len + (cfg.crc ? cfg.crc->degree : 0);

    int mother = cfg.mother_len;
    if (cfg.rate_match.kind == RateMatchKind::None) {
        require(mother > 0, "mother length N is required without rate matching");
        s.tx_len = mother;
    } else {
        const int target = cfg.rate_match.target_len;
        require(target > 0, "rate matching requires a target length M");
        int derived = 1;
        while (derived < target) derived *= 2;
        if (mother == 0) mother = derived;
        require(mother == derived, "mother length must be the smallest power of two >= M");
        s.tx_len = target;
        const int deletions = mother - target;
        RateMatchMode mode;
        switch (cfg.rate_match.kind) {
            case RateMatchKind::Qup: mode = RateMatchMode::PunctureQup; break;
            case RateMatchKind::Rqus: mode = RateMatchMode::ShortenRqus; break;
            default: mode = select_mode(info_len, target); break;
        }
        s.plan = mode == RateMatchMode::PunctureQup
                     ? build_qup_table(mother, deletions, cfg.rate_match.order)
                     : build_rqus_table(mother, deletions, cfg.rate_match.order);
    }
    require(info_len <= s.tx_len, "K plus the CRC degree must fit the transmitted length");

    const bool needs_crc = cfg.decoder.kind == DecoderKind::CaScl ||
                           cfg.decoder.kind == DecoderKind::CaScs;
    require(!needs_crc || cfg.crc.has_value(), "CRC-aided decoding requires a CRC");

    s.spec = construct_code(cfg.construction, mother, info_len,
                            s.plan ? &*s.plan : nullptr);
    return s;
}

}  // namespace detail

/// Runs one sweep point until the stopping rule fires: the point ends at
/// the first frame where block_errors >= min_block_errors, or at
/// max_frames. Frames are sharded over a worker pool but aggregated in
/// frame order, so the record is a pure function of (config, snr_index).
inline SimRecord run_point(const SimConfig& cfg, const detail::PointSetup& setup,
                           std::size_t snr_index, double sweep_value) {
    require(cfg.stop.min_block_errors >= 1, "min_block_errors must be >= 1");
    require(cfg.stop.max_frames >= 1, "max_frames must be >= 1");
    const int workers = detail::resolve_workers(cfg.workers);

    detail::PointSetup point = setup;
    if (cfg.channel == ChannelKind::Awgn) {
        const double rate = static_cast<double>(cfg.payload_len) / point.tx_len;
        point.sigma = snr_to_sigma(SnrPoint{sweep_value, cfg.snr_ref, rate});
    } else {
        require(sweep_value >= 0.0 && sweep_value <= 1.0, "BEC epsilon must be in [0,1]");
        point.epsilon = sweep_value;
    }

    const auto t0 = std::chrono::steady_clock::now();
    SimRecord rec;
    rec.snr_db = sweep_value;
    rec.snr_ref = cfg.channel == ChannelKind::Bec ? "eps"
                  : cfg.snr_ref == SnrRef::EsN0   ? "es"
                                                  : "eb";

    std::vector<detail::FrameResult> chunk_results;
    uint64_t base = 0;
    bool stopped = false;
    const uint64_t chunk_frames = std::max<uint64_t>(static_cast<uint64_t>(workers) * 32, 128);

    while (!stopped && base < cfg.stop.max_frames) {
        const uint64_t count = std::min(chunk_frames, cfg.stop.max_frames - base);
        chunk_results.assign(static_cast<std::size_t>(count), {});

        auto shard = [&](int w) {
            detail::DecoderRuntime decoder(point);
            for (uint64_t i = static_cast<uint64_t>(w); i < count;
                 i += static_cast<uint64_t>(workers))
                chunk_results[static_cast<std::size_t>(i)] = detail::run_frame(
                    point, cfg.master_seed, static_cast<uint64_t>(snr_index), base + i, decoder);
        };
        if (workers == 1) {
            shard(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) pool.emplace_back(shard, w);
            for (auto& t : pool) t.join();
        }

        // Sequential scan in frame order; identical regardless of sharding.
        for (uint64_t i = 0; i < count; ++i) {
            const detail::FrameResult& fr = chunk_results[static_cast<std::size_t>(i)];
            ++rec.frames;
            rec.bit_errors += fr.bit_errors;
            if (fr.block_error) ++rec.block_errors;
            if (fr.crc_miss) ++rec.crc_miss;
            if (rec.block_errors >= cfg.stop.min_block_errors) {
                stopped = true;
                break;
            }
        }
        base += count;
    }

    rec.bler = static_cast<double>(rec.block_errors) / static_cast<double>(rec.frames);
    rec.ber = static_cast<double>(rec.bit_errors) /
              (static_cast<double>(rec.frames) * static_cast<double>(cfg.payload_len));
    rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline SimRecord run_point(const SimConfig& cfg, std::size_t snr_index) {
    require(snr_index < cfg.sweep.size(), "sweep index out of range");
    const detail::PointSetup setup = detail::build_point_setup(cfg);
    return run_point(cfg, setup, snr_index, cfg.sweep[snr_index]);
}

/// CSV schema (header exact):
/// snr_db,snr_ref,frames,block_errors,bit_errors,bler,ber,crc_miss,elapsed_s
///
/// The elapsed_s column is written as 0.000 so that a campaign re-run with
/// the same seed is byte-identical whatever the worker count; wall-clock
/// timing goes to the CLI's stderr summary instead.
inline void write_csv(std::ostream& out, const std::vector<SimRecord>& records) {
    out << "snr_db,snr_ref,frames,block_errors,bit_errors,bler,ber,crc_miss,elapsed_s\n";
    char line[256];
    for (const SimRecord& r : records) {
        std::snprintf(line, sizeof(line), "%.6g,%s,%llu,%llu,%llu,%.8e,%.8e,%llu,0.000\n",
                      r.snr_db, r.snr_ref.c_str(),
                      static_cast<unsigned long long>(r.frames),
                      static_cast<unsigned long long>(r.block_errors),
                      static_cast<unsigned long long>(r.bit_errors), r.bler, r.ber,
                      static_cast<unsigned long long>(r.crc_miss));
        out << line;
    }
}

inline void write_csv_atomic(const std::string& path, const std::vector<SimRecord>& records) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        write_csv(out, records);
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

/// Runs every sweep point and (optionally) writes the CSV atomically.
inline std::vector<SimRecord> run_campaign(const SimConfig& cfg,
                                           const std::string& csv_path = {},
                                           std::ostream* progress = nullptr) {
    require(!cfg.sweep.empty(), "sweep must contain at least one point");
    const detail::PointSetup setup = detail::build_point_setup(cfg);
    std::vector<SimRecord> records;
    records.reserve(cfg.sweep.size());
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
        records.push_back(run_point(cfg, setup, i, cfg.sweep[i]));
        if (progress) {
            const SimRecord& r = records.back();
            *progress << "point " << r.snr_db << " (" << r.snr_ref << "): frames=" << r.frames
                      << " block_errors=" << r.block_errors << " bler=" << r.bler
                      << " elapsed=" << r.elapsed_s << "s\n";
        }
    }
    if (!csv_path.empty()) write_csv_atomic(csv_path, records);
    return records;
}

}  // namespace polarforge
