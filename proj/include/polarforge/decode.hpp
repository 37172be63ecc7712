#pragma once

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>
#include <span>

#include "polarforge/common.hpp"
#include "polarforge/crc.hpp"
#include "polarforge/polar.hpp"

namespace polarforge {

enum class MetricMode { Exact, MinSum };
enum class CrcStatus { Passed, Failed, NotChecked };

/// Check-node LLR combination. Exact mode evaluates
/// 2*artanh(tanh(a/2)*tanh(b/2)) in the overflow-safe sign/magnitude form
/// min + log1p(e^{-(|a|+|b|)}) - log1p(e^{-||a|-|b||}).
inline double f_combine(double a, double b, MetricMode mode) {
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double aa = std::abs(a), ab = std::abs(b);
    const double lo = std::min(aa, ab), hi = std::max(aa, ab);
    if (mode == MetricMode::MinSum) return clamp_llr(sign * lo);
    const double v = lo + std::log1p(std::exp(-(hi + lo))) - std::log1p(std::exp(-(hi - lo)));
    return clamp_llr(sign * v);
}

/// Variable-node LLR combination given the partial-sum bit of the already
/// decided branch: (1-2*bit)*a + b.
inline double g_combine(double a, double b, uint8_t partial_bit) {
    return clamp_llr((partial_bit ? -a : a) + b);
}

namespace detail {
// softplus(x) = ln(1+e^x), safe for any magnitude
inline double softplus(double x) {
    if (x > 30.0) return x;
    if (x < -30.0) return std::exp(x);
    return std::log1p(std::exp(x));
}
}  // namespace detail

/// Path-metric update for deciding `bit` against `llr`; lower is better and
/// the metric never decreases. Exact: pm + ln(1 + e^{-(1-2*bit)*llr}).
/// MinSum: pm + |llr| when the decision disagrees with the LLR sign.
inline double pm_update(double pm, double llr, uint8_t bit, MetricMode mode) {
    if (mode == MetricMode::MinSum) {
        const bool agrees = bit ? (llr < 0.0) : (llr >= 0.0);
        return agrees ? pm : pm + std::abs(llr);
    }
    return pm + detail::softplus(-(bit ? -llr : llr));
}

/// Result of one decoding attempt. `payload` holds the K information bits,
/// or the k = K - m bits before the CRC for the CRC-aided decoders.
struct DecodeOutcome {
    BitVec payload;
    double metric = 0.0;
    CrcStatus crc = CrcStatus::NotChecked;
    uint64_t visited_nodes = 0;
};

/// One survivor of a list decode: full source-block decision and its metric.
struct DecodePath {
    BitVec decisions;  // length N
    double metric = 0.0;
};

namespace detail {

// Per-path decoding state over the compact code tree, natural order.
//
// Level d in [1..n] holds the 2^{n-d}-wide LLR buffer of the path's active
// node at that depth, stored at offset N - (N >> (d-1)); the psum array uses
// the same layout and holds the re-encoded codeword of the pending left
// sibling, consumed by g at the right sibling. Level 0 (the channel LLRs)
// is shared by all paths and lives outside the state.
struct PathState {
    LlrVec llr;        // size N-1
    BitVec psum;       // size N-1
    BitVec decisions;  // size N
    double metric = 0.0;
    int length = 0;    // decided leaves

    void reset(int block_len) {
        llr.assign(static_cast<std::size_t>(std::max(block_len - 1, 0)), 0.0);
        psum.assign(static_cast<std::size_t>(std::max(block_len - 1, 0)), 0);
        decisions.assign(static_cast<std::size_t>(block_len), 0);
        metric = 0.0;
        length = 0;
    }
};

// f/g scheduling and partial-sum propagation shared by all decoders. One
// engine serves one decode call at a time (its scratch is reused across the
// paths of that call).
class TreeEngine {
  public:
    TreeEngine(int block_len, MetricMode mode)
        : n_(log2_exact(static_cast<std::size_t>(block_len), "block length")),
          block_len_(block_len),
          mode_(mode),
          scratch_a_(static_cast<std::size_t>(block_len)),
          scratch_b_(static_cast<std::size_t>(block_len)) {}

    int block_len() const { return block_len_; }
    MetricMode mode() const { return mode_; }

    std::size_t offset(int d) const {
        return static_cast<std::size_t>(block_len_ - (block_len_ >> (d - 1)));
    }

    // LLR of the next undecided leaf. Recomputes only the levels whose
    // active node changed since the previous leaf.
    double leaf_llr(PathState& p, std::span<const double> channel) const {
        const int phi = p.length;
        if (n_ == 0) return channel[0];
        int d_start = 1;
        if (phi != 0)
            d_start = n_ - std::countr_one(static_cast<unsigned>(phi - 1));
        for (int d = d_start; d <= n_; ++d) {
            const int node = phi >> (n_ - d);
            const int half = block_len_ >> d;
            const double* src =
                d == 1 ? channel.data() : p.llr.data() + offset(d - 1);
            double* dst = p.llr.data() + offset(d);
            if ((node & 1) == 0) {
                for (int i = 0; i < half; ++i)
                    dst[i] = f_combine(src[i], src[i + half], mode_);
            } else {
                const uint8_t* left = p.psum.data() + offset(d);
                for (int i = 0; i < half; ++i)
                    dst[i] = g_combine(src[i], src[i + half], left[i]);
            }
        }
        return p.llr[offset(n_)];
    }

    // Records the decision at the current leaf and pushes re-encoded bits
    // up through every subtree this leaf completes.
    void commit(PathState& p, uint8_t bit) {
        const int phi = p.length;
        p.decisions[static_cast<std::size_t>(phi)] = bit;
        p.length = phi + 1;
        if (n_ == 0) return;
        uint8_t* cur = scratch_a_.data();
        uint8_t* nxt = scratch_b_.data();
        cur[0] = bit;
        int d = n_;
        int node = phi;
        while (d >= 1 && (node & 1)) {
            const int half = block_len_ >> d;
            const uint8_t* left = p.psum.data() + offset(d);
            for (int i = 0; i < half; ++i) {
                nxt[i] = static_cast<uint8_t>(left[i] ^ cur[i]);
                nxt[half + i] = cur[i];
            }
            std::swap(cur, nxt);
            node >>= 1;
            --d;
        }
        if (d >= 1)
            std::memcpy(p.psum.data() + offset(d), cur,
                        static_cast<std::size_t>(block_len_ >> d));
    }

  private:
    int n_;
    int block_len_;
    MetricMode mode_;
    mutable BitVec scratch_a_, scratch_b_;
};

inline void check_frame(std::span<const double> llrs, int block_len) {
    require(static_cast<int>(llrs.size()) == block_len,
            "LLR frame length must equal the block length");
    for (double v : llrs)
        require(std::isfinite(v), "LLR frame contains a non-finite value");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Successive cancellation
// ---------------------------------------------------------------------------

/// Greedy bit-by-bit decoding: information bits decided by the leaf LLR
/// sign (>= 0 -> 0), frozen bits forced to their configured value.
class ScDecoder {
  public:
    ScDecoder(CodeSpec spec, MetricMode mode = MetricMode::Exact)
        : spec_(std::move(spec)), engine_(spec_.block_len, mode) {}

    DecodeOutcome decode(std::span<const double> channel_llrs) {
        detail::check_frame(channel_llrs, spec_.block_len);
        path_.reset(spec_.block_len);
        for (int phi = 0; phi < spec_.block_len; ++phi) {
            const double llr = engine_.leaf_llr(path_, channel_llrs);
            uint8_t bit;
            if (spec_.frozen_at(phi))
                bit = spec_.leaf_value[static_cast<std::size_t>(phi)];
            else
                bit = llr >= 0.0 ? 0 : 1;
            path_.metric = pm_update(path_.metric, llr, bit, engine_.mode());
            engine_.commit(path_, bit);
        }
        DecodeOutcome out;
        out.payload = extract_payload(path_.decisions, spec_);
        out.metric = path_.metric;
        out.visited_nodes = static_cast<uint64_t>(spec_.block_len);
        return out;
    }

    const CodeSpec& spec() const { return spec_; }

  private:
    CodeSpec spec_;
    detail::TreeEngine engine_;
    detail::PathState path_;
};

inline DecodeOutcome sc_decode(std::span<const double> channel_llrs, const CodeSpec& spec,
                               MetricMode mode = MetricMode::Exact) {
    return ScDecoder(spec, mode).decode(channel_llrs);
}

// ---------------------------------------------------------------------------
// Successive cancellation list
// ---------------------------------------------------------------------------

struct SclResult {
    std::vector<DecodePath> list;  // sorted by metric ascending
    DecodeOutcome best;
};

/// Width-first search: every survivor forks at each information index and
/// the L lowest-metric candidates survive. Metric ties break toward the
/// lexicographically smaller decision prefix. Survivor state is copied
/// whole at fork time.
class SclDecoder {
  public:
    SclDecoder(CodeSpec spec, int list_size, MetricMode mode = MetricMode::Exact)
        : spec_(std::move(spec)), list_size_(list_size), engine_(spec_.block_len, mode) {
        require(list_size >= 1, "list size must be >= 1");
    }

    SclResult decode(std::span<const double> channel_llrs) {
        detail::check_frame(channel_llrs, spec_.block_len);
        ensure_slot();
        pool_[0].reset(spec_.block_len);
        active_.assign(1, 0);
        free_.clear();
        for (std::size_t s = 1; s < pool_.size(); ++s) free_.push_back(s);
        uint64_t visited = 0;

        // `active_` stays ordered by lexicographic decision prefix: children
        // of one parent are emitted 0 then 1 and parents keep their order.
        for (int phi = 0; phi < spec_.block_len; ++phi) {
            visited += active_.size();
            leaf_llrs_.resize(active_.size());
            for (std::size_t i = 0; i < active_.size(); ++i)
                leaf_llrs_[i] = engine_.leaf_llr(pool_[active_[i]], channel_llrs);

            if (spec_.frozen_at(phi)) {
                const uint8_t bit = spec_.leaf_value[static_cast<std::size_t>(phi)];
                for (std::size_t i = 0; i < active_.size(); ++i) {
                    detail::PathState& p = pool_[active_[i]];
                    p.metric = pm_update(p.metric, leaf_llrs_[i], bit, engine_.mode());
                    engine_.commit(p, bit);
                }
                continue;
            }

            const std::size_t parents = active_.size();
            if (2 * parents <= static_cast<std::size_t>(list_size_)) {
                // No pruning: fork every parent.
                next_active_.clear();
                for (std::size_t i = 0; i < parents; ++i) {
                    const std::size_t child1 = clone(active_[i]);
                    extend(active_[i], leaf_llrs_[i], 0);
                    extend(child1, leaf_llrs_[i], 1);
                    next_active_.push_back(active_[i]);
                    next_active_.push_back(child1);
                }
                active_.swap(next_active_);
                continue;
            }

            // Candidate c = 2*i + bit; candidate order equals lexicographic
            // order of the extended prefixes.
            cand_metric_.resize(2 * parents);
            for (std::size_t i = 0; i < parents; ++i) {
                const double m = pool_[active_[i]].metric;
                cand_metric_[2 * i] = pm_update(m, leaf_llrs_[i], 0, engine_.mode());
                cand_metric_[2 * i + 1] = pm_update(m, leaf_llrs_[i], 1, engine_.mode());
            }
            cand_order_.resize(2 * parents);
            for (std::size_t c = 0; c < cand_order_.size(); ++c) cand_order_[c] = c;
            std::sort(cand_order_.begin(), cand_order_.end(), [&](std::size_t a, std::size_t b) {
                if (cand_metric_[a] != cand_metric_[b]) return cand_metric_[a] < cand_metric_[b];
                return a < b;
            });
            cand_keep_.assign(2 * parents, 0);
            for (int c = 0; c < list_size_; ++c) cand_keep_[cand_order_[static_cast<std::size_t>(c)]] = 1;

            // Free dying parents before cloning for the two-child ones.
            for (std::size_t i = 0; i < parents; ++i)
                if (!cand_keep_[2 * i] && !cand_keep_[2 * i + 1]) free_.push_back(active_[i]);
            next_active_.clear();
            for (std::size_t i = 0; i < parents; ++i) {
                const bool keep0 = cand_keep_[2 * i], keep1 = cand_keep_[2 * i + 1];
                if (!keep0 && !keep1) continue;
                if (keep0 && keep1) {
                    const std::size_t child1 = clone(active_[i]);
                    extend(active_[i], leaf_llrs_[i], 0);
                    extend(child1, leaf_llrs_[i], 1);
                    next_active_.push_back(active_[i]);
                    next_active_.push_back(child1);
                } else {
                    extend(active_[i], leaf_llrs_[i], keep0 ? 0 : 1);
                    next_active_.push_back(active_[i]);
                }
            }
            active_.swap(next_active_);
        }

        // Stable sort keeps lexicographic order among equal metrics.
        std::stable_sort(active_.begin(), active_.end(), [&](std::size_t a, std::size_t b) {
            return pool_[a].metric < pool_[b].metric;
        });

        SclResult result;
        result.list.reserve(active_.size());
        for (std::size_t s : active_)
            result.list.push_back(DecodePath{pool_[s].decisions, pool_[s].metric});
        result.best.payload = extract_payload(result.list.front().decisions, spec_);
        result.best.metric = result.list.front().metric;
        result.best.visited_nodes = visited;
        return result;
    }

    const CodeSpec& spec() const { return spec_; }

  private:
    void ensure_slot() {
        if (pool_.empty()) pool_.emplace_back();
    }

    std::size_t clone(std::size_t src) {
        std::size_t slot;
        if (!free_.empty()) {
            slot = free_.back();
            free_.pop_back();
        } else {
            pool_.emplace_back();
            slot = pool_.size() - 1;
        }
        pool_[slot] = pool_[src];
        return slot;
    }

    void extend(std::size_t slot, double llr, uint8_t bit) {
        detail::PathState& p = pool_[slot];
        p.metric = pm_update(p.metric, llr, bit, engine_.mode());
        engine_.commit(p, bit);
    }

    CodeSpec spec_;
    int list_size_;
    detail::TreeEngine engine_;
    std::vector<detail::PathState> pool_;
    std::vector<std::size_t> active_, next_active_, free_;
    std::vector<double> leaf_llrs_, cand_metric_;
    std::vector<std::size_t> cand_order_;
    BitVec cand_keep_;
};

inline SclResult scl_decode(std::span<const double> channel_llrs, const CodeSpec& spec,
                            int list_size, MetricMode mode = MetricMode::Exact) {
    return SclDecoder(spec, list_size, mode).decode(channel_llrs);
}

/// CRC-aided list decoding: the lowest-metric survivor whose information
/// bits pass the CRC wins; if none passes, the overall best survivor is
/// returned with crc = Failed. The payload excludes the CRC bits.
inline DecodeOutcome ca_scl_select(const SclResult& scl, const CodeSpec& spec,
                                   const CrcSpec& crc) {
    require(spec.info_len > crc.degree, "K must exceed the CRC degree");
    const int payload_len = spec.info_len - crc.degree;
    for (const DecodePath& path : scl.list) {
        BitVec info = extract_payload(path.decisions, spec);
        if (crc_check(info, crc)) {
            DecodeOutcome out;
            out.payload.assign(info.begin(), info.begin() + payload_len);
            out.metric = path.metric;
            out.crc = CrcStatus::Passed;
            out.visited_nodes = scl.best.visited_nodes;
            return out;
        }
    }
    DecodeOutcome out;
    BitVec info = extract_payload(scl.list.front().decisions, spec);
    out.payload.assign(info.begin(), info.begin() + payload_len);
    out.metric = scl.list.front().metric;
    out.crc = CrcStatus::Failed;
    out.visited_nodes = scl.best.visited_nodes;
    return out;
}

class CaSclDecoder {
  public:
    CaSclDecoder(CodeSpec spec, CrcSpec crc, int list_size, MetricMode mode = MetricMode::Exact)
        : crc_(std::move(crc)), scl_(std::move(spec), list_size, mode) {
        require(scl_.spec().info_len > crc_.degree, "K must exceed the CRC degree");
    }

    DecodeOutcome decode(std::span<const double> channel_llrs) {
        return ca_scl_select(scl_.decode(channel_llrs), scl_.spec(), crc_);
    }

  private:
    CrcSpec crc_;
    SclDecoder scl_;
};

inline DecodeOutcome ca_scl_decode(std::span<const double> channel_llrs, const CodeSpec& spec,
                                   const CrcSpec& crc, int list_size,
                                   MetricMode mode = MetricMode::Exact) {
    return CaSclDecoder(spec, crc, list_size, mode).decode(channel_llrs);
}

// ---------------------------------------------------------------------------
// Successive cancellation stack
// ---------------------------------------------------------------------------

/// Best-first search with an ordered stack of partial paths. The lowest
/// metric entry is popped and extended (two children at information
/// indices, one at frozen); on overflow the worst-metric entry is evicted.
/// Because the metric update never decreases, the first full-length pop is
/// the global minimum when no eviction occurred.
///
/// `search_width` caps how often each tree level may be expanded; once a
/// level hits the cap, everything at or below it is purged from the stack.
/// Short prefixes always look cheaper than a long path that has paid the
/// per-level toll, so without the cap the search degenerates into
/// breadth-first churn on long codes. Width 0 means unbounded (exact
/// best-first).
class ScsDecoder {
  public:
    struct Stats {
        uint64_t pops = 0;
        uint64_t evictions = 0;
        uint64_t purged = 0;
        bool budget_hit = false;
    };

    ScsDecoder(CodeSpec spec, int stack_depth, MetricMode mode = MetricMode::Exact,
               uint64_t max_pops = 0, int search_width = 0)
        : spec_(std::move(spec)),
          depth_(stack_depth),
          max_pops_(max_pops),
          width_(search_width),
          engine_(spec_.block_len, mode) {
        require(stack_depth >= 2, "stack depth must be >= 2");
        require(search_width >= 0, "search width must be >= 0");
    }

    /// Plain SCS: first full-length pop wins, CRC not consulted.
    DecodeOutcome decode(std::span<const double> channel_llrs) {
        return run(channel_llrs, nullptr);
    }

    /// CRC-aided SCS: full-length pops failing the CRC are discarded and the
    /// search continues; after the pop budget (or an empty stack) the best
    /// failed full-length path is returned.
    DecodeOutcome decode_crc_aided(std::span<const double> channel_llrs, const CrcSpec& crc) {
        require(spec_.info_len > crc.degree, "K must exceed the CRC degree");
        return run(channel_llrs, &crc);
    }

    const Stats& last_stats() const { return stats_; }
    const CodeSpec& spec() const { return spec_; }

  private:
    struct Key {
        double metric;
        uint64_t seq;
        std::size_t slot;
        bool operator<(const Key& o) const {
            if (metric != o.metric) return metric < o.metric;
            return seq < o.seq;
        }
    };

    DecodeOutcome run(std::span<const double> channel_llrs, const CrcSpec* crc) {
        detail::check_frame(channel_llrs, spec_.block_len);
        stats_ = Stats{};
        stack_.clear();
        free_.clear();
        for (std::size_t s = 0; s < pool_.size(); ++s) free_.push_back(s);
        pops_at_length_.assign(static_cast<std::size_t>(spec_.block_len), 0);
        uint64_t seq = 0;

        const std::size_t root = alloc();
        pool_[root].reset(spec_.block_len);
        stack_.insert(Key{0.0, seq++, root});

        bool have_failed = false;
        BitVec best_failed;
        double best_failed_metric = std::numeric_limits<double>::infinity();
        // Budget exhaustion falls back to a greedy completion of the current
        // best entry, so the decoder always returns a full-length decision.
        bool greedy = false;

        while (!stack_.empty()) {
            if (max_pops_ != 0 && stats_.pops >= max_pops_ && have_failed) {
                stats_.budget_hit = true;
                break;
            }
            if (max_pops_ != 0 && stats_.pops >= max_pops_) {
                stats_.budget_hit = true;
                greedy = true;
            }

            const Key top = *stack_.begin();
            stack_.erase(stack_.begin());
            ++stats_.pops;

            if (pool_[top.slot].length == spec_.block_len) {
                const detail::PathState& p = pool_[top.slot];
                if (crc == nullptr) return finish(top.slot, CrcStatus::NotChecked, 0);
                BitVec info = extract_payload(p.decisions, spec_);
                if (crc_check(info, *crc)) return finish(top.slot, CrcStatus::Passed, crc->degree);
                if (p.metric < best_failed_metric) {
                    best_failed_metric = p.metric;
                    best_failed = p.decisions;
                }
                have_failed = true;
                free_.push_back(top.slot);
                continue;
            }

            const int phi = pool_[top.slot].length;
            if (width_ > 0 && !greedy) {
                if (++pops_at_length_[static_cast<std::size_t>(phi)] == width_)
                    purge_through(phi);
            }
            const double llr = engine_.leaf_llr(pool_[top.slot], channel_llrs);
            if (spec_.frozen_at(phi) || greedy) {
                detail::PathState& p = pool_[top.slot];
                const uint8_t bit = spec_.frozen_at(phi)
                                        ? spec_.leaf_value[static_cast<std::size_t>(phi)]
                                        : (llr >= 0.0 ? 0 : 1);
                p.metric = pm_update(p.metric, llr, bit, engine_.mode());
                engine_.commit(p, bit);
                push(Key{p.metric, seq++, top.slot});
            } else {
                // alloc() may reallocate the pool; index only afterwards.
                const std::size_t other = alloc();
                pool_[other] = pool_[top.slot];
                detail::PathState& p = pool_[top.slot];
                detail::PathState& q = pool_[other];
                p.metric = pm_update(p.metric, llr, 0, engine_.mode());
                engine_.commit(p, 0);
                q.metric = pm_update(q.metric, llr, 1, engine_.mode());
                engine_.commit(q, 1);
                push(Key{p.metric, seq++, top.slot});
                push(Key{q.metric, seq++, other});
            }
        }

        // Stack exhausted (or budget hit with a candidate): report the best
        // full-length path that failed the check.
        DecodeOutcome out;
        require(have_failed, "stack search terminated without any full-length path");
        BitVec info = extract_payload(best_failed, spec_);
        const int strip = crc ? crc->degree : 0;
        out.payload.assign(info.begin(), info.end() - strip);
        out.metric = best_failed_metric;
        out.crc = CrcStatus::Failed;
        out.visited_nodes = stats_.pops;
        return out;
    }

    DecodeOutcome finish(std::size_t slot, CrcStatus status, int strip) {
        DecodeOutcome out;
        BitVec info = extract_payload(pool_[slot].decisions, spec_);
        out.payload.assign(info.begin(), info.end() - strip);
        out.metric = pool_[slot].metric;
        out.crc = status;
        out.visited_nodes = stats_.pops;
        return out;
    }

    std::size_t alloc() {
        if (!free_.empty()) {
            const std::size_t s = free_.back();
            free_.pop_back();
            return s;
        }
        pool_.emplace_back();
        return pool_.size() - 1;
    }

    void push(Key key) {
        stack_.insert(key);
        if (static_cast<int>(stack_.size()) > depth_) {
            auto worst = std::prev(stack_.end());
            free_.push_back(worst->slot);
            stack_.erase(worst);
            ++stats_.evictions;
        }
    }

    // Level quota reached: anything this short can no longer be expanded.
    void purge_through(int length) {
        for (auto it = stack_.begin(); it != stack_.end();) {
            if (pool_[it->slot].length <= length) {
                free_.push_back(it->slot);
                it = stack_.erase(it);
                ++stats_.purged;
            } else {
                ++it;
            }
        }
    }

    CodeSpec spec_;
    int depth_;
    uint64_t max_pops_;
    int width_;
    detail::TreeEngine engine_;
    std::vector<detail::PathState> pool_;
    std::vector<std::size_t> free_;
    std::vector<int> pops_at_length_;
    std::set<Key> stack_;
    Stats stats_;
};

inline DecodeOutcome scs_decode(std::span<const double> channel_llrs, const CodeSpec& spec,
                                int stack_depth, MetricMode mode = MetricMode::Exact) {
    return ScsDecoder(spec, stack_depth, mode).decode(channel_llrs);
}

/// Default CA-SCS search width for a given stack depth: D=1024 pairs with
/// an effective width of 32.
inline int ca_scs_default_width(int stack_depth) {
    return std::max(2, stack_depth / 32);
}

inline uint64_t ca_scs_default_budget(int block_len) {
    return 64ull * static_cast<uint64_t>(block_len);
}

inline DecodeOutcome ca_scs_decode(std::span<const double> channel_llrs, const CodeSpec& spec,
                                   const CrcSpec& crc, int stack_depth,
                                   MetricMode mode = MetricMode::Exact,
                                   uint64_t max_pops = 0, int search_width = -1) {
    ScsDecoder dec(spec, stack_depth, mode,
                   max_pops == 0 ? ca_scs_default_budget(spec.block_len) : max_pops,
                   search_width < 0 ? ca_scs_default_width(stack_depth) : search_width);
    return dec.decode_crc_aided(channel_llrs, crc);
}

}  // namespace polarforge
