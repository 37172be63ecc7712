// polarforge - polar coding toolbox and Monte-Carlo BLER simulator.
//
// Verbs: construct | encode | decode | simulate | analyze. See README.md
// for the file formats and examples.

#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "polarforge/polarforge.hpp"

namespace pf = polarforge;

namespace {

struct CodeOptions {
    int mother_len = 0;      // --N
    int payload_len = 0;     // --K (information bits, CRC excluded)
    std::string crc_arg;     // --crc
    std::string construction = "bhattacharyya";
    double design_epsilon = 0.5;
    double design_sigma = 0.0;
    std::string variant = "phi";
    double beta = std::pow(2.0, 0.25);
    std::string rel_file;    // imported reliability sequence
    std::string rate_match = "none";
    int target_len = 0;      // --M
    std::string order = "bitrev";
};

void add_code_options(CLI::App* cmd, CodeOptions& o, bool need_k) {
    cmd->add_option("--N", o.mother_len, "mother code length N (power of two)");
    auto* k = cmd->add_option("--K", o.payload_len, "information bits (CRC excluded)");
    if (need_k) k->required();
    cmd->add_option("--crc", o.crc_arg, "CRC as <hex>:<degree> (e.g. 0x9F:8) or preset name");
    cmd->add_option("--construction", o.construction, "bhattacharyya | ga | pw")
        ->check(CLI::IsMember({"bhattacharyya", "ga", "pw"}));
    cmd->add_option("--design-epsilon", o.design_epsilon, "design erasure probability");
    cmd->add_option("--design-sigma", o.design_sigma, "design noise std (required for ga)");
    cmd->add_option("--variant", o.variant, "GA approximation: phi | omega2 | omega3 | omega4")
        ->check(CLI::IsMember({"phi", "omega2", "omega3", "omega4"}));
    cmd->add_option("--beta", o.beta, "PW weight factor");
    cmd->add_option("--rel", o.rel_file, "reliability sequence file to import");
    cmd->add_option("--rate-match", o.rate_match, "qup | rqus | auto | none")
        ->check(CLI::IsMember({"qup", "rqus", "auto", "none"}));
    cmd->add_option("--M", o.target_len, "rate-matched transmit length");
    cmd->add_option("--order", o.order, "rate-match table order: natural | bitrev")
        ->check(CLI::IsMember({"natural", "bitrev"}));
}

pf::GaVariant parse_variant(const std::string& s) {
    if (s == "phi") return pf::GaVariant::PhiTwoSegment;
    if (s == "omega2") return pf::GaVariant::Omega2;
    if (s == "omega3") return pf::GaVariant::Omega3;
    return pf::GaVariant::Omega4;
}

pf::ConstructionConfig construction_config(const CodeOptions& o) {
    pf::ConstructionConfig c;
    if (o.construction == "bhattacharyya") c.kind = pf::ConstructionKind::Bhattacharyya;
    else if (o.construction == "ga") c.kind = pf::ConstructionKind::GaussApprox;
    else c.kind = pf::ConstructionKind::PolarWeight;
    c.design_epsilon = o.design_epsilon;
    c.design_sigma = o.design_sigma;
    c.variant = parse_variant(o.variant);
    c.beta = o.beta;
    return c;
}

pf::RateMatchConfig rate_match_config(const CodeOptions& o) {
    pf::RateMatchConfig r;
    if (o.rate_match == "qup") r.kind = pf::RateMatchKind::Qup;
    else if (o.rate_match == "rqus") r.kind = pf::RateMatchKind::Rqus;
    else if (o.rate_match == "auto") r.kind = pf::RateMatchKind::Auto;
    else r.kind = pf::RateMatchKind::None;
    r.target_len = o.target_len;
    r.order = o.order == "natural" ? pf::TableOrder::Natural5G : pf::TableOrder::BitReversed;
    return r;
}

struct BuiltCode {
    pf::CodeSpec spec;
    std::optional<pf::CrcSpec> crc;
    std::optional<pf::RateMatchPlan> plan;
    int tx_len = 0;
};

// Resolves mother length, rate-match plan and information set from the
// command line (either a construction or an imported sequence).
BuiltCode build_code(const CodeOptions& o) {
    BuiltCode b;
    if (!o.crc_arg.empty()) b.crc = pf::parse_crc_argument(o.crc_arg);
    const int info_len = o.payload_len + (b.crc ? b.crc->degree : 0);

    int mother = o.mother_len;
    if (o.rate_match != "none") {
        pf::require(o.target_len > 0, "--rate-match needs --M");
        int derived = 1;
        while (derived < o.target_len) derived *= 2;
        if (mother == 0) mother = derived;
        pf::require(mother == derived, "--N must be the smallest power of two >= --M");
        const int q = mother - o.target_len;
        const pf::TableOrder order =
            o.order == "natural" ? pf::TableOrder::Natural5G : pf::TableOrder::BitReversed;
        pf::RateMatchMode mode;
        if (o.rate_match == "qup") mode = pf::RateMatchMode::PunctureQup;
        else if (o.rate_match == "rqus") mode = pf::RateMatchMode::ShortenRqus;
        else mode = pf::select_mode(info_len, o.target_len);
        b.plan = mode == pf::RateMatchMode::PunctureQup ? pf::build_qup_table(mother, q, order)
                                                        : pf::build_rqus_table(mother, q, order);
        b.tx_len = o.target_len;
    } else {
        pf::require(mother > 0, "--N is required without rate matching");
        b.tx_len = mother;
    }

    if (!o.rel_file.empty()) {
        const pf::ReliabilitySequence seq = pf::read_reliability_sequence(o.rel_file);
        pf::require(seq.block_len == mother, "reliability sequence N does not match the code");
        std::vector<uint8_t> banned(static_cast<std::size_t>(mother), 0);
        if (b.plan && b.plan->mode == pf::RateMatchMode::ShortenRqus)
            for (int d : b.plan->deleted) banned[static_cast<std::size_t>(d - 1)] = 1;
        std::vector<int> info;
        for (int i : seq.order) {
            if (static_cast<int>(info.size()) == info_len) break;
            if (!banned[static_cast<std::size_t>(i - 1)]) info.push_back(i);
        }
        pf::require(static_cast<int>(info.size()) == info_len, "K exceeds usable channels");
        b.spec = pf::CodeSpec::create(mother, std::move(info));
    } else {
        b.spec = pf::construct_code(construction_config(o), mother, info_len,
                                    b.plan ? &*b.plan : nullptr);
    }
    return b;
}

pf::DecoderConfig parse_decoder(const std::string& arg, const std::string& metric) {
    pf::DecoderConfig d;
    d.metric = metric == "minsum" ? pf::MetricMode::MinSum : pf::MetricMode::Exact;
    std::string head = arg, param;
    if (const auto colon = arg.find(':'); colon != std::string::npos) {
        head = arg.substr(0, colon);
        param = arg.substr(colon + 1);
    }
    auto param_value = [&](const char* key) {
        pf::require(param.rfind(key, 0) == 0,
                    std::string("expected ") + key + "<n> after '" + head + ":'");
        return std::stoi(param.substr(std::strlen(key)));
    };
    if (head == "sc") d.kind = pf::DecoderKind::Sc;
    else if (head == "scl") { d.kind = pf::DecoderKind::Scl; d.list_size = param_value("L="); }
    else if (head == "scs") { d.kind = pf::DecoderKind::Scs; d.stack_depth = param_value("D="); }
    else if (head == "ca-scl") { d.kind = pf::DecoderKind::CaScl; d.list_size = param_value("L="); }
    else if (head == "ca-scs") { d.kind = pf::DecoderKind::CaScs; d.stack_depth = param_value("D="); }
    else throw CLI::ValidationError("--decoder", "unknown decoder '" + head + "'");
    return d;
}

// Flat "key = value" config with '#' comments. Keys mirror the long flag
// names of `simulate`; command-line flags take precedence.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    pf::require(static_cast<bool>(in), "cannot open config file " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        pf::require(eq != std::string::npos,
                    "config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        pf::require(!key.empty() && !value.empty(),
                    "config line " + std::to_string(lineno) + ": expected key = value");
        entries[key] = value;
    }
    return entries;
}

// Applies config entries to every simulate option the command line left
// untouched. `setters` maps a key to its parse-and-assign action.
void merge_config(const CLI::App* cmd, const std::map<std::string, std::string>& entries,
                  const std::map<std::string, std::function<void(const std::string&)>>& setters) {
    for (const auto& [key, value] : entries) {
        const auto it = setters.find(key);
        pf::require(it != setters.end(), "unknown config key '" + key + "'");
        if (cmd->count("--" + key) == 0) it->second(value);
    }
}

pf::BitVec parse_bits(const std::string& s) {
    pf::BitVec bits;
    bits.reserve(s.size());
    for (char c : s) {
        pf::require(c == '0' || c == '1', "payload must be a 0/1 string");
        bits.push_back(static_cast<uint8_t>(c - '0'));
    }
    return bits;
}

std::string bits_to_string(const pf::BitVec& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
    return s;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    pf::require(static_cast<bool>(file), "cannot open " + path + " for writing");
    return file;
}

int cmd_construct(const CodeOptions& o, const std::string& out_path, bool print_info_set) {
    pf::require(o.mother_len > 0 || o.target_len > 0, "--N or --M is required");
    int mother = o.mother_len;
    if (mother == 0) {
        mother = 1;
        while (mother < o.target_len) mother *= 2;
    }
    const pf::ReliabilityMetricVector metrics = pf::detail::construct_metrics(
        construction_config(o), mother, nullptr);
    if (print_info_set) {
        pf::require(o.payload_len > 0, "--K is required to print an information set");
        const int info_len =
            o.payload_len + (o.crc_arg.empty() ? 0 : pf::parse_crc_argument(o.crc_arg).degree);
        std::ostringstream line;
        for (int i : pf::select_info_set(metrics, info_len)) line << i << " ";
        std::cout << line.str() << "\n";
        return 0;
    }
    std::ofstream file;
    pf::write_reliability_sequence(open_out(file, out_path), pf::to_sequence(metrics));
    return 0;
}

int cmd_encode(const CodeOptions& o, const std::string& payload_arg, bool random_payload,
               uint64_t seed, const std::string& out_path) {
    BuiltCode code = build_code(o);
    pf::BitVec payload;
    if (random_payload) {
        pf::RngStream rng(seed);
        payload.resize(static_cast<std::size_t>(o.payload_len));
        for (auto& b : payload) b = rng.next_bit();
    } else {
        payload = parse_bits(payload_arg);
        pf::require(static_cast<int>(payload.size()) == o.payload_len,
                    "--payload length must equal --K");
    }
    const pf::BitVec info = code.crc ? pf::crc_encode(payload, *code.crc) : payload;
    pf::BitVec x = pf::encode_natural(pf::assemble_source(info, code.spec));
    if (code.plan) x = pf::rate_match_apply(x, *code.plan);
    std::ofstream file;
    open_out(file, out_path) << bits_to_string(x) << "\n";
    return 0;
}

int cmd_decode(const CodeOptions& o, const std::string& in_path, const std::string& decoder_arg,
               const std::string& metric) {
    BuiltCode code = build_code(o);
    pf::LlrVec llrs;
    {
        std::ifstream file;
        std::istream& in = in_path.empty() ? std::cin : (file.open(in_path), file);
        pf::require(in_path.empty() || static_cast<bool>(file), "cannot open " + in_path);
        double v;
        while (in >> v) llrs.push_back(pf::clamp_llr(v));
    }
    pf::require(static_cast<int>(llrs.size()) == code.tx_len,
                "expected " + std::to_string(code.tx_len) + " LLR values");
    if (code.plan) llrs = pf::fill_llrs(llrs, *code.plan);

    pf::SimConfig cfg;  // reuse the runtime dispatch
    cfg.decoder = parse_decoder(decoder_arg, metric);
    pf::detail::PointSetup setup;
    setup.spec = code.spec;
    setup.crc = code.crc;
    setup.decoder = cfg.decoder;
    pf::detail::DecoderRuntime runtime(setup);
    const pf::DecodeOutcome out = runtime.decode(llrs);

    std::cout << "payload " << bits_to_string(out.payload) << "\n";
    std::cout << "metric " << out.metric << "\n";
    std::cout << "crc "
              << (out.crc == pf::CrcStatus::Passed   ? "passed"
                  : out.crc == pf::CrcStatus::Failed ? "failed"
                                                     : "not-checked")
              << "\n";
    std::cout << "visited_nodes " << out.visited_nodes << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar coding toolbox and Monte-Carlo BLER simulator"};
    app.require_subcommand(1);

    // construct ------------------------------------------------------------
    CodeOptions con_opts;
    std::string con_out;
    bool con_info_set = false;
    CLI::App* construct = app.add_subcommand("construct", "compute channel reliabilities");
    add_code_options(construct, con_opts, false);
    construct->add_option("--out", con_out, "reliability sequence output path (default stdout)");
    construct->add_flag("--print-info-set", con_info_set, "print the selected info set instead");

    // encode ----------------------------------------------------------------
    CodeOptions enc_opts;
    std::string enc_payload, enc_out;
    bool enc_random = false;
    uint64_t enc_seed = 1;
    CLI::App* encode = app.add_subcommand("encode", "encode one block");
    add_code_options(encode, enc_opts, true);
    encode->add_option("--payload", enc_payload, "payload bits as a 0/1 string");
    encode->add_flag("--random", enc_random, "draw a random payload (uses --seed)");
    encode->add_option("--seed", enc_seed, "payload seed for --random");
    encode->add_option("--out", enc_out, "output path (default stdout)");

    // decode ----------------------------------------------------------------
    CodeOptions dec_opts;
    std::string dec_in, dec_decoder = "sc", dec_metric = "exact";
    CLI::App* decode = app.add_subcommand("decode", "decode one LLR frame");
    add_code_options(decode, dec_opts, true);
    decode->add_option("--in", dec_in, "LLR file, one value per line (default stdin)");
    decode->add_option("--decoder", dec_decoder,
                       "sc | scl:L=<n> | scs:D=<n> | ca-scl:L=<n> | ca-scs:D=<n>");
    decode->add_option("--metric", dec_metric, "exact | minsum")
        ->check(CLI::IsMember({"exact", "minsum"}));

    // simulate ---------------------------------------------------------------
    CodeOptions sim_opts;
    std::string sim_decoder = "sc", sim_metric = "exact", sim_channel = "awgn";
    std::string sim_snr_ref = "eb", sim_out;
    double snr_start = 0.0, snr_stop = 0.0, snr_step = 0.5;
    std::vector<double> sim_epsilon;
    uint64_t sim_seed = 1, sim_min_be = 100, sim_max_frames = 100000;
    int sim_workers = 0;
    std::string sim_config;
    CLI::App* simulate = app.add_subcommand("simulate", "run a BLER/BER campaign");
    simulate->add_option("--config", sim_config,
                         "flat key = value config file (CLI overrides it)");
    add_code_options(simulate, sim_opts, false);  // --K may come from the config
    simulate->add_option("--decoder", sim_decoder,
                         "sc | scl:L=<n> | scs:D=<n> | ca-scl:L=<n> | ca-scs:D=<n>");
    simulate->add_option("--metric", sim_metric, "exact | minsum")
        ->check(CLI::IsMember({"exact", "minsum"}));
    simulate->add_option("--channel", sim_channel, "awgn | bec")
        ->check(CLI::IsMember({"awgn", "bec"}));
    simulate->add_option("--snr-start", snr_start, "sweep start (dB)");
    simulate->add_option("--snr-stop", snr_stop, "sweep stop (dB, inclusive)");
    simulate->add_option("--snr-step", snr_step, "sweep step (dB)");
    simulate->add_option("--snr-ref", sim_snr_ref, "es | eb")
        ->check(CLI::IsMember({"es", "eb"}));
    simulate->add_option("--epsilon", sim_epsilon, "BEC erasure probability (repeatable)");
    simulate->add_option("--seed", sim_seed, "master seed");
    simulate->add_option("--workers", sim_workers, "worker threads")
        ->envname("POLARFORGE_WORKERS");
    simulate->add_option("--min-block-errors", sim_min_be, "stop a point after this many errors");
    simulate->add_option("--max-frames", sim_max_frames, "frame cap per point");
    simulate->add_option("--out", sim_out, "CSV output path (default stdout)");

    // analyze ----------------------------------------------------------------
    CodeOptions ana_opts;
    bool ana_weights = false;
    std::vector<double> ana_ebn0;
    std::string ana_out;
    CLI::App* analyze = app.add_subcommand("analyze", "weight distribution and union bound");
    add_code_options(analyze, ana_opts, true);
    analyze->add_flag("--weights", ana_weights, "emit the weight distribution as CSV w,A_w");
    analyze->add_option("--union-bound-ebn0", ana_ebn0,
                        "also print the union bound at these Eb/N0 points (dB)");
    analyze->add_option("--out", ana_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return cmd_construct(con_opts, con_out, con_info_set);
        if (encode->parsed()) return cmd_encode(enc_opts, enc_payload, enc_random, enc_seed, enc_out);
        if (decode->parsed()) return cmd_decode(dec_opts, dec_in, dec_decoder, dec_metric);

        if (simulate->parsed()) {
            if (!sim_config.empty()) {
                auto member = [](const std::string& v, std::initializer_list<const char*> ok,
                                 const std::string& key) {
                    for (const char* c : ok)
                        if (v == c) return v;
                    throw std::invalid_argument("config key '" + key + "': bad value '" + v + "'");
                };
                const std::map<std::string, std::function<void(const std::string&)>> setters{
                    {"N", [&](const std::string& v) { sim_opts.mother_len = std::stoi(v); }},
                    {"K", [&](const std::string& v) { sim_opts.payload_len = std::stoi(v); }},
                    {"crc", [&](const std::string& v) { sim_opts.crc_arg = v; }},
                    {"construction",
                     [&](const std::string& v) {
                         sim_opts.construction = member(v, {"bhattacharyya", "ga", "pw"},
                                                        "construction");
                     }},
                    {"design-epsilon",
                     [&](const std::string& v) { sim_opts.design_epsilon = std::stod(v); }},
                    {"design-sigma",
                     [&](const std::string& v) { sim_opts.design_sigma = std::stod(v); }},
                    {"variant",
                     [&](const std::string& v) {
                         sim_opts.variant =
                             member(v, {"phi", "omega2", "omega3", "omega4"}, "variant");
                     }},
                    {"beta", [&](const std::string& v) { sim_opts.beta = std::stod(v); }},
                    {"rel", [&](const std::string& v) { sim_opts.rel_file = v; }},
                    {"rate-match",
                     [&](const std::string& v) {
                         sim_opts.rate_match =
                             member(v, {"qup", "rqus", "auto", "none"}, "rate-match");
                     }},
                    {"M", [&](const std::string& v) { sim_opts.target_len = std::stoi(v); }},
                    {"order",
                     [&](const std::string& v) {
                         sim_opts.order = member(v, {"natural", "bitrev"}, "order");
                     }},
                    {"decoder", [&](const std::string& v) { sim_decoder = v; }},
                    {"metric",
                     [&](const std::string& v) {
                         sim_metric = member(v, {"exact", "minsum"}, "metric");
                     }},
                    {"channel",
                     [&](const std::string& v) {
                         sim_channel = member(v, {"awgn", "bec"}, "channel");
                     }},
                    {"snr-start", [&](const std::string& v) { snr_start = std::stod(v); }},
                    {"snr-stop", [&](const std::string& v) { snr_stop = std::stod(v); }},
                    {"snr-step", [&](const std::string& v) { snr_step = std::stod(v); }},
                    {"snr-ref",
                     [&](const std::string& v) {
                         sim_snr_ref = member(v, {"es", "eb"}, "snr-ref");
                     }},
                    {"epsilon",
                     [&](const std::string& v) {
                         sim_epsilon.clear();
                         std::istringstream vals(v);
                         double e;
                         while (vals >> e) sim_epsilon.push_back(e);
                     }},
                    {"seed", [&](const std::string& v) { sim_seed = std::stoull(v); }},
                    {"workers", [&](const std::string& v) { sim_workers = std::stoi(v); }},
                    {"min-block-errors",
                     [&](const std::string& v) { sim_min_be = std::stoull(v); }},
                    {"max-frames", [&](const std::string& v) { sim_max_frames = std::stoull(v); }},
                    {"out", [&](const std::string& v) { sim_out = v; }},
                };
                merge_config(simulate, read_config_file(sim_config), setters);
            }
            pf::require(sim_opts.payload_len > 0, "--K is required (flag or config)");

            pf::SimConfig cfg;
            cfg.mother_len = sim_opts.mother_len;
            cfg.payload_len = sim_opts.payload_len;
            cfg.construction = construction_config(sim_opts);
            if (!sim_opts.crc_arg.empty()) cfg.crc = pf::parse_crc_argument(sim_opts.crc_arg);
            cfg.rate_match = rate_match_config(sim_opts);
            cfg.decoder = parse_decoder(sim_decoder, sim_metric);
            cfg.channel = sim_channel == "bec" ? pf::ChannelKind::Bec : pf::ChannelKind::Awgn;
            cfg.snr_ref = sim_snr_ref == "es" ? pf::SnrRef::EsN0 : pf::SnrRef::EbN0;
            if (cfg.channel == pf::ChannelKind::Bec) {
                cfg.sweep = sim_epsilon;
            } else {
                pf::require(snr_step > 0.0, "--snr-step must be positive");
                for (double v = snr_start; v <= snr_stop + 1e-9; v += snr_step)
                    cfg.sweep.push_back(v);
            }
            cfg.stop.min_block_errors = sim_min_be;
            cfg.stop.max_frames = sim_max_frames;
            cfg.master_seed = sim_seed;
            cfg.workers = sim_workers;

            const std::vector<pf::SimRecord> records =
                pf::run_campaign(cfg, sim_out, &std::cerr);
            if (sim_out.empty()) pf::write_csv(std::cout, records);
            return 0;
        }

        if (analyze->parsed()) {
            BuiltCode code = build_code(ana_opts);
            std::optional<pf::CrcSpec> crc = code.crc;
            const pf::WeightDistribution wd = pf::enumerate_weights(code.spec, crc);
            std::ofstream file;
            std::ostream& out = open_out(file, ana_out);
            if (ana_weights || ana_ebn0.empty()) {
                out << "w,A_w\n";
                for (int w = 0; w <= wd.block_len; ++w)
                    if (wd.counts[static_cast<std::size_t>(w)] > 0)
                        out << w << "," << wd.counts[static_cast<std::size_t>(w)] << "\n";
            }
            if (!ana_ebn0.empty()) {
                const double rate = static_cast<double>(wd.payload_len) / code.tx_len;
                for (double db : ana_ebn0) {
                    const pf::UnionBound b = pf::union_bound(wd, rate, db);
                    out << "# union_bound ebn0_db=" << db << " full=" << b.full
                        << " dominant=" << b.dominant << "\n";
                }
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
