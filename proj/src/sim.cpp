#include "swc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

namespace swc {

using json = nlohmann::ordered_json;

SyndromeChannel SyndromeChannelSpec::build(std::uint32_t alphabet) const {
    switch (kind) {
        case Kind::ErrorFree: return SyndromeChannel::identity(alphabet);
        case Kind::Qsc: return SyndromeChannel::symmetric(alphabet, eps);
        case Kind::Matrix: {
            auto sc = SyndromeChannel::from_matrix(rows);
            if (sc.S != alphabet)
                throw ConfigError("syndrome_channel.rows: matrix size does not match q^(n-k)");
            return sc;
        }
    }
    throw std::logic_error("bad syndrome channel kind");
}

namespace {

[[noreturn]] void cfg_fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

template <typename T>
T get_field(const json& j, const std::string& key, std::optional<T> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        cfg_fail(key, "missing");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        cfg_fail(key, e.what());
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

SyndromeChannelSpec parse_syndrome_channel(const json& j) {
    SyndromeChannelSpec spec;
    auto kind = get_field<std::string>(j, "kind");
    if (kind == "error_free") {
        spec.kind = SyndromeChannelSpec::Kind::ErrorFree;
    } else if (kind == "qsc") {
        spec.kind = SyndromeChannelSpec::Kind::Qsc;
        spec.eps = get_field<double>(j, "epsilon");
    } else if (kind == "matrix") {
        spec.kind = SyndromeChannelSpec::Kind::Matrix;
        spec.rows = get_field<std::vector<std::vector<double>>>(j, "rows");
    } else {
        cfg_fail("syndrome_channel.kind", "unknown kind '" + kind + "'");
    }
    return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
    const json j = load_json(path);
    ExperimentConfig cfg;
    cfg.code_file = get_field<std::string>(j, "code");
    try {
        cfg.code = parse_code_file(cfg.code_file);
    } catch (const std::exception& e) {
        cfg_fail("code", e.what());
    }
    if (cfg.code->is_turbo()) {
        cfg.block_length = cfg.code->turbo->block_length();
        if (j.contains("N") && get_field<std::uint32_t>(j, "N") != cfg.block_length)
            cfg_fail("N", "does not match the turbo code's block length");
    } else {
        cfg.block_length = get_field<std::uint32_t>(j, "N");
        if (cfg.block_length == 0) cfg_fail("N", "must be >= 1");
    }
    if (j.contains("prior")) cfg.prior_pmf = get_field<std::vector<double>>(j, "prior");

    if (!j.contains("channel")) cfg_fail("channel", "missing");
    const json& ch = j.at("channel");
    auto kind = get_field<std::string>(ch, "kind");
    if (kind == "qsc") {
        if (ch.contains("epsilons"))
            cfg.epsilons = get_field<std::vector<double>>(ch, "epsilons");
        else
            cfg.epsilons = {get_field<double>(ch, "epsilon")};
        if (cfg.epsilons.empty()) cfg_fail("channel.epsilons", "empty sweep");
    } else if (kind == "matrix") {
        try {
            cfg.channel_matrix =
                SymbolChannel::from_matrix(get_field<std::vector<std::vector<double>>>(ch, "rows"));
        } catch (const std::exception& e) {
            cfg_fail("channel.rows", e.what());
        }
    } else {
        cfg_fail("channel.kind", "unknown kind '" + kind + "'");
    }

    if (j.contains("syndrome_channel"))
        cfg.syndrome_channel = parse_syndrome_channel(j.at("syndrome_channel"));

    auto names = get_field<std::vector<std::string>>(j, "strategies");
    if (names.empty()) cfg_fail("strategies", "must not be empty");
    for (const auto& n : names) {
        try {
            cfg.strategies.push_back(strategy_from_name(n));
        } catch (const std::exception& e) {
            cfg_fail("strategies", e.what());
        }
    }
    cfg.iterations = get_field<unsigned>(j, "iterations", {5u});
    cfg.trials = get_field<std::uint32_t>(j, "trials", {1u});
    if (cfg.trials < 1) cfg_fail("trials", "must be >= 1");
    cfg.seed = get_field<std::uint64_t>(j, "seed", {0ull});
    cfg.threads = get_field<unsigned>(j, "threads", {1u});
    cfg.out = get_field<std::string>(j, "out", {std::string("results")});
    return cfg;
}

Rate compression_rate(const CodeSpec& code) {
    Rate r;
    if (code.is_turbo()) {
        const auto& tc = *code.turbo;
        const std::uint64_t k = tc.k();
        const std::uint64_t n0 = tc.constituent(0).n();
        const std::uint64_t n1 = tc.constituent(1).n();
        r.num = n0 + n1 - 2 * k;
        r.den = n0 + n1 - k;
    } else {
        r.num = code.conv->n_minus_k();
        r.den = code.conv->n();
    }
    const std::uint64_t g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

namespace {

std::uint64_t count_digit_mismatch(TupleIndex a, TupleIndex b, std::uint32_t q,
                                   std::uint32_t m) {
    std::uint64_t e = 0;
    for (std::uint32_t j = 0; j < m; ++j) {
        if (a % q != b % q) ++e;
        a /= q;
        b /= q;
    }
    return e;
}

struct Tally {
    std::uint64_t sys_errors = 0, par_errors = 0;
};

// One Monte Carlo trial, convolutional code.
TrialRecord conv_trial(const ExperimentConfig& cfg, const ParityRealization& r,
                       const SourcePrior& prior, const SymbolChannel& ch, Strategy strategy,
                       const SampledBlock& block, const SyndromeEvidence& evidence) {
    TrialRecord rec;
    const std::uint32_t q = r.field().q();
    rec.sys_symbols = static_cast<std::uint64_t>(cfg.block_length) * r.k();
    rec.par_symbols = static_cast<std::uint64_t>(cfg.block_length) * r.n_minus_k();
    try {
        DecodeResult res = decode(strategy, r, evidence, block.side, prior, ch);
        for (std::uint32_t i = 0; i < cfg.block_length; ++i) {
            rec.sys_errors += count_digit_mismatch(res.hard_s[i], block.sys[i], q, r.k());
            rec.par_errors += count_digit_mismatch(res.hard_p[i], block.par[i], q, r.n_minus_k());
        }
    } catch (const DecodingInconsistency&) {
        rec.erasure = true;
        rec.sys_errors = rec.sys_symbols;
        rec.par_errors = rec.par_symbols;
    }
    return rec;
}

TrialRecord turbo_trial(const ExperimentConfig& cfg, const TurboCode& tc,
                        const SourcePrior& prior, const SymbolChannel& ch, Strategy strategy,
                        const TurboSideInfo& side, const std::vector<TupleIndex>& sys,
                        const std::vector<TupleIndex>& x0, const std::vector<TupleIndex>& x1,
                        const SyndromeEvidence& ev0, const SyndromeEvidence& ev1) {
    TrialRecord rec;
    const std::uint32_t q = tc.field().q();
    const std::uint32_t N = tc.block_length();
    rec.sys_symbols = static_cast<std::uint64_t>(N) * tc.k();
    rec.par_symbols = static_cast<std::uint64_t>(N) *
                      (tc.constituent(0).n_minus_k() + tc.constituent(1).n_minus_k());
    try {
        TurboDecodeResult res =
            turbo_decode(tc, ev0, ev1, side, prior, ch, strategy, cfg.iterations);
        for (std::uint32_t i = 0; i < N; ++i) {
            rec.sys_errors += count_digit_mismatch(res.hard_s[i], sys[i], q, tc.k());
            rec.par_errors +=
                count_digit_mismatch(res.hard_p0[i], x0[i], q, tc.constituent(0).n_minus_k());
            rec.par_errors +=
                count_digit_mismatch(res.hard_p1[i], x1[i], q, tc.constituent(1).n_minus_k());
        }
    } catch (const DecodingInconsistency&) {
        rec.erasure = true;
        rec.sys_errors = rec.sys_symbols;
        rec.par_errors = rec.par_symbols;
    }
    return rec;
}

}  // namespace

SampledBlock sample_block(const ParityRealization& r, std::size_t steps,
                          const SourcePrior& prior, const SymbolChannel& ch,
                          Xoshiro256ss& rng) {
    SampledBlock block;
    block.sys.resize(steps);
    block.par.resize(steps);
    block.side.sys.resize(steps);
    block.side.par.resize(steps);
    auto draw_tuple = [&](std::uint32_t width, TupleIndex& x_out, TupleIndex& y_out) {
        TupleIndex x = 0, y = 0, wx = 1, wy = 1;
        for (std::uint32_t j = 0; j < width; ++j) {
            auto [xs, ys] = sample_pair(prior, ch, rng);
            x += wx * xs;
            y += wy * ys;
            wx *= ch.q_in;
            wy *= ch.M;
        }
        x_out = x;
        y_out = y;
    };
    for (std::size_t i = 0; i < steps; ++i) {
        draw_tuple(r.k(), block.sys[i], block.side.sys[i]);
        draw_tuple(r.n_minus_k(), block.par[i], block.side.par[i]);
    }
    return block;
}

RunResult run_trials(const ExperimentConfig& cfg) {
    if (!cfg.code) throw ConfigError("run_trials: code not resolved");
    const bool turbo = cfg.code->is_turbo();
    const Field& field = turbo ? cfg.code->turbo->field() : cfg.code->conv->field();
    const SourcePrior prior = cfg.prior_pmf.empty() ? SourcePrior::uniform(field.q())
                                                    : SourcePrior::from_pmf(cfg.prior_pmf);
    if (prior.pmf.size() != field.q()) throw ConfigError("config field 'prior': size != q");

    const std::size_t num_points = cfg.channel_matrix ? 1 : cfg.epsilons.size();
    const std::size_t per_trial = cfg.strategies.size();
    RunResult out;
    out.records.resize(num_points * cfg.trials * per_trial);

    auto run_one = [&](std::size_t point, std::uint64_t t) {
        const double eps = cfg.channel_matrix ? -1.0 : cfg.epsilons[point];
        const SymbolChannel ch =
            cfg.channel_matrix ? *cfg.channel_matrix : qsc(field.q(), eps);
        const std::uint64_t trial_id = point * cfg.trials + t;
        Xoshiro256ss rng = Xoshiro256ss::for_trial(cfg.seed, trial_id);

        std::vector<TrialRecord> recs;
        if (!turbo) {
            const ParityRealization& r = *cfg.code->conv;
            SampledBlock block = sample_block(r, cfg.block_length, prior, ch, rng);
            auto s = syndrome_form(r, block.sys, block.par);
            SyndromeChannel sc;
            SyndromeEvidence ev{s, nullptr};
            if (!cfg.syndrome_channel.error_free()) {
                sc = cfg.syndrome_channel.build(static_cast<std::uint32_t>(r.num_outputs()));
                std::vector<TupleIndex> rcv(s.size());
                for (std::size_t i = 0; i < s.size(); ++i)
                    rcv[i] = sample_syndrome_output(sc, s[i], rng);
                ev = SyndromeEvidence{std::move(rcv), &sc};
            }
            for (Strategy st : cfg.strategies)
                recs.push_back(conv_trial(cfg, r, prior, ch, st, block, ev));
        } else {
            const TurboCode& tc = *cfg.code->turbo;
            SampledBlock bs = sample_block(tc.constituent(0), tc.block_length(), prior, ch, rng);
            // Reuse the parity-width sampler for the two parity streams.
            TurboSideInfo side;
            side.sys = bs.side.sys;
            std::vector<TupleIndex> sys = bs.sys, x0(tc.block_length()), x1(tc.block_length());
            // bs.par was drawn at constituent-0 parity width; keep it as x0.
            x0 = bs.par;
            side.par0 = bs.side.par;
            side.par1.resize(tc.block_length());
            for (std::uint32_t i = 0; i < tc.block_length(); ++i) {
                TupleIndex x = 0, y = 0, wx = 1, wy = 1;
                for (std::uint32_t j = 0; j < tc.constituent(1).n_minus_k(); ++j) {
                    auto [xsym, ysym] = sample_pair(prior, ch, rng);
                    x += wx * xsym;
                    y += wy * ysym;
                    wx *= ch.q_in;
                    wy *= ch.M;
                }
                x1[i] = x;
                side.par1[i] = y;
            }
            auto syn = turbo_syndrome_form(tc, sys, x0, x1);
            SyndromeChannel sc0, sc1;
            SyndromeEvidence ev0{syn.s0, nullptr}, ev1{syn.s1, nullptr};
            if (!cfg.syndrome_channel.error_free()) {
                sc0 = cfg.syndrome_channel.build(
                    static_cast<std::uint32_t>(tc.constituent(0).num_outputs()));
                sc1 = cfg.syndrome_channel.build(
                    static_cast<std::uint32_t>(tc.constituent(1).num_outputs()));
                std::vector<TupleIndex> r0(syn.s0.size()), r1(syn.s1.size());
                for (std::size_t i = 0; i < r0.size(); ++i)
                    r0[i] = sample_syndrome_output(sc0, syn.s0[i], rng);
                for (std::size_t i = 0; i < r1.size(); ++i)
                    r1[i] = sample_syndrome_output(sc1, syn.s1[i], rng);
                ev0 = SyndromeEvidence{std::move(r0), &sc0};
                ev1 = SyndromeEvidence{std::move(r1), &sc1};
            }
            for (Strategy st : cfg.strategies)
                recs.push_back(turbo_trial(cfg, tc, prior, ch, st, side, sys, x0, x1, ev0, ev1));
        }
        for (std::size_t si = 0; si < recs.size(); ++si) {
            recs[si].trial = trial_id;
            recs[si].epsilon = eps;
            recs[si].strategy = cfg.strategies[si];
            out.records[trial_id * per_trial + si] = recs[si];
        }
    };

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t total = num_points * cfg.trials;
    const unsigned nthreads = std::max(1u, cfg.threads);
    if (nthreads == 1) {
        for (std::uint64_t id = 0; id < total; ++id) run_one(id / cfg.trials, id % cfg.trials);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex err_mu;
        for (unsigned w = 0; w < nthreads; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint64_t id = next.fetch_add(1);
                    if (id >= total) return;
                    try {
                        run_one(id / cfg.trials, id % cfg.trials);
                    } catch (...) {
                        std::lock_guard lk(err_mu);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void emit_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error(path + ": cannot open for writing");
    std::fputs("trial,epsilon,strategy,sys_errors,par_errors,sys_symbols,par_symbols,erasure\n",
               f);
    for (const auto& r : records)
        std::fprintf(f, "%" PRIu64 ",%.17g,%s,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                        ",%d\n",
                     r.trial, r.epsilon, strategy_name(r.strategy).c_str(), r.sys_errors,
                     r.par_errors, r.sys_symbols, r.par_symbols, r.erasure ? 1 : 0);
    std::fclose(f);
}

void emit_summary_json(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records,
                       const std::string& path) {
    json summary;
    summary["code"] = cfg.code_file;
    summary["N"] = cfg.block_length;
    summary["seed"] = cfg.seed;
    summary["trials"] = cfg.trials;
    summary["iterations"] = cfg.iterations;
    {
        json strategies = json::array();
        for (Strategy s : cfg.strategies) strategies.push_back(strategy_name(s));
        summary["strategies"] = strategies;
    }
    const Rate rate = compression_rate(*cfg.code);
    summary["rate"] = {{"num", rate.num}, {"den", rate.den}, {"value", rate.value()}};

    std::map<std::pair<double, std::string>, TrialRecord> agg;
    std::map<std::pair<double, std::string>, std::uint64_t> erasures;
    for (const auto& r : records) {
        auto key = std::make_pair(r.epsilon, strategy_name(r.strategy));
        auto& a = agg[key];
        a.epsilon = r.epsilon;
        a.strategy = r.strategy;
        a.sys_errors += r.sys_errors;
        a.par_errors += r.par_errors;
        a.sys_symbols += r.sys_symbols;
        a.par_symbols += r.par_symbols;
        erasures[key] += r.erasure ? 1 : 0;
    }
    json points = json::array();
    for (const auto& [key, a] : agg) {
        json p;
        p["epsilon"] = key.first;
        p["strategy"] = key.second;
        p["sys_errors"] = a.sys_errors;
        p["sys_symbols"] = a.sys_symbols;
        p["ser_sys"] = a.sys_symbols ? static_cast<double>(a.sys_errors) / a.sys_symbols : 0.0;
        p["par_errors"] = a.par_errors;
        p["par_symbols"] = a.par_symbols;
        p["ser_par"] = a.par_symbols ? static_cast<double>(a.par_errors) / a.par_symbols : 0.0;
        p["erasures"] = erasures[key];
        points.push_back(std::move(p));
    }
    summary["points"] = std::move(points);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << summary.dump(2) << "\n";
}

}  // namespace swc
