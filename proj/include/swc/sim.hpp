#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swc/channel.hpp"
#include "swc/code.hpp"
#include "swc/decoders.hpp"

namespace swc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syndrome transmission channel described independently of the code; built
/// to the (n-k)-tuple alphabet once the code is known.
struct SyndromeChannelSpec {
    enum class Kind { ErrorFree, Qsc, Matrix };
    Kind kind = Kind::ErrorFree;
    double eps = 0;
    std::vector<std::vector<double>> rows;

    bool error_free() const { return kind == Kind::ErrorFree; }
    SyndromeChannel build(std::uint32_t alphabet) const;
};

struct ExperimentConfig {
    std::string code_file;
    std::optional<CodeSpec> code;  // resolved from code_file
    std::uint32_t block_length = 0;
    std::vector<double> prior_pmf;  // empty = uniform
    std::vector<double> epsilons;   // qsc sweep; empty when channel_matrix set
    std::optional<SymbolChannel> channel_matrix;
    SyndromeChannelSpec syndrome_channel;
    std::vector<Strategy> strategies;
    unsigned iterations = 5;  // turbo only
    std::uint32_t trials = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out = "results";
};

ExperimentConfig parse_config(const std::string& path);

struct TrialRecord {
    std::uint64_t trial = 0;
    double epsilon = -1.0;  // -1 for explicit-matrix channels
    Strategy strategy = Strategy::Map;
    std::uint64_t sys_errors = 0, par_errors = 0;
    std::uint64_t sys_symbols = 0, par_symbols = 0;
    bool erasure = false;  // decoding inconsistency; all symbols counted as errors
};

struct Rate {
    std::uint64_t num = 0, den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Rate compression_rate(const CodeSpec& code);

struct RunResult {
    std::vector<TrialRecord> records;
    double elapsed_seconds = 0;  // reported on stderr only, never in output files
};

RunResult run_trials(const ExperimentConfig& cfg);

void emit_csv(const std::vector<TrialRecord>& records, const std::string& path);
void emit_summary_json(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records,
                       const std::string& path);

// ---- Equivalence audit ------------------------------------------------------

enum class AuditMode { ErrorFree, NoisySyndrome, Turbo };

struct AuditConfig {
    AuditMode mode = AuditMode::ErrorFree;
    std::uint64_t instances = 500;
    std::vector<std::uint32_t> qs{2, 3};
    std::uint32_t max_memory = 3;
    std::uint32_t min_block = 8, max_block = 128;
    unsigned iterations = 5;       // turbo
    double tol_posterior = 1e-8;   // relative
    double tol_extrinsic = 1e-7;   // relative, turbo half-iterations
    std::uint64_t seed = 0;
};

AuditConfig parse_audit_config(const std::string& path);

struct AuditReport {
    bool ok = true;
    std::uint64_t instances_run = 0;
    double max_posterior_diff = 0;
    double max_extrinsic_diff = 0;
    std::string failure;             // empty when ok
    std::uint64_t replay_seed = 0;   // trial stream seed of the offending instance
};

AuditReport equivalence_audit(const AuditConfig& cfg);

// Largest entrywise relative discrepancy between two normalized beliefs.
double max_rel_diff(const Message& a, const Message& b);

// ---- Randomized instances (shared by audit, tests, CLI verify) -------------

ParityRealization random_realization(Xoshiro256ss& rng, std::uint32_t q,
                                     std::uint32_t max_memory, std::uint32_t n_minus_k,
                                     bool allow_recursive = true);
SourcePrior random_prior(std::uint32_t q, Xoshiro256ss& rng);
std::vector<std::uint32_t> random_permutation(std::uint32_t n, Xoshiro256ss& rng);

struct SampledBlock {
    std::vector<TupleIndex> sys, par;  // true source
    SideInfo side;                     // correlated observation
};
SampledBlock sample_block(const ParityRealization& r, std::size_t steps,
                          const SourcePrior& prior, const SymbolChannel& ch,
                          Xoshiro256ss& rng);

}  // namespace swc
