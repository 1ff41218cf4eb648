#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swc/bcjr.hpp"
#include "swc/channel.hpp"
#include "swc/code.hpp"

namespace swc {

enum class Strategy {
    Complementary,     // per-time label-shifted trellis sections
    IsfMap,            // inverse syndrome former, MAP parity estimate
    IsfReencode,       // inverse syndrome former, re-encoded parity estimate
    ParityPerspective, // expanded trellis, syndrome as received parity
    SyndromeTrellis,   // per-time syndrome-selected trellis slices
    Map                // principal trellis with folded syndrome evidence
};

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

/// Observed side information, packed per time step (base-M tuples).
struct SideInfo {
    std::vector<TupleIndex> sys;  // k-tuples of observations
    std::vector<TupleIndex> par;  // (n-k)-tuples of observations
};

/// Either the exact syndrome (channel == nullptr) or the received sequence
/// together with the transmission channel it went through.
struct SyndromeEvidence {
    std::vector<TupleIndex> value;
    const SyndromeChannel* channel = nullptr;

    bool exact() const { return channel == nullptr || channel->error_free; }
};

struct DecodeResult {
    std::vector<TupleIndex> hard_s, hard_p;
    std::vector<Message> post_s, post_p;
    std::vector<Message> ext_s;  // lambda(xs), the extrinsic exchanged in turbo decoding
};

struct UnsupportedConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The five strategies. `ext` is an optional extra per-time factor on the
// systematic input message (the turbo extrinsic); nullptr means none.
DecodeResult decode_complementary(const ParityRealization& r,
                                  std::span<const TupleIndex> syndrome, const SideInfo& y,
                                  const SourcePrior& prior, const SymbolChannel& ch,
                                  const std::vector<Message>* ext = nullptr);

DecodeResult decode_isf(const ParityRealization& r, std::span<const TupleIndex> syndrome,
                        const SideInfo& y, const SourcePrior& prior, const SymbolChannel& ch,
                        bool reencode_parity, const std::vector<Message>* ext = nullptr);

DecodeResult decode_parity_perspective(const ParityRealization& r,
                                       std::span<const TupleIndex> received,
                                       const SideInfo& y, const SourcePrior& prior,
                                       const SymbolChannel& ch, const SyndromeChannel& sc,
                                       const std::vector<Message>* ext = nullptr);

DecodeResult decode_syndrome_trellis(const ParityRealization& r,
                                     std::span<const TupleIndex> syndrome, const SideInfo& y,
                                     const SourcePrior& prior, const SymbolChannel& ch,
                                     const std::vector<Message>* ext = nullptr);

DecodeResult decode_map(const ParityRealization& r, std::span<const TupleIndex> received,
                        const SideInfo& y, const SourcePrior& prior, const SymbolChannel& ch,
                        const SyndromeChannel& sc, const std::vector<Message>* ext = nullptr);

// Dispatcher; strategies that need an exact syndrome reject noisy evidence.
DecodeResult decode(Strategy strategy, const ParityRealization& r,
                    const SyndromeEvidence& evidence, const SideInfo& y,
                    const SourcePrior& prior, const SymbolChannel& ch,
                    const std::vector<Message>* ext = nullptr);

struct TurboSideInfo {
    std::vector<TupleIndex> sys;   // N k-tuples
    std::vector<TupleIndex> par0;  // N (n0-k)-tuples
    std::vector<TupleIndex> par1;  // N (n1-k)-tuples, constituent-1 time order
};

struct TurboDecodeResult {
    std::vector<TupleIndex> hard_s, hard_p0, hard_p1;
    std::vector<Message> post_s, post_p0, post_p1;
};

/// Per-half-iteration extrinsic messages in natural (deinterleaved) order,
/// recorded for cross-strategy audits.
struct TurboTrace {
    std::vector<std::vector<Message>> extrinsics;
};

TurboDecodeResult turbo_decode(const TurboCode& tc, const SyndromeEvidence& ev0,
                               const SyndromeEvidence& ev1, const TurboSideInfo& y,
                               const SourcePrior& prior, const SymbolChannel& ch,
                               Strategy strategy, unsigned iterations,
                               TurboTrace* trace = nullptr);

}  // namespace swc
