#pragma once

#include <vector>

#include "swc/channel.hpp"
#include "swc/code.hpp"
#include "swc/decoders.hpp"

namespace swc {
namespace oracle {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Marginals {
    std::vector<Message> post_s, post_p;
    std::vector<TupleIndex> hard_s, hard_p;
};

// Brute-force posterior p(x_i | y, syndrome evidence). Enumerates the coset
// (systematic part free) for exact syndromes, all q^(nN) sequences otherwise.
// Shares no trellis or message-passing logic with the decoders.
Marginals exact_marginals(const ParityRealization& r, const SideInfo& y,
                          const SourcePrior& prior, const SymbolChannel& ch,
                          const SyndromeEvidence& evidence,
                          std::uint64_t budget = std::uint64_t(1) << 20);

std::vector<SourceSequence> enumerate_coset(const ParityRealization& r,
                                            std::span<const TupleIndex> syndrome,
                                            std::uint64_t budget = std::uint64_t(1) << 20);

}  // namespace oracle
}  // namespace swc
