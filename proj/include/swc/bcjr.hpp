#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swc/field.hpp"
#include "swc/message.hpp"

namespace swc {

// The engine is agnostic of what the two branch labels mean. For channel and
// complementary decoding a = systematic k-tuple, b = parity (n-k)-tuple; on
// the expanded trellis a = source n-tuple, b = syndrome; for the principal-
// trellis MAP decoder a = systematic, b = emitted parity.
struct Branch {
    State from;
    State to;
    TupleIndex a;
    TupleIndex b;
};

struct Section {
    std::uint32_t num_states = 0;
    std::uint64_t na = 0;
    std::uint64_t nb = 0;
    std::vector<Branch> branches;
};

/// Yields the section in effect at time i; covers static chi, the per-time
/// label-shifted complementary sections, and per-time syndrome-trellis slices.
using SectionProvider = std::function<const Section&(std::size_t i)>;

struct BcjrInputs {
    std::vector<Message> mu_a;  // per time, over the a-alphabet
    std::vector<Message> mu_b;  // per time, over the b-alphabet
};

struct BcjrResult {
    std::vector<Message> alpha;     // N+1 entries, alpha[0] = delta(state 0)
    std::vector<Message> beta;      // N+1 entries, beta[N] uniform
    std::vector<Message> lambda_a;  // per time
    std::vector<Message> lambda_b;
    std::vector<Message> post_a;    // normalized mu_a * lambda_a
    std::vector<Message> post_b;
    std::vector<TupleIndex> hard_a;
    std::vector<TupleIndex> hard_b;
};

std::vector<Message> forward_pass(const SectionProvider& provider, const BcjrInputs& in);
std::vector<Message> backward_pass(const SectionProvider& provider, const BcjrInputs& in);

// lambda_a[i](a) = sum over branches labeled a of alpha[i](from) beta[i+1](to) mu_b[i](b)
// and symmetrically for lambda_b.
void app_output(const SectionProvider& provider, const BcjrInputs& in,
                const std::vector<Message>& alpha, const std::vector<Message>& beta,
                std::vector<Message>& lambda_a, std::vector<Message>& lambda_b);

BcjrResult bcjr_decode(const SectionProvider& provider, const BcjrInputs& in);

}  // namespace swc
