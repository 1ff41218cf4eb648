#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swc/field.hpp"

namespace swc {

using State = std::uint32_t;

/// State machine realizing a k-in (n-k)-out transfer matrix P(D) over GF(q).
/// Built either from tap polynomials (k = 1, optional feedback) or from
/// explicit next-state/output tables.
class ParityRealization {
public:
    const Field& field() const { return field_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t n_minus_k() const { return n_minus_k_; }
    std::uint32_t n() const { return k_ + n_minus_k_; }
    std::uint32_t num_states() const { return num_states_; }
    std::uint64_t num_inputs() const { return num_inputs_; }   // q^k
    std::uint64_t num_outputs() const { return num_outputs_; } // q^(n-k)

    State next_state(State s, TupleIndex u) const { return next_[s * num_inputs_ + u]; }
    TupleIndex output(State s, TupleIndex u) const { return out_[s * num_inputs_ + u]; }

    // taps[j] are the coefficients of output j, ascending powers of D.
    // feedback, when present, likewise (its constant term must be nonzero).
    static ParityRealization from_polynomials(
        Field field, const std::vector<std::vector<Symbol>>& taps,
        const std::optional<std::vector<Symbol>>& feedback = std::nullopt);

    // General k: explicit tables, indexed [state * q^k + input]. States are
    // relabeled so that those reachable from 0 come first as 0..num_states-1;
    // unreachable states are dropped.
    static ParityRealization from_tables(Field field, std::uint32_t k,
                                         std::uint32_t n_minus_k,
                                         std::vector<State> next_state,
                                         std::vector<TupleIndex> output);

private:
    ParityRealization(Field f, std::uint32_t k, std::uint32_t nmk, std::uint32_t ns,
                      std::vector<State> next, std::vector<TupleIndex> out);

    Field field_;
    std::uint32_t k_, n_minus_k_, num_states_;
    std::uint64_t num_inputs_, num_outputs_;
    std::vector<State> next_;
    std::vector<TupleIndex> out_;
};

struct TrellisTransition {
    State from;
    TupleIndex input;   // systematic k-tuple index
    TupleIndex output;  // parity (n-k)-tuple index
    State to;
};

/// Transition set realizing the section function chi: exactly q^k transitions
/// leave each state and (from, input) determines (output, to).
struct TrellisSection {
    std::uint32_t num_states;
    std::uint64_t num_inputs;   // q^k
    std::uint64_t num_outputs;  // q^(n-k)
    std::vector<TrellisTransition> transitions;
};

struct ExpandedTransition {
    State from;
    TupleIndex source;    // full n-tuple index, systematic part in low digits
    TupleIndex syndrome;  // (n-k)-tuple index
    State to;
};

/// Source-coding section xi: per trellis transition, q^(n-k) parallel
/// transitions taking the source n-tuple as input and the syndrome as output.
struct ExpandedSection {
    std::uint32_t num_states;
    std::uint64_t num_sources;    // q^n
    std::uint64_t num_syndromes;  // q^(n-k)
    std::vector<ExpandedTransition> transitions;
};

TrellisSection build_trellis(const ParityRealization& r);
ExpandedSection build_expanded(const ParityRealization& r, const TrellisSection& t);

// Packs [xs | xp] into one n-tuple index (xs occupies the low k digits).
TupleIndex join_source(TupleIndex xs, TupleIndex xp, std::uint32_t q, std::uint32_t k);
TupleIndex split_systematic(TupleIndex x, std::uint32_t q, std::uint32_t k);
TupleIndex split_parity(TupleIndex x, std::uint32_t q, std::uint32_t k);

// Parity branch of G(D) = [I_k | P(D)], encoder started in state 0, no tail.
std::vector<TupleIndex> systematic_encode(const ParityRealization& r,
                                          std::span<const TupleIndex> sys);

// s_i = xp_i - p_i with p = systematic_encode(r, xs).
std::vector<TupleIndex> syndrome_form(const ParityRealization& r,
                                      std::span<const TupleIndex> sys,
                                      std::span<const TupleIndex> par);

// Coset member c with c_i = [0 | s_i]; syndrome_form(r, c) == s.
struct SourceSequence {
    std::vector<TupleIndex> sys;
    std::vector<TupleIndex> par;
};
SourceSequence coset_representative(std::span<const TupleIndex> syndrome);

/// Parallel turbo code: two constituents sharing q and k, block length N in
/// k-tuples, interleaver applied to the systematic stream before constituent 1.
class TurboCode {
public:
    TurboCode(ParityRealization c0, ParityRealization c1, std::uint32_t N,
              std::vector<std::uint32_t> interleaver);

    const ParityRealization& constituent(int j) const { return j == 0 ? c0_ : c1_; }
    std::uint32_t block_length() const { return N_; }
    const std::vector<std::uint32_t>& interleaver() const { return pi_; }
    const Field& field() const { return c0_.field(); }
    std::uint32_t k() const { return c0_.k(); }

private:
    ParityRealization c0_, c1_;
    std::uint32_t N_;
    std::vector<std::uint32_t> pi_;
};

template <typename T>
std::vector<T> interleave(const std::vector<std::uint32_t>& pi, const std::vector<T>& seq) {
    std::vector<T> out(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) out[i] = seq[pi[i]];
    return out;
}

template <typename T>
std::vector<T> deinterleave(const std::vector<std::uint32_t>& pi, const std::vector<T>& seq) {
    std::vector<T> out(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) out[pi[i]] = seq[i];
    return out;
}

struct TurboParity {
    std::vector<TupleIndex> p0, p1;
};
TurboParity turbo_encode(const TurboCode& tc, std::span<const TupleIndex> sys);

struct TurboSyndrome {
    std::vector<TupleIndex> s0, s1;
};
// x laid out as [xs | x0 | x1]: N systematic k-tuples, then the two parity
// streams (x1 in constituent-1 time order).
TurboSyndrome turbo_syndrome_form(const TurboCode& tc, std::span<const TupleIndex> sys,
                                  std::span<const TupleIndex> x0,
                                  std::span<const TupleIndex> x1);

// Code-description text format; grammar documented in the README.
struct CodeSpec {
    std::optional<ParityRealization> conv;
    std::optional<TurboCode> turbo;
    bool is_turbo() const { return turbo.has_value(); }
};
CodeSpec parse_code_file(const std::string& path);
CodeSpec parse_code_text(std::istream& in, const std::string& origin);

}  // namespace swc
