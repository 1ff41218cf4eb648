#pragma once

#include <cstdint>
#include <vector>

#include "swc/field.hpp"
#include "swc/message.hpp"
#include "swc/rng.hpp"

namespace swc {

/// Per-symbol discrete memoryless channel, W[x][y] = p(y | x).
struct SymbolChannel {
    std::uint32_t q_in = 0;
    std::uint32_t M = 0;
    std::vector<double> w;  // row-major, q_in x M

    double p(Symbol x, Symbol y) const { return w[static_cast<std::size_t>(x) * M + y]; }

    // y = x + e for some noise pmf; required by the inverse-syndrome-former
    // translation step.
    bool is_additive(double tol = 1e-12) const;

    static SymbolChannel from_matrix(std::vector<std::vector<double>> rows);
};

/// q-ary symmetric channel with total error probability eps.
SymbolChannel qsc(std::uint32_t q, double eps);

/// i.i.d. per-symbol source prior over GF(q).
struct SourcePrior {
    std::vector<double> pmf;

    static SourcePrior uniform(std::uint32_t q);
    static SourcePrior from_pmf(std::vector<double> pmf);
};

// mu(x) proportional to prior(x) * W[x][y], normalized.
Message posterior_message(const SourcePrior& prior, const SymbolChannel& ch, Symbol y);

// Product posterior over GF(q)^m tuples from an m-tuple of observations
// (y given as a packed base-M index).
Message tuple_posterior(const SourcePrior& prior, const SymbolChannel& ch, TupleIndex y,
                        std::uint32_t m);

struct SymbolPair {
    Symbol x, y;
};
SymbolPair sample_pair(const SourcePrior& prior, const SymbolChannel& ch, Xoshiro256ss& rng);

/// Memoryless channel on (n-k)-tuple syndrome symbols, Wr[s][r] = p(r | s).
struct SyndromeChannel {
    std::uint32_t S = 0;  // alphabet size q^(n-k)
    std::uint32_t R = 0;
    std::vector<double> w;
    bool error_free = false;

    double p(TupleIndex s, TupleIndex r) const {
        return w[static_cast<std::size_t>(s) * R + r];
    }

    static SyndromeChannel identity(std::uint32_t S);
    static SyndromeChannel symmetric(std::uint32_t S, double eps);
    static SyndromeChannel from_matrix(std::vector<std::vector<double>> rows);
};

// mu(s') proportional to Wr[s'][r]; a delta at r for the error-free channel.
Message syndrome_message(const SyndromeChannel& sc, TupleIndex r);

TupleIndex sample_syndrome_output(const SyndromeChannel& sc, TupleIndex s, Xoshiro256ss& rng);

}  // namespace swc
