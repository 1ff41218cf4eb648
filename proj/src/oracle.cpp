#include "swc/oracle.hpp"

namespace swc {
namespace oracle {

namespace {

// Unnormalized p(x_tuple) p(y_tuple | x_tuple), digit by digit.
double tuple_weight(TupleIndex x, TupleIndex y, std::uint32_t m, const SourcePrior& prior,
                    const SymbolChannel& ch) {
    double w = 1.0;
    for (std::uint32_t j = 0; j < m; ++j) {
        w *= prior.pmf[x % ch.q_in] * ch.p(static_cast<Symbol>(x % ch.q_in),
                                           static_cast<Symbol>(y % ch.M));
        x /= ch.q_in;
        y /= ch.M;
    }
    return w;
}

bool advance(std::vector<TupleIndex>& digits, std::uint64_t base) {
    for (auto& d : digits) {
        if (++d < base) return true;
        d = 0;
    }
    return false;
}

// base^count, saturating at limit+1 so oversized instances are refused
// instead of silently wrapping.
std::uint64_t sat_pow(std::uint64_t base, std::size_t count, std::uint64_t limit) {
    std::uint64_t r = 1;
    while (count--) {
        if (r > limit / base) return limit + 1;
        r *= base;
    }
    return r;
}

Marginals finish(std::vector<std::vector<double>>&& acc_s,
                 std::vector<std::vector<double>>&& acc_p) {
    Marginals m;
    const std::size_t N = acc_s.size();
    m.post_s.resize(N);
    m.post_p.resize(N);
    m.hard_s.resize(N);
    m.hard_p.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        Message ps;
        ps.v = std::move(acc_s[i]);
        ps.normalize();
        Message pp;
        pp.v = std::move(acc_p[i]);
        pp.normalize();
        m.hard_s[i] = hard_decision(ps);
        m.hard_p[i] = hard_decision(pp);
        m.post_s[i] = std::move(ps);
        m.post_p[i] = std::move(pp);
    }
    return m;
}

}  // namespace

Marginals exact_marginals(const ParityRealization& r, const SideInfo& y,
                          const SourcePrior& prior, const SymbolChannel& ch,
                          const SyndromeEvidence& evidence, std::uint64_t budget) {
    const std::size_t N = y.sys.size();
    const std::uint32_t q = r.field().q();
    const std::uint64_t ni = r.num_inputs();
    const std::uint64_t no = r.num_outputs();
    std::vector<std::vector<double>> acc_s(N, std::vector<double>(ni, 0.0));
    std::vector<std::vector<double>> acc_p(N, std::vector<double>(no, 0.0));

    if (evidence.exact()) {
        // Coset parameterization: xs free, xp = encode(xs) + s.
        if (sat_pow(ni, N, budget) > budget)
            throw BudgetExceeded("oracle: q^(kN) exceeds enumeration budget");
        std::vector<TupleIndex> sys(N, 0);
        do {
            auto parity = systematic_encode(r, sys);
            double w = 1.0;
            std::vector<TupleIndex> par(N);
            for (std::size_t i = 0; i < N; ++i) {
                par[i] = tuple_add(parity[i], evidence.value[i], r.field(), r.n_minus_k());
                w *= tuple_weight(sys[i], y.sys[i], r.k(), prior, ch) *
                     tuple_weight(par[i], y.par[i], r.n_minus_k(), prior, ch);
            }
            for (std::size_t i = 0; i < N; ++i) {
                acc_s[i][sys[i]] += w;
                acc_p[i][par[i]] += w;
            }
        } while (advance(sys, ni));
    } else {
        if (sat_pow(ipow(q, r.n()), N, budget) > budget)
            throw BudgetExceeded("oracle: q^(nN) exceeds enumeration budget");
        std::vector<TupleIndex> sys(N, 0);
        do {
            std::vector<TupleIndex> par(N, 0);
            do {
                auto syn = syndrome_form(r, sys, par);
                double w = 1.0;
                for (std::size_t i = 0; i < N; ++i) {
                    w *= tuple_weight(sys[i], y.sys[i], r.k(), prior, ch) *
                         tuple_weight(par[i], y.par[i], r.n_minus_k(), prior, ch) *
                         evidence.channel->p(syn[i], evidence.value[i]);
                }
                for (std::size_t i = 0; i < N; ++i) {
                    acc_s[i][sys[i]] += w;
                    acc_p[i][par[i]] += w;
                }
            } while (advance(par, no));
        } while (advance(sys, ni));
    }
    return finish(std::move(acc_s), std::move(acc_p));
}

std::vector<SourceSequence> enumerate_coset(const ParityRealization& r,
                                            std::span<const TupleIndex> syndrome,
                                            std::uint64_t budget) {
    const std::size_t N = syndrome.size();
    const std::uint64_t ni = r.num_inputs();
    const std::uint64_t total = sat_pow(ni, N, budget);
    if (total > budget) throw BudgetExceeded("oracle: q^(kN) exceeds enumeration budget");
    std::vector<SourceSequence> coset;
    coset.reserve(static_cast<std::size_t>(total));
    std::vector<TupleIndex> sys(N, 0);
    do {
        auto parity = systematic_encode(r, sys);
        SourceSequence seq;
        seq.sys = sys;
        seq.par.resize(N);
        for (std::size_t i = 0; i < N; ++i)
            seq.par[i] = tuple_add(parity[i], syndrome[i], r.field(), r.n_minus_k());
        coset.push_back(std::move(seq));
    } while (advance(sys, ni));
    return coset;
}

}  // namespace oracle
}  // namespace swc
