#include "swc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace swc {

namespace {

void check_stochastic(const std::vector<double>& w, std::uint32_t rows, std::uint32_t cols,
                      const char* what) {
    for (std::uint32_t i = 0; i < rows; ++i) {
        double sum = 0;
        for (std::uint32_t j = 0; j < cols; ++j) {
            double p = w[static_cast<std::size_t>(i) * cols + j];
            if (p < 0) throw std::invalid_argument(std::string(what) + ": negative entry");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument(std::string(what) + ": row does not sum to 1");
    }
}

}  // namespace

bool SymbolChannel::is_additive(double tol) const {
    if (M != q_in) return false;
    for (Symbol x = 0; x < q_in; ++x)
        for (Symbol y = 0; y < M; ++y) {
            Symbol e = static_cast<Symbol>((y + q_in - x % q_in) % q_in);
            if (std::abs(p(x, y) - p(0, e)) > tol) return false;
        }
    return true;
}

SymbolChannel SymbolChannel::from_matrix(std::vector<std::vector<double>> rows) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("channel: empty matrix");
    SymbolChannel ch;
    ch.q_in = static_cast<std::uint32_t>(rows.size());
    ch.M = static_cast<std::uint32_t>(rows[0].size());
    for (const auto& r : rows) {
        if (r.size() != ch.M) throw std::invalid_argument("channel: ragged matrix");
        ch.w.insert(ch.w.end(), r.begin(), r.end());
    }
    check_stochastic(ch.w, ch.q_in, ch.M, "channel");
    return ch;
}

SymbolChannel qsc(std::uint32_t q, double eps) {
    if (q < 2) throw std::invalid_argument("qsc: q < 2");
    const double max_eps = static_cast<double>(q - 1) / q;
    if (eps < 0 || eps > max_eps)
        throw std::invalid_argument("qsc: eps outside [0, (q-1)/q]");
    SymbolChannel ch;
    ch.q_in = ch.M = q;
    ch.w.assign(static_cast<std::size_t>(q) * q, eps / (q - 1));
    for (Symbol x = 0; x < q; ++x) ch.w[static_cast<std::size_t>(x) * q + x] = 1.0 - eps;
    return ch;
}

SourcePrior SourcePrior::uniform(std::uint32_t q) {
    SourcePrior p;
    p.pmf.assign(q, 1.0 / q);
    return p;
}

SourcePrior SourcePrior::from_pmf(std::vector<double> pmf) {
    double sum = 0;
    for (double x : pmf) {
        if (x < 0) throw std::invalid_argument("prior: negative mass");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("prior: does not sum to 1");
    return SourcePrior{std::move(pmf)};
}

Message posterior_message(const SourcePrior& prior, const SymbolChannel& ch, Symbol y) {
    if (y >= ch.M) throw std::out_of_range("posterior_message: observation out of range");
    Message m(ch.q_in);
    for (Symbol x = 0; x < ch.q_in; ++x) m[x] = prior.pmf[x] * ch.p(x, y);
    if (!(m.sum() > 0)) throw DecodingInconsistency("posterior_message: degenerate evidence");
    m.normalize();
    return m;
}

Message tuple_posterior(const SourcePrior& prior, const SymbolChannel& ch, TupleIndex y,
                        std::uint32_t m) {
    const std::uint64_t size = ipow(ch.q_in, m);
    Message out(static_cast<std::size_t>(size), 1.0);
    std::vector<Message> per_symbol;
    per_symbol.reserve(m);
    {
        TupleIndex t = y;
        for (std::uint32_t j = 0; j < m; ++j) {
            per_symbol.push_back(posterior_message(prior, ch, static_cast<Symbol>(t % ch.M)));
            t /= ch.M;
        }
    }
    for (TupleIndex x = 0; x < size; ++x) {
        TupleIndex t = x;
        for (std::uint32_t j = 0; j < m; ++j) {
            out[static_cast<std::size_t>(x)] *= per_symbol[j][static_cast<Symbol>(t % ch.q_in)];
            t /= ch.q_in;
        }
    }
    out.normalize();
    return out;
}

SymbolPair sample_pair(const SourcePrior& prior, const SymbolChannel& ch, Xoshiro256ss& rng) {
    auto draw = [&rng](const double* pmf, std::uint32_t n) {
        double u = rng.uniform();
        double acc = 0;
        for (std::uint32_t i = 0; i + 1 < n; ++i) {
            acc += pmf[i];
            if (u < acc) return static_cast<Symbol>(i);
        }
        return static_cast<Symbol>(n - 1);
    };
    Symbol x = draw(prior.pmf.data(), static_cast<std::uint32_t>(prior.pmf.size()));
    Symbol y = draw(&ch.w[static_cast<std::size_t>(x) * ch.M], ch.M);
    return {x, y};
}

SyndromeChannel SyndromeChannel::identity(std::uint32_t S) {
    SyndromeChannel sc;
    sc.S = sc.R = S;
    sc.w.assign(static_cast<std::size_t>(S) * S, 0.0);
    for (std::uint32_t s = 0; s < S; ++s) sc.w[static_cast<std::size_t>(s) * S + s] = 1.0;
    sc.error_free = true;
    return sc;
}

SyndromeChannel SyndromeChannel::symmetric(std::uint32_t S, double eps) {
    if (S < 2) throw std::invalid_argument("syndrome channel: alphabet < 2");
    const double max_eps = static_cast<double>(S - 1) / S;
    if (eps < 0 || eps > max_eps)
        throw std::invalid_argument("syndrome channel: eps outside [0, (S-1)/S]");
    SyndromeChannel sc;
    sc.S = sc.R = S;
    sc.w.assign(static_cast<std::size_t>(S) * S, eps / (S - 1));
    for (std::uint32_t s = 0; s < S; ++s) sc.w[static_cast<std::size_t>(s) * S + s] = 1.0 - eps;
    sc.error_free = (eps == 0.0);
    return sc;
}

SyndromeChannel SyndromeChannel::from_matrix(std::vector<std::vector<double>> rows) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("syndrome channel: empty matrix");
    SyndromeChannel sc;
    sc.S = static_cast<std::uint32_t>(rows.size());
    sc.R = static_cast<std::uint32_t>(rows[0].size());
    for (const auto& r : rows) {
        if (r.size() != sc.R) throw std::invalid_argument("syndrome channel: ragged matrix");
        sc.w.insert(sc.w.end(), r.begin(), r.end());
    }
    check_stochastic(sc.w, sc.S, sc.R, "syndrome channel");
    sc.error_free = true;
    if (sc.S != sc.R) {
        sc.error_free = false;
    } else {
        for (std::uint32_t s = 0; s < sc.S && sc.error_free; ++s)
            for (std::uint32_t r = 0; r < sc.R; ++r)
                if (std::abs(sc.p(s, r) - (s == r ? 1.0 : 0.0)) > 1e-15) {
                    sc.error_free = false;
                    break;
                }
    }
    return sc;
}

Message syndrome_message(const SyndromeChannel& sc, TupleIndex r) {
    if (r >= sc.R) throw std::out_of_range("syndrome_message: observation out of range");
    Message m(sc.S);
    for (std::uint32_t s = 0; s < sc.S; ++s) m[s] = sc.p(s, r);
    if (!(m.sum() > 0)) throw DecodingInconsistency("syndrome_message: degenerate evidence");
    m.normalize();
    return m;
}

TupleIndex sample_syndrome_output(const SyndromeChannel& sc, TupleIndex s, Xoshiro256ss& rng) {
    double u = rng.uniform();
    double acc = 0;
    for (std::uint32_t r = 0; r + 1 < sc.R; ++r) {
        acc += sc.p(s, r);
        if (u < acc) return r;
    }
    return sc.R - 1;
}

}  // namespace swc
