#include "swc/code.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace swc {

ParityRealization::ParityRealization(Field f, std::uint32_t k, std::uint32_t nmk,
                                     std::uint32_t ns, std::vector<State> next,
                                     std::vector<TupleIndex> out)
    : field_(f),
      k_(k),
      n_minus_k_(nmk),
      num_states_(ns),
      num_inputs_(ipow(f.q(), k)),
      num_outputs_(ipow(f.q(), nmk)),
      next_(std::move(next)),
      out_(std::move(out)) {}

ParityRealization ParityRealization::from_polynomials(
    Field field, const std::vector<std::vector<Symbol>>& taps,
    const std::optional<std::vector<Symbol>>& feedback) {
    if (taps.empty()) throw std::invalid_argument("realization: no output polynomials");
    std::size_t memory = 0;
    for (const auto& t : taps) {
        if (t.empty()) throw std::invalid_argument("realization: empty tap list");
        for (Symbol c : t)
            if (c >= field.q()) throw std::invalid_argument("realization: tap >= q");
        memory = std::max(memory, t.size() - 1);
    }
    Symbol fb0_inv = 1;
    if (feedback) {
        if (feedback->empty() || (*feedback)[0] == 0)
            throw std::invalid_argument("realization: feedback needs nonzero constant term");
        for (Symbol c : *feedback)
            if (c >= field.q()) throw std::invalid_argument("realization: feedback tap >= q");
        memory = std::max(memory, feedback->size() - 1);
        fb0_inv = field.inv((*feedback)[0]);
    }
    if (memory > 10) throw std::invalid_argument("realization: memory > 10 unsupported");

    const std::uint32_t q = field.q();
    const auto num_states = static_cast<std::uint32_t>(ipow(q, static_cast<std::uint32_t>(memory)));
    const std::uint32_t nmk = static_cast<std::uint32_t>(taps.size());
    std::vector<State> next(static_cast<std::size_t>(num_states) * q);
    std::vector<TupleIndex> out(next.size());

    // State packs the register (w_{i-1}, ..., w_{i-memory}), w_{i-1} in digit 0.
    // Feedforward is the feedback = {1} special case (w_i = u_i).
    for (State s = 0; s < num_states; ++s) {
        std::vector<Symbol> reg(memory);
        {
            State t = s;
            for (std::size_t d = 0; d < memory; ++d) {
                reg[d] = t % q;
                t /= q;
            }
        }
        for (Symbol u = 0; u < q; ++u) {
            Symbol w = u;
            if (feedback) {
                for (std::size_t d = 1; d < feedback->size(); ++d)
                    w = field.sub(w, field.mul((*feedback)[d], reg[d - 1]));
                w = field.mul(w, fb0_inv);
            }
            std::vector<Symbol> pdig(nmk);
            for (std::uint32_t j = 0; j < nmk; ++j) {
                Symbol p = field.mul(taps[j][0], w);
                for (std::size_t d = 1; d < taps[j].size(); ++d)
                    p = field.add(p, field.mul(taps[j][d], reg[d - 1]));
                pdig[j] = p;
            }
            State ns = 0;
            if (memory > 0) {
                // shift w in
                std::uint64_t acc = w;
                std::uint64_t weight = q;
                for (std::size_t d = 0; d + 1 < memory; ++d) {
                    acc += weight * reg[d];
                    weight *= q;
                }
                ns = static_cast<State>(acc);
            }
            next[static_cast<std::size_t>(s) * q + u] = ns;
            out[static_cast<std::size_t>(s) * q + u] = tuple_pack(pdig, q);
        }
    }
    return ParityRealization(field, 1, nmk, num_states, std::move(next), std::move(out));
}

ParityRealization ParityRealization::from_tables(Field field, std::uint32_t k,
                                                 std::uint32_t n_minus_k,
                                                 std::vector<State> next_state,
                                                 std::vector<TupleIndex> output) {
    const std::uint64_t ni = ipow(field.q(), k);
    if (next_state.size() != output.size() || next_state.empty() ||
        next_state.size() % ni != 0)
        throw std::invalid_argument("realization: table size mismatch");
    const auto raw_states = static_cast<std::uint32_t>(next_state.size() / ni);
    const std::uint64_t no = ipow(field.q(), n_minus_k);
    for (std::size_t i = 0; i < next_state.size(); ++i) {
        if (next_state[i] >= raw_states) throw std::invalid_argument("realization: next state out of range");
        if (output[i] >= no) throw std::invalid_argument("realization: output out of range");
    }

    // Canonical relabeling: BFS order from state 0.
    constexpr State kUnseen = std::numeric_limits<State>::max();
    std::vector<State> label(raw_states, kUnseen);
    std::vector<State> order;
    std::deque<State> queue{0};
    label[0] = 0;
    order.push_back(0);
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (std::uint64_t u = 0; u < ni; ++u) {
            State t = next_state[s * ni + u];
            if (label[t] == kUnseen) {
                label[t] = static_cast<State>(order.size());
                order.push_back(t);
                queue.push_back(t);
            }
        }
    }
    const auto ns = static_cast<std::uint32_t>(order.size());
    std::vector<State> next(static_cast<std::size_t>(ns) * ni);
    std::vector<TupleIndex> out(next.size());
    for (State s = 0; s < ns; ++s)
        for (std::uint64_t u = 0; u < ni; ++u) {
            next[s * ni + u] = label[next_state[order[s] * ni + u]];
            out[s * ni + u] = output[order[s] * ni + u];
        }
    return ParityRealization(field, k, n_minus_k, ns, std::move(next), std::move(out));
}

TrellisSection build_trellis(const ParityRealization& r) {
    TrellisSection t;
    t.num_states = r.num_states();
    t.num_inputs = r.num_inputs();
    t.num_outputs = r.num_outputs();
    t.transitions.reserve(static_cast<std::size_t>(t.num_states) * t.num_inputs);
    for (State s = 0; s < t.num_states; ++s)
        for (TupleIndex u = 0; u < t.num_inputs; ++u)
            t.transitions.push_back({s, u, r.output(s, u), r.next_state(s, u)});
    return t;
}

ExpandedSection build_expanded(const ParityRealization& r, const TrellisSection& t) {
    ExpandedSection e;
    e.num_states = t.num_states;
    e.num_sources = ipow(r.field().q(), r.n());
    e.num_syndromes = t.num_outputs;
    e.transitions.reserve(t.transitions.size() * t.num_outputs);
    for (const auto& tr : t.transitions)
        for (TupleIndex xp = 0; xp < t.num_outputs; ++xp) {
            TupleIndex s = tuple_sub(xp, tr.output, r.field(), r.n_minus_k());
            e.transitions.push_back(
                {tr.from, join_source(tr.input, xp, r.field().q(), r.k()), s, tr.to});
        }
    return e;
}

TupleIndex join_source(TupleIndex xs, TupleIndex xp, std::uint32_t q, std::uint32_t k) {
    return xs + xp * ipow(q, k);
}

TupleIndex split_systematic(TupleIndex x, std::uint32_t q, std::uint32_t k) {
    return x % ipow(q, k);
}

TupleIndex split_parity(TupleIndex x, std::uint32_t q, std::uint32_t k) {
    return x / ipow(q, k);
}

std::vector<TupleIndex> systematic_encode(const ParityRealization& r,
                                          std::span<const TupleIndex> sys) {
    std::vector<TupleIndex> parity(sys.size());
    State s = 0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        parity[i] = r.output(s, sys[i]);
        s = r.next_state(s, sys[i]);
    }
    return parity;
}

std::vector<TupleIndex> syndrome_form(const ParityRealization& r,
                                      std::span<const TupleIndex> sys,
                                      std::span<const TupleIndex> par) {
    if (sys.size() != par.size())
        throw std::invalid_argument("syndrome_form: length mismatch");
    auto parity = systematic_encode(r, sys);
    std::vector<TupleIndex> s(par.size());
    for (std::size_t i = 0; i < par.size(); ++i)
        s[i] = tuple_sub(par[i], parity[i], r.field(), r.n_minus_k());
    return s;
}

SourceSequence coset_representative(std::span<const TupleIndex> syndrome) {
    SourceSequence c;
    c.sys.assign(syndrome.size(), 0);
    c.par.assign(syndrome.begin(), syndrome.end());
    return c;
}

TurboCode::TurboCode(ParityRealization c0, ParityRealization c1, std::uint32_t N,
                     std::vector<std::uint32_t> interleaver)
    : c0_(std::move(c0)), c1_(std::move(c1)), N_(N), pi_(std::move(interleaver)) {
    if (!(c0_.field() == c1_.field()) || c0_.k() != c1_.k())
        throw std::invalid_argument("turbo: constituents must share q and k");
    if (pi_.size() != N_) throw std::invalid_argument("turbo: interleaver length != N");
    std::vector<bool> seen(N_, false);
    for (auto p : pi_) {
        if (p >= N_ || seen[p]) throw std::invalid_argument("turbo: interleaver not a permutation");
        seen[p] = true;
    }
}

TurboParity turbo_encode(const TurboCode& tc, std::span<const TupleIndex> sys) {
    if (sys.size() != tc.block_length())
        throw std::invalid_argument("turbo_encode: block length mismatch");
    std::vector<TupleIndex> natural(sys.begin(), sys.end());
    auto permuted = interleave(tc.interleaver(), natural);
    return {systematic_encode(tc.constituent(0), natural),
            systematic_encode(tc.constituent(1), permuted)};
}

TurboSyndrome turbo_syndrome_form(const TurboCode& tc, std::span<const TupleIndex> sys,
                                  std::span<const TupleIndex> x0,
                                  std::span<const TupleIndex> x1) {
    const std::uint32_t N = tc.block_length();
    if (sys.size() != N || x0.size() != N || x1.size() != N)
        throw std::invalid_argument("turbo_syndrome_form: layout length mismatch");
    auto parity = turbo_encode(tc, sys);
    TurboSyndrome s;
    s.s0.resize(N);
    s.s1.resize(N);
    for (std::uint32_t i = 0; i < N; ++i) {
        s.s0[i] = tuple_sub(x0[i], parity.p0[i], tc.field(), tc.constituent(0).n_minus_k());
        s.s1[i] = tuple_sub(x1[i], parity.p1[i], tc.field(), tc.constituent(1).n_minus_k());
    }
    return s;
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, const std::string& what) {
    throw std::runtime_error(origin + ": " + what);
}

// Reads one `conv ... end` block; the `conv` keyword has been consumed.
ParityRealization parse_conv_block(std::istream& in, const std::string& origin) {
    std::optional<std::uint32_t> q;
    std::optional<std::uint32_t> k;
    std::vector<std::vector<Symbol>> taps;
    std::optional<std::vector<Symbol>> feedback;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line.substr(0, line.find('#')));
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "end") {
            if (!q || !k) parse_fail(origin, "conv block missing q or k");
            if (*k != 1) parse_fail(origin, "polynomial form requires k=1 (use tables for k>1)");
            if (taps.empty()) parse_fail(origin, "conv block has no parity line");
            return ParityRealization::from_polynomials(Field(*q), taps, feedback);
        }
        if (key == "q") {
            std::uint32_t v;
            if (!(ls >> v)) parse_fail(origin, "bad q line");
            q = v;
        } else if (key == "k") {
            std::uint32_t v;
            if (!(ls >> v)) parse_fail(origin, "bad k line");
            k = v;
        } else if (key == "parity" || key == "feedback") {
            std::vector<Symbol> coeffs;
            Symbol c;
            while (ls >> c) coeffs.push_back(c);
            if (coeffs.empty()) parse_fail(origin, "empty coefficient list for " + key);
            if (key == "parity")
                taps.push_back(std::move(coeffs));
            else
                feedback = std::move(coeffs);
        } else {
            parse_fail(origin, "unknown keyword '" + key + "' in conv block");
        }
    }
    parse_fail(origin, "unterminated conv block");
}

}  // namespace

CodeSpec parse_code_text(std::istream& in, const std::string& origin) {
    std::string line;
    std::string head;
    while (std::getline(in, line)) {
        std::istringstream ls(line.substr(0, line.find('#')));
        if (ls >> head) break;
        head.clear();
    }
    CodeSpec spec;
    if (head == "conv") {
        spec.conv = parse_conv_block(in, origin);
        return spec;
    }
    if (head != "turbo") parse_fail(origin, "expected 'conv' or 'turbo' header");

    std::optional<std::uint32_t> N;
    std::optional<std::vector<std::uint32_t>> pi;
    std::vector<ParityRealization> constituents;
    while (std::getline(in, line)) {
        std::istringstream ls(line.substr(0, line.find('#')));
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "N") {
            std::uint32_t v;
            if (!(ls >> v)) parse_fail(origin, "bad N line");
            N = v;
        } else if (key == "pi") {
            std::vector<std::uint32_t> perm;
            std::uint32_t v;
            while (ls >> v) perm.push_back(v);
            pi = std::move(perm);
        } else if (key == "conv") {
            constituents.push_back(parse_conv_block(in, origin));
        } else {
            parse_fail(origin, "unknown keyword '" + key + "' in turbo block");
        }
    }
    if (!N || !pi || constituents.size() != 2)
        parse_fail(origin, "turbo file needs N, pi, and exactly two conv blocks");
    spec.turbo = TurboCode(std::move(constituents[0]), std::move(constituents[1]), *N,
                           std::move(*pi));
    return spec;
}

CodeSpec parse_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open code file");
    return parse_code_text(in, path);
}

}  // namespace swc
