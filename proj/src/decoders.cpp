#include "swc/decoders.hpp"

#include <stdexcept>

namespace swc {

Strategy strategy_from_name(const std::string& name) {
    if (name == "complementary") return Strategy::Complementary;
    if (name == "isf-map") return Strategy::IsfMap;
    if (name == "isf-reencode") return Strategy::IsfReencode;
    if (name == "parity") return Strategy::ParityPerspective;
    if (name == "syndrome-trellis") return Strategy::SyndromeTrellis;
    if (name == "map") return Strategy::Map;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Complementary: return "complementary";
        case Strategy::IsfMap: return "isf-map";
        case Strategy::IsfReencode: return "isf-reencode";
        case Strategy::ParityPerspective: return "parity";
        case Strategy::SyndromeTrellis: return "syndrome-trellis";
        case Strategy::Map: return "map";
    }
    throw std::logic_error("bad strategy");
}

namespace {

// Per-time systematic/parity input messages mu'(xs), mu'(xp); the turbo
// extrinsic multiplies the systematic one.
struct Evidence {
    std::vector<Message> mu_s;
    std::vector<Message> mu_p;
};

Evidence make_evidence(const ParityRealization& r, const SideInfo& y,
                       const SourcePrior& prior, const SymbolChannel& ch,
                       const std::vector<Message>* ext) {
    if (y.sys.size() != y.par.size())
        throw std::invalid_argument("side information: systematic/parity length mismatch");
    if (ext && ext->size() != y.sys.size())
        throw std::invalid_argument("extrinsic length mismatch");
    Evidence ev;
    ev.mu_s.reserve(y.sys.size());
    ev.mu_p.reserve(y.par.size());
    for (std::size_t i = 0; i < y.sys.size(); ++i) {
        Message ms = tuple_posterior(prior, ch, y.sys[i], r.k());
        if (ext) {
            for (std::size_t x = 0; x < ms.size(); ++x) ms[x] *= (*ext)[i][x];
            ms.normalize();
        }
        ev.mu_s.push_back(std::move(ms));
        ev.mu_p.push_back(tuple_posterior(prior, ch, y.par[i], r.n_minus_k()));
    }
    return ev;
}

Section principal_section(const ParityRealization& r) {
    Section sec;
    sec.num_states = r.num_states();
    sec.na = r.num_inputs();
    sec.nb = r.num_outputs();
    auto t = build_trellis(r);
    sec.branches.reserve(t.transitions.size());
    for (const auto& tr : t.transitions)
        sec.branches.push_back({tr.from, tr.to, tr.input, tr.output});
    return sec;
}

// One section per possible syndrome value, parity labels shifted by it.
std::vector<Section> complementary_sections(const ParityRealization& r) {
    const Section base = principal_section(r);
    std::vector<Section> shifted(static_cast<std::size_t>(r.num_outputs()), base);
    for (TupleIndex v = 1; v < r.num_outputs(); ++v)
        for (Branch& br : shifted[static_cast<std::size_t>(v)].branches)
            br.b = tuple_add(br.b, v, r.field(), r.n_minus_k());
    return shifted;
}

Section expanded_section(const ParityRealization& r) {
    Section sec;
    sec.num_states = r.num_states();
    sec.na = ipow(r.field().q(), r.n());
    sec.nb = r.num_outputs();
    auto e = build_expanded(r, build_trellis(r));
    sec.branches.reserve(e.transitions.size());
    for (const auto& tr : e.transitions)
        sec.branches.push_back({tr.from, tr.to, tr.source, tr.syndrome});
    return sec;
}

// mu'''(x) = mu'(xs) mu'(xp) over full n-tuples.
std::vector<Message> joint_source_messages(const ParityRealization& r, const Evidence& ev) {
    const std::uint64_t nx = ipow(r.field().q(), r.n());
    const std::uint32_t q = r.field().q();
    std::vector<Message> mu(ev.mu_s.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        Message m(static_cast<std::size_t>(nx));
        for (TupleIndex x = 0; x < nx; ++x)
            m[x] = ev.mu_s[i][split_systematic(x, q, r.k())] *
                   ev.mu_p[i][split_parity(x, q, r.k())];
        m.normalize();
        mu[i] = std::move(m);
    }
    return mu;
}

// Marginalizes posteriors and the systematic extrinsic out of an n-tuple
// BCJR result (parity-perspective and syndrome-trellis strategies).
DecodeResult marginalize_joint(const ParityRealization& r, const Evidence& ev,
                               const std::vector<Message>& post_x,
                               const std::vector<Message>& lambda_x) {
    const std::uint32_t q = r.field().q();
    const std::uint64_t nx = ipow(q, r.n());
    DecodeResult res;
    const std::size_t N = post_x.size();
    res.post_s.resize(N);
    res.post_p.resize(N);
    res.ext_s.resize(N);
    res.hard_s.resize(N);
    res.hard_p.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        Message ps(static_cast<std::size_t>(r.num_inputs()));
        Message pp(static_cast<std::size_t>(r.num_outputs()));
        Message ls(static_cast<std::size_t>(r.num_inputs()));
        for (TupleIndex x = 0; x < nx; ++x) {
            const TupleIndex xs = split_systematic(x, q, r.k());
            const TupleIndex xp = split_parity(x, q, r.k());
            ps[xs] += post_x[i][x];
            pp[xp] += post_x[i][x];
            ls[xs] += ev.mu_p[i][xp] * lambda_x[i][x];
        }
        ps.normalize();
        pp.normalize();
        ls.normalize();
        res.hard_s[i] = hard_decision(ps);
        res.hard_p[i] = hard_decision(pp);
        res.post_s[i] = std::move(ps);
        res.post_p[i] = std::move(pp);
        res.ext_s[i] = std::move(ls);
    }
    return res;
}

DecodeResult from_bcjr(BcjrResult&& b) {
    DecodeResult res;
    res.hard_s = std::move(b.hard_a);
    res.hard_p = std::move(b.hard_b);
    res.post_s = std::move(b.post_a);
    res.post_p = std::move(b.post_b);
    res.ext_s = std::move(b.lambda_a);
    return res;
}

}  // namespace

DecodeResult decode_complementary(const ParityRealization& r,
                                  std::span<const TupleIndex> syndrome, const SideInfo& y,
                                  const SourcePrior& prior, const SymbolChannel& ch,
                                  const std::vector<Message>* ext) {
    if (syndrome.size() != y.sys.size())
        throw std::invalid_argument("decode: syndrome/side-information length mismatch");
    Evidence ev = make_evidence(r, y, prior, ch, ext);
    auto sections = complementary_sections(r);
    SectionProvider provider = [&](std::size_t i) -> const Section& {
        return sections[static_cast<std::size_t>(syndrome[i])];
    };
    return from_bcjr(bcjr_decode(provider, {ev.mu_s, ev.mu_p}));
}

DecodeResult decode_isf(const ParityRealization& r, std::span<const TupleIndex> syndrome,
                        const SideInfo& y, const SourcePrior& prior, const SymbolChannel& ch,
                        bool reencode_parity, const std::vector<Message>* ext) {
    if (!ch.is_additive() || ch.M != r.field().q())
        throw UnsupportedConfiguration(
            "isf: requires an additive correlation channel over the source alphabet");
    if (syndrome.size() != y.sys.size())
        throw std::invalid_argument("decode: syndrome/side-information length mismatch");
    Evidence ev = make_evidence(r, y, prior, ch, ext);

    // Subtracting the coset representative c_i = [0 | s_i] from the side
    // information translates the parity input message: mu''(xp) = mu'(xp + s_i).
    Evidence translated = ev;
    for (std::size_t i = 0; i < ev.mu_p.size(); ++i) {
        Message m(ev.mu_p[i].size());
        for (TupleIndex xp = 0; xp < m.size(); ++xp)
            m[xp] = ev.mu_p[i][tuple_add(xp, syndrome[i], r.field(), r.n_minus_k())];
        translated.mu_p[i] = std::move(m);
    }
    const Section sec = principal_section(r);
    SectionProvider provider = [&](std::size_t) -> const Section& { return sec; };
    BcjrResult b = bcjr_decode(provider, {translated.mu_s, translated.mu_p});

    // Translate back: the estimate of x is the estimate of c0 plus c.
    DecodeResult res;
    const std::size_t N = y.sys.size();
    res.hard_s = std::move(b.hard_a);
    res.post_s = std::move(b.post_a);
    res.ext_s = std::move(b.lambda_a);
    res.post_p.resize(N);
    res.hard_p.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        Message pp(b.post_b[i].size());
        for (TupleIndex xp = 0; xp < pp.size(); ++xp)
            pp[xp] = b.post_b[i][tuple_sub(xp, syndrome[i], r.field(), r.n_minus_k())];
        res.hard_p[i] = hard_decision(pp);
        res.post_p[i] = std::move(pp);
    }
    if (reencode_parity) {
        auto parity = systematic_encode(r, res.hard_s);
        for (std::size_t i = 0; i < N; ++i)
            res.hard_p[i] = tuple_add(parity[i], syndrome[i], r.field(), r.n_minus_k());
    }
    return res;
}

DecodeResult decode_parity_perspective(const ParityRealization& r,
                                       std::span<const TupleIndex> received,
                                       const SideInfo& y, const SourcePrior& prior,
                                       const SymbolChannel& ch, const SyndromeChannel& sc,
                                       const std::vector<Message>* ext) {
    if (received.size() != y.sys.size())
        throw std::invalid_argument("decode: syndrome/side-information length mismatch");
    Evidence ev = make_evidence(r, y, prior, ch, ext);
    const Section sec = expanded_section(r);
    SectionProvider provider = [&](std::size_t) -> const Section& { return sec; };
    BcjrInputs in;
    in.mu_a = joint_source_messages(r, ev);
    in.mu_b.reserve(received.size());
    for (TupleIndex rcv : received) in.mu_b.push_back(syndrome_message(sc, rcv));
    BcjrResult b = bcjr_decode(provider, in);
    return marginalize_joint(r, ev, b.post_a, b.lambda_a);
}

DecodeResult decode_syndrome_trellis(const ParityRealization& r,
                                     std::span<const TupleIndex> syndrome, const SideInfo& y,
                                     const SourcePrior& prior, const SymbolChannel& ch,
                                     const std::vector<Message>* ext) {
    if (syndrome.size() != y.sys.size())
        throw std::invalid_argument("decode: syndrome/side-information length mismatch");
    Evidence ev = make_evidence(r, y, prior, ch, ext);

    // One trellis per syndrome value, keeping only the transitions that
    // release that value; the output label collapses to a singleton.
    const Section full = expanded_section(r);
    std::vector<Section> by_syndrome(static_cast<std::size_t>(r.num_outputs()));
    for (auto& s : by_syndrome) {
        s.num_states = full.num_states;
        s.na = full.na;
        s.nb = 1;
    }
    for (const Branch& br : full.branches)
        by_syndrome[static_cast<std::size_t>(br.b)].branches.push_back(
            {br.from, br.to, br.a, 0});

    SectionProvider provider = [&](std::size_t i) -> const Section& {
        return by_syndrome[static_cast<std::size_t>(syndrome[i])];
    };
    BcjrInputs in;
    in.mu_a = joint_source_messages(r, ev);
    in.mu_b.assign(syndrome.size(), Message::delta(1, 0));
    BcjrResult b = bcjr_decode(provider, in);
    return marginalize_joint(r, ev, b.post_a, b.lambda_a);
}

DecodeResult decode_map(const ParityRealization& r, std::span<const TupleIndex> received,
                        const SideInfo& y, const SourcePrior& prior, const SymbolChannel& ch,
                        const SyndromeChannel& sc, const std::vector<Message>* ext) {
    if (received.size() != y.sys.size())
        throw std::invalid_argument("decode: syndrome/side-information length mismatch");
    Evidence ev = make_evidence(r, y, prior, ch, ext);
    const std::size_t N = y.sys.size();
    const std::uint64_t np = r.num_outputs();

    // Fold the syndrome-former constraint and the transmission channel into
    // the parity input: mu_hat(p) = sum_xp p(xp|yp) p(r|xp - p).
    std::vector<Message> mu_r(N);
    BcjrInputs in;
    in.mu_a = ev.mu_s;
    in.mu_b.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        mu_r[i] = syndrome_message(sc, received[i]);
        Message mb(static_cast<std::size_t>(np));
        for (TupleIndex p = 0; p < np; ++p) {
            double acc = 0;
            for (TupleIndex xp = 0; xp < np; ++xp)
                acc += ev.mu_p[i][xp] * mu_r[i][tuple_sub(xp, p, r.field(), r.n_minus_k())];
            mb[p] = acc;
        }
        mb.normalize();
        in.mu_b[i] = std::move(mb);
    }
    const Section sec = principal_section(r);
    SectionProvider provider = [&](std::size_t) -> const Section& { return sec; };
    BcjrResult b = bcjr_decode(provider, in);

    DecodeResult res;
    res.hard_s = std::move(b.hard_a);
    res.post_s = std::move(b.post_a);
    res.ext_s = std::move(b.lambda_a);
    res.post_p.resize(N);
    res.hard_p.resize(N);
    // Output processing: post(xp) ~ p(xp|yp) sum_p lambda_hat(p) p(r|xp - p).
    for (std::size_t i = 0; i < N; ++i) {
        Message pp(static_cast<std::size_t>(np));
        for (TupleIndex xp = 0; xp < np; ++xp) {
            double acc = 0;
            for (TupleIndex p = 0; p < np; ++p)
                acc += b.lambda_b[i][p] * mu_r[i][tuple_sub(xp, p, r.field(), r.n_minus_k())];
            pp[xp] = ev.mu_p[i][xp] * acc;
        }
        pp.normalize();
        res.hard_p[i] = hard_decision(pp);
        res.post_p[i] = std::move(pp);
    }
    return res;
}

DecodeResult decode(Strategy strategy, const ParityRealization& r,
                    const SyndromeEvidence& evidence, const SideInfo& y,
                    const SourcePrior& prior, const SymbolChannel& ch,
                    const std::vector<Message>* ext) {
    const bool needs_exact = strategy == Strategy::Complementary ||
                             strategy == Strategy::IsfMap ||
                             strategy == Strategy::IsfReencode ||
                             strategy == Strategy::SyndromeTrellis;
    if (needs_exact && !evidence.exact())
        throw UnsupportedConfiguration(strategy_name(strategy) +
                                       ": requires an error-free syndrome");
    switch (strategy) {
        case Strategy::Complementary:
            return decode_complementary(r, evidence.value, y, prior, ch, ext);
        case Strategy::IsfMap:
            return decode_isf(r, evidence.value, y, prior, ch, false, ext);
        case Strategy::IsfReencode:
            return decode_isf(r, evidence.value, y, prior, ch, true, ext);
        case Strategy::SyndromeTrellis:
            return decode_syndrome_trellis(r, evidence.value, y, prior, ch, ext);
        case Strategy::ParityPerspective:
        case Strategy::Map: {
            SyndromeChannel ident;
            const SyndromeChannel* sc = evidence.channel;
            if (!sc) {
                ident = SyndromeChannel::identity(static_cast<std::uint32_t>(r.num_outputs()));
                sc = &ident;
            }
            if (strategy == Strategy::ParityPerspective)
                return decode_parity_perspective(r, evidence.value, y, prior, ch, *sc, ext);
            return decode_map(r, evidence.value, y, prior, ch, *sc, ext);
        }
    }
    throw std::logic_error("bad strategy");
}

TurboDecodeResult turbo_decode(const TurboCode& tc, const SyndromeEvidence& ev0,
                               const SyndromeEvidence& ev1, const TurboSideInfo& y,
                               const SourcePrior& prior, const SymbolChannel& ch,
                               Strategy strategy, unsigned iterations, TurboTrace* trace) {
    const std::uint32_t N = tc.block_length();
    if (iterations < 1) throw std::invalid_argument("turbo_decode: iterations < 1");
    if (y.sys.size() != N || y.par0.size() != N || y.par1.size() != N)
        throw std::invalid_argument("turbo_decode: side information length mismatch");
    if (ev0.value.size() != N || ev1.value.size() != N)
        throw std::invalid_argument("turbo_decode: syndrome length mismatch");

    const auto& pi = tc.interleaver();
    const std::vector<TupleIndex> sys_perm = interleave(pi, y.sys);
    const auto num_inputs = static_cast<std::size_t>(tc.constituent(0).num_inputs());

    // Extrinsics lambda(xs) per constituent, kept in natural order.
    std::vector<std::vector<Message>> ext(2);
    ext[0].assign(N, Message::uniform(num_inputs));
    ext[1].assign(N, Message::uniform(num_inputs));

    DecodeResult last[2];
    for (unsigned half = 0; half < 2 * iterations; ++half) {
        const int j = static_cast<int>(half % 2);
        SideInfo side;
        side.sys = (j == 0) ? y.sys : sys_perm;
        side.par = (j == 0) ? y.par0 : y.par1;
        std::vector<Message> incoming = (j == 0) ? ext[1] : interleave(pi, ext[0]);
        last[j] = decode(strategy, tc.constituent(j), j == 0 ? ev0 : ev1, side, prior, ch,
                         &incoming);
        ext[j] = (j == 0) ? last[j].ext_s : deinterleave(pi, last[j].ext_s);
        if (trace) trace->extrinsics.push_back(ext[j]);
    }

    TurboDecodeResult res;
    res.post_s.resize(N);
    res.hard_s.resize(N);
    for (std::uint32_t i = 0; i < N; ++i) {
        Message post = tuple_posterior(prior, ch, y.sys[i], tc.k());
        for (std::size_t x = 0; x < post.size(); ++x) post[x] *= ext[0][i][x] * ext[1][i][x];
        post.normalize();
        res.hard_s[i] = hard_decision(post);
        res.post_s[i] = std::move(post);
    }
    res.hard_p0 = std::move(last[0].hard_p);
    res.post_p0 = std::move(last[0].post_p);
    res.hard_p1 = std::move(last[1].hard_p);
    res.post_p1 = std::move(last[1].post_p);
    return res;
}

}  // namespace swc
