#include "swc/bcjr.hpp"

namespace swc {

std::vector<Message> forward_pass(const SectionProvider& provider, const BcjrInputs& in) {
    const std::size_t N = in.mu_a.size();
    std::vector<Message> alpha(N + 1);
    alpha[0] = Message::delta(provider(0).num_states, 0);
    for (std::size_t i = 0; i < N; ++i) {
        const Section& sec = provider(i);
        Message next(sec.num_states);
        for (const Branch& br : sec.branches)
            next[br.to] += alpha[i][br.from] * in.mu_a[i][br.a] * in.mu_b[i][br.b];
        if (!(next.sum() > 0))
            throw DecodingInconsistency("forward metric vanished at step " + std::to_string(i));
        next.normalize();
        alpha[i + 1] = std::move(next);
    }
    return alpha;
}

std::vector<Message> backward_pass(const SectionProvider& provider, const BcjrInputs& in) {
    const std::size_t N = in.mu_a.size();
    std::vector<Message> beta(N + 1);
    beta[N] = Message::uniform(provider(N ? N - 1 : 0).num_states);
    for (std::size_t i = N; i-- > 0;) {
        const Section& sec = provider(i);
        Message prev(sec.num_states);
        for (const Branch& br : sec.branches)
            prev[br.from] += beta[i + 1][br.to] * in.mu_a[i][br.a] * in.mu_b[i][br.b];
        if (!(prev.sum() > 0))
            throw DecodingInconsistency("backward metric vanished at step " + std::to_string(i));
        prev.normalize();
        beta[i] = std::move(prev);
    }
    return beta;
}

void app_output(const SectionProvider& provider, const BcjrInputs& in,
                const std::vector<Message>& alpha, const std::vector<Message>& beta,
                std::vector<Message>& lambda_a, std::vector<Message>& lambda_b) {
    const std::size_t N = in.mu_a.size();
    lambda_a.resize(N);
    lambda_b.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const Section& sec = provider(i);
        Message la(static_cast<std::size_t>(sec.na));
        Message lb(static_cast<std::size_t>(sec.nb));
        for (const Branch& br : sec.branches) {
            const double edge = alpha[i][br.from] * beta[i + 1][br.to];
            la[br.a] += edge * in.mu_b[i][br.b];
            lb[br.b] += edge * in.mu_a[i][br.a];
        }
        la.normalize();
        lb.normalize();
        lambda_a[i] = std::move(la);
        lambda_b[i] = std::move(lb);
    }
}

BcjrResult bcjr_decode(const SectionProvider& provider, const BcjrInputs& in) {
    BcjrResult r;
    r.alpha = forward_pass(provider, in);
    r.beta = backward_pass(provider, in);
    app_output(provider, in, r.alpha, r.beta, r.lambda_a, r.lambda_b);
    const std::size_t N = in.mu_a.size();
    r.post_a.resize(N);
    r.post_b.resize(N);
    r.hard_a.resize(N);
    r.hard_b.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        Message pa(r.lambda_a[i].size());
        for (std::size_t x = 0; x < pa.size(); ++x) pa[x] = in.mu_a[i][x] * r.lambda_a[i][x];
        pa.normalize();
        Message pb(r.lambda_b[i].size());
        for (std::size_t x = 0; x < pb.size(); ++x) pb[x] = in.mu_b[i][x] * r.lambda_b[i][x];
        pb.normalize();
        r.hard_a[i] = hard_decision(pa);
        r.hard_b[i] = hard_decision(pb);
        r.post_a[i] = std::move(pa);
        r.post_b[i] = std::move(pb);
    }
    return r;
}

}  // namespace swc
