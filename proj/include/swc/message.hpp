#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace swc {

/// Raised when a metric or belief collapses to all-zero (no consistent path,
/// or evidence inconsistent with the configuration).
struct DecodingInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Nonnegative belief vector over a tuple alphabet.
struct Message {
    std::vector<double> v;

    Message() = default;
    explicit Message(std::size_t n, double fill = 0.0) : v(n, fill) {}

    static Message uniform(std::size_t n) { return Message(n, 1.0 / static_cast<double>(n)); }
    static Message delta(std::size_t n, std::size_t at) {
        Message m(n);
        m.v[at] = 1.0;
        return m;
    }

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    double sum() const {
        double s = 0;
        for (double x : v) s += x;
        return s;
    }

    void normalize() {
        double s = sum();
        if (!(s > 0)) throw DecodingInconsistency("message normalizes to zero");
        for (double& x : v) x /= s;
    }

    Message normalized() const {
        Message m = *this;
        m.normalize();
        return m;
    }
};

// Argmax with ties broken toward the smallest index; shared by every decoder
// and by the oracle so hard-decision comparisons are literal.
inline std::size_t hard_decision(const Message& m) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] > m[best]) best = i;
    return best;
}

}  // namespace swc
