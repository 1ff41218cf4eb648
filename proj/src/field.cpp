#include "swc/field.hpp"

#include <stdexcept>
#include <string>

namespace swc {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Field::Field(std::uint32_t q) : q_(q) {
    if (q < 2 || q > 251 || !is_prime(q))
        throw std::invalid_argument("Field: modulus " + std::to_string(q) +
                                    " is not a prime in [2, 251]");
}

Symbol Field::inv(Symbol a) const {
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    // Fermat: a^(q-2) mod q.
    std::uint64_t r = 1, b = a, e = q_ - 2;
    while (e) {
        if (e & 1) r = r * b % q_;
        b = b * b % q_;
        e >>= 1;
    }
    return static_cast<Symbol>(r);
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

TupleIndex tuple_pack(std::span<const Symbol> digits, std::uint32_t q) {
    TupleIndex idx = 0;
    for (std::size_t j = digits.size(); j-- > 0;) {
        if (digits[j] >= q) throw std::out_of_range("tuple_pack: digit >= q");
        idx = idx * q + digits[j];
    }
    return idx;
}

std::vector<Symbol> tuple_unpack(TupleIndex index, std::uint32_t q, std::uint32_t m) {
    if (index >= ipow(q, m)) throw std::out_of_range("tuple_unpack: index >= q^m");
    std::vector<Symbol> digits(m);
    for (std::uint32_t j = 0; j < m; ++j) {
        digits[j] = static_cast<Symbol>(index % q);
        index /= q;
    }
    return digits;
}

TupleIndex tuple_add(TupleIndex a, TupleIndex b, const Field& f, std::uint32_t m) {
    TupleIndex r = 0, w = 1;
    for (std::uint32_t j = 0; j < m; ++j) {
        r += w * f.add(static_cast<Symbol>(a % f.q()), static_cast<Symbol>(b % f.q()));
        a /= f.q();
        b /= f.q();
        w *= f.q();
    }
    return r;
}

TupleIndex tuple_sub(TupleIndex a, TupleIndex b, const Field& f, std::uint32_t m) {
    TupleIndex r = 0, w = 1;
    for (std::uint32_t j = 0; j < m; ++j) {
        r += w * f.sub(static_cast<Symbol>(a % f.q()), static_cast<Symbol>(b % f.q()));
        a /= f.q();
        b /= f.q();
        w *= f.q();
    }
    return r;
}

}  // namespace swc
