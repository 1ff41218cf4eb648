#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace swc {

using Symbol = std::uint32_t;
using TupleIndex = std::uint64_t;

/// Prime field GF(q), elements represented as residues 0..q-1.
class Field {
public:
    explicit Field(std::uint32_t q);

    std::uint32_t q() const { return q_; }

    Symbol add(Symbol a, Symbol b) const { return (a + b) % q_; }
    Symbol sub(Symbol a, Symbol b) const { return (a + q_ - b) % q_; }
    Symbol mul(Symbol a, Symbol b) const { return (a * b) % q_; }
    Symbol neg(Symbol a) const { return a == 0 ? 0 : q_ - a; }
    Symbol inv(Symbol a) const;

    bool operator==(const Field&) const = default;

private:
    std::uint32_t q_;
};

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp);

// Tuple <-> index packing. Position 0 of the tuple is the least-significant
// base-q digit; this order is part of every external format.
TupleIndex tuple_pack(std::span<const Symbol> digits, std::uint32_t q);
std::vector<Symbol> tuple_unpack(TupleIndex index, std::uint32_t q, std::uint32_t m);

// Componentwise tuple arithmetic on packed indices over GF(q)^m.
TupleIndex tuple_add(TupleIndex a, TupleIndex b, const Field& f, std::uint32_t m);
TupleIndex tuple_sub(TupleIndex a, TupleIndex b, const Field& f, std::uint32_t m);

}  // namespace swc
