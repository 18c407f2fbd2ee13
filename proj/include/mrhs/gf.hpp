#pragma once

#include <cstdint>

#include "mrhs/errors.hpp"

namespace mrhs {

// A scalar of GF(q), always a reduced representative in [0, q).
using FieldElem = std::uint32_t;

// Prime field GF(q), q < 2^31. Primality is checked at construction, so a
// FieldSpec value can be trusted downstream.
class FieldSpec {
public:
    explicit FieldSpec(std::uint32_t q);

    std::uint32_t q() const { return q_; }
    bool is_binary() const { return q_ == 2; }

    FieldElem add(FieldElem a, FieldElem b) const {
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    FieldElem sub(FieldElem a, FieldElem b) const { return a >= b ? a - b : a + q_ - b; }
    FieldElem neg(FieldElem a) const { return a == 0 ? 0 : q_ - a; }
    FieldElem mul(FieldElem a, FieldElem b) const {
        return static_cast<FieldElem>((std::uint64_t(a) * b) % q_);
    }
    FieldElem reduce(std::uint64_t x) const { return static_cast<FieldElem>(x % q_); }

    // Multiplicative inverse via extended Euclid; throws ZeroInverse for a == 0.
    FieldElem inv(FieldElem a) const;

    bool operator==(const FieldSpec&) const = default;

private:
    std::uint32_t q_;
};

bool is_prime(std::uint32_t x);

// Least prime >= x, for x >= 2. Fits in 31 bits for every valid input
// (2^31 - 1 is prime).
std::uint32_t smallest_prime_at_least(std::uint32_t x);

}  // namespace mrhs
