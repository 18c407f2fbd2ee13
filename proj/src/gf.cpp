#include "mrhs/gf.hpp"

namespace mrhs {

bool is_prime(std::uint32_t x) {
    if (x < 2) return false;
    if (x % 2 == 0) return x == 2;
    for (std::uint64_t d = 3; d * d <= x; d += 2)
        if (x % d == 0) return false;
    return true;
}

std::uint32_t smallest_prime_at_least(std::uint32_t x) {
    if (x < 2) x = 2;
    if (x > 0x7FFFFFFFu) throw Error("smallest_prime_at_least: argument must be below 2^31");
    std::uint32_t p = x;
    while (!is_prime(p)) ++p;
    return p;
}

FieldSpec::FieldSpec(std::uint32_t q) : q_(q) {
    if (q > 0x7FFFFFFFu) throw Error("FieldSpec: modulus must be below 2^31");
    if (!is_prime(q)) throw Error("FieldSpec: modulus " + std::to_string(q) + " is not prime");
}

FieldElem FieldSpec::inv(FieldElem a) const {
    if (a == 0) throw ZeroInverse("inverse of zero in GF(" + std::to_string(q_) + ")");
    // extended Euclid on (a, q); q prime ensures gcd 1
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q_, new_r = a;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += q_;
    return static_cast<FieldElem>(t);
}

}  // namespace mrhs
