#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hecke {

// Smallest-prime-factor table built by a linear (Euler) sieve.
// Memory: 4 bytes per integer up to the bound.
class sieve {
public:
    explicit sieve(int64_t bound);

    int64_t bound() const { return bound_; }
    bool is_prime(int64_t n) const;
    int64_t smallest_factor(int64_t n) const;

    // Prime factorization as (p, e) pairs, p ascending.
    std::vector<std::pair<int64_t, int>> factor(int64_t n) const;

    // log p if n = p^m, else 0.  von_mangoldt(1) = 0.
    double von_mangoldt(int64_t n) const;

    // n = p^m for some prime p?  Returns p, or 0 if n is not a prime power.
    int64_t prime_power_base(int64_t n) const;

    const std::vector<int64_t>& primes() const { return primes_; }

private:
    int64_t bound_;
    std::vector<int32_t> spf_;
    std::vector<int64_t> primes_;

    void check(int64_t n) const;
};

} // namespace hecke
