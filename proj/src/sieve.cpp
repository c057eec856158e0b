#include "hecke/sieve.hpp"

#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

sieve::sieve(int64_t bound) : bound_(bound) {
    if (bound < 1) throw bad_input("sieve bound must be >= 1");
    if (bound > (int64_t(1) << 34))
        throw capacity_exceeded("sieve bound beyond memory budget");
    spf_.assign(size_t(bound) + 1, 0);
    primes_.reserve(size_t(bound > 16 ? double(bound) / (std::log(double(bound)) - 1.1) : 8));
    for (int64_t i = 2; i <= bound; ++i) {
        if (spf_[size_t(i)] == 0) {
            spf_[size_t(i)] = int32_t(i);
            primes_.push_back(i);
        }
        for (int64_t p : primes_) {
            if (p > spf_[size_t(i)] || i * p > bound) break;
            spf_[size_t(i * p)] = int32_t(p);
        }
    }
}

void sieve::check(int64_t n) const {
    if (n < 1 || n > bound_) throw sieve_too_small(n, bound_);
}

bool sieve::is_prime(int64_t n) const {
    check(n);
    return n >= 2 && spf_[size_t(n)] == n;
}

int64_t sieve::smallest_factor(int64_t n) const {
    check(n);
    return n == 1 ? 1 : spf_[size_t(n)];
}

std::vector<std::pair<int64_t, int>> sieve::factor(int64_t n) const {
    check(n);
    std::vector<std::pair<int64_t, int>> out;
    while (n > 1) {
        int64_t p = spf_[size_t(n)];
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    return out;
}

int64_t sieve::prime_power_base(int64_t n) const {
    check(n);
    if (n < 2) return 0;
    int64_t p = spf_[size_t(n)];
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

double sieve::von_mangoldt(int64_t n) const {
    int64_t p = prime_power_base(n);
    return p ? std::log(double(p)) : 0.0;
}

} // namespace hecke
