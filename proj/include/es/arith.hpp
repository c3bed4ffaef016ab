#pragma once

// Exact integer/rational primitives: prime sieves, p-adic valuations,
// smooth/rough splitting, perfect-power roots, Mertens products.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace es {

using Int = mpz_class;
using Rat = mpq_class;

// All primes <= limit, ascending.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;

    size_t pi() const { return primes.size(); }
};

// Sieve of Eratosthenes. limit >= 2 required.
PrimeTable sieve_primes(uint64_t limit);

// Largest r with p^r | n. n must be nonzero.
unsigned p_valuation(const Int& n, const Int& p);

// n = smooth * rough with every prime factor of smooth < bound and every
// prime factor of rough >= bound. smooth > 0; rough carries the sign of n.
struct SmoothRough {
    Int smooth;
    Int rough;
};
SmoothRough smooth_rough_split(const Int& n, uint64_t bound);

// Same split, reusing a sieved table (primes of the table below `bound` are used).
SmoothRough smooth_rough_split(const Int& n, uint64_t bound, const PrimeTable& table);

// r with r^l = n, if such an integer exists. Sign of r matches n for odd l.
// l even with n < 0 is a domain error.
std::optional<Int> perfect_power_root(const Int& n, unsigned l);

// Exact prod_{p <= A} (1 - 1/p).
Rat mertens_product(uint64_t A);

// Smallest prime p with lo < p < hi (open interval), if any. lo >= 1.
std::optional<uint64_t> prime_in_interval(uint64_t lo, uint64_t hi);

// Number of distinct prime factors of |n|. n must be nonzero.
unsigned omega(const Int& n);

// Full factorization of |n| by trial division, ascending primes.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

// Deterministic primality for desk-scale integers.
bool is_prime(const Int& n);

// Naive height of a reduced rational: max(|num|, den).
Int naive_height(const Rat& q);

} // namespace es
