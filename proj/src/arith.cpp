#include "es/arith.hpp"

#include <algorithm>

namespace es {

PrimeTable sieve_primes(uint64_t limit) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
    std::vector<bool> composite(limit + 1, false);
    PrimeTable table;
    table.limit = limit;
    for (uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        table.primes.push_back(p);
        for (uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return table;
}

unsigned p_valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("p_valuation: n = 0 has infinite valuation");
    Int m = abs(n);
    unsigned r = 0;
    Int q, rem;
    while (true) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (rem != 0) break;
        m = q;
        ++r;
    }
    return r;
}

SmoothRough smooth_rough_split(const Int& n, uint64_t bound, const PrimeTable& table) {
    if (n == 0) throw std::domain_error("smooth_rough_split: n = 0");
    Int rough = abs(n);
    Int smooth = 1;
    for (uint64_t p : table.primes) {
        if (p >= bound || rough == 1) break;
        while (mpz_divisible_ui_p(rough.get_mpz_t(), p)) {
            mpz_divexact_ui(rough.get_mpz_t(), rough.get_mpz_t(), p);
            smooth *= p;
        }
    }
    if (sgn(n) < 0) rough = -rough;
    return {smooth, rough};
}

SmoothRough smooth_rough_split(const Int& n, uint64_t bound) {
    if (bound > 2) return smooth_rough_split(n, bound, sieve_primes(bound - 1));
    return smooth_rough_split(n, bound, PrimeTable{});
}

std::optional<Int> perfect_power_root(const Int& n, unsigned l) {
    if (l < 2) throw std::domain_error("perfect_power_root: l must be >= 2");
    if (l % 2 == 0 && n < 0)
        throw std::domain_error("perfect_power_root: even l with negative n");
    if (n == 0) return Int(0);
    Int m = abs(n);
    Int root;
    int exact = mpz_root(root.get_mpz_t(), m.get_mpz_t(), l);
    if (!exact) return std::nullopt;
    if (n < 0) root = -root;
    return root;
}

Rat mertens_product(uint64_t A) {
    if (A < 2) throw std::domain_error("mertens_product: A must be >= 2");
    Rat prod(1);
    for (uint64_t p : sieve_primes(A).primes) {
        prod *= Rat(Int(p) - 1, Int(p));
    }
    prod.canonicalize();
    return prod;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::optional<uint64_t> prime_in_interval(uint64_t lo, uint64_t hi) {
    if (lo < 1) throw std::domain_error("prime_in_interval: lo must be >= 1");
    if (hi <= lo + 1) return std::nullopt;
    Int p(lo);
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (p < Int(hi)) return p.get_ui();
    return std::nullopt;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    if (n == 0) throw std::domain_error("factorize: n = 0");
    std::vector<std::pair<Int, unsigned>> out;
    Int m = abs(n);
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(Int(2));
    strip(Int(3));
    Int p = 5;
    // trial division with a 2,4 wheel; anything left past the square root is prime
    while (p * p <= m) {
        strip(p);
        p += 2;
        if (p * p > m) break;
        strip(p);
        p += 4;
    }
    if (m > 1) out.emplace_back(m, 1u);
    return out;
}

unsigned omega(const Int& n) {
    if (n == 0) throw std::domain_error("omega: n = 0");
    if (abs(n) == 1) return 0;
    return static_cast<unsigned>(factorize(n).size());
}

Int naive_height(const Rat& q) {
    Int num = abs(q.get_num());
    Int den = q.get_den();
    return std::max(num, den);
}

} // namespace es
