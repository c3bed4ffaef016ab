#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "es/combinatorics.hpp"

using namespace es;

static Int factorial(uint64_t n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

TEST_CASE("subset-divides-factorial construction") {
    std::vector<Int> b4 = {1, 2, 3, 4};
    CHECK(erdos_subset(b4) == std::vector<uint64_t>{0, 1});

    std::vector<Int> b5 = {1, 2, 3, 4, 1};
    CHECK(erdos_subset(b5) == std::vector<uint64_t>{0, 1, 4});

    std::vector<Int> ones(12, 1);
    std::vector<uint64_t> all(12);
    std::iota(all.begin(), all.end(), 0);
    CHECK(erdos_subset(ones) == all);

    // precondition failures name the problem
    std::vector<Int> rough = {1, 2, 7, 4}; // 7 is not 4-smooth
    CHECK_THROWS_AS(erdos_subset(rough), precondition_error);
    std::vector<Int> badgcd = {4, 4, 1, 1}; // gcd 4 does not divide 1
    CHECK_THROWS_AS(erdos_subset(badgcd), precondition_error);
}

TEST_CASE("subset lemma on random smooth AP data") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> ndist(-1000000, 1000000);
    std::uniform_int_distribution<long> ddist(1, 7);
    std::uniform_int_distribution<uint64_t> kdist(3, 200);
    for (int trial = 0; trial < 200; ++trial) {
        uint64_t k = kdist(rng);
        long n = ndist(rng), d = ddist(rng);
        if (n == 0 || Int(gcd(Int(n), Int(d))) != 1) continue;
        TermSet ts;
        try {
            ts = factor_terms(ApCandidate{Int(n), Int(d), k, 3});
        } catch (const degenerate_term_error&) {
            continue;
        }
        std::vector<Int> b;
        for (auto& t : ts.terms) b.push_back(t.a);
        auto S = erdos_subset(b);
        PrimeTable pt = sieve_primes(std::max<uint64_t>(k, 2));
        size_t pik = 0;
        for (uint64_t p : pt.primes)
            if (p <= k) ++pik;
        CHECK(S.size() + pik >= k);
        Int prod = 1;
        for (uint64_t i : S) prod *= b[i];
        CHECK(mpz_divisible_p(factorial(k - 1).get_mpz_t(), prod.get_mpz_t()));
    }
}

TEST_CASE("pair-extraction hypothesis check") {
    HypothesisCheck h1 = hypothesis_check({Rat(229, 1000), Rat(1, 17000), Rat(283)});
    CHECK(h1.ok);
    CHECK(h1.lhs < Rat(114499, 1000000));
    CHECK(Rat(114499, 1000000) < Rat(1145, 10000));

    HypothesisCheck h2 = hypothesis_check({Rat(9, 10), Rat(1, 2), Rat(1)});
    CHECK(!h2.ok);
    CHECK(h2.lhs == 2); // 0.5 * 2 + empty product 1

    HypothesisCheck h3 = hypothesis_check({Rat(229, 1000), Rat(1, 1000), Rat(283)});
    CHECK(!h3.ok);
}

TEST_CASE("primitive divisor sets") {
    auto d = primitive_divisor_set(Rat(3, 10), 10);
    CHECK(d == std::vector<uint64_t>{4, 5, 6, 7, 9});

    // eta close to 1: every integer in the window qualifies
    auto d2 = primitive_divisor_set(Rat(99, 100), 100);
    CHECK(d2 == std::vector<uint64_t>{100});
}

TEST_CASE("primitive divisor set covers its window") {
    // every n in (eta k, k] must be divisible by some element of the set;
    // the witness is n divided by small prime factors until the next step
    // would leave the window
    const uint64_t K = 10000;
    std::vector<uint32_t> spf(K + 1, 0);
    for (uint32_t i = 2; i <= K; ++i)
        if (!spf[i])
            for (uint32_t j = i; j <= K; j += i)
                if (!spf[j]) spf[j] = i;
    for (Rat eta : {Rat(1, 17000), Rat(1, 100), Rat(3, 10), Rat(7, 10)}) {
        for (uint64_t k = 2; k <= K; k += (k < 200 ? 1 : 37)) {
            auto D = primitive_divisor_set(eta, k);
            Rat ek = eta * Rat((unsigned long)k);
            auto above = [&](uint64_t v) { return Rat((unsigned long)v) > ek; };
            for (uint64_t n = 1; n <= k; ++n) {
                if (!above(n)) continue;
                uint64_t v = n;
                while (v > 1 && above(v / spf[v])) v /= spf[v];
                CHECK(std::binary_search(D.begin(), D.end(), v));
            }
        }
    }
}

TEST_CASE("gcd-dense pair extraction vs brute-force oracle") {
    GcdHypothesis h{Rat(9, 10), Rat(1, 40), Rat(6)};
    REQUIRE(hypothesis_check(h).ok);

    for (uint64_t k : {160ull, 200ull}) {
        std::vector<uint64_t> b(k);
        std::iota(b.begin(), b.end(), 1);
        GcdPairs gp = gcd_dense_pairs(b, h, k);
        Rat ek = h.eta * Rat((unsigned long)k);
        for (auto [u, v] : gp.pairs) {
            CHECK(u != v);
            Int g = gcd(Int((unsigned long)u), Int((unsigned long)v));
            CHECK(Rat(g) > ek);
        }
        // proof accounting: at least r - eta k - s pairs
        Rat guarantee = Rat((unsigned long)b.size()) - ek - Rat((unsigned long)gp.divisor_set_size);
        CHECK(Rat((unsigned long)gp.pairs.size()) >= guarantee);
        CHECK(gp.count_guarantee);
        // brute-force census: emitted pairs are a subset of qualifying pairs
        size_t qualifying = 0;
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j)
                if (Rat(Int(gcd(Int(b[i]), Int(b[j])))) > ek) ++qualifying;
        CHECK(gp.pairs.size() <= 2 * qualifying); // ordered pairs
    }

    // multiples pair up: with eta k = 4, (10, 20)-style pairs appear
    std::vector<uint64_t> b160(160);
    std::iota(b160.begin(), b160.end(), 1);
    GcdPairs gp = gcd_dense_pairs(b160, h, 160);
    bool found_multiple_pair = false;
    for (auto [u, v] : gp.pairs)
        if (u % v == 0 || v % u == 0) found_multiple_pair = true;
    CHECK(found_multiple_pair);

    // too few elements
    std::vector<uint64_t> small = {1, 2, 3};
    CHECK_THROWS_AS(gcd_dense_pairs(small, h, 160), precondition_error);
    // failing hypothesis
    GcdHypothesis bad{Rat(1, 10), Rat(1, 2), Rat(2)};
    CHECK_THROWS_AS(gcd_dense_pairs(b160, bad, 160), precondition_error);
}

TEST_CASE("product-distinct checker") {
    CHECK(product_distinct_check({1, 2, 3, 5}).ok);
    auto r = product_distinct_check({2, 3, 4, 6});
    CHECK(!r.ok);
    REQUIRE(r.collision.has_value());
    auto [i, j, rr, s] = *r.collision;
    Int m[] = {2, 3, 4, 6};
    CHECK(m[i] * m[j] == m[rr] * m[s]);
    CHECK(product_distinct_check({1, 2, 3, 4}).ok);
    CHECK_THROWS_AS(product_distinct_check({2, 2, 3}), precondition_error);
}

TEST_CASE("product-distinct checker agrees with quartic brute force") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 150; ++trial) {
        size_t T = 4 + rng() % 56;
        std::set<long> vals;
        while (vals.size() < T) vals.insert(1 + (long)(rng() % 300));
        std::vector<Int> m(vals.begin(), vals.end());
        bool brute_ok = true;
        for (size_t i = 0; i < T && brute_ok; ++i)
            for (size_t j = i + 1; j < T && brute_ok; ++j)
                for (size_t r2 = 0; r2 < T && brute_ok; ++r2)
                    for (size_t s = r2 + 1; s < T && brute_ok; ++s) {
                        if (i == r2 && j == s) continue;
                        if (i == r2 || i == s || j == r2 || j == s) continue;
                        if (m[i] * m[j] == m[r2] * m[s]) brute_ok = false;
                    }
        CHECK(product_distinct_check(m).ok == brute_ok);
    }
}

TEST_CASE("product collision search") {
    // cross-validation against the checker on a known collision
    std::vector<Int> m = {2, 3, 4, 6};
    auto res = find_product_collision(m, 10, Rat(1, 2));
    CHECK(res.found);
    CHECK(res.checker_agrees);
    CHECK(m[res.collision[0]] * m[res.collision[1]] == m[res.collision[2]] * m[res.collision[3]]);

    // primes have pairwise-distinct products
    PrimeTable pt = sieve_primes(100);
    std::vector<Int> primes(pt.primes.begin(), pt.primes.end());
    auto res2 = find_product_collision(primes, 100, Rat(1, 4));
    CHECK(!res2.found);

    // dense random sets collide, and the result is genuine
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        std::set<long> vals;
        while (vals.size() < 700) vals.insert(1 + (long)(rng() % 1000));
        std::vector<Int> dense(vals.begin(), vals.end());
        auto r3 = find_product_collision(dense, 1000, Rat(1, 2));
        REQUIRE(r3.found);
        CHECK(dense[r3.collision[0]] * dense[r3.collision[1]] ==
              dense[r3.collision[2]] * dense[r3.collision[3]]);
        CHECK((r3.collision[0] != r3.collision[2] && r3.collision[0] != r3.collision[3]));
    }
}

TEST_CASE("exhaustive product-distinct maximum") {
    CHECK(max_product_distinct(1) == 1);
    CHECK(max_product_distinct(4) == 4);
    size_t prev = 1;
    for (uint64_t x = 1; x <= 16; ++x) {
        size_t cur = max_product_distinct(x);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK_THROWS(max_product_distinct(31));
}

static TermSet tampered_fixture(uint64_t k, long alpha) {
    TermSet ts;
    ts.cand = {Int(1), Int(1), k, 3};
    for (uint64_t i = 0; i < k; ++i) {
        TermFactorization tf;
        tf.index = i;
        if (i % 2 == 0) {
            tf.a = alpha;
            Int t = (i % 4 == 0) ? 3 : 2;
            tf.t = t;
            tf.rough = t * t * t;
            tf.exact_power = true;
        } else {
            tf.a = 1;
            tf.rough = Int(1) + Int((unsigned long)i); // rough placeholder, no t recorded
            tf.exact_power = false;
        }
        ts.terms.push_back(tf);
    }
    return ts;
}

TEST_CASE("mass-increment audit: inconsistent all-large data breaks an inequality") {
    uint64_t k = 200;
    TermSet ts;
    ts.cand = {Int(1), Int(1), k, 3};
    for (uint64_t i = 0; i < k; ++i) {
        TermFactorization tf;
        tf.index = i;
        tf.a = Int((unsigned long)(k + i)); // all >= k, distinct
        tf.rough = 1;
        tf.t = Int(1);
        tf.exact_power = true;
        ts.terms.push_back(tf);
    }
    MassIncrementTrace tr = mass_increment_audit(ts);
    CHECK(tr.R == k);
    CHECK(tr.small_count == 0);
    CHECK(!tr.first_broken.empty());
}

TEST_CASE("mass-increment audit: speculative data traces consistently") {
    TermSet ts = factor_terms(ApCandidate{Int(1), Int(1), 100, 5});
    MassIncrementTrace tr = mass_increment_audit(ts);
    CHECK(tr.counts_consistent);
    CHECK(tr.small_count + tr.R == tr.I.size());
    CHECK(tr.calA <= tr.distinct_count);
    CHECK(tr.distinct_count <= tr.small_count);
}

TEST_CASE("mass-increment audit: tampered fixture yields a voted A0 and verified pairs") {
    TermSet ts = tampered_fixture(10000, 2);
    MassIncrementTrace tr = mass_increment_audit(ts);
    CHECK(tr.pipeline_ran);
    CHECK(tr.A0 != 0);
    REQUIRE(!tr.pairs.empty());
    for (const auto& p : tr.pairs) {
        CHECK(p.verified);
        const Int& ti = *ts.terms[p.i].t;
        const Int& tj = *ts.terms[p.j].t;
        CHECK(ti * ti * ti - tj * tj * tj == tr.A0); // d = 1
        CHECK(p.A == tr.A0);
    }
}

TEST_CASE("proof constants certified to 12 decimals") {
    RVal two = RVal::exact(Int(2), 256);
    RVal lhs = two * two.log();
    CHECK(lhs.definitely_gt(RVal::from_decimal("1.310000000000", 256)));
    RVal c = RVal::exact(Rat(177, 100), 256);
    RVal lhs2 = c * c.log();
    CHECK(lhs2.definitely_ge(RVal::from_decimal("1.010000000000", 256)));
}
