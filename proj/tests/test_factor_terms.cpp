#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "es/factor_terms.hpp"

using namespace es;

static TermSet make(long n, long d, uint64_t k, unsigned l) {
    return factor_terms(ApCandidate{Int(n), Int(d), k, l});
}

TEST_CASE("term factorization on speculative inputs") {
    TermSet ts = make(1, 1, 5, 3);
    REQUIRE(ts.terms.size() == 5);
    long a[] = {1, 2, 3, 4, 1}, rough[] = {1, 1, 1, 1, 5};
    for (size_t i = 0; i < 5; ++i) {
        CHECK(ts.terms[i].a == a[i]);
        CHECK(ts.terms[i].rough == rough[i]);
    }
    CHECK(!ts.terms[4].exact_power); // 5 is not a cube
    CHECK(ts.terms[0].exact_power);

    TermSet ts2 = make(7, 2, 3, 3);
    long terms2[] = {7, 15, 23};
    for (size_t i = 0; i < 3; ++i) {
        CHECK(ts2.terms[i].a == 1);
        CHECK(ts2.terms[i].rough == terms2[i]);
    }
}

TEST_CASE("zero term is a degenerate-term error") {
    try {
        make(-2, 1, 5, 3);
        FAIL("expected degenerate_term_error");
    } catch (const degenerate_term_error& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("factorization invariant bullets") {
    TermSet ts = make(1, 1, 5, 3);
    InvariantReport rep = check_term_invariants(ts);
    bool product_bullet_failed = false;
    for (auto& b : rep.bullets) {
        if (b.name.find("l-th power") != std::string::npos) {
            CHECK(!b.pass); // 1*2*3*4*1 = 24 is not a cube
            product_bullet_failed = true;
        } else if (b.name.find("gcd") != std::string::npos) {
            CHECK(b.pass);
        }
    }
    CHECK(product_bullet_failed);

    TermSet ts2 = make(7, 2, 3, 3);
    InvariantReport rep2 = check_term_invariants(ts2);
    for (auto& b : rep2.bullets)
        if (b.name.find("gcd(a_i, d)") != std::string::npos) CHECK(b.pass);
}

TEST_CASE("unconditional bullets hold on random candidates") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long> ndist(-1000000, 1000000);
    std::uniform_int_distribution<long> ddist(1, 9);
    std::uniform_int_distribution<uint64_t> kdist(2, 40);
    const unsigned ls[] = {3, 5, 7};
    size_t done = 0;
    while (done < 10000) {
        long n = ndist(rng), d = ddist(rng);
        uint64_t k = kdist(rng);
        unsigned l = ls[rng() % 3];
        if (n == 0 || Int(gcd(Int(n), Int(d))) != 1) continue;
        TermSet ts;
        try {
            ts = make(n, d, k, l);
        } catch (const degenerate_term_error&) {
            continue;
        }
        InvariantReport rep = check_term_invariants(ts);
        for (auto& b : rep.bullets) {
            // bullets that follow without the l-th power hypothesis
            if (b.name.find("identity") != std::string::npos ||
                b.name.find("prime factors of a_i") != std::string::npos ||
                b.name.find("prime factors of t_i") != std::string::npos ||
                b.name.find("gcd(a_i, a_j)") != std::string::npos ||
                b.name.find("gcd(a_i, d)") != std::string::npos) {
                INFO("bullet ", b.name, " on (", n, ",", d, ",", k, ",", l, "): ",
                     b.counterexample);
                CHECK(b.pass);
            }
        }
        MultiplicityCheck mc = multiplicity_check(ts, Int(1 + (long)(rng() % (k - 1))));
        CHECK(mc.bound_ok);
        ++done;
    }
}

TEST_CASE("ternary identity") {
    TermSet ts = make(1, 1, 5, 3);
    TernaryIdentity ti = ternary_identity(ts, 3, 1);
    CHECK(ti.lhs == 2);
    CHECK(ti.rhs == 2);
    CHECK(ti.equal);

    TermSet ts2 = make(7, 2, 3, 3);
    TernaryIdentity ti2 = ternary_identity(ts2, 2, 0);
    CHECK(ti2.lhs == 16);
    CHECK(ti2.rhs == 16);
    CHECK(ti2.equal);

    // corrupted a_i flags the mismatch
    TermSet bad = ts;
    bad.terms[3].a = 17;
    CHECK(!ternary_identity(bad, 3, 1).equal);

    CHECK_THROWS(ternary_identity(ts, 9, 1));
}

TEST_CASE("trivial t_i count") {
    TermSet ts = make(1, 1, 5, 3);
    TrivialTiCount tc = count_trivial_ti(ts);
    CHECK(tc.count == 4);
    CHECK(tc.indices == std::vector<uint64_t>{0, 1, 2, 3});

    TermSet ts2 = make(7, 2, 3, 3);
    CHECK(count_trivial_ti(ts2).count == 0);
}

TEST_CASE("multiplicity bound") {
    TermSet ts = make(1, 1, 5, 3);
    MultiplicityCheck m1 = multiplicity_check(ts, 1);
    CHECK(m1.r == 2);
    CHECK(m1.bound_ok); // 2 <= 5/1 + 1
    CHECK(multiplicity_check(ts, 3).r == 1);

    // synthetic violation: k/alpha + 1 = 5/4 + 1, r forced to 3
    TermSet bad = ts;
    bad.terms[0].a = 4;
    bad.terms[1].a = 4;
    bad.terms[2].a = 4;
    CHECK(!multiplicity_check(bad, 4).bound_ok);
}

TEST_CASE("large smooth parts must be distinct") {
    CHECK(large_ai_distinct_check(make(1, 1, 5, 3)).ok);
    CHECK(large_ai_distinct_check(make(7, 2, 3, 3)).ok);

    TermSet bad = make(1, 1, 5, 3);
    bad.terms[1].a = 6;
    bad.terms[3].a = 6;
    DistinctCheck dc = large_ai_distinct_check(bad);
    CHECK(!dc.ok);
    REQUIRE(dc.first_collision.has_value());
    CHECK(dc.first_collision->first == 1);
    CHECK(dc.first_collision->second == 3);
}

TEST_CASE("|n| bound audit for cubes") {
    TermSet ts = make(1, 1, 2, 3);
    NBoundReport r = n_bound_audit(ts);
    CHECK(r.equal_pair_fired);
    CHECK(r.equal_pair_bound_ok); // |1| <= 2 * 2^{3/2}

    NBoundReport r5 = n_bound_audit(make(1, 1, 5, 3));
    CHECK(r5.equal_pair_fired);
    CHECK(r5.equal_pair_bound_ok);

    // all smooth parts distinct, no product collision: nothing fires
    NBoundReport rn = n_bound_audit(make(1, 1, 4, 3));
    CHECK(!rn.any_case_fired());

    CHECK_THROWS(n_bound_audit(make(1, 1, 4, 5)));
}

TEST_CASE("cube gap dominates squares") {
    // (m+1)^3 - m^3 = 3m^2 + 3m + 1 >= m^2 for every m >= 1
    for (uint64_t m = 1; m <= 1000000; ++m) {
        unsigned __int128 gap =
            (unsigned __int128)3 * m * m + 3 * m + 1;
        REQUIRE(gap >= (unsigned __int128)m * m);
    }
}
