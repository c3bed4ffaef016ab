#pragma once

// Combinatorial engines: the subset-divides-factorial construction, the
// primitive-divisor GCD pair extraction, distinct-products tools, and the
// mass-increment auditor.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "es/arith.hpp"
#include "es/factor_terms.hpp"
#include "es/real.hpp"

namespace es {

// Subset S of {0..k-1} with |S| >= k - pi(k) and prod_{i in S} b_i | (k-1)!.
// Preconditions: every b_i is k-smooth, and gcd(b_i,b_j) | (j-i) pairwise.
// Removal: for each prime p < k with positive maximal valuation, drop the
// smallest index attaining that maximum.
std::vector<uint64_t> erdos_subset(const std::vector<Int>& b);

struct GcdHypothesis {
    Rat c;   // in (0,1)
    Rat eta; // in (0,1)
    Rat A;   // >= 1
};

struct HypothesisCheck {
    Rat lhs; // eta(A+1) + prod_{p <= A} (1 - 1/p)
    bool ok; // lhs <= c/2
};
HypothesisCheck hypothesis_check(const GcdHypothesis& h);

// Integers in (eta*k, k] all of whose proper divisors are <= eta*k.
std::vector<uint64_t> primitive_divisor_set(const Rat& eta, uint64_t k);

struct GcdPairs {
    std::vector<std::pair<uint64_t, uint64_t>> pairs; // ordered (b_i, b_j), gcd > eta k
    size_t divisor_set_size = 0;                      // s = |D|
    size_t in_window = 0;                             // #{b_i in (eta k, k]}
    bool small_k = false;       // construction yielded < (c/3)k pairs
    bool count_guarantee = false; // pairs.size() >= r - eta k - s
};
// Constructive extraction: map each b_i in (eta k, k] to the largest dividing
// element of D, pair up collisions (partner = smallest eligible index).
GcdPairs gcd_dense_pairs(const std::vector<uint64_t>& b, const GcdHypothesis& h, uint64_t k);

struct ProductDistinct {
    bool ok = true;
    std::optional<std::array<size_t, 4>> collision; // indices (i, j, r, s)
};
// ok iff m_i m_j != m_r m_s whenever i not in {r,s}; m strictly increasing.
ProductDistinct product_distinct_check(const std::vector<Int>& m);

struct ProductCollisionResult {
    bool found = false;
    std::array<size_t, 4> collision{}; // indices into m
    bool via_pipeline = false;         // pipeline found it (vs. checker fallback)
    bool checker_agrees = false;
    std::string diagnostics;
    uint64_t A_used = 0; // derived hypothesis parameters
    Rat eta_used;
};
// Collision search via the constructive pipeline (gcd pairs, quotient
// pigeonhole), cross-validated against product_distinct_check.
ProductCollisionResult find_product_collision(const std::vector<Int>& m, uint64_t x,
                                              const Rat& delta);

// Exact maximum size of a product-distinct subset of [1, x]; x <= 30.
size_t max_product_distinct(uint64_t x);

struct MassPair {
    uint64_t i = 0, j = 0; // indices, i > j
    Int A;                 // t_i^l - t_j^l = A d^l
    bool verified = false;
};

struct MassRound {
    double delta0 = 0;
    bool small_ok = false;    // #small >= (delta0 + 1/1000) k/log k
    bool calA_ok = false;     // |A| >= (delta0 + 1/2000) k/log k
    bool distinct_ok = false; // #distinct >= delta0 k/log k
};

struct MassIncrementTrace {
    std::vector<uint64_t> I;
    bool erdos_precondition_ok = true;
    size_t R = 0;              // #{i in I : a_i >= k}
    size_t small_count = 0;    // #{i in I : a_i < k}
    size_t distinct_count = 0; // #distinct a_i < k over I
    size_t calA = 0;           // #{alpha < k : unique i in I with a_i = alpha}
    bool counts_consistent = false;

    // Stirling-side ledger (certified comparisons)
    bool prod_large_le_kfact = true; // prod_{i in I, a_i >= k} a_i <= k!
    bool prod_all_le_kfact = true;   // prod_{i in I} a_i <= k!
    double eta_data = 0;             // (1 - R/k) log k
    bool R_bound_ok = true;          // R <= (1 - 1.31/log k) k
    bool spark_ok = true;            // small_count >= 0.3 k / log k
    bool two_log_two_gt_131 = false; // 2 log 2 > 1.31
    bool incr_177_ok = false;        // 1.77 log 1.77 >= 1.01
    std::string first_broken;        // which inequality broke, if any

    std::vector<MassRound> rounds; // delta0 ladder (stored rounds may be capped)
    size_t rounds_total = 0;
    double delta0_final = 0;
    bool density_certified = false; // ladder reached the 0.23 log k cap
    bool density_023_ok = false;    // distinct_count >= 0.23 k directly

    // collision pipeline
    bool pipeline_ran = false;
    uint64_t dyadic_N = 0;
    size_t stripped_trivial = 0; // indices with a_i < k and |t_i| = 1
    size_t pairs_considered = 0;
    size_t pairs_skipped_no_t = 0;
    Int A0;
    std::vector<MassPair> pairs; // pairs voting for A0, each verified
    std::string note;
};

// The mass-increment audit over a factored term set.
MassIncrementTrace mass_increment_audit(const TermSet& ts, mpfr_prec_t prec = 256);

} // namespace es
