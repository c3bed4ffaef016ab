#pragma once

// Per-term factorizations n + i d^l = a_i t_i^l, the seven factorization
// invariants, the ternary identity, and the per-term audits (trivial t_i
// count, multiplicity bound, large-a distinctness, |n| bounds).

#include <optional>
#include <string>
#include <vector>

#include "es/arith.hpp"
#include "es/es_model.hpp"

namespace es {

// A candidate (n, d, k, l); speculative inputs need not satisfy the product
// equation, the audits run on them regardless.
struct ApCandidate {
    Int n;
    Int d;
    uint64_t k;
    unsigned l;

    Int d_pow_l() const;
    Int term(uint64_t i) const; // n + i d^l
};

struct TermFactorization {
    uint64_t index;
    Int a;                // smooth part at bound k, positive
    Int rough;            // z_i, all prime factors >= k, carries the sign
    std::optional<Int> t; // present iff rough = t^l exactly
    bool exact_power = false;
};

struct TermSet {
    ApCandidate cand;
    std::vector<TermFactorization> terms;
};

struct degenerate_term_error : std::invalid_argument {
    uint64_t index;
    degenerate_term_error(uint64_t i, const std::string& msg)
        : std::invalid_argument(msg), index(i) {}
};

TermSet factor_terms(const ApCandidate& cand);
TermSet factor_terms(const ApSolution& s);

// One bullet of the factorization lemma.
struct InvariantBullet {
    std::string name;
    bool pass = true;
    bool applicable = true; // l-th power bullets need the t_i to exist
    std::string counterexample;
};

struct InvariantReport {
    std::vector<InvariantBullet> bullets;
    bool all_pass() const;
};

InvariantReport check_term_invariants(const TermSet& ts);

// lhs = (n+id^l) - (n+jd^l) recomputed from the stored factorizations,
// rhs = (i-j) d^l. equal is false only on corrupted data.
struct TernaryIdentity {
    Int lhs;
    Int rhs;
    bool equal;
};
TernaryIdentity ternary_identity(const TermSet& ts, uint64_t i, uint64_t j);

struct TrivialTiCount {
    size_t count = 0;
    std::vector<uint64_t> indices; // i with a_i < k and |t_i| = 1
};
TrivialTiCount count_trivial_ti(const TermSet& ts);

// r = #{i : a_i = alpha}; genuine data satisfies r <= k/alpha + 1.
struct MultiplicityCheck {
    size_t r = 0;
    bool bound_ok = true;
};
MultiplicityCheck multiplicity_check(const TermSet& ts, const Int& alpha);

struct DistinctCheck {
    bool ok = true;
    std::optional<std::pair<uint64_t, uint64_t>> first_collision;
};
// a_i >= k must be pairwise distinct on genuine data.
DistinctCheck large_ai_distinct_check(const TermSet& ts);

// l = 3 only: equal pair a_i = a_j forces |n| <= 2 k^{3/2} d^{9/2}; a product
// collision a_i a_j = a_r a_s (i not in {r,s}) forces |n| <= 432 k^6 d^18.
struct NBoundReport {
    bool equal_pair_fired = false;
    std::optional<std::pair<uint64_t, uint64_t>> equal_pair;
    bool equal_pair_bound_ok = false;

    bool product_collision_fired = false;
    std::optional<std::array<uint64_t, 4>> collision; // (i, j, r, s)
    bool product_bound_ok = false;

    bool any_case_fired() const { return equal_pair_fired || product_collision_fired; }
};
NBoundReport n_bound_audit(const TermSet& ts);

} // namespace es
