#include "es/factor_terms.hpp"

#include <array>
#include <map>

namespace es {

Int ApCandidate::d_pow_l() const {
    Int dl = 1;
    for (unsigned i = 0; i < l; ++i) dl *= d;
    return dl;
}

Int ApCandidate::term(uint64_t i) const { return n + Int(i) * d_pow_l(); }

TermSet factor_terms(const ApCandidate& cand) {
    if (cand.k < 2) throw precondition_error("factor_terms: k must be >= 2");
    if (cand.d < 1) throw precondition_error("factor_terms: d must be >= 1");
    TermSet ts{cand, {}};
    ts.terms.reserve(cand.k);
    Int dl = cand.d_pow_l();
    PrimeTable table = cand.k > 2 ? sieve_primes(cand.k - 1) : PrimeTable{};
    Int term = cand.n;
    for (uint64_t i = 0; i < cand.k; ++i, term += dl) {
        if (term == 0)
            throw degenerate_term_error(i, "factor_terms: term is zero at index " +
                                               std::to_string(i));
        auto [smooth, rough] = smooth_rough_split(term, cand.k, table);
        TermFactorization tf{i, smooth, rough, std::nullopt, false};
        auto root = perfect_power_root(rough, cand.l);
        if (root) {
            tf.t = *root;
            tf.exact_power = true;
        }
        ts.terms.push_back(std::move(tf));
    }
    return ts;
}

TermSet factor_terms(const ApSolution& s) {
    return factor_terms(ApCandidate{s.n, s.d, s.k, s.l});
}

bool InvariantReport::all_pass() const {
    for (const auto& b : bullets)
        if (b.applicable && !b.pass) return false;
    return true;
}

InvariantReport check_term_invariants(const TermSet& ts) {
    const auto& cand = ts.cand;
    const auto& terms = ts.terms;
    InvariantReport rep;
    Int dl = cand.d_pow_l();

    InvariantBullet ident{"factorization identity a_i * z_i = n + i d^l"};
    InvariantBullet a_bound{"prime factors of a_i are < k"};
    InvariantBullet t_bound{"prime factors of t_i are >= k"};
    InvariantBullet gcd_aa{"gcd(a_i, a_j) divides (j - i)"};
    InvariantBullet gcd_ad{"gcd(a_i, d) = 1"};
    InvariantBullet gcd_tt{"gcd(t_i, t_j) = 1"};
    InvariantBullet prod_pow{"prod a_i is an l-th power"};

    PrimeTable table = cand.k > 2 ? sieve_primes(cand.k - 1) : PrimeTable{};
    for (const auto& tf : terms) {
        if (ident.pass && tf.a * tf.rough != cand.term(tf.index)) {
            ident.pass = false;
            ident.counterexample = "index " + std::to_string(tf.index);
        }
        if (a_bound.pass) {
            auto s = smooth_rough_split(tf.a, cand.k, table);
            if (abs(s.rough) != 1) {
                a_bound.pass = false;
                a_bound.counterexample = "index " + std::to_string(tf.index);
            }
        }
        if (t_bound.pass) {
            auto s = smooth_rough_split(tf.rough, cand.k, table);
            if (s.smooth != 1) {
                t_bound.pass = false;
                t_bound.counterexample = "index " + std::to_string(tf.index);
            }
        }
        if (gcd_ad.pass && gcd(tf.a, cand.d) != 1) {
            gcd_ad.pass = false;
            gcd_ad.counterexample = "index " + std::to_string(tf.index);
        }
    }
    for (size_t i = 0; i + 1 < terms.size() && (gcd_aa.pass || gcd_tt.pass); ++i) {
        for (size_t j = i + 1; j < terms.size(); ++j) {
            if (gcd_aa.pass) {
                Int g = gcd(terms[i].a, terms[j].a);
                if (!mpz_divisible_p(Int(Int(j) - Int(i)).get_mpz_t(), g.get_mpz_t())) {
                    gcd_aa.pass = false;
                    gcd_aa.counterexample =
                        "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
            if (gcd_tt.pass && terms[i].t && terms[j].t) {
                if (gcd(*terms[i].t, *terms[j].t) != 1) {
                    gcd_tt.pass = false;
                    gcd_tt.counterexample =
                        "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        }
    }
    {
        bool any_t = false;
        for (const auto& tf : terms) any_t = any_t || tf.t.has_value();
        gcd_tt.applicable = any_t;
    }
    {
        Int prod = 1;
        for (const auto& tf : terms) prod *= tf.a;
        if (!perfect_power_root(prod, cand.l)) {
            prod_pow.pass = false;
            prod_pow.counterexample = "prod a_i = " + prod.get_str();
        }
    }
    rep.bullets = {ident, a_bound, t_bound, gcd_aa, gcd_ad, gcd_tt, prod_pow};
    return rep;
}

TernaryIdentity ternary_identity(const TermSet& ts, uint64_t i, uint64_t j) {
    if (i == j || i >= ts.terms.size() || j >= ts.terms.size())
        throw std::out_of_range("ternary_identity: bad indices");
    Int lhs = ts.terms[i].a * ts.terms[i].rough - ts.terms[j].a * ts.terms[j].rough;
    Int rhs = (Int(i) - Int(j)) * ts.cand.d_pow_l();
    return {lhs, rhs, lhs == rhs};
}

TrivialTiCount count_trivial_ti(const TermSet& ts) {
    TrivialTiCount out;
    for (const auto& tf : ts.terms) {
        if (tf.a < Int(ts.cand.k) && tf.t && abs(*tf.t) == 1) {
            ++out.count;
            out.indices.push_back(tf.index);
        }
    }
    return out;
}

MultiplicityCheck multiplicity_check(const TermSet& ts, const Int& alpha) {
    if (alpha < 1 || alpha >= Int(ts.cand.k))
        throw precondition_error("multiplicity_check: need 1 <= alpha < k");
    MultiplicityCheck mc;
    for (const auto& tf : ts.terms)
        if (tf.a == alpha) ++mc.r;
    // r <= k/alpha + 1, compared as r * alpha <= k + alpha
    mc.bound_ok = Int(mc.r) * alpha <= Int(ts.cand.k) + alpha;
    return mc;
}

DistinctCheck large_ai_distinct_check(const TermSet& ts) {
    DistinctCheck dc;
    std::map<Int, uint64_t> seen;
    for (const auto& tf : ts.terms) {
        if (tf.a < Int(ts.cand.k)) continue;
        auto [it, inserted] = seen.emplace(tf.a, tf.index);
        if (!inserted) {
            dc.ok = false;
            dc.first_collision = {it->second, tf.index};
            return dc;
        }
    }
    return dc;
}

NBoundReport n_bound_audit(const TermSet& ts) {
    if (ts.cand.l != 3) throw precondition_error("n_bound_audit: requires l = 3");
    NBoundReport rep;
    const Int n_abs = abs(ts.cand.n);
    const Int k(ts.cand.k);
    const Int d = ts.cand.d;

    // case (a): some a_i = a_j
    {
        std::map<Int, uint64_t> seen;
        for (const auto& tf : ts.terms) {
            auto [it, inserted] = seen.emplace(tf.a, tf.index);
            if (!inserted) {
                rep.equal_pair_fired = true;
                rep.equal_pair = {it->second, tf.index};
                // |n| <= 2 k^{3/2} d^{9/2}  <=>  n^2 <= 4 k^3 d^9
                Int rhs = 4 * k * k * k;
                for (int e = 0; e < 9; ++e) rhs *= d;
                rep.equal_pair_bound_ok = n_abs * n_abs <= rhs;
                break;
            }
        }
    }

    // case (b): a_i a_j = a_r a_s with i not in {r,s}; colliding a's are < k^2
    {
        const Int k2 = k * k;
        std::vector<const TermFactorization*> small;
        for (const auto& tf : ts.terms)
            if (tf.a < k2) small.push_back(&tf);
        std::map<Int, std::vector<std::pair<uint64_t, uint64_t>>> products;
        for (size_t x = 0; x < small.size() && !rep.product_collision_fired; ++x) {
            for (size_t y = x + 1; y < small.size(); ++y) {
                Int prod = small[x]->a * small[y]->a;
                auto& lst = products[prod];
                for (auto [r, s] : lst) {
                    uint64_t i = small[x]->index, j = small[y]->index;
                    if (i != r && i != s) {
                        rep.product_collision_fired = true;
                        rep.collision = std::array<uint64_t, 4>{i, j, r, s};
                        Int bound = 432 * k * k * k * k * k * k;
                        for (int e = 0; e < 18; ++e) bound *= d;
                        rep.product_bound_ok = n_abs <= bound;
                        break;
                    }
                }
                if (rep.product_collision_fired) break;
                lst.emplace_back(small[x]->index, small[y]->index);
            }
        }
    }
    return rep;
}

} // namespace es
