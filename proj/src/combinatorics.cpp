#include "es/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace es {

namespace {

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// gcd fast path for operands that fit a machine word
Int gcd_fast(const Int& a, const Int& b) {
    if (mpz_fits_ulong_p(a.get_mpz_t()) && mpz_fits_ulong_p(b.get_mpz_t()))
        return Int(gcd_u64(mpz_get_ui(a.get_mpz_t()), mpz_get_ui(b.get_mpz_t())));
    return gcd(a, b);
}

} // namespace

std::vector<uint64_t> erdos_subset(const std::vector<Int>& b) {
    const uint64_t k = b.size();
    if (k < 2) throw precondition_error("erdos_subset: need k >= 2");
    for (const auto& v : b)
        if (v < 1) throw precondition_error("erdos_subset: b_i must be positive");

    PrimeTable table = k > 2 ? sieve_primes(k - 1) : PrimeTable{};

    // smoothness + per-prime maximal valuation in one factorization pass
    struct MaxVal {
        unsigned e = 0;
        uint64_t index = 0;
    };
    std::unordered_map<uint64_t, MaxVal> maxima; // prime -> (max valuation, smallest argmax)
    for (uint64_t i = 0; i < k; ++i) {
        Int m = b[i];
        for (uint64_t p : table.primes) {
            if (m == 1) break;
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            if (e > 0) {
                auto& mv = maxima[p];
                if (e > mv.e) mv = {e, i};
            }
        }
        if (m != 1)
            throw precondition_error("erdos_subset: b_" + std::to_string(i) +
                                     " has a prime factor >= k");
    }

    for (uint64_t i = 0; i + 1 < k; ++i) {
        for (uint64_t j = i + 1; j < k; ++j) {
            Int g = gcd_fast(b[i], b[j]);
            if (!mpz_divisible_p(Int(j - i).get_mpz_t(), g.get_mpz_t()))
                throw precondition_error("erdos_subset: gcd(b_" + std::to_string(i) + ", b_" +
                                         std::to_string(j) + ") does not divide j - i");
        }
    }

    std::set<uint64_t> removed;
    for (auto& [p, mv] : maxima) removed.insert(mv.index); // only primes with v_p > 0
    std::vector<uint64_t> S;
    S.reserve(k - removed.size());
    for (uint64_t i = 0; i < k; ++i)
        if (!removed.count(i)) S.push_back(i);
    return S;
}

HypothesisCheck hypothesis_check(const GcdHypothesis& h) {
    Int a_floor = h.A.get_num() / h.A.get_den();
    Rat prod = a_floor >= 2 ? mertens_product(a_floor.get_ui()) : Rat(1);
    Rat lhs = h.eta * (h.A + 1) + prod;
    lhs.canonicalize();
    return {lhs, lhs <= h.c / 2};
}

std::vector<uint64_t> primitive_divisor_set(const Rat& eta, uint64_t k) {
    if (eta <= 0 || eta >= 1)
        throw precondition_error("primitive_divisor_set: eta must be in (0,1)");
    const Int& en = eta.get_num();
    const Int& ed = eta.get_den();
    const Int ek_num = en * k; // eta*k = ek_num / ed

    // smallest prime factor sieve
    std::vector<uint64_t> spf(k + 1, 0);
    for (uint64_t p = 2; p <= k; ++p) {
        if (spf[p]) continue;
        for (uint64_t m = p; m <= k; m += p)
            if (!spf[m]) spf[m] = p;
    }

    std::vector<uint64_t> D;
    for (uint64_t n = 1; n <= k; ++n) {
        if (Int(n) * ed <= ek_num) continue; // need n > eta k
        if (n == 1) {
            D.push_back(1); // no proper divisors
            continue;
        }
        // largest proper divisor is n / spf(n); all others are <= it
        if (Int(n) * ed <= ek_num * spf[n]) D.push_back(n);
    }
    return D;
}

GcdPairs gcd_dense_pairs(const std::vector<uint64_t>& b, const GcdHypothesis& h, uint64_t k) {
    auto hc = hypothesis_check(h);
    if (!hc.ok)
        throw precondition_error("gcd_dense_pairs: hypothesis fails, lhs = " +
                                 Rat(hc.lhs).get_str());
    const size_t r = b.size();
    if (Rat(Int(r)) < h.c * Int(k))
        throw precondition_error("gcd_dense_pairs: need r >= c k");
    {
        std::set<uint64_t> seen;
        for (uint64_t v : b) {
            if (v < 1 || v > k || !seen.insert(v).second)
                throw precondition_error("gcd_dense_pairs: b must be distinct in [1,k]");
        }
    }

    GcdPairs out;
    auto D = primitive_divisor_set(h.eta, k);
    out.divisor_set_size = D.size();

    const Int& en = h.eta.get_num();
    const Int& ed = h.eta.get_den();
    const Int ek_num = en * k;

    // f maps each b_i in (eta k, k] to the largest dividing element of D
    std::map<uint64_t, std::vector<size_t>> classes; // f value -> indices into b
    for (size_t i = 0; i < b.size(); ++i) {
        if (Int(b[i]) * ed <= ek_num) continue;
        ++out.in_window;
        for (auto it = D.rbegin(); it != D.rend(); ++it) {
            if (b[i] % *it == 0) {
                classes[*it].push_back(i);
                break;
            }
        }
    }

    for (auto& [f, members] : classes) {
        if (members.size() < 2) continue;
        for (size_t idx : members) {
            size_t partner = members[0] == idx ? members[1] : members[0];
            out.pairs.emplace_back(b[idx], b[partner]);
        }
    }

    // proof accounting: >= r - eta k - s pairs
    out.count_guarantee =
        Rat(Int(out.pairs.size())) >= Rat(Int(r)) - h.eta * Int(k) - Int(out.divisor_set_size);
    out.small_k = Rat(Int(out.pairs.size())) < h.c / 3 * Int(k);
    return out;
}

ProductDistinct product_distinct_check(const std::vector<Int>& m) {
    for (size_t i = 0; i + 1 < m.size(); ++i)
        if (m[i] >= m[i + 1])
            throw precondition_error("product_distinct_check: m must be strictly increasing");
    ProductDistinct out;
    std::map<Int, std::pair<size_t, size_t>> seen; // product -> first pair
    for (size_t i = 0; i + 1 < m.size(); ++i) {
        for (size_t j = i + 1; j < m.size(); ++j) {
            Int prod = m[i] * m[j];
            auto [it, inserted] = seen.emplace(prod, std::make_pair(i, j));
            if (!inserted) {
                out.ok = false;
                out.collision = {it->second.first, it->second.second, i, j};
                return out;
            }
        }
    }
    return out;
}

ProductCollisionResult find_product_collision(const std::vector<Int>& m, uint64_t x,
                                              const Rat& delta) {
    for (const auto& v : m)
        if (v < 1 || v > Int(x))
            throw precondition_error("find_product_collision: m_i must lie in [1,x]");

    std::vector<Int> sorted = m;
    std::sort(sorted.begin(), sorted.end());
    auto checker = product_distinct_check(sorted);

    ProductCollisionResult res;
    std::unordered_map<uint64_t, size_t> value_index;
    for (size_t i = 0; i < m.size(); ++i) value_index[m[i].get_ui()] = i;
    auto checker_indices = [&]() -> std::array<size_t, 4> {
        std::array<size_t, 4> c{};
        for (int t = 0; t < 4; ++t) c[t] = value_index.at(sorted[(*checker.collision)[t]].get_ui());
        return c;
    };

    // derive (A, eta) satisfying the pairing hypothesis with c = delta
    std::optional<uint64_t> A_choice;
    Rat eta;
    for (uint64_t A = 2; A <= 400; ++A) {
        Rat prod = mertens_product(A);
        if (prod < delta / 2) {
            Rat e = (delta / 2 - prod) / Rat(Int(A + 1));
            if (e > 0 && e < 1) {
                A_choice = A;
                eta = e;
                break;
            }
        }
    }

    bool size_ok = Rat(Int(m.size())) > delta * Int(x);
    if (!A_choice || !size_ok) {
        res.diagnostics = !size_ok ? "below threshold: |m| <= delta x"
                                   : "no (A, eta) satisfies the hypothesis for this delta";
        if (!checker.ok) {
            res.found = true;
            res.checker_agrees = true;
            res.collision = checker_indices();
            res.diagnostics += "; collision supplied by exhaustive checker";
        }
        return res;
    }
    res.A_used = *A_choice;
    res.eta_used = eta;

    // classes under f (largest dividing primitive-divisor-set element)
    auto D = primitive_divisor_set(eta, x);
    const Int ex_num = eta.get_num() * x;
    const Int& ed = eta.get_den();
    std::map<uint64_t, std::vector<uint64_t>> classes; // f -> values
    for (const auto& v : m) {
        uint64_t u = v.get_ui();
        if (Int(u) * ed <= ex_num) continue;
        for (auto it = D.rbegin(); it != D.rend(); ++it) {
            if (u % *it == 0) {
                classes[*it].push_back(u);
                break;
            }
        }
    }

    // quotient pigeonhole over ordered in-class pairs: equal quotient pairs
    // (u/g, v/g) across distinct pairs force u v' = u' v
    std::map<std::pair<uint64_t, uint64_t>, std::pair<uint64_t, uint64_t>> quotients;
    for (auto& [f, vals] : classes) {
        if (vals.size() < 2) continue;
        for (size_t a = 0; a < vals.size(); ++a) {
            for (size_t c = 0; c < vals.size(); ++c) {
                if (a == c) continue;
                uint64_t u = vals[a], v = vals[c];
                uint64_t g = gcd_u64(u, v);
                if (Int(g) * ed <= ex_num) continue; // keep only gcd > eta x
                auto key = std::make_pair(u / g, v / g);
                auto [it, inserted] = quotients.emplace(key, std::make_pair(u, v));
                if (!inserted && it->second.first != u) {
                    auto [u2, v2] = it->second;
                    // u * v2 == u2 * v
                    res.found = true;
                    res.via_pipeline = true;
                    res.collision = {value_index.at(u), value_index.at(v2),
                                     value_index.at(u2), value_index.at(v)};
                    res.checker_agrees = !checker.ok;
                    res.diagnostics = "pipeline collision via quotient pigeonhole";
                    if (Int(u) * Int(v2) != Int(u2) * Int(v))
                        throw std::logic_error("find_product_collision: internal verify failed");
                    return res;
                }
            }
        }
    }

    res.diagnostics = "pipeline found no quotient collision";
    if (!checker.ok) {
        res.found = true;
        res.checker_agrees = true;
        res.collision = checker_indices();
        res.diagnostics += "; collision supplied by exhaustive checker";
    }
    return res;
}

namespace {

struct BnB {
    uint64_t x;
    size_t best = 0;
    std::vector<uint64_t> chosen;
    std::unordered_set<uint64_t> products;

    void dfs(uint64_t v) {
        if (chosen.size() + (x - v + 1) <= best) return; // cannot beat best
        if (v > x) {
            best = std::max(best, chosen.size());
            return;
        }
        // try including v
        bool ok = true;
        for (uint64_t c : chosen)
            if (products.count(c * v)) {
                ok = false;
                break;
            }
        if (ok) {
            for (uint64_t c : chosen) products.insert(c * v);
            chosen.push_back(v);
            dfs(v + 1);
            chosen.pop_back();
            for (uint64_t c : chosen) products.erase(c * v);
        }
        dfs(v + 1);
        best = std::max(best, chosen.size());
    }
};

} // namespace

size_t max_product_distinct(uint64_t x) {
    if (x < 1) throw precondition_error("max_product_distinct: x must be >= 1");
    if (x > 30) throw std::runtime_error("max_product_distinct: x > 30 (exponential search)");
    BnB b{x};
    b.dfs(1);
    return b.best;
}

namespace {

void validate_term_structure(const TermSet& ts) {
    std::set<uint64_t> seen;
    for (const auto& tf : ts.terms) {
        std::string where = "term " + std::to_string(tf.index);
        if (tf.index >= ts.cand.k || !seen.insert(tf.index).second)
            throw validation_error("mass audit: bad or duplicate index, " + where);
        if (tf.a < 1) throw validation_error("mass audit: a_i must be positive, " + where);
        if (tf.rough == 0) throw validation_error("mass audit: zero rough part, " + where);
        if (tf.exact_power != tf.t.has_value())
            throw validation_error("mass audit: exact_power flag inconsistent, " + where);
        if (tf.t) {
            Int tl = 1;
            for (unsigned e = 0; e < ts.cand.l; ++e) tl *= *tf.t;
            if (tl != tf.rough)
                throw validation_error("mass audit: t_i^l != z_i, " + where);
        }
    }
}

} // namespace

MassIncrementTrace mass_increment_audit(const TermSet& ts, mpfr_prec_t prec) {
    validate_term_structure(ts);
    const uint64_t k = ts.cand.k;
    const Int kz(k);
    MassIncrementTrace tr;

    std::vector<Int> avals;
    avals.reserve(ts.terms.size());
    for (const auto& tf : ts.terms) avals.push_back(tf.a);

    try {
        tr.I = erdos_subset(avals);
    } catch (const precondition_error& e) {
        tr.erdos_precondition_ok = false;
        tr.note = std::string("erdos_subset precondition failed (") + e.what() +
                  "); auditing over the full index set";
        tr.I.resize(ts.terms.size());
        std::iota(tr.I.begin(), tr.I.end(), 0);
    }

    std::map<Int, size_t> small_mult; // alpha < k -> #{i in I with a_i = alpha}
    Int prod_all = 1, prod_large = 1;
    for (uint64_t i : tr.I) {
        const auto& tf = ts.terms[i];
        prod_all *= tf.a;
        if (tf.a >= kz) {
            ++tr.R;
            prod_large *= tf.a;
        } else {
            ++tr.small_count;
            ++small_mult[tf.a];
        }
    }
    tr.distinct_count = small_mult.size();
    for (auto& [alpha, mult] : small_mult)
        if (mult == 1) ++tr.calA;
    tr.counts_consistent = (tr.small_count + tr.R == tr.I.size()) &&
                           tr.calA <= tr.distinct_count && tr.distinct_count <= tr.small_count;

    Int kfact;
    mpz_fac_ui(kfact.get_mpz_t(), k);
    tr.prod_all_le_kfact = prod_all <= kfact;
    tr.prod_large_le_kfact = prod_large <= kfact;

    const RVal kv = RVal::exact(kz, prec);
    const RVal lnk = kv.log();
    const RVal one = RVal::exact(Rat(1), prec);
    tr.eta_data = ((one - RVal::exact(Int(tr.R), prec) / kv) * lnk).mid();
    // R <= (1 - 1.31/log k) k
    tr.R_bound_ok = RVal::exact(Int(tr.R), prec)
                        .definitely_le((one - RVal::exact(Rat(131, 100), prec) / lnk) * kv);
    // #small >= 0.3 k / log k
    tr.spark_ok = RVal::exact(Int(tr.small_count), prec)
                      .definitely_ge(RVal::exact(Rat(3, 10), prec) * kv / lnk);
    tr.two_log_two_gt_131 =
        (RVal::exact(Rat(2), prec) * RVal::exact(Rat(2), prec).log())
            .definitely_gt(RVal::exact(Rat(131, 100), prec));
    tr.incr_177_ok = (RVal::exact(Rat(177, 100), prec) * RVal::exact(Rat(177, 100), prec).log())
                         .definitely_ge(RVal::exact(Rat(101, 100), prec));

    if (!tr.prod_all_le_kfact)
        tr.first_broken = "prod_{i in I} a_i <= k!";
    else if (!tr.prod_large_le_kfact)
        tr.first_broken = "prod_{i in I, a_i >= k} a_i <= k!";
    else if (!tr.R_bound_ok)
        tr.first_broken = "R <= (1 - 1.31/log k) k";
    else if (!tr.spark_ok)
        tr.first_broken = "#small >= 0.3 k / log k";

    // delta0 ladder: small >= (d0+1/1000) k/log k forces |A| >= (d0+1/2000) k/log k,
    // which forces distinct >= d0' k/log k for d0' = d0 + 1/2000, and so on.
    const RVal cap = RVal::exact(Rat(23, 100), prec) * lnk;
    const RVal kl = kv / lnk;
    bool pipeline_trigger = false;
    Rat delta0(29, 100);
    constexpr size_t kMaxStoredRounds = 32;
    while (true) {
        RVal d0 = RVal::exact(delta0, prec);
        if (d0.definitely_gt(cap)) {
            tr.density_certified = true;
            break;
        }
        MassRound round;
        round.delta0 = d0.mid();
        round.distinct_ok = RVal::exact(Int(tr.distinct_count), prec).definitely_ge(d0 * kl);
        round.small_ok =
            RVal::exact(Int(tr.small_count), prec)
                .definitely_ge((d0 + RVal::exact(Rat(1, 1000), prec)) * kl);
        round.calA_ok = RVal::exact(Int(tr.calA), prec)
                            .definitely_ge((d0 + RVal::exact(Rat(1, 2000), prec)) * kl);
        ++tr.rounds_total;
        if (tr.rounds.size() < kMaxStoredRounds) tr.rounds.push_back(round);
        tr.delta0_final = round.delta0;
        if (round.small_ok && !round.calA_ok) {
            pipeline_trigger = true; // data contradicts the accumulation lemma
            if (tr.first_broken.empty())
                tr.first_broken = "|A| >= (delta0 + 1/2000) k/log k at delta0 = " +
                                  delta0.get_str();
            break;
        }
        if (!round.small_ok) {
            if (tr.first_broken.empty())
                tr.first_broken =
                    "#small >= (delta0 + 1/1000) k/log k at delta0 = " + delta0.get_str();
            break;
        }
        delta0 += Rat(1, 2000);
    }
    tr.density_023_ok = Int(tr.distinct_count) * 100 >= 23 * kz;

    if (!pipeline_trigger) return tr;

    // ---- collision pipeline (Lemma: not enough distinct a_i gives pairs) ----
    tr.pipeline_ran = true;
    const Int dl = ts.cand.d_pow_l();

    // T'(alpha), then strip indices with a_i < k and |t_i| = 1
    std::set<uint64_t> index_in_I(tr.I.begin(), tr.I.end());
    std::map<Int, std::vector<const TermFactorization*>> T; // alpha -> members (index order)
    for (const auto& tf : ts.terms) {
        if (!index_in_I.count(tf.index) || tf.a >= kz) continue;
        if (tf.t && abs(*tf.t) == 1) {
            ++tr.stripped_trivial;
            continue;
        }
        T[tf.a].push_back(&tf);
    }

    auto usable = [](const TermFactorization* tf) { return tf->t.has_value(); };

    // dyadic block N maximizing the usable mass of classes with >= 2 usable members
    uint64_t bestN = 0;
    size_t best_mass = 0;
    for (uint64_t N = 1; N / 2 < k; N = N == 0 ? 1 : N * 2) {
        size_t mass = 0;
        for (auto& [alpha, members] : T) {
            if (alpha <= Int(N / 2) || alpha > Int(N)) continue;
            size_t u = 0;
            for (auto* tf : members)
                if (usable(tf)) ++u;
            if (u >= 2) mass += u;
        }
        if (mass > best_mass) {
            best_mass = mass;
            bestN = N;
        }
        if (N >= k) break;
    }
    if (best_mass == 0) {
        tr.note += (tr.note.empty() ? "" : "; ");
        tr.note += "collision pipeline: no class has two members with usable t";
        return tr;
    }
    tr.dyadic_N = bestN;

    // cover [0, k-1] by intervals of length N (log k)^3
    RVal len_r = RVal::exact(Int(bestN), prec) * lnk * lnk * lnk;
    uint64_t interval_len = static_cast<uint64_t>(len_r.hi_d()) + 1;

    std::vector<MassPair> candidates;
    for (auto& [alpha, members] : T) {
        if (alpha <= Int(bestN / 2) || alpha > Int(bestN)) continue;
        for (uint64_t lo = 0; lo < k; lo += interval_len) {
            uint64_t hi = lo + interval_len; // [lo, hi)
            // first usable pair inside the interval, lexicographic scan
            std::vector<const TermFactorization*> in;
            for (auto* tf : members) {
                if (tf->index < lo || tf->index >= hi) continue;
                if (usable(tf)) in.push_back(tf);
                else ++tr.pairs_skipped_no_t;
            }
            bool done = false;
            for (size_t a = 0; a + 1 < in.size() && !done; ++a) {
                for (size_t c = a + 1; c < in.size() && !done; ++c) {
                    const auto *pj = in[a], *pi = in[c]; // pi->index > pj->index
                    ++tr.pairs_considered;
                    if (!mpz_divisible_p(Int(pi->index - pj->index).get_mpz_t(),
                                         alpha.get_mpz_t()))
                        continue;
                    Int diff = pi->rough - pj->rough; // t_i^l - t_j^l
                    if (diff == 0) continue;
                    if (!mpz_divisible_p(diff.get_mpz_t(), dl.get_mpz_t())) continue;
                    MassPair mp;
                    mp.i = pi->index;
                    mp.j = pj->index;
                    mp.A = diff / dl;
                    candidates.push_back(mp);
                    done = true;
                }
            }
        }
    }
    if (candidates.empty()) {
        tr.note += (tr.note.empty() ? "" : "; ");
        tr.note += "collision pipeline: no interval produced an admissible pair";
        return tr;
    }

    // majority vote on A; ties broken by smaller |A|, then positive sign
    std::map<Int, size_t> votes;
    for (const auto& mp : candidates) ++votes[mp.A];
    Int A0 = candidates.front().A;
    size_t best_votes = 0;
    for (auto& [A, n] : votes) {
        bool better = n > best_votes;
        if (n == best_votes) {
            if (abs(A) < abs(A0)) better = true;
            else if (abs(A) == abs(A0) && A > A0) better = true;
        }
        if (better) {
            best_votes = n;
            A0 = A;
        }
    }
    tr.A0 = A0;
    for (auto& mp : candidates) {
        if (mp.A != A0) continue;
        Int lhs = ts.terms[mp.i].rough - ts.terms[mp.j].rough;
        mp.verified = (lhs == A0 * dl);
        tr.pairs.push_back(mp);
    }
    return tr;
}

} // namespace es
