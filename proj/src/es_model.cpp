#include "es/es_model.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>

namespace es {

bool point_less(const RationalPoint& a, const RationalPoint& b) {
    if (a.x.get_den() != b.x.get_den()) return a.x.get_den() < b.x.get_den();
    if (a.x.get_num() != b.x.get_num()) return a.x.get_num() < b.x.get_num();
    return a.y < b.y;
}

uint64_t genus(const EsCurve& c) {
    if (c.k < 2 || c.l < 2) throw precondition_error("genus: k, l must be >= 2");
    Int g = gcd(Int(c.k), Int(c.l));
    Int val = Int(c.k) * c.l - c.l - c.k - g;
    // val is even and >= -2 for k,l >= 2
    Int gen = 1 + val / 2;
    return gen.get_ui();
}

Rat curve_product(const EsCurve& c, const Rat& x) {
    Rat prod(1);
    for (uint64_t i = 0; i < c.k; ++i) prod *= x + Rat(Int(i));
    prod.canonicalize();
    return prod;
}

static Rat rat_pow(const Rat& b, unsigned e) {
    Rat r(1);
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

bool is_on_curve(const EsCurve& c, const RationalPoint& p) {
    return rat_pow(p.y, c.l) == curve_product(c, p.x);
}

std::vector<RationalPoint> trivial_points(const EsCurve& c) {
    std::vector<RationalPoint> pts;
    pts.reserve(c.k);
    for (uint64_t i = 0; i < c.k; ++i) pts.push_back({Rat(-Int(i)), Rat(0)});
    return pts;
}

SanderCatalog sander_catalog(const EsCurve& c, uint64_t param_bound) {
    SanderCatalog cat;
    if (c.k == 2 && c.l == 2) {
        std::set<std::pair<Rat, Rat>> seen;
        long bound = static_cast<long>(param_bound);
        for (long a = -bound; a <= bound; ++a) {
            if (a == 0) continue;
            for (long b = -bound; b <= bound; ++b) {
                if (b == 0 || b == a || b == -a) continue;
                Int den = Int(b) * b - Int(a) * a;
                Rat x(Int(a) * a, den);
                Rat y(Int(a) * b, den);
                x.canonicalize();
                y.canonicalize();
                if (seen.insert({x, y}).second) cat.points.push_back({x, y});
            }
        }
        std::sort(cat.points.begin(), cat.points.end(), point_less);
        return cat;
    }
    if (c.l == 2 && c.k % 2 == 0 && c.k >= 4) {
        uint64_t j = c.k / 2;
        Rat x(1 - Int(2 * j), 2);
        Int num = 1;
        for (uint64_t i = 1; i <= j; ++i) num *= 2 * i - 1;
        Rat y(num, Int(1) << j);
        y.canonicalize();
        if (j % 2 == 0) {
            cat.points.push_back({x, -y});
            cat.points.push_back({x, y});
        } else {
            cat.neg_square_match = (-(y * y) == curve_product(c, x));
            cat.note = "j odd: candidate pair satisfies -y^2 = x(x+1)...(x+k-1)";
        }
        return cat;
    }
    if (c.k == 3 && c.l == 3) {
        cat.points.push_back({Rat(-4, 3), Rat(2, 3)});
        cat.points.push_back({Rat(-2, 3), Rat(-2, 3)});
        std::sort(cat.points.begin(), cat.points.end(), point_less);
        return cat;
    }
    return cat;
}

// One shard of the exhaustive scan: x = p/q with p in [p_lo, p_hi].
static std::vector<RationalPoint> search_shard(const EsCurve& c, const std::vector<Int>& denoms,
                                               const Int& p_lo, const Int& p_hi) {
    std::vector<RationalPoint> out;
    for (const Int& q : denoms) {
        Int qk = 1;
        for (uint64_t i = 0; i < c.k; ++i) qk *= q;
        auto v = perfect_power_root(qk, c.l);
        if (!v) continue; // admissible q are always exact l-th powers of q^k
        for (Int p = p_lo; p <= p_hi; ++p) {
            if (gcd(p, q) != 1) continue;
            Int prod = 1;
            for (uint64_t i = 0; i < c.k; ++i) prod *= p + Int(i) * q;
            if (prod == 0) {
                out.push_back({Rat(p, q), Rat(0)});
                continue;
            }
            if (c.l % 2 == 0 && prod < 0) continue;
            auto u = perfect_power_root(prod, c.l);
            if (!u) continue;
            Rat y(*u, *v);
            y.canonicalize();
            if (c.l % 2 == 0) {
                out.push_back({Rat(p, q), -y});
                out.push_back({Rat(p, q), y});
            } else {
                out.push_back({Rat(p, q), y});
            }
        }
    }
    return out;
}

std::vector<RationalPoint> search_points(const EsCurve& c, uint64_t denom_bound,
                                         const Int& numer_bound, unsigned shards) {
    if (denom_bound < 1 || numer_bound < 1)
        throw precondition_error("search_points: bounds must be >= 1");
    if (shards < 1) shards = 1;

    // Lemma 4.1 shape: x = p/q in lowest terms forces q = m^{l/gcd(k,l)}.
    unsigned g = static_cast<unsigned>(Int(gcd(Int(c.k), Int(c.l))).get_ui());
    unsigned e = c.l / g;
    std::vector<Int> denoms;
    for (Int m = 1;; ++m) {
        Int q;
        mpz_pow_ui(q.get_mpz_t(), m.get_mpz_t(), e);
        if (q > Int(denom_bound)) break;
        denoms.push_back(q);
    }

    // disjoint contiguous p-ranges, one per shard
    Int lo = -numer_bound, hi = numer_bound;
    Int total = hi - lo + 1;
    std::vector<std::future<std::vector<RationalPoint>>> futs;
    for (unsigned s = 0; s < shards; ++s) {
        Int a = lo + total * s / shards;
        Int b = lo + total * (s + 1) / shards - 1;
        futs.push_back(std::async(std::launch::async, search_shard, c, denoms, a, b));
    }
    std::vector<RationalPoint> pts;
    for (auto& f : futs) {
        auto part = f.get();
        pts.insert(pts.end(), part.begin(), part.end());
    }
    std::sort(pts.begin(), pts.end(), point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

ApSolution to_ap_solution(const EsCurve& c, const RationalPoint& p) {
    if (gcd(Int(c.k), Int(c.l)) != 1)
        throw precondition_error("to_ap_solution: gcd(k,l) must be 1");
    if (c.l < 3 || !is_prime(Int(c.l)))
        throw precondition_error("to_ap_solution: l must be an odd prime >= 3");
    if (p.y == 0) throw trivial_point_error("to_ap_solution: trivial point (y = 0)");
    if (!is_on_curve(c, p)) throw membership_error("to_ap_solution: point not on curve");

    auto d = perfect_power_root(Int(p.x.get_den()), c.l);
    if (!d)
        throw structure_error("to_ap_solution: denominator of x is not an l-th power");
    Int dk = 1;
    for (uint64_t i = 0; i < c.k; ++i) dk *= *d;
    Rat t_rat = p.y * Rat(dk);
    t_rat.canonicalize();
    if (t_rat.get_den() != 1)
        throw structure_error("to_ap_solution: y * d^k is not an integer");

    ApSolution s{p.x.get_num(), *d, t_rat.get_num(), c.k, c.l, false};
    return validate_ap_solution(std::move(s));
}

ApSolution validate_ap_solution(ApSolution s) {
    if (s.d < 1) throw validation_error("ApSolution: d must be positive");
    if (gcd(s.n, s.d) != 1) throw validation_error("ApSolution: gcd(n,d) != 1");
    Int dl = 1;
    for (unsigned i = 0; i < s.l; ++i) dl *= s.d;
    Int prod = 1;
    for (uint64_t i = 0; i < s.k; ++i) prod *= s.n + Int(i) * dl;
    Int tl = 1;
    for (unsigned i = 0; i < s.l; ++i) tl *= s.t;
    if (prod != tl)
        throw validation_error("ApSolution: product " + prod.get_str() +
                               " is not t^l for the stored t");
    s.validated = true;
    return s;
}

std::pair<EsCurve, RationalPoint> from_ap_solution(const ApSolution& s) {
    ApSolution v = validate_ap_solution(s);
    Int dl = 1, dk = 1;
    for (unsigned i = 0; i < v.l; ++i) dl *= v.d;
    for (uint64_t i = 0; i < v.k; ++i) dk *= v.d;
    Rat x(v.n, dl);
    Rat y(v.t, dk);
    x.canonicalize();
    y.canonicalize();
    return {EsCurve{v.k, v.l}, RationalPoint{x, y}};
}

} // namespace es
