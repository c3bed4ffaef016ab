#include "es/aux_curves.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <tuple>

namespace es {

namespace {

Int ipow(Int base, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// largest u with u^l | n; returns (n / u^l, u)
std::pair<Int, Int> strip_lth_power(const Int& n, unsigned l) {
    Int core = n, unit = 1;
    for (const auto& [p, e] : factorize(abs(n))) {
        unsigned q = e / l;
        if (q == 0) continue;
        Int pl = ipow(p, q * l);
        core /= pl;
        unit *= ipow(p, q);
    }
    return {core, unit};
}

} // namespace

Int AuxCurve::height() const { return std::max({Int(abs(A)), Int(abs(B)), Int(abs(C))}); }

AuxCurve normalize(const AuxCurve& c) {
    if (c.A == 0 || c.B == 0 || c.C == 0)
        throw precondition_error("normalize: coefficients must be nonzero");
    if (c.l < 3 || !is_prime(Int(c.l)))
        throw precondition_error("normalize: l must be a prime >= 3");
    AuxCurve out = c;
    Int g = gcd(gcd(out.A, out.B), out.C);
    if (g > 1) {
        out.A /= g;
        out.B /= g;
        out.C /= g;
        out.gcd_divided = g;
    }
    auto [a, u] = strip_lth_power(out.A, c.l);
    auto [b, v] = strip_lth_power(out.B, c.l);
    auto [cc, w] = strip_lth_power(out.C, c.l);
    out.A = a;
    out.B = b;
    out.C = cc;
    out.ux = u;
    out.uy = v;
    out.uc = w;
    out.normalized = true;
    return out;
}

namespace {

bool on_aux_curve(const AuxCurve& c, const Rat& x, const Rat& y) {
    Rat xl = x, yl = y;
    for (unsigned e = 1; e < c.l; ++e) {
        xl *= x;
        yl *= y;
    }
    return Rat(c.A) * xl + Rat(c.B) * yl == Rat(c.C);
}

std::vector<RationalPoint> enumerate_range(const AuxCurve& c, uint64_t q_lo, uint64_t q_hi,
                                           uint64_t numer_bound) {
    std::vector<RationalPoint> pts;
    const Int nb(numer_bound);
    for (uint64_t q = q_lo; q < q_hi; ++q) {
        Int Cq = c.C * ipow(Int(q), c.l);
        for (Int p = -nb; p <= nb; ++p) {
            // B r^l = C q^l - A p^l with the same denominator q
            Int rest = Cq - c.A * ipow(p, c.l);
            if (!mpz_divisible_p(rest.get_mpz_t(), c.B.get_mpz_t())) continue;
            auto r = perfect_power_root(rest / c.B, c.l); // l odd prime here
            if (!r || abs(*r) > nb) continue;
            pts.push_back({Rat(p, Int(q)), Rat(*r, Int(q))});
            pts.back().x.canonicalize();
            pts.back().y.canonicalize();
        }
    }
    return pts;
}

} // namespace

std::vector<RationalPoint> enumerate_points(const AuxCurve& c, uint64_t denom_bound,
                                            uint64_t numer_bound, EnumMode mode,
                                            unsigned shards) {
    if (denom_bound < 1 || numer_bound < 1)
        throw precondition_error("enumerate_points: bounds must be >= 1");
    if (c.A == 0 || c.B == 0 || c.C == 0)
        throw precondition_error("enumerate_points: coefficients must be nonzero");

    std::vector<RationalPoint> pts;
    if (mode == EnumMode::full_grid) {
        // oracle mode: independent reduced fractions p/q, r/s
        const Int nb(numer_bound);
        for (uint64_t q = 1; q <= denom_bound; ++q) {
            for (Int p = -nb; p <= nb; ++p) {
                Rat x(p, Int(q));
                x.canonicalize();
                if (x.get_den() != Int(q)) continue;
                for (uint64_t s = 1; s <= denom_bound; ++s) {
                    for (Int r = -nb; r <= nb; ++r) {
                        Rat y(r, Int(s));
                        y.canonicalize();
                        if (y.get_den() != Int(s)) continue;
                        if (on_aux_curve(c, x, y)) pts.push_back({x, y});
                    }
                }
            }
        }
    } else {
        if (shards < 1) shards = 1;
        if (shards > denom_bound) shards = static_cast<unsigned>(denom_bound);
        std::vector<std::future<std::vector<RationalPoint>>> jobs;
        uint64_t per = denom_bound / shards, extra = denom_bound % shards;
        uint64_t q = 1;
        for (unsigned s = 0; s < shards; ++s) {
            uint64_t n = per + (s < extra ? 1 : 0);
            uint64_t lo = q, hi = q + n;
            q = hi;
            jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
                return enumerate_range(c, lo, hi, numer_bound);
            }));
        }
        for (auto& j : jobs) {
            auto part = j.get();
            pts.insert(pts.end(), part.begin(), part.end());
        }
    }
    std::sort(pts.begin(), pts.end(), point_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const RationalPoint& a, const RationalPoint& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    return pts;
}

FaltingsBound faltings_log_bound(unsigned l, const Int& H, mpfr_prec_t prec) {
    if (l < 5 || !is_prime(Int(l)))
        throw precondition_error("faltings_log_bound: l must be a prime >= 5 (genus >= 2)");
    if (H < 1) throw precondition_error("faltings_log_bound: H must be >= 1");
    Int l4 = ipow(Int(l), 4);
    if (!mpz_fits_ulong_p(l4.get_mpz_t()))
        throw precondition_error("faltings_log_bound: l out of range");
    Int five_l4;
    mpz_ui_pow_ui(five_l4.get_mpz_t(), 5, mpz_get_ui(l4.get_mpz_t()));
    RVal ln3H = RVal::exact(Int(3 * H), prec).log();
    FaltingsBound out{RVal(prec), RVal(prec)};
    out.ln_bound = RVal::exact(five_l4, prec) * ln3H * ln3H.log();
    out.ln_ln_bound = out.ln_bound.log();
    return out;
}

bool faltings_fits_sqrt_log(unsigned l, uint64_t e) {
    Int lhs = 2 * ipow(Int(l), 4);
    return lhs <= Int(e);
}

PairsToPoints pairs_to_points(const std::vector<CollisionTuple>& tuples, unsigned l) {
    if (l < 3 || !is_prime(Int(l)))
        throw precondition_error("pairs_to_points: l must be a prime >= 3");
    std::map<std::tuple<Int, Int, Int>, std::vector<const CollisionTuple*>> groups;
    for (size_t idx = 0; idx < tuples.size(); ++idx) {
        const auto& t = tuples[idx];
        if (t.d == 0) throw validation_error("pairs_to_points: tuple " + std::to_string(idx) +
                                             " has d = 0");
        if (t.f * ipow(t.t_i, l) - t.g * ipow(t.t_j, l) != t.h * ipow(t.d, l))
            throw validation_error("pairs_to_points: tuple " + std::to_string(idx) +
                                   " fails f t_i^l - g t_j^l = h d^l");
        groups[{t.f, -t.g, t.h}].push_back(&t);
    }

    PairsToPoints out;
    for (auto& [key, members] : groups) {
        AuxGroup g;
        g.curve = AuxCurve{std::get<0>(key), std::get<1>(key), std::get<2>(key), l};
        // distinctness precondition: pairwise coprime t values, none a unit
        bool guarded = true;
        std::vector<Int> ts;
        for (auto* m : members) {
            if (abs(m->t_i) == 1 || abs(m->t_j) == 1) guarded = false;
            ts.push_back(m->t_i);
            ts.push_back(m->t_j);
        }
        for (size_t i = 0; guarded && i + 1 < ts.size(); ++i)
            for (size_t j = i + 1; guarded && j < ts.size(); ++j)
                if (ts[i] != ts[j] && gcd(ts[i], ts[j]) != 1) guarded = false;

        std::set<std::pair<Rat, Rat>> seen;
        for (auto* m : members) {
            Rat x(m->t_i, m->d), y(m->t_j, m->d);
            x.canonicalize();
            y.canonicalize();
            if (!seen.insert({x, y}).second) {
                if (guarded)
                    throw validation_error(
                        "pairs_to_points: duplicate point from coprime nontrivial t values");
                continue;
            }
            g.points.push_back({x, y});
        }
        std::sort(g.points.begin(), g.points.end(), point_less);
        out.groups.push_back(std::move(g));
    }
    for (size_t i = 0; i < out.groups.size(); ++i)
        if (out.groups[i].points.size() > out.groups[out.largest].points.size()) out.largest = i;
    return out;
}

} // namespace es
