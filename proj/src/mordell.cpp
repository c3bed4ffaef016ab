#include "es/mordell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include <mpfr.h>

namespace es {

namespace {

Int ipow(const Int& base, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat rat_pow(Rat x, unsigned e) {
    Rat r(1);
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
}

} // namespace

Int WeierstrassCurve::discriminant() const { return -16 * (4 * ipow(a, 3) + 27 * ipow(b, 2)); }

CurvePoint CurvePoint::affine(Rat px, Rat py) {
    px.canonicalize();
    py.canonicalize();
    return {false, px, py};
}

bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
}

bool curve_point_less(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity != q.infinity) return p.infinity; // infinity first
    if (p.infinity) return false;
    if (p.x.get_den() != q.x.get_den()) return p.x.get_den() < q.x.get_den();
    if (p.x.get_num() != q.x.get_num()) return p.x.get_num() < q.x.get_num();
    return p.y < q.y;
}

bool on_curve(const WeierstrassCurve& c, const CurvePoint& p) {
    if (p.infinity) return true;
    return p.y * p.y == rat_pow(p.x, 3) + Rat(c.a) * p.x + Rat(c.b);
}

CurvePoint negate(const CurvePoint& p) {
    if (p.infinity) return p;
    return {false, p.x, -p.y};
}

CurvePoint add(const WeierstrassCurve& c, const CurvePoint& p, const CurvePoint& q) {
    if (!on_curve(c, p) || !on_curve(c, q))
        throw precondition_error("add: point not on curve");
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
        if (p.y == -q.y) return CurvePoint::inf(); // includes y = 0 doubling
        // p == q, tangent line
        Rat lambda = (3 * p.x * p.x + Rat(c.a)) / (2 * p.y);
        Rat x3 = lambda * lambda - 2 * p.x;
        Rat y3 = lambda * (p.x - x3) - p.y;
        x3.canonicalize();
        y3.canonicalize();
        return {false, x3, y3};
    }
    Rat lambda = (q.y - p.y) / (q.x - p.x);
    Rat x3 = lambda * lambda - p.x - q.x;
    Rat y3 = lambda * (p.x - x3) - p.y;
    x3.canonicalize();
    y3.canonicalize();
    return {false, x3, y3};
}

CurvePoint double_point(const WeierstrassCurve& c, const CurvePoint& p) { return add(c, p, p); }

CurvePoint multiply(const WeierstrassCurve& c, uint64_t n, const CurvePoint& p) {
    CurvePoint acc = CurvePoint::inf();
    CurvePoint base = p;
    while (n) {
        if (n & 1) acc = add(c, acc, base);
        n >>= 1;
        if (n) base = double_point(c, base);
    }
    return acc;
}

Int naive_height_point(const CurvePoint& p) {
    if (p.infinity) return 1;
    return std::max(Int(abs(p.x.get_num())), Int(p.x.get_den()));
}

double weil_height(const CurvePoint& p) {
    Int H = naive_height_point(p);
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_z(t, H.get_mpz_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    double h = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return h;
}

namespace {

// duplication map on x-coordinates as a pair of integer quartic forms:
// x(2P) = F(x,z)/G(x,z) for x(P) = x/z
// F = (x^2 - a z^2)^2 - 8 b x z^3
// G = 4 z (x^3 + a x z^2 + b z^3)
std::pair<std::array<Int, 5>, std::array<Int, 5>> duplication_forms(const WeierstrassCurve& c) {
    std::array<Int, 5> F{Int(1), Int(0), -2 * c.a, -8 * c.b, c.a * c.a};
    std::array<Int, 5> G{Int(0), Int(4), Int(0), 4 * c.a, 4 * c.b};
    return {F, G};
}

// Sylvester resultant of two quartic forms, fraction-free elimination
Int quartic_resultant(const std::array<Int, 5>& f, const std::array<Int, 5>& g) {
    constexpr int n = 8;
    Rat m[n][n] = {};
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 5; ++k) {
            m[r][r + k] = Rat(f[k]);
            m[r + 4][r + k] = Rat(g[k]);
        }
    Rat det(1);
    for (int i = 0; i < n; ++i) {
        int piv = -1;
        for (int r = i; r < n; ++r)
            if (m[r][i] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != i) {
            for (int k = 0; k < n; ++k) std::swap(m[piv][k], m[i][k]);
            det = -det;
        }
        det *= m[i][i];
        for (int r = i + 1; r < n; ++r) {
            if (m[r][i] == 0) continue;
            Rat fct = m[r][i] / m[i][i];
            for (int k = i; k < n; ++k) m[r][k] -= fct * m[i][k];
        }
    }
    det.canonicalize();
    return det.get_num(); // denominator is 1
}

// archimedean contribution: log m0 + sum 4^{-(n+1)} log mu_n over the
// normalized real duplication iteration
double archimedean_part(const WeierstrassCurve& c, const Rat& x, int iters) {
    const mpfr_prec_t prec = 320;
    mpfr_t X, Z, F, G, T, acc, scale;
    mpfr_inits2(prec, X, Z, F, G, T, acc, scale, (mpfr_ptr) nullptr);
    mpfr_t A, B;
    mpfr_inits2(prec, A, B, (mpfr_ptr) nullptr);
    mpfr_set_z(A, c.a.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(B, c.b.get_mpz_t(), MPFR_RNDN);

    Int m0 = std::max(Int(abs(x.get_num())), Int(x.get_den()));
    mpfr_set_z(acc, m0.get_mpz_t(), MPFR_RNDN);
    mpfr_log(acc, acc, MPFR_RNDN);
    mpfr_set_z(X, x.get_num().get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(Z, x.get_den().get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(T, m0.get_mpz_t(), MPFR_RNDN);
    mpfr_div(X, X, T, MPFR_RNDN);
    mpfr_div(Z, Z, T, MPFR_RNDN);

    for (int n = 0; n < iters; ++n) {
        // F = (X^2 - a Z^2)^2 - 8 b X Z^3
        mpfr_sqr(F, X, MPFR_RNDN);
        mpfr_sqr(T, Z, MPFR_RNDN);
        mpfr_fms(F, A, T, F, MPFR_RNDN); // a Z^2 - X^2
        mpfr_sqr(F, F, MPFR_RNDN);
        mpfr_mul(T, T, Z, MPFR_RNDN); // Z^3
        mpfr_mul(T, T, X, MPFR_RNDN);
        mpfr_mul(T, T, B, MPFR_RNDN);
        mpfr_mul_si(T, T, -8, MPFR_RNDN);
        mpfr_add(F, F, T, MPFR_RNDN);
        // G = 4 Z (X^3 + a X Z^2 + b Z^3)
        mpfr_sqr(G, X, MPFR_RNDN);
        mpfr_mul(G, G, X, MPFR_RNDN);
        mpfr_sqr(T, Z, MPFR_RNDN);
        mpfr_mul(T, T, X, MPFR_RNDN);
        mpfr_mul(T, T, A, MPFR_RNDN);
        mpfr_add(G, G, T, MPFR_RNDN);
        mpfr_sqr(T, Z, MPFR_RNDN);
        mpfr_mul(T, T, Z, MPFR_RNDN);
        mpfr_mul(T, T, B, MPFR_RNDN);
        mpfr_add(G, G, T, MPFR_RNDN);
        mpfr_mul(G, G, Z, MPFR_RNDN);
        mpfr_mul_ui(G, G, 4, MPFR_RNDN);

        mpfr_abs(T, F, MPFR_RNDN);
        mpfr_abs(scale, G, MPFR_RNDN);
        mpfr_max(scale, scale, T, MPFR_RNDN);
        mpfr_log(T, scale, MPFR_RNDN);
        mpfr_div_2ui(T, T, 2 * (n + 1), MPFR_RNDN); // 4^{-(n+1)}
        mpfr_add(acc, acc, T, MPFR_RNDN);
        mpfr_div(X, F, scale, MPFR_RNDN);
        mpfr_div(Z, G, scale, MPFR_RNDN);
    }
    double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clears(X, Z, F, G, T, acc, scale, A, B, (mpfr_ptr) nullptr);
    return out;
}

// p-adic gcd drift of the unreduced duplication iterates:
// sum 4^{-(n+1)} u_n where u_n = v_p(gcd(F, G)) at step n
double padic_part(const WeierstrassCurve& c, const Rat& x, const Int& p, unsigned vres,
                  int iters) {
    auto [Fc, Gc] = duplication_forms(c);
    // enough p-adic precision to survive iters divisions of at most vres each
    Int mod = ipow(p, vres * (iters + 2) + 16);
    Int X = x.get_num() % mod, Z = x.get_den() % mod;
    if (X < 0) X += mod;
    double acc = 0;
    for (int n = 0; n < iters; ++n) {
        // evaluate forms by Horner in X with Z powers
        auto eval = [&](const std::array<Int, 5>& co) {
            Int acc_v = 0;
            for (int k = 0; k < 5; ++k) acc_v = (acc_v * X + co[k] * ipow(Z, k) % mod) % mod;
            return Int(acc_v % mod);
        };
        Int Fv = eval(Fc);
        Int Gv = eval(Gc);
        if (Fv < 0) Fv += mod;
        if (Gv < 0) Gv += mod;
        unsigned u = 0;
        while (u < vres && mpz_divisible_p(Fv.get_mpz_t(), p.get_mpz_t()) &&
               mpz_divisible_p(Gv.get_mpz_t(), p.get_mpz_t())) {
            Fv /= p;
            Gv /= p;
            ++u;
        }
        acc += u / std::ldexp(1.0, 2 * (n + 1));
        X = Fv % mod;
        Z = Gv % mod;
    }
    return acc * std::log(mpz_get_d(p.get_mpz_t()));
}

} // namespace

double canonical_height(const WeierstrassCurve& c, const CurvePoint& p, double tol) {
    if (!on_curve(c, p)) throw precondition_error("canonical_height: point not on curve");
    if (tol <= 0) throw precondition_error("canonical_height: tol must be positive");
    if (c.discriminant() == 0) throw precondition_error("canonical_height: singular curve");
    if (p.infinity) return 0;

    // torsion short-circuit (Mazur: order <= 12)
    for (uint64_t n = 1; n <= 12; ++n)
        if (multiply(c, n, p).infinity) return 0;

    // iterations: geometric error ~ C 4^{-iters}
    int iters = 8;
    while (std::ldexp(1.0, 2 * iters) * tol < 200 && iters < 40) ++iters;

    double h = archimedean_part(c, p.x, iters);
    auto [F, G] = duplication_forms(c);
    Int res = abs(quartic_resultant(F, G));
    if (res == 0) throw std::logic_error("canonical_height: degenerate duplication forms");
    for (const auto& [q, e] : factorize(res)) {
        unsigned vres = e;
        h -= padic_part(c, p.x, q, vres, iters);
    }
    return h;
}

namespace {

// integer roots of x^3 + a x + c
std::vector<Int> integer_cubic_roots(const Int& a, const Int& c) {
    std::vector<Int> roots;
    auto is_root = [&](const Int& x) { return ipow(x, 3) + a * x + c == 0; };
    if (c == 0) {
        roots.push_back(0);
        if (a < 0) {
            if (auto r = perfect_power_root(-a, 2)) {
                roots.push_back(*r);
                roots.push_back(-*r);
            }
        }
    } else {
        // any integer root divides c
        std::vector<Int> divs{1};
        for (const auto& [p, e] : factorize(abs(c))) {
            size_t sz = divs.size();
            Int pk = 1;
            for (unsigned i = 1; i <= e; ++i) {
                pk *= p;
                for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
            }
        }
        for (const auto& d : divs) {
            if (is_root(d)) roots.push_back(d);
            if (is_root(-d)) roots.push_back(-d);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace

std::vector<CurvePoint> torsion_points(const WeierstrassCurve& c) {
    Int disc = c.discriminant();
    if (disc == 0) throw precondition_error("torsion_points: singular curve");

    std::vector<CurvePoint> candidates;
    candidates.push_back(CurvePoint::inf());

    // y = 0: 2-torsion at integer roots of the cubic
    for (const auto& x : integer_cubic_roots(c.a, c.b))
        candidates.push_back(CurvePoint::affine(Rat(x), Rat(0)));

    // y != 0 with y^2 | disc
    std::vector<Int> ys;
    {
        std::vector<Int> divs{1};
        for (const auto& [p, e] : factorize(abs(disc))) {
            size_t sz = divs.size();
            Int pk = 1;
            for (unsigned i = 1; i <= e / 2; ++i) {
                pk *= p;
                for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
            }
        }
        ys = std::move(divs);
    }
    for (const auto& y : ys) {
        for (const auto& x : integer_cubic_roots(c.a, c.b - y * y)) {
            candidates.push_back(CurvePoint::affine(Rat(x), Rat(y)));
            candidates.push_back(CurvePoint::affine(Rat(x), Rat(-y)));
        }
    }

    // keep candidates of finite order (Mazur: order <= 12)
    std::vector<CurvePoint> tors;
    for (const auto& p : candidates) {
        if (!on_curve(c, p)) continue;
        for (uint64_t n = 1; n <= 12; ++n) {
            if (multiply(c, n, p).infinity) {
                tors.push_back(p);
                break;
            }
        }
    }
    std::sort(tors.begin(), tors.end(), curve_point_less);
    tors.erase(std::unique(tors.begin(), tors.end()), tors.end());

    // close under addition
    bool grew = true;
    while (grew) {
        grew = false;
        size_t sz = tors.size();
        for (size_t i = 0; i < sz && !grew; ++i) {
            for (size_t j = i; j < sz && !grew; ++j) {
                CurvePoint s = add(c, tors[i], tors[j]);
                if (std::find(tors.begin(), tors.end(), s) == tors.end()) {
                    tors.push_back(s);
                    grew = true;
                }
            }
        }
    }
    std::sort(tors.begin(), tors.end(), curve_point_less);
    if (tors.size() > 16)
        throw std::logic_error("torsion_points: subgroup exceeds the Mazur cap");
    return tors;
}

std::vector<CurvePoint> search_points_naive(const WeierstrassCurve& c, const Int& H_bound) {
    if (H_bound < 1) throw precondition_error("search_points_naive: H_bound must be >= 1");
    std::vector<CurvePoint> pts;
    for (Int q = 1; q * q <= H_bound; ++q) {
        Int q2 = q * q, q4 = q2 * q2, q6 = q4 * q2;
        for (Int p = -H_bound; p <= H_bound; ++p) {
            if (gcd(p, q) != 1) continue;
            Int rhs = ipow(p, 3) + c.a * p * q4 + c.b * q6; // (y q^3)^2
            if (rhs < 0) continue;
            if (!mpz_perfect_square_p(rhs.get_mpz_t())) continue;
            Int r;
            mpz_sqrt(r.get_mpz_t(), rhs.get_mpz_t());
            Rat x(p, q2), y(r, q * q2);
            x.canonicalize();
            y.canonicalize();
            pts.push_back({false, x, y});
            if (r != 0) pts.push_back({false, x, -y});
        }
    }
    std::sort(pts.begin(), pts.end(), curve_point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

double gram_det(std::vector<std::vector<double>> m) {
    const size_t n = m.size();
    double det = 1;
    for (size_t i = 0; i < n; ++i) {
        size_t piv = i;
        for (size_t r = i + 1; r < n; ++r)
            if (std::fabs(m[r][i]) > std::fabs(m[piv][i])) piv = r;
        if (std::fabs(m[piv][i]) < 1e-300) return 0;
        if (piv != i) {
            std::swap(m[piv], m[i]);
            det = -det;
        }
        det *= m[i][i];
        for (size_t r = i + 1; r < n; ++r) {
            double f = m[r][i] / m[i][i];
            for (size_t col = i; col < n; ++col) m[r][col] -= f * m[i][col];
        }
    }
    return det;
}

} // namespace

unsigned rank_lower_bound(const WeierstrassCurve& c, const std::vector<CurvePoint>& points,
                          double tol) {
    const double htol = tol / 10 > 1e-9 ? 1e-9 : tol / 10;
    std::vector<CurvePoint> basis;
    std::vector<double> heights;
    auto pairing = [&](const CurvePoint& p, double hp, const CurvePoint& q, double hq) {
        return (canonical_height(c, add(c, p, q), htol) - hp - hq) / 2;
    };
    for (const auto& p : points) {
        if (p.infinity) continue;
        double hp = canonical_height(c, p, htol);
        if (hp <= tol) continue; // torsion
        std::vector<CurvePoint> trial = basis;
        std::vector<double> th = heights;
        trial.push_back(p);
        th.push_back(hp);
        size_t n = trial.size();
        std::vector<std::vector<double>> gram(n, std::vector<double>(n));
        for (size_t i = 0; i < n; ++i) {
            gram[i][i] = th[i];
            for (size_t j = i + 1; j < n; ++j)
                gram[i][j] = gram[j][i] = pairing(trial[i], th[i], trial[j], th[j]);
        }
        if (gram_det(gram) > tol) {
            basis = std::move(trial);
            heights = std::move(th);
        }
        if (basis.size() >= 8) break;
    }
    return static_cast<unsigned>(basis.size());
}

HeightBallResult count_height_ball(const WeierstrassCurve& c, const HeightBallQuery& q,
                                   const std::vector<CurvePoint>& points, double tol) {
    if (q.r >= 1 && q.H < q.L)
        throw precondition_error("count_height_ball: need H >= L when r >= 1");
    if (q.L <= 0) throw precondition_error("count_height_ball: L must be positive");
    HeightBallResult out;
    bool saw_inf = false;
    for (const auto& p : points) {
        if (p.infinity) saw_inf = true;
        if (canonical_height(c, p, tol) <= q.H + tol) ++out.count;
    }
    if (!saw_inf) ++out.count; // infinity always lies in the ball
    double ratio = q.H / q.L;
    out.bound_nac = 16 * std::pow(1 + 2 * std::sqrt(ratio), (double)q.r);
    out.bound_prop = 16 * std::pow(9 * ratio, q.r / 2.0);
    out.nac_ok = out.count <= out.bound_nac;
    out.prop_ok = out.count <= out.bound_prop;
    return out;
}

MordellPoint cubes_to_mordell(const Int& t_i, const Int& t_j, const Int& d, const Int& A0) {
    if (t_i == t_j) throw precondition_error("cubes_to_mordell: t_i = t_j");
    if (d == 0) throw precondition_error("cubes_to_mordell: d = 0");
    if (ipow(t_i, 3) - ipow(t_j, 3) != A0 * ipow(d, 3))
        throw precondition_error("cubes_to_mordell: t_i^3 - t_j^3 != A0 d^3");
    for (const auto& [p, e] : factorize(abs(A0)))
        if (e >= 3) throw precondition_error("cubes_to_mordell: A0 not cubefree");

    MordellPoint out;
    out.t_i = t_i;
    out.t_j = t_j;
    out.U_raw = Rat(12 * A0 * d, t_i - t_j);
    out.V_raw = Rat(36 * A0 * (t_i + t_j), t_i - t_j);
    out.U_raw.canonicalize();
    out.V_raw.canonicalize();
    out.D_raw = 432 * A0 * A0;
    if (rat_pow(out.V_raw, 2) != rat_pow(out.U_raw, 3) - Rat(out.D_raw))
        throw std::logic_error("cubes_to_mordell: substitution identity failed");

    // strip 2^6 / 3^6 from D, scaling (U, V) by (s^2, s^3)
    out.U = out.U_raw;
    out.V = out.V_raw;
    out.D = out.D_raw;
    for (Int s : {Int(2), Int(3)}) {
        Int s6 = ipow(s, 6);
        while (mpz_divisible_p(out.D.get_mpz_t(), s6.get_mpz_t())) {
            out.D /= s6;
            out.U /= s * s;
            out.V /= s * s * s;
            out.U.canonicalize();
            out.V.canonicalize();
        }
    }
    out.curve = WeierstrassCurve{Int(0), -out.D};
    return out;
}

TernaryWeierstrassPoint ternary_to_weierstrass(const Int& A, const Int& B, const Int& C,
                                               const Int& t_i, const Int& t_j, const Int& d) {
    if (A == 0 || B == 0 || C == 0)
        throw precondition_error("ternary_to_weierstrass: zero coefficient");
    if (d == 0) throw precondition_error("ternary_to_weierstrass: d = 0");
    if (A * ipow(t_i, 3) - B * ipow(t_j, 3) != C * ipow(d, 3))
        throw precondition_error("ternary_to_weierstrass: A t_i^3 - B t_j^3 != C d^3");
    if (gcd(A, B) != 1 || gcd(A, C) != 1 || gcd(B, C) != 1)
        throw precondition_error("ternary_to_weierstrass: A, B, C must be pairwise coprime");
    for (const Int& v : {A, B, C})
        for (const auto& [p, e] : factorize(abs(v)))
            if (e >= 3)
                throw precondition_error("ternary_to_weierstrass: coefficients must be cubefree");

    TernaryWeierstrassPoint out;
    out.kappa = mpz_even_p(C.get_mpz_t()) ? 0 : 1;
    const Rat two_k = out.kappa ? Rat(2) : Rat(1);          // 2^kappa
    const Rat two_2k = out.kappa ? Rat(4) : Rat(1);         // 2^{2 kappa}
    const Rat two_km1 = out.kappa ? Rat(1) : Rat(1, 2);     // 2^{kappa-1}
    const Rat two_6km2 = out.kappa ? Rat(16) : Rat(1, 4);   // 2^{6 kappa - 2}

    Rat ti3_d3(ipow(t_i, 3), ipow(d, 3));
    ti3_d3.canonicalize();
    out.V_raw = two_2k * Rat(A * B) * (two_k * Rat(A) * ti3_d3 - two_km1 * Rat(C));
    out.U_raw = two_2k * Rat(A * B * t_i * t_j, d * d);
    out.U_raw.canonicalize();
    out.V_raw.canonicalize();
    out.gamma_raw = two_6km2 * Rat(ipow(A * B * C, 2));
    out.gamma_raw.canonicalize();
    if (rat_pow(out.V_raw, 2) != rat_pow(out.U_raw, 3) + out.gamma_raw)
        throw std::logic_error("ternary_to_weierstrass: substitution identity failed");

    out.U = out.U_raw;
    out.V = out.V_raw;
    out.gamma = out.gamma_raw;
    if (out.kappa == 1) {
        // C odd: gamma = 2^4 (ABC)^2 may pick up 2^6 when 4 | A or 4 | B
        Rat s64(64);
        while (out.gamma.get_den() == 1 &&
               mpz_divisible_ui_p(out.gamma.get_num().get_mpz_t(), 64)) {
            out.gamma /= s64;
            out.U /= 4;
            out.V /= 8;
            out.gamma.canonicalize();
            out.U.canonicalize();
            out.V.canonicalize();
            out.stripped = true;
        }
        // no sixth prime power may remain
        if (out.gamma.get_den() == 1)
            for (const auto& [p, e] : factorize(abs(out.gamma.get_num())))
                if (e >= 6)
                    throw std::logic_error(
                        "ternary_to_weierstrass: sixth power survives stripping");
    }
    return out;
}

} // namespace es
