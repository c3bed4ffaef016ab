#pragma once

// Exact group law on y^2 = x^3 + a x + b, naive/Weil/canonical heights,
// Nagell-Lutz torsion under the Mazur cap, height-ball counting, and the two
// ternary-to-Weierstrass substitutions.

#include <cstdint>
#include <vector>

#include "es/arith.hpp"
#include "es/es_model.hpp"

namespace es {

struct WeierstrassCurve {
    Int a, b; // y^2 = x^3 + a x + b

    Int discriminant() const; // -16 (4a^3 + 27b^2), must be nonzero
};

struct CurvePoint {
    bool infinity = true;
    Rat x, y;

    static CurvePoint inf() { return {}; }
    static CurvePoint affine(Rat px, Rat py);
};

bool operator==(const CurvePoint& p, const CurvePoint& q);
bool curve_point_less(const CurvePoint& p, const CurvePoint& q);

bool on_curve(const WeierstrassCurve& c, const CurvePoint& p);

CurvePoint negate(const CurvePoint& p);
CurvePoint add(const WeierstrassCurve& c, const CurvePoint& p, const CurvePoint& q);
CurvePoint double_point(const WeierstrassCurve& c, const CurvePoint& p);
CurvePoint multiply(const WeierstrassCurve& c, uint64_t n, const CurvePoint& p);

// H(P) = max(|num x|, den x); the point at infinity gets H = 1, h = 0.
Int naive_height_point(const CurvePoint& p);
double weil_height(const CurvePoint& p);

// lim h(2^n P) / 4^n by exact doubling; geometric-tail termination, hard
// iteration cap. Torsion points (doubling reaches infinity or cycles) give 0.
double canonical_height(const WeierstrassCurve& c, const CurvePoint& p, double tol);

// Full rational torsion subgroup (Nagell-Lutz candidates, Mazur order cap,
// closure under addition). Includes the point at infinity; size <= 16.
std::vector<CurvePoint> torsion_points(const WeierstrassCurve& c);

// All points with x = p/q^2, y = r/q^3, max(|p|, q^2) <= H_bound.
std::vector<CurvePoint> search_points_naive(const WeierstrassCurve& c, const Int& H_bound);

// Size of a maximal point subset whose canonical-height pairing Gram matrix
// has determinant > tol.
unsigned rank_lower_bound(const WeierstrassCurve& c, const std::vector<CurvePoint>& points,
                          double tol);

struct HeightBallQuery {
    double H; // canonical-height radius
    double L; // height floor
    unsigned r;
};

struct HeightBallResult {
    size_t count = 0;  // #{P : hhat(P) <= H}, point at infinity included
    double bound_nac;  // 16 (1 + 2 sqrt(H/L))^r
    double bound_prop; // 16 (9H/L)^{r/2}
    bool nac_ok, prop_ok;
};
// points must be exhaustive up to the naive-height radius implied by H.
HeightBallResult count_height_ball(const WeierstrassCurve& c, const HeightBallQuery& q,
                                   const std::vector<CurvePoint>& points, double tol = 1e-6);

struct MordellPoint {
    Rat U, V;   // after power stripping
    Int D;      // curve y^2 = x^3 - D, sixth-power-free at 2 and 3
    Rat U_raw, V_raw;
    Int D_raw;  // 432 A0^2
    Int t_i, t_j; // injectivity metadata: (t_i, t_j) -> point is injective
    WeierstrassCurve curve;
};
// t_i^3 - t_j^3 = A0 d^3, A0 cubefree, t_i != t_j.
MordellPoint cubes_to_mordell(const Int& t_i, const Int& t_j, const Int& d, const Int& A0);

struct TernaryWeierstrassPoint {
    unsigned kappa; // 0 if C even, 1 if C odd
    Rat U, V;       // after 2^6 stripping
    Rat gamma;      // V^2 = U^3 + gamma; 2^{6k-2}(ABC)^2 before stripping
    Rat U_raw, V_raw, gamma_raw;
    bool stripped = false;
};
// A t_i^3 - B t_j^3 = C d^3, A, B, C pairwise coprime and cubefree.
TernaryWeierstrassPoint ternary_to_weierstrass(const Int& A, const Int& B, const Int& C,
                                               const Int& t_i, const Int& t_j, const Int& d);

} // namespace es
