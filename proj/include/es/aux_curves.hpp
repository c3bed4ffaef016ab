#pragma once

// Generalized Fermat curves A X^l + B Y^l = C: normalization to l-th-power-free
// coefficients, bounded rational point enumeration, pigeonhole grouping of
// collision pairs into curve points, and the quantitative finiteness bound
// evaluated in log space.

#include <cstdint>
#include <vector>

#include "es/arith.hpp"
#include "es/es_model.hpp"
#include "es/real.hpp"

namespace es {

struct AuxCurve {
    Int A, B, C;
    unsigned l = 3; // prime >= 3
    bool normalized = false;
    // unit maps from normalization; a point (X, Y) on the input curve maps to
    // (ux X / uc, uy Y / uc) on the normalized curve
    Int ux = 1, uy = 1, uc = 1;
    Int gcd_divided = 1;

    Int height() const; // max(|A|, |B|, |C|)
};

// Divide out gcd(A,B,C), then strip l-th powers from each coefficient,
// recording the unit maps.
AuxCurve normalize(const AuxCurve& c);

enum class EnumMode {
    common_denominator, // points (p/q, r/q), q <= denom_bound
    full_grid,          // independent reduced denominators, oracle mode
};

// All rational points within the bounds, exact check, canonical order.
std::vector<RationalPoint> enumerate_points(const AuxCurve& c, uint64_t denom_bound,
                                            uint64_t numer_bound,
                                            EnumMode mode = EnumMode::common_denominator,
                                            unsigned shards = 1);

struct FaltingsBound {
    RVal ln_bound;    // 5^{l^4} ln(3H) ln ln(3H)
    RVal ln_ln_bound; // for display
    bool natural_log = true; // the log convention used
};
FaltingsBound faltings_log_bound(unsigned l, const Int& H, mpfr_prec_t prec = 256);

// With log k = 5^e exactly: 5^{l^4} <= sqrt(log k) iff 2 l^4 <= e.
bool faltings_fits_sqrt_log(unsigned l, uint64_t e);

struct CollisionTuple {
    Int t_i, t_j, d;
    Int f, g, h; // f t_i^l - g t_j^l = h d^l, h carries the sign
};

struct AuxGroup {
    AuxCurve curve; // (A, B, C) = (f, -g, h)
    std::vector<RationalPoint> points;
};

struct PairsToPoints {
    std::vector<AuxGroup> groups; // canonical order by (A, B, C)
    size_t largest = 0;           // index of the largest group
};

// Verify each identity, group tuples by curve, map to points (t_i/d, t_j/d).
// Duplicate points inside a group violate the distinctness guarantee when the
// t values are pairwise coprime with |t| != 1, and raise a data error then.
PairsToPoints pairs_to_points(const std::vector<CollisionTuple>& tuples, unsigned l);

} // namespace es
