#pragma once

// Model of the curve y^l = x(x+1)...(x+k-1): exact membership, the known
// nontrivial point families, bounded exhaustive search, and the transform
// between rational points and integer arithmetic-progression solutions.

#include <string>
#include <vector>

#include "es/arith.hpp"

namespace es {

struct EsCurve {
    uint64_t k;
    unsigned l;
};

struct RationalPoint {
    Rat x;
    Rat y;

    bool operator==(const RationalPoint& o) const { return x == o.x && y == o.y; }
};

// Canonical order: ascending denominator of x, then numerator of x, then y.
bool point_less(const RationalPoint& a, const RationalPoint& b);

// Integer solution of prod_{i=0}^{k-1} (n + i d^l) = t^l with gcd(n,d)=1.
struct ApSolution {
    Int n;
    Int d;
    Int t;
    uint64_t k;
    unsigned l;
    bool validated = false;
};

struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct trivial_point_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct membership_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct structure_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// 1 + (kl - l - k - gcd(k,l)) / 2
uint64_t genus(const EsCurve& c);

// Exact product of the k terms x+i.
Rat curve_product(const EsCurve& c, const Rat& x);

bool is_on_curve(const EsCurve& c, const RationalPoint& p);

// The k points (-i, 0).
std::vector<RationalPoint> trivial_points(const EsCurve& c);

// The known nontrivial families: the (2,2) two-parameter family, the (2j,2)
// pair for even j, and the two (3,3) points. For odd j the candidate pair
// satisfies -y^2 = prod instead and the catalog reports that diagnostic.
struct SanderCatalog {
    std::vector<RationalPoint> points;
    bool neg_square_match = false; // (2j,2), j odd: pair lies on -y^2 = prod
    std::string note;
};
SanderCatalog sander_catalog(const EsCurve& c, uint64_t param_bound);

// All points with x = p/q reduced, |p| <= numer_bound, q <= denom_bound and
// q of the admissible shape m^{l/gcd(k,l)}. Includes trivial points.
// Canonically sorted; shard workers cover disjoint p-ranges and merge.
std::vector<RationalPoint> search_points(const EsCurve& c, uint64_t denom_bound,
                                         const Int& numer_bound, unsigned shards = 1);

// Lemma transform: nontrivial point with gcd(k,l)=1, l an odd prime, to the
// integer solution (n, d, t) with x = n/d^l, y = t/d^k.
ApSolution to_ap_solution(const EsCurve& c, const RationalPoint& p);

// Inverse transform; validates the product equation exactly.
std::pair<EsCurve, RationalPoint> from_ap_solution(const ApSolution& s);

// Check prod (n + i d^l) = t^l exactly; returns the validated copy.
ApSolution validate_ap_solution(ApSolution s);

} // namespace es
