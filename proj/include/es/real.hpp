#pragma once

// Directed-rounding interval values over MPFR. Comparisons in the audit and
// the bound evaluators must not flip due to rounding, so every inequality on
// real expressions is decided through these intervals.

#include <string>

#include <mpfr.h>

#include "es/arith.hpp"

namespace es {

class RVal {
  public:
    explicit RVal(mpfr_prec_t prec = 256) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    RVal(const RVal& o) : RVal(o.prec_) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    RVal& operator=(const RVal& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, o.prec_);
            mpfr_set_prec(hi_, o.prec_);
            prec_ = o.prec_;
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    ~RVal() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static RVal exact(const Int& n, mpfr_prec_t prec = 256) {
        RVal r(prec);
        mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static RVal exact(const Rat& q, mpfr_prec_t prec = 256) {
        RVal r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static RVal exact(unsigned long n, mpfr_prec_t prec = 256) { return exact(Int(n), prec); }
    // decimal string, rounded outward
    static RVal from_decimal(const std::string& s, mpfr_prec_t prec = 256) {
        RVal r(prec);
        mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD);
        mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
        return r;
    }

    RVal operator+(const RVal& o) const {
        RVal r(prec_);
        mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
        return r;
    }
    RVal operator-(const RVal& o) const {
        RVal r(prec_);
        mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
        return r;
    }
    RVal operator*(const RVal& o) const {
        RVal r(prec_);
        mpfr_t c[4];
        for (auto& t : c) mpfr_init2(t, prec_);
        mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDD);
        mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDD);
        mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDD);
        mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, c[0], c[1], MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, c[2], MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, c[3], MPFR_RNDD);
        mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDU);
        mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDU);
        mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDU);
        mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, c[0], c[1], MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, c[2], MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, c[3], MPFR_RNDU);
        for (auto& t : c) mpfr_clear(t);
        return r;
    }
    // divisor interval must not contain zero
    RVal operator/(const RVal& o) const {
        RVal inv(o.prec_);
        mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
        mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
        if (mpfr_sgn(o.lo_) < 0) mpfr_swap(inv.lo_, inv.hi_);
        return *this * inv;
    }

    // natural log; argument interval must be positive
    RVal log() const {
        RVal r(prec_);
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    RVal sqrt() const {
        RVal r(prec_);
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    // certified comparisons; a "false" answer means "not certainly so"
    bool definitely_le(const RVal& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
    bool definitely_lt(const RVal& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
    bool definitely_ge(const RVal& o) const { return mpfr_cmp(lo_, o.hi_) >= 0; }
    bool definitely_gt(const RVal& o) const { return mpfr_cmp(lo_, o.hi_) > 0; }

    double mid() const {
        return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2;
    }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    std::string str(size_t digits = 20) const;

    mpfr_prec_t precision() const { return prec_; }

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

// log(n!) as a certified interval (via lgamma).
RVal log_factorial(uint64_t n, mpfr_prec_t prec = 256);

} // namespace es
