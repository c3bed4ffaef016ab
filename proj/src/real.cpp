#include "es/real.hpp"

namespace es {

std::string RVal::str(size_t digits) const {
    mpfr_t mid;
    mpfr_init2(mid, prec_);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), mid);
    std::string out(s);
    mpfr_free_str(s);
    mpfr_clear(mid);
    return out;
}

RVal log_factorial(uint64_t n, mpfr_prec_t prec) {
    // exact product is cheap at desk scale and gives a tight interval
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return RVal::exact(f, prec).log();
}

} // namespace es
