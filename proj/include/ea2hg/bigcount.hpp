#pragma once

#include <gmpxx.h>

namespace ea2hg {

// Exact nonnegative counts. Gaussian binomials pass 64 bits near n = 30,
// so every count-valued result is arbitrary precision.
using BigCount = mpz_class;

inline BigCount pow2(unsigned e) { return BigCount{1} << e; }

inline BigCount factorial(unsigned n) {
    BigCount r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigCount binomial(unsigned n, unsigned k) {
    BigCount r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace ea2hg
