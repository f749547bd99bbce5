#pragma once

#include <mpfr.h>

namespace effbounds {

// Working precision (bits) for all interval arithmetic.  Thread-local;
// default 128.  Bound reports are sound at any setting, only tighter or
// looser.
mpfr_prec_t working_precision();
void set_working_precision(mpfr_prec_t bits);

// RAII precision override, used by the escalating comparison helpers.
class PrecisionGuard {
public:
    explicit PrecisionGuard(mpfr_prec_t bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    mpfr_prec_t saved_;
};

} // namespace effbounds
