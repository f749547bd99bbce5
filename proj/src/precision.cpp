#include "effbounds/precision.hpp"

namespace effbounds {

namespace {
thread_local mpfr_prec_t g_prec = 128;
}

mpfr_prec_t working_precision() { return g_prec; }

void set_working_precision(mpfr_prec_t bits) {
    if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
    g_prec = bits;
}

PrecisionGuard::PrecisionGuard(mpfr_prec_t bits) : saved_(g_prec) {
    set_working_precision(bits);
}

PrecisionGuard::~PrecisionGuard() { g_prec = saved_; }

} // namespace effbounds
