#include "effbounds/interval.hpp"

#include <cassert>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "effbounds/precision.hpp"

namespace effbounds {

void Interval::init() {
    mpfr_init2(lo_, working_precision());
    mpfr_init2(hi_, working_precision());
}

Interval::Interval() {
    init();
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v) {
    init();
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_int(const mpz_class& z) {
    Interval r;
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_rat(const mpq_class& q) {
    Interval r;
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::euler() {
    Interval one(1);
    return one.exp();
}

Interval Interval::from_decimal(const std::string& s) {
    Interval r;
    if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) == -1)
        throw std::invalid_argument("bad decimal literal: " + s);
    mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
    return r;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }
bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_nonneg() const { return mpfr_sgn(lo_) >= 0; }

Interval Interval::operator+(const Interval& o) const {
    Interval r;
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r;
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r;
    mpfr_t t;
    mpfr_init2(t, working_precision());
    // lower endpoint: min of the four products rounded down
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // upper endpoint: max of the four products rounded up
    mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval Interval::operator/(const Interval& o) const {
    if (o.contains_zero())
        throw std::domain_error("interval division by interval containing 0");
    Interval r;
    mpfr_t t;
    mpfr_init2(t, working_precision());
    mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval Interval::operator-() const {
    Interval r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (mpfr_sgn(hi_) <= 0)
        throw std::domain_error("log of nonpositive interval");
    Interval r;
    if (mpfr_sgn(lo_) <= 0)
        mpfr_set_inf(r.lo_, -1);
    else
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::exp() const {
    Interval r;
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0)
        throw std::domain_error("sqrt of interval with negative lower end");
    Interval r;
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pow_ui(unsigned long e) const {
    if (mpfr_sgn(lo_) < 0)
        throw std::domain_error("pow_ui requires nonnegative base interval");
    Interval r;
    mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
    return r;
}

Interval Interval::log_star() const {
    // max(log x, 1); for x <= 0 the lower end clamps to exactly 1
    Interval one(1);
    if (mpfr_sgn(hi_) <= 0) return one;
    return max(log(), one);
}

Interval Interval::log_plus() const {
    Interval zero;
    if (mpfr_sgn(hi_) <= 0) return zero;
    return max(log(), zero);
}

Interval Interval::abs() const {
    Interval r;
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    // straddles zero
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, working_precision());
    mpfr_neg(t, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, t, hi_, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval Interval::max(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::min(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

bool Interval::surely_lt(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
bool Interval::surely_le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_); }
bool Interval::surely_lt_ui(unsigned long v) const { return mpfr_cmp_ui(hi_, v) < 0; }
bool Interval::surely_gt_ui(unsigned long v) const { return mpfr_cmp_ui(lo_, v) > 0; }
bool Interval::overlaps(const Interval& o) const {
    return !surely_lt(o) && !o.surely_lt(*this);
}

int Interval::cmp_lo_ui(unsigned long v) const { return mpfr_cmp_ui(lo_, v); }
int Interval::cmp_hi_ui(unsigned long v) const { return mpfr_cmp_ui(hi_, v); }

double Interval::rel_width() const {
    mpfr_t w, scale;
    mpfr_init2(w, 64);
    mpfr_init2(scale, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_abs(scale, hi_, MPFR_RNDD);
    if (mpfr_cmp_ui(scale, 1) < 0) mpfr_set_ui(scale, 1, MPFR_RNDN);
    mpfr_div(w, w, scale, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    mpfr_clear(scale);
    return d;
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

static std::string render(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char buf[256];
    mpfr_snprintf(buf, sizeof(buf), "%.*R*e", digits, rnd, x);
    return std::string(buf);
}

std::string Interval::dec_lo(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string Interval::dec_hi(int digits) const { return render(hi_, digits, MPFR_RNDU); }

} // namespace effbounds
