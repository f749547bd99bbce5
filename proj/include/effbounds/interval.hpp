#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace effbounds {

// Closed interval [lo, hi] of MPFR reals with outward directed rounding:
// every operation rounds the lower endpoint down and the upper endpoint up,
// so the true real result is always enclosed.  Endpoints are allocated at
// the working precision current when the value is created.
class Interval {
public:
    Interval();                 // [0, 0]
    Interval(long v);           // exact small integer
    Interval(const Interval&);
    Interval(Interval&&) noexcept;
    Interval& operator=(const Interval&);
    Interval& operator=(Interval&&) noexcept;
    ~Interval();

    static Interval from_int(const mpz_class& z);
    static Interval from_rat(const mpq_class& q);
    static Interval euler();    // enclosure of e
    // Parse a decimal literal into an enclosing interval.
    static Interval from_decimal(const std::string& s);

    bool is_point() const;      // lo == hi
    bool contains_zero() const;
    bool is_negative() const;   // hi < 0
    bool is_positive() const;   // lo > 0
    bool is_nonneg() const;     // lo >= 0

    Interval operator+(const Interval&) const;
    Interval operator-(const Interval&) const;
    Interval operator*(const Interval&) const;
    Interval operator/(const Interval&) const;   // divisor must not contain 0
    Interval operator-() const;

    Interval log() const;       // requires hi > 0; lo <= 0 gives -inf lower end
    Interval exp() const;
    Interval sqrt() const;      // requires lo >= 0
    Interval pow_ui(unsigned long e) const;      // requires lo >= 0
    Interval log_star() const;  // max(log x, 1); clamps to 1 when x <= e
    Interval log_plus() const;  // max(log x, 0)
    Interval abs() const;

    static Interval max(const Interval&, const Interval&);
    static Interval min(const Interval&, const Interval&);
    static Interval hull(const Interval&, const Interval&);

    // Certain (proved) comparisons; false means "not provable", not "false".
    bool surely_lt(const Interval&) const;  // hi <  other.lo
    bool surely_le(const Interval&) const;  // hi <= other.lo
    bool surely_gt(const Interval& o) const { return o.surely_lt(*this); }
    bool surely_ge(const Interval& o) const { return o.surely_le(*this); }
    bool surely_lt_ui(unsigned long) const;
    bool surely_gt_ui(unsigned long) const;
    bool overlaps(const Interval&) const;

    int cmp_lo_ui(unsigned long v) const;   // sign of lo - v
    int cmp_hi_ui(unsigned long v) const;

    // Relative width |hi - lo| / max(1, |hi|), rounded up; 0 for points.
    double rel_width() const;
    double lo_d() const;
    double hi_d() const;

    // Deterministic decimal renderings (down for lo, up for hi).
    std::string dec_lo(int digits = 32) const;
    std::string dec_hi(int digits = 32) const;

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

private:
    mpfr_t lo_, hi_;
    void init();
};

} // namespace effbounds
