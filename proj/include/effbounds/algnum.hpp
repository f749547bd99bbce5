#pragma once

#include <gmpxx.h>

#include <string>

#include "effbounds/interval.hpp"

namespace effbounds {

// Exact element of Q or of a quadratic field Q(sqrt(D)): (a + b*sqrt(D)) / c
// with c > 0 and gcd(a, b, c) = 1.  Canonical form: b == 0 forces D == 0,
// so equality is plain member comparison.  D must be squarefree, != 0, 1.
class AlgNum {
public:
    AlgNum() : a_(0), b_(0), c_(1), d_(0) {}
    AlgNum(long v) : a_(v), b_(0), c_(1), d_(0) {}
    explicit AlgNum(const mpz_class& v) : a_(v), b_(0), c_(1), d_(0) {}
    explicit AlgNum(const mpq_class& q);
    AlgNum(mpz_class a, mpz_class b, mpz_class c, long D);

    static AlgNum sqrt_d(long D) { return AlgNum(0, 1, 1, D); }

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const mpz_class& c() const { return c_; }
    long field_d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return d_ == 0; }
    mpq_class as_rational() const;  // requires is_rational()

    AlgNum operator+(const AlgNum&) const;
    AlgNum operator-(const AlgNum&) const;
    AlgNum operator*(const AlgNum&) const;
    AlgNum operator/(const AlgNum&) const;
    AlgNum operator-() const;
    AlgNum inverse() const;
    AlgNum pow(long e) const;

    bool operator==(const AlgNum&) const = default;

    // Total order used only for canonical sorting (not the real order).
    static int cmp_key(const AlgNum&, const AlgNum&);

    AlgNum conj() const { return AlgNum(a_, -b_, c_, d_); }
    mpq_class norm_q() const;   // (a^2 - D b^2) / c^2
    mpq_class trace_q() const;  // 2a / c

    // Sign of the real embedding a + s*b*sqrt(D) (s = +1 or -1), exact.
    // Requires D >= 0 (for D == 0 both embeddings coincide).
    int sign_at(int embedding) const;

    // Interval enclosure of the real embedding (D >= 0 only).
    Interval embed(int embedding) const;

    // |sigma(alpha)|^2 for D < 0 (exact): equals norm_q().
    mpq_class abs2_complex() const;

    std::string str() const;

    // Grammar: integers, a/b, sqrt(N), + - * / ^ and parentheses, evaluated
    // exactly.  All sqrt arguments must agree on one squarefree D.
    static AlgNum parse(const std::string& text);

private:
    mpz_class a_, b_, c_;
    long d_;
    void canonicalize();
};

// Squarefree test by trial division (desk scale).
bool is_squarefree(long n);

// Reduce sqrt(n) = f * sqrt(D) with D squarefree; returns {f, D}.
struct SqrtReduction { mpz_class factor; long D; };
SqrtReduction reduce_sqrt(const mpz_class& n);

} // namespace effbounds
