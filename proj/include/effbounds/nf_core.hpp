#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "effbounds/algnum.hpp"
#include "effbounds/interval.hpp"

namespace effbounds {

enum class Provenance { computed, asserted };

struct FieldProfile {
    enum class Kind { rational, quadratic, asserted };
    Kind kind = Kind::rational;
    long D = 0;             // squarefree generator, quadratic only
    mpz_class disc = 1;     // field discriminant; 0 when asserted
    int degree = 1;         // d
    int unit_rank = 0;      // r
    Interval regulator;     // R_K, natural log scale; exactly 1 when r = 0
    mpz_class class_number = 1;
    std::optional<AlgNum> fundamental_unit;  // real quadratic only
    Provenance provenance = Provenance::computed;
    std::vector<mpz_class> asserted_prime_norms;  // asserted profiles only

    bool computed() const { return provenance == Provenance::computed; }
};

struct PrimeIdeal {
    enum class Tag { rational, split, inert, ramified };
    mpz_class p;            // residue prime
    mpz_class norm;         // p or p^2
    Tag tag = Tag::rational;
    mpz_class disc = 1;     // field discriminant (context for ord)
    mpz_class omega_root;   // split only: root of min poly of omega mod p
    int index = 0;          // distinguishes the two split ideals

    int ramification() const { return tag == Tag::ramified ? 2 : 1; }
    bool operator==(const PrimeIdeal&) const = default;
};

struct QuadLimits {
    mpz_class max_abs_disc = 1000000;
    unsigned long work_budget = 20000000;  // elementary steps
};

FieldProfile build_rational_field();
FieldProfile build_quadratic_field(long D, const QuadLimits& limits = {});

// Factor (p) into prime ideals of the profile's field.
std::vector<PrimeIdeal> split_prime(const FieldProfile& field, const mpz_class& p);

// Same, from the quadratic generator alone (no profile needed).
std::vector<PrimeIdeal> split_prime_quadratic(long D, const mpz_class& p);

struct AssertedRecord {
    int d = 0;
    int r = 0;
    std::string R_K;            // decimal literal
    mpz_class h_K = 0;
    std::vector<mpz_class> prime_ideal_norms;
};
FieldProfile import_field_profile(const AssertedRecord& rec);

// Exact valuation of a nonzero element at a prime ideal.
long ord(const AlgNum& alpha, const PrimeIdeal& p);

long ord_p_rational(const mpq_class& q, const mpz_class& p);

// Order of the subgroup of the class group generated by the classes of the
// given prime ideals (wide sense).  1 for Q; exact for quadratic fields.
mpz_class class_subgroup_order(const FieldProfile& field,
                               const std::vector<PrimeIdeal>& ideals);

// Continued-fraction data of the fundamental unit, exposed for the
// convergent-minimality checks.
struct CfUnitData {
    AlgNum unit;                       // epsilon_0 > 1
    int norm_sign;                     // N(epsilon_0) = +-1
    std::vector<AlgNum> complete_quotients;  // one full period
    std::vector<mpz_class> partial_quotients;
};
CfUnitData fundamental_unit_cf(long D, const QuadLimits& limits = {});

// Trial-division factorization, smallest primes first (desk scale).
std::vector<std::pair<mpz_class, int>> factor_int(const mpz_class& n);

} // namespace effbounds
