#pragma once

#include <optional>
#include <vector>

#include "effbounds/algnum.hpp"
#include "effbounds/interval.hpp"
#include "effbounds/nf_core.hpp"

namespace effbounds {

struct Place {
    enum class Kind { infinite_real, infinite_complex, finite };
    Kind kind = Kind::infinite_real;
    int local_degree = 1;          // d_v
    int embedding = 0;             // which real embedding (quadratic)
    std::optional<PrimeIdeal> ideal;

    mpz_class nv() const {         // N(v): 2 for infinite places
        return kind == Kind::finite ? ideal->norm : mpz_class(2);
    }
    std::string label() const;
};

std::vector<Place> infinite_places(const FieldProfile& field);

struct PlaceStats {
    int s = 0, t = 0;
    mpz_class P_S = 1, Pp_S = 1, Q_S = 1;
};

// How to expand the rational prime list into prime ideals.
struct IdealSelection {
    bool all = true;
    std::vector<std::pair<mpz_class, int>> explicit_ideals;  // (p, index)
};

struct SRegulator {
    Interval value;
    bool exact = false;            // true: enclosure of the exact determinant
    mpz_class class_index = 1;     // |<[p_1],...,[p_t]>| in the class group
};

// A finite place set containing all infinite places, with its derived
// statistics computed eagerly (immutable afterwards).
struct SSpec {
    FieldProfile field;
    std::vector<Place> places;     // infinite first, then finite
    PlaceStats stats;
    SRegulator regulator;          // R_S
    Interval lemma1_lo, lemma1_hi; // sandwich ends R_K prod log N, x h_K

    int s() const { return stats.s; }
    int t() const { return stats.t; }
    std::vector<const PrimeIdeal*> finite_ideals() const;
};

SSpec build_sspec(const FieldProfile& field, const std::vector<mpz_class>& primes,
                  const IdealSelection& sel = {});

// Validating constructor from an explicit place list (must contain all
// infinite places); throws MissingInfinitePlace otherwise.
SSpec make_sspec_from_places(const FieldProfile& field, std::vector<Place> places);

// Normalized absolute value |alpha|_v (section-4 normalization: complex
// places squared, finite places N(p)^-ord).
Interval abs_value(const AlgNum& alpha, const Place& v);

// Exact rational |alpha|_v where it is rational (finite and complex places).
std::optional<mpq_class> abs_value_exact(const AlgNum& alpha, const Place& v);

// Absolute logarithmic height; independent of the containing field.
Interval height(const AlgNum& alpha);

// h_v(gamma) = log^+ (1 / |gamma|_v)
Interval local_height(const AlgNum& gamma, const Place& v);

// N_S(alpha) = prod_{v in S} |alpha|_v, exact positive rational.
mpq_class s_norm(const AlgNum& alpha, const SSpec& S);

PlaceStats place_stats(const SSpec& S);

SRegulator s_regulator(const SSpec& S);

// True iff alpha is an S-unit (ord zero at every finite place outside S,
// unit at the S-places handled implicitly); computed fields only.
bool is_s_unit(const AlgNum& alpha, const SSpec& S);

// True iff alpha is an S-integer.
bool is_s_integer(const AlgNum& alpha, const SSpec& S);

} // namespace effbounds
