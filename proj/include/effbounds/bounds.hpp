#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effbounds/heights.hpp"
#include "effbounds/interval.hpp"

namespace effbounds {

// The two printed readings of c3 (the section-2 display vs Lemma 3).
enum class C3Variant { section2, lemma3 };

struct ConstParams {
    int d = 1, r = 0, s = 1, t = 0, m = 1;
    C3Variant c3_variant = C3Variant::section2;
};

// Exact-first evaluation of the named constant, linear scale.
// Names: c1, c2, c3, c4, c5, c6, c10, c11.
Interval constant_value(const std::string& name, const ConstParams& p);

// script R = max(h_K, c3 * d * R_K)
Interval script_R(int d, int r, const Interval& R_K, const mpz_class& h_K,
                  C3Variant variant);

struct BoundInputs {
    int d = 1, r = 0, s = 1, t = 0;
    Interval R_K = Interval(1);
    Interval R_S = Interval(1);
    mpz_class h_K = 1;
    mpz_class P_S = 1, Pp_S = 1, Q_S = 1;
    Interval H = Interval(1);      // max(h(alpha), h(beta), 1)
    int m = 0;                     // group-equation data (thm2)
    Interval theta;

    static BoundInputs from_sspec(const SSpec& S, const Interval& H);
};

struct BoundReport {
    std::string formula_id;        // thmA, thmA_Sinf, thmB, thmC, thm1, thm2,
                                   // thm3, corollary4, eq31, lemma2, lemma3, prop5
    bool applicable = true;
    std::string error_name;        // when not applicable
    Interval value;                // linear-scale bound (upper end is the bound)
    Interval log_value;            // natural log of the bound
    std::vector<std::pair<std::string, Interval>> constants;
    std::vector<std::string> notes;
};

BoundReport bound_thm_A(const BoundInputs& in);   // t=0 switches to thmA_Sinf
BoundReport bound_thm_B(const BoundInputs& in);   // requires t > 0
BoundReport bound_thm_C(const BoundInputs& in);
BoundReport bound_thm_1(const BoundInputs& in);   // requires t > 0
BoundReport bound_thm_2(const BoundInputs& in);   // requires m >= 1, theta > 0

// Factor (2.5): (P'/log* P') (1 + log* log P / log* P')
Interval improvement_factor(const mpz_class& P_S, const mpz_class& Pp_S);

// Lemma 2 bound on prod h(eps_i) for some fundamental system: c10 R_S.
BoundReport lemma2_theta_bound(const BoundInputs& in);

struct Lemma3Result {
    Interval bound;                // (1/d) log N_S(alpha) + n (c3 R_K + h_K/d log Q_S)
    Interval per_n_increment;      // c3 R_K + (h_K/d) log Q_S
    std::optional<AlgNum> witness; // found over Q when searched
    Interval witness_height;
};

// search_box > 0 searches an explicit epsilon over Q with exponents in
// [-box, box]; ignored for other fields.
Lemma3Result lemma3_bound(const AlgNum& alpha, int n, const SSpec& S,
                          long search_box = 0);

// Proposition 5 lower bound on log |1 - alpha xi|_v, downward rounded:
//   -c11 (N(v)/log N(v)) theta H log*(N(v) h(xi) / H)
Interval prop5_lower_bound(const mpz_class& Nv, int d, int m,
                           const Interval& theta, const Interval& H,
                           const Interval& h_xi);

struct BestBound {
    std::vector<BoundReport> reports;
    size_t best_index = 0;
};

// Evaluate the applicable unit-equation bounds and flag the smallest.
BestBound best_unit_bound(const BoundInputs& in);

// log* as an interval function, for tests and reports.
Interval log_star(const Interval& x);

} // namespace effbounds
