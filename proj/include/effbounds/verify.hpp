#pragma once

#include <optional>
#include <string>
#include <vector>

#include "effbounds/bounds.hpp"
#include "effbounds/forms.hpp"
#include "effbounds/heights.hpp"

namespace effbounds {

struct EnumerationBox {
    long a_max = 5;                      // exponent bound per prime
    unsigned long budget = 60000000;     // max candidates
};

struct SolutionRecord {
    AlgNum x, y;
    Interval hx, hy, H_sol;              // H_sol = max(h(x), h(y))
};

// Exhaustive: every x = +-prod p_i^{a_i}, |a_i| <= a_max, with y = (1-ax)/b
// an S-unit.  Q only; complete within the box; canonical order.
std::vector<SolutionRecord> enumerate_sunit_solutions(const AlgNum& alpha,
                                                      const AlgNum& beta,
                                                      const SSpec& S,
                                                      const EnumerationBox& box);

struct BoundAudit {
    size_t checked = 0;
    size_t solutions = 0;
    Interval max_H;
    std::optional<Interval> min_log_margin;  // min over (log bound - log H_sol)
};

// Asserts max H_sol < every applicable report; throws BoundViolated.
BoundAudit check_bounds(const std::vector<SolutionRecord>& records,
                        const std::vector<BoundReport>& reports);

struct Prop4Witness {
    std::string place;                   // label of the witness place
    std::string P_name;                  // "alpha*x" | "beta*y" | "beta*y/alpha*x"
    Interval lhs, rhs, slack;
};

// Finds (v, P) in S' x A maximizing (d_v/d) h_v(P) and asserts the
// Proposition 4 inequality; throws Prop4Violated.
Prop4Witness check_prop4(const SolutionRecord& rec, const AlgNum& alpha,
                         const AlgNum& beta, const SSpec& S);

struct Prop5Sample {
    std::vector<long> exponents;
    Interval lhs;        // log |1 - alpha xi|_v
    Interval bound;      // prop5 lower bound
};

struct Prop5Audit {
    size_t checked = 0, skipped = 0;
    std::optional<Prop5Sample> worst;    // smallest slack
};

// Samples xi over the exponent box for the generators; asserts
// log |1 - alpha xi|_v >= lower bound at every sampled point.
Prop5Audit sample_check_prop5(const std::vector<AlgNum>& generators,
                              const AlgNum& alpha, const Place& v, const SSpec& S,
                              long exp_box, unsigned long budget = 2000000);

struct ThueBox {
    long max_numer = 50;
    long max_denom = 50;
    unsigned long budget = 200000000;
};

// Complete search of F(x,y) = delta over S-rationals x, y with numerators
// |n| <= max_numer and S-smooth denominators <= max_denom.
std::vector<std::pair<AlgNum, AlgNum>> enumerate_thue_solutions(const Poly& F,
                                                                const AlgNum& delta,
                                                                const SSpec& S,
                                                                const ThueBox& box);

struct Lemma3Audit {
    bool witness_found = false;
    AlgNum eps;
    Interval achieved;
    Interval bound;
};

// Searches eps in the exponent box and confirms h(eps^n alpha) <= Lemma 3
// bound; inconclusive (witness_found = false) when the box is exhausted.
Lemma3Audit check_lemma3_constructive(const AlgNum& alpha, int n, const SSpec& S,
                                      long box);

} // namespace effbounds
