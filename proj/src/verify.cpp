#include "effbounds/verify.hpp"

#include <algorithm>
#include <functional>

#include "effbounds/errors.hpp"
#include "effbounds/precision.hpp"

namespace effbounds {

namespace {

Interval height_q(const mpq_class& q) {
    mpz_class m = std::max(abs(q.get_num()), abs(q.get_den()));
    return Interval::from_int(m).log();
}

bool s_unit_q(const mpq_class& y, const std::vector<mpz_class>& primes) {
    if (y == 0) return false;
    mpz_class n = abs(y.get_num()), d = y.get_den();
    for (const mpz_class& p : primes) {
        while (n % p == 0) n /= p;
        while (d % p == 0) d /= p;
    }
    return n == 1 && d == 1;
}

std::vector<mpz_class> rational_primes(const SSpec& S) {
    if (S.field.kind != FieldProfile::Kind::rational)
        throw err_asserted_unsupported("exhaustive enumeration runs over Q only");
    std::vector<mpz_class> ps;
    for (const PrimeIdeal* pi : S.finite_ideals()) ps.push_back(pi->p);
    return ps;
}

} // namespace

std::vector<SolutionRecord> enumerate_sunit_solutions(const AlgNum& alpha,
                                                      const AlgNum& beta,
                                                      const SSpec& S,
                                                      const EnumerationBox& box) {
    if (alpha.is_zero() || beta.is_zero())
        throw err_param_out_of_range("alpha, beta must be nonzero");
    if (!alpha.is_rational() || !beta.is_rational())
        throw err_asserted_unsupported("exhaustive enumeration runs over Q only");
    std::vector<mpz_class> primes = rational_primes(S);
    size_t t = primes.size();

    double cardinality = 2.0;
    for (size_t i = 0; i < t; ++i) cardinality *= (2.0 * box.a_max + 1);
    if (cardinality > (double)box.budget)
        throw err_box_too_large("enumeration box has " + std::to_string(cardinality) +
                                " candidates, budget is " + std::to_string(box.budget));

    mpq_class a = alpha.as_rational(), b = beta.as_rational();
    std::vector<SolutionRecord> out;

    std::vector<mpz_class> ppow(t);
    std::function<void(size_t, const mpq_class&)> rec = [&](size_t i, const mpq_class& xv) {
        if (i == t) {
            for (int sign = 0; sign < 2; ++sign) {
                mpq_class x = sign ? mpq_class(-xv) : xv;
                mpq_class y = (1 - a * x) / b;
                if (y == 0) continue;
                if (!s_unit_q(y, primes)) continue;
                SolutionRecord r;
                r.x = AlgNum(x);
                r.y = AlgNum(y);
                r.hx = height_q(x);
                r.hy = height_q(y);
                r.H_sol = Interval::max(r.hx, r.hy);
                out.push_back(std::move(r));
            }
            return;
        }
        for (long e = -box.a_max; e <= box.a_max; ++e) {
            mpz_class pk;
            mpz_pow_ui(pk.get_mpz_t(), primes[i].get_mpz_t(),
                       (unsigned long)(e < 0 ? -e : e));
            mpq_class next = e >= 0 ? mpq_class(xv * pk) : mpq_class(xv / pk);
            rec(i + 1, next);
        }
    };
    rec(0, mpq_class(1));
    return out;
}

BoundAudit check_bounds(const std::vector<SolutionRecord>& records,
                        const std::vector<BoundReport>& reports) {
    BoundAudit audit;
    audit.solutions = records.size();
    for (const SolutionRecord& r : records)
        audit.max_H = Interval::max(audit.max_H, r.H_sol);
    for (const BoundReport& rep : reports) {
        if (!rep.applicable) continue;
        ++audit.checked;
        if (!audit.max_H.surely_lt(rep.value))
            throw err_bound_violated("solution height " + audit.max_H.dec_hi(20) +
                                     " is not below the " + rep.formula_id +
                                     " bound " + rep.value.dec_lo(20));
        if (audit.max_H.is_positive()) {
            Interval margin = rep.log_value - audit.max_H.log();
            if (!audit.min_log_margin || margin.surely_lt(*audit.min_log_margin))
                audit.min_log_margin = margin;
        }
    }
    return audit;
}

Prop4Witness check_prop4(const SolutionRecord& rec, const AlgNum& alpha,
                         const AlgNum& beta, const SSpec& S) {
    if (!S.field.computed())
        throw err_asserted_unsupported("Proposition 4 checks need a computed field");

    // S' = S minus the two prime ideals of largest norm; S_inf when t <= 2
    std::vector<const Place*> s_prime;
    for (const Place& v : S.places)
        if (v.kind != Place::Kind::finite) s_prime.push_back(&v);
    if (S.stats.t >= 3) {
        std::vector<const Place*> fin;
        for (const Place& v : S.places)
            if (v.kind == Place::Kind::finite) fin.push_back(&v);
        std::sort(fin.begin(), fin.end(), [](const Place* x, const Place* y) {
            if (x->ideal->norm != y->ideal->norm) return x->ideal->norm > y->ideal->norm;
            if (x->ideal->p != y->ideal->p) return x->ideal->p > y->ideal->p;
            return x->ideal->index > y->ideal->index;
        });
        for (size_t i = 2; i < fin.size(); ++i) s_prime.push_back(fin[i]);
    }

    // The witness set is A = {alpha x, beta y, beta y / alpha x} closed under
    // inversion.  The three extra elements are the A-sets of the transformed
    // equations (swapping x and y, and x' = 1/x, y' = y/x); without them the
    // inequality fails, e.g. at x = 125/4, y = -121/4 with S = {inf,2,5,11}
    // where the whole local mass of A sits at the two removed primes.
    AlgNum ax = alpha * rec.x;
    AlgNum by = beta * rec.y;
    struct Cand {
        const Place* v;
        std::string name;
        AlgNum val;
    };
    std::vector<Cand> cands;
    for (const Place* v : s_prime) {
        cands.push_back({v, "alpha*x", ax});
        cands.push_back({v, "beta*y", by});
        cands.push_back({v, "beta*y/alpha*x", by / ax});
        cands.push_back({v, "1/(alpha*x)", ax.inverse()});
        cands.push_back({v, "1/(beta*y)", by.inverse()});
        cands.push_back({v, "alpha*x/beta*y", ax / by});
    }

    Interval H = Interval::max(Interval::max(height(alpha), height(beta)), Interval(1));

    auto evaluate = [&](mpfr_prec_t prec) {
        PrecisionGuard g(prec);
        Interval lhs_max;
        size_t best_idx = 0;
        for (size_t i = 0; i < cands.size(); ++i) {
            Interval lhs = Interval(cands[i].v->local_degree) *
                           local_height(cands[i].val, *cands[i].v) /
                           Interval(S.field.degree);
            if (i == 0 || mpfr_greater_p(lhs.hi(), lhs_max.hi())) best_idx = i;
            lhs_max = i == 0 ? lhs : Interval::max(lhs_max, lhs);
        }
        Interval Hs = Interval::max(Interval::max(height(alpha), height(beta)), Interval(1));
        Interval Hsol = Interval::max(height(rec.x), height(rec.y));
        Interval rhs = (Hsol - Interval(3) * Hs) / Interval(S.stats.s);
        return std::tuple<Interval, Interval, size_t>(lhs_max, rhs, best_idx);
    };

    mpfr_prec_t base = working_precision();
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto [lhs, rhs, idx] = evaluate(base << attempt);
        // h_v >= 0 always, so rhs <= 0 passes outright
        bool pass = !rhs.is_positive() || mpfr_greaterequal_p(lhs.lo(), rhs.hi());
        if (pass) {
            Prop4Witness w;
            w.place = cands[idx].v->label();
            w.P_name = cands[idx].name;
            w.lhs = lhs;
            w.rhs = rhs;
            w.slack = lhs - rhs;
            return w;
        }
        if (lhs.surely_lt(rhs))
            throw err_prop4_violated("(d_v/d) h_v(P) = " + lhs.dec_hi(20) +
                                     " < (H_sol - 3H)/s = " + rhs.dec_lo(20) +
                                     " at x = " + rec.x.str() + ", y = " + rec.y.str());
    }
    throw err_prop4_violated("undecidable at escalated precision for x = " +
                             rec.x.str() + ", y = " + rec.y.str());
}

Prop5Audit sample_check_prop5(const std::vector<AlgNum>& generators,
                              const AlgNum& alpha, const Place& v, const SSpec& S,
                              long exp_box, unsigned long budget) {
    if (generators.empty())
        throw err_param_out_of_range("prop5 sampling needs at least one generator");
    if (!S.field.computed())
        throw err_asserted_unsupported("prop5 sampling needs a computed field");
    int m = (int)generators.size();

    double cardinality = 1;
    for (int i = 0; i < m; ++i) cardinality *= (2.0 * exp_box + 1);
    if (cardinality > (double)budget)
        throw err_box_too_large("prop5 sample box exceeds the budget");

    Interval theta(1);
    for (const AlgNum& g : generators) theta = theta * height(g);
    if (!theta.is_positive())
        throw err_param_out_of_range("generators of height 0 give theta = 0");
    Interval H = Interval::max(height(alpha), Interval(1));

    Prop5Audit audit;
    Interval worst_slack;
    bool have_worst = false;

    std::vector<long> e((size_t)m, -exp_box);
    for (;;) {
        AlgNum xi(1);
        for (int i = 0; i < m; ++i) xi = xi * generators[i].pow(e[i]);
        AlgNum one_minus = AlgNum(1) - alpha * xi;
        if (one_minus.is_zero()) {
            ++audit.skipped;
        } else {
            Interval lhs = abs_value(one_minus, v).log();
            Interval h_xi = height(xi);
            Interval bound = prop5_lower_bound(v.nv(), S.field.degree, m, theta, H, h_xi);
            if (lhs.surely_lt(bound))
                throw err_prop5_violated("log|1-alpha xi|_v = " + lhs.dec_hi(20) +
                                         " < lower bound " + bound.dec_lo(20) +
                                         " at xi exponents " + [&] {
                                             std::string s;
                                             for (long k : e) s += std::to_string(k) + ",";
                                             return s;
                                         }());
            if (!mpfr_greaterequal_p(lhs.lo(), bound.hi()))
                throw err_prop5_violated("undecidable prop5 comparison");
            Interval slack = lhs - bound;
            if (!have_worst || slack.surely_lt(worst_slack)) {
                worst_slack = slack;
                have_worst = true;
                audit.worst = Prop5Sample{e, lhs, bound};
            }
            ++audit.checked;
        }
        size_t i = 0;
        while (i < e.size() && e[i] == exp_box) e[i++] = -exp_box;
        if (i == e.size()) break;
        ++e[i];
    }
    return audit;
}

std::vector<std::pair<AlgNum, AlgNum>> enumerate_thue_solutions(const Poly& F,
                                                                const AlgNum& delta,
                                                                const SSpec& S,
                                                                const ThueBox& box) {
    if (F.nvars != 2) throw err_param_out_of_range("Thue enumeration needs a binary form");
    if (F.coeff_field() != 0)
        throw err_asserted_unsupported("Thue enumeration runs over Q only");
    std::vector<mpz_class> primes = rational_primes(S);
    if (!delta.is_rational()) throw err_not_s_integral("delta must be rational here");
    mpq_class dq = delta.as_rational();

    // binary form as dense rational coefficients of x^i y^(n-i)
    int n = F.total_degree();
    std::vector<mpq_class> coef(n + 1, 0);
    for (const auto& [mono, c] : F.terms) coef[mono[0]] = c.as_rational();

    // all S-smooth denominators <= max_denom
    std::vector<mpz_class> denoms{1};
    std::function<void(size_t, mpz_class)> gen = [&](size_t i, mpz_class cur) {
        if (i == primes.size()) return;
        gen(i + 1, cur);
        cur *= primes[i];
        while (cur <= box.max_denom) {
            denoms.push_back(cur);
            gen(i + 1, cur);
            cur *= primes[i];
        }
    };
    gen(0, 1);
    std::sort(denoms.begin(), denoms.end());
    denoms.erase(std::unique(denoms.begin(), denoms.end()), denoms.end());

    // candidate S-rationals in canonical order
    std::vector<mpq_class> cands;
    for (const mpz_class& d : denoms)
        for (long nn = -box.max_numer; nn <= box.max_numer; ++nn) {
            if (d > 1 && gcd(mpz_class(nn), d) != 1) continue;
            cands.push_back(mpq_class(nn, d));
        }
    double pairs = (double)cands.size() * (double)cands.size();
    if (pairs > (double)box.budget)
        throw err_box_too_large("Thue box has " + std::to_string(pairs) + " pairs");

    std::vector<std::pair<AlgNum, AlgNum>> out;
    for (const mpq_class& x : cands) {
        // Horner in y-direction: F(x, y) = sum coef[i] x^i y^(n-i)
        std::vector<mpq_class> xpow(n + 1, 1);
        for (int i = 1; i <= n; ++i) xpow[i] = xpow[i - 1] * x;
        for (const mpq_class& y : cands) {
            mpq_class acc = 0;
            mpq_class yp = 1;
            for (int i = n; i >= 0; --i) {  // y^(n-i) grows as i drops
                acc += coef[i] * xpow[i] * yp;
                yp *= y;
            }
            if (acc == dq) out.push_back({AlgNum(x), AlgNum(y)});
        }
    }
    return out;
}

Lemma3Audit check_lemma3_constructive(const AlgNum& alpha, int n, const SSpec& S,
                                      long box) {
    Lemma3Audit audit;
    Lemma3Result r = lemma3_bound(alpha, n, S, box);
    audit.bound = r.bound;
    if (r.witness) {
        audit.eps = *r.witness;
        audit.achieved = r.witness_height;
        audit.witness_found = mpfr_lessequal_p(r.witness_height.hi(), r.bound.lo());
    }
    return audit;
}

} // namespace effbounds
