#include "effbounds/bounds.hpp"

#include <stdexcept>

#include "effbounds/errors.hpp"

namespace effbounds {

Interval log_star(const Interval& x) { return x.log_star(); }

namespace {

mpz_class zpow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class zfac(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

void need(bool ok, const std::string& what) {
    if (!ok) throw err_param_out_of_range(what);
}

Interval c3_value(int d, int r, C3Variant variant) {
    if (r == 0) return Interval();
    if (r == 1) {
        if (variant == C3Variant::section2)
            return Interval::from_rat(mpq_class(1, d));
        return Interval(1);
    }
    // 29 e r! r sqrt(r-1) (log d | log* d)
    mpz_class exact = 29 * zfac((unsigned long)r) * r;
    Interval logd = Interval::from_int(mpz_class(d));
    Interval lg = variant == C3Variant::section2 ? logd.log() : logd.log_star();
    return Interval::from_int(exact) * Interval(1).exp() *
           Interval::from_int(mpz_class(r - 1)).sqrt() * lg;
}

} // namespace

Interval constant_value(const std::string& name, const ConstParams& p) {
    need(p.d >= 1, "d must be >= 1");
    if (name == "c1") {
        need(p.s >= 1, "c1 needs s >= 1");
        return Interval::from_int(zpow(mpz_class(16) * p.d * p.s, 2ul * (p.s + 3)));
    }
    if (name == "c2") {
        need(p.r >= 0, "c2 needs r >= 0");
        return Interval::from_int(zpow(mpz_class(4) * p.d, 4ul * (p.r + 4)));
    }
    if (name == "c3") {
        need(p.r >= 0, "c3 needs r >= 0");
        return c3_value(p.d, p.r, p.c3_variant);
    }
    if (name == "c4") {
        need(p.r >= 0 && p.t >= 0, "c4 needs r, t >= 0");
        return Interval::from_int(zpow(16, 3ul * p.r + 4ul * p.t + 12) *
                                  zpow(p.d, 5ul * p.r + p.t + 20));
    }
    if (name == "c5") {
        need(p.r >= 0 && p.s >= 1 && p.t >= 0, "c5 needs r,t >= 0 and s >= 1");
        unsigned long k = 3ul * p.r + 4ul * p.t + 7;
        mpz_class exact = zpow(p.s, 5) * zpow(16, k) * zpow(p.d, 4ul * p.r + 2ul * p.t + 7);
        return Interval::from_int(exact) * Interval((long)k).exp();
    }
    if (name == "c6" || name == "c11") {
        need(p.m >= 1, name + " needs m >= 1");
        unsigned long k = 3ul * p.m + 5;
        mpz_class exact = 2 * mpz_class(p.m + 1) * zpow(mpz_class(16) * p.d, k);
        if (name == "c11" && p.m == 1) exact *= 12;
        Interval dm = Interval::from_int(mpz_class(p.d) * p.m);
        Interval logsd = Interval::from_int(mpz_class(p.d)).log_star();
        return Interval::from_int(exact) * dm.log_star() * logsd * logsd *
               Interval((long)k).exp();
    }
    if (name == "c10") {
        need(p.s >= 1, "c10 needs s >= 1");
        mpq_class v(zfac((unsigned long)(p.s - 1)) * zfac((unsigned long)(p.s - 1)), 1);
        if (p.s >= 2) v /= zpow(2, (unsigned long)(p.s - 2));
        else v *= 2;  // 2^(s-2) = 1/2 for s = 1
        v /= zpow(p.d, (unsigned long)(p.s - 1));
        v.canonicalize();
        return Interval::from_rat(v);
    }
    throw err_unknown_constant("no constant named '" + name + "'");
}

Interval script_R(int d, int r, const Interval& R_K, const mpz_class& h_K,
                  C3Variant variant) {
    Interval c3 = c3_value(d, r, variant);
    return Interval::max(Interval::from_int(h_K), c3 * Interval(d) * R_K);
}

BoundInputs BoundInputs::from_sspec(const SSpec& S, const Interval& H) {
    BoundInputs in;
    in.d = S.field.degree;
    in.r = S.field.unit_rank;
    in.s = S.stats.s;
    in.t = S.stats.t;
    in.R_K = S.field.regulator;
    in.R_S = S.regulator.value;
    in.h_K = S.field.class_number;
    in.P_S = S.stats.P_S;
    in.Pp_S = S.stats.Pp_S;
    in.Q_S = S.stats.Q_S;
    in.H = H;
    return in;
}

namespace {

ConstParams params_of(const BoundInputs& in) {
    ConstParams p;
    p.d = in.d;
    p.r = in.r;
    p.s = in.s;
    p.t = in.t;
    p.m = in.m > 0 ? in.m : 1;
    return p;
}

BoundReport finish(BoundReport rep, Interval value) {
    rep.log_value = value.log();
    rep.value = std::move(value);
    return rep;
}

} // namespace

Interval improvement_factor(const mpz_class& P_S, const mpz_class& Pp_S) {
    if (Pp_S < 1 || P_S < Pp_S)
        throw err_param_out_of_range("improvement_factor needs P_S >= P'_S >= 1");
    Interval lsp = Interval::from_int(Pp_S).log_star();
    Interval lslogp = Interval::from_int(P_S).log().log_star();
    return (Interval::from_int(Pp_S) / lsp) * (Interval(1) + lslogp / lsp);
}

BoundReport bound_thm_A(const BoundInputs& in) {
    BoundReport rep;
    if (in.t == 0) {
        rep.formula_id = "thmA_Sinf";
        Interval c2 = constant_value("c2", params_of(in));
        rep.constants.push_back({"c2", c2});
        rep.notes.push_back("S = S_inf variant: c2(d,r) R_K log* R_K H");
        return finish(std::move(rep), c2 * in.R_K * in.R_K.log_star() * in.H);
    }
    rep.formula_id = "thmA";
    Interval c1 = constant_value("c1", params_of(in));
    rep.constants.push_back({"c1", c1});
    Interval paren = Interval(1) + in.R_S.log_star() / Interval::from_int(in.P_S).log_star();
    return finish(std::move(rep),
                  c1 * Interval::from_int(in.P_S) * paren * in.R_S * in.H);
}

BoundReport bound_thm_B(const BoundInputs& in) {
    if (in.t == 0)
        throw err_requires_finite("Theorem B requires t > 0");
    BoundReport rep;
    rep.formula_id = "thmB";
    Interval c4 = constant_value("c4", params_of(in));
    Interval R = script_R(in.d, in.r, in.R_K, in.h_K, C3Variant::section2);
    rep.constants.push_back({"c4", c4});
    rep.constants.push_back({"script_R", R});
    Interval ps = Interval::from_int(in.P_S);
    return finish(std::move(rep),
                  c4 * R.pow_ui((unsigned long)(in.t + 5)) * (ps / ps.log()) * in.R_S * in.H);
}

BoundReport bound_thm_C(const BoundInputs& in) {
    BoundReport rep;
    rep.formula_id = "thmC";
    Interval c1 = constant_value("c1", params_of(in));
    rep.constants.push_back({"c1", c1});
    Interval lsp = Interval::from_int(in.Pp_S).log_star();
    Interval paren = Interval(1) + in.R_S.log_star() / lsp;
    return finish(std::move(rep),
                  c1 * Interval::from_int(in.Pp_S) * paren * in.R_S * in.H);
}

BoundReport bound_thm_1(const BoundInputs& in) {
    if (in.t == 0)
        throw err_requires_finite("Theorem 1 requires t > 0");
    BoundReport rep;
    rep.formula_id = "thm1";
    Interval c5 = constant_value("c5", params_of(in));
    Interval R = script_R(in.d, in.r, in.R_K, in.h_K, C3Variant::section2);
    Interval factor = improvement_factor(in.P_S, in.Pp_S);
    rep.constants.push_back({"c5", c5});
    rep.constants.push_back({"script_R", R});
    rep.constants.push_back({"factor_2_5", factor});
    return finish(std::move(rep),
                  c5 * R.pow_ui((unsigned long)(in.t + 4)) * factor * in.R_S * in.H);
}

BoundReport bound_thm_2(const BoundInputs& in) {
    if (in.m < 1) throw err_param_out_of_range("Theorem 2 needs m >= 1");
    if (!in.theta.is_positive())
        throw err_param_out_of_range("Theorem 2 needs theta > 0");
    BoundReport rep;
    rep.formula_id = "thm2";
    Interval c6 = constant_value("c6", params_of(in));
    rep.constants.push_back({"c6", c6});
    Interval pp = Interval::from_int(in.Pp_S);
    Interval head = Interval(16) * c6 * Interval(in.s) * (pp / pp.log_star());
    Interval tail = Interval::max((c6 * Interval(in.s) * pp).log(), in.theta.log_star());
    return finish(std::move(rep), head * in.theta * tail * in.H);
}

BoundReport lemma2_theta_bound(const BoundInputs& in) {
    BoundReport rep;
    rep.formula_id = "lemma2";
    Interval c10 = constant_value("c10", params_of(in));
    rep.constants.push_back({"c10", c10});
    rep.notes.push_back("bound on prod h(eps_i) over some fundamental system of S-units");
    return finish(std::move(rep), c10 * in.R_S);
}

Lemma3Result lemma3_bound(const AlgNum& alpha, int n, const SSpec& S, long search_box) {
    if (n < 1) throw err_param_out_of_range("Lemma 3 needs n >= 1");
    if (alpha.is_zero() || !is_s_integer(alpha, S))
        throw err_not_s_integral("alpha must be a nonzero S-integer");
    Lemma3Result out;
    Interval c3 = c3_value(S.field.degree, S.field.unit_rank, C3Variant::lemma3);
    Interval d(S.field.degree);
    out.per_n_increment = c3 * S.field.regulator;
    if (S.stats.Q_S > 1)
        out.per_n_increment = out.per_n_increment +
                              (Interval::from_int(S.field.class_number) / d) *
                                  Interval::from_int(S.stats.Q_S).log();
    mpq_class ns = s_norm(alpha, S);
    out.bound = Interval::from_rat(ns).log() / d + out.per_n_increment * Interval(n);

    if (search_box > 0 && S.field.kind == FieldProfile::Kind::rational) {
        std::vector<mpz_class> primes;
        for (const PrimeIdeal* pi : S.finite_ideals()) primes.push_back(pi->p);
        mpq_class alpha_q = alpha.as_rational();
        mpq_class best_eps = 1;
        mpz_class best_size = std::max(mpz_class(abs(alpha_q.get_num())), mpz_class(alpha_q.get_den()));
        // minimize max(|num|, |den|) of eps^n alpha over the exponent box;
        // pure integer comparisons, heights only for the winner
        std::function<void(size_t, const mpq_class&)> rec = [&](size_t i,
                                                                const mpq_class& eps) {
            if (i == primes.size()) {
                mpq_class v = alpha_q;
                mpq_class en = eps;
                for (int k = 1; k < n; ++k) en *= eps;
                v *= en;
                mpz_class size = std::max(mpz_class(abs(v.get_num())), mpz_class(v.get_den()));
                if (size < best_size) {
                    best_size = size;
                    best_eps = eps;
                }
                return;
            }
            mpz_class pk;
            mpz_pow_ui(pk.get_mpz_t(), primes[i].get_mpz_t(), (unsigned long)search_box);
            mpq_class cur = eps / pk;
            for (long e = -search_box; e <= search_box; ++e) {
                rec(i + 1, cur);
                cur *= primes[i];
            }
        };
        rec(0, mpq_class(1));
        AlgNum best{best_eps};
        out.witness = best;
        out.witness_height = height(best.pow(n) * alpha);
    }
    return out;
}

Interval prop5_lower_bound(const mpz_class& Nv, int d, int m,
                           const Interval& theta, const Interval& H,
                           const Interval& h_xi) {
    if (Nv < 2) throw err_param_out_of_range("N(v) >= 2 required");
    if (m < 1) throw err_param_out_of_range("prop5 needs m >= 1");
    ConstParams p;
    p.d = d;
    p.m = m;
    Interval c11 = constant_value("c11", p);
    Interval nv = Interval::from_int(Nv);
    Interval arg = (nv * h_xi / H).log_star();
    return -(c11 * (nv / nv.log()) * theta * H * arg);
}

BestBound best_unit_bound(const BoundInputs& in) {
    BestBound out;
    out.reports.push_back(bound_thm_A(in));
    if (in.t > 0) {
        out.reports.push_back(bound_thm_B(in));
        out.reports.push_back(bound_thm_C(in));
        out.reports.push_back(bound_thm_1(in));
    } else {
        out.reports.push_back(bound_thm_C(in));
    }
    size_t best = 0;
    for (size_t i = 1; i < out.reports.size(); ++i) {
        if (mpfr_less_p(out.reports[i].value.hi(), out.reports[best].value.hi()))
            best = i;
    }
    out.best_index = best;
    return out;
}

} // namespace effbounds
