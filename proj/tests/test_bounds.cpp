#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effbounds/bounds.hpp"
#include "effbounds/precision.hpp"
#include "effbounds/errors.hpp"

using namespace effbounds;

namespace {

bool encloses(const Interval& x, const Interval& target) {
    return !x.surely_lt(target) && !target.surely_lt(x);
}

mpz_class zpow(long b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), mpz_class(b).get_mpz_t(), e);
    return r;
}

SSpec q_spec(std::initializer_list<long> primes) {
    std::vector<mpz_class> ps;
    for (long p : primes) ps.push_back(p);
    return build_sspec(build_rational_field(), ps);
}

BoundInputs q_inputs(std::initializer_list<long> primes, long Hnum = 1, long Hden = 1) {
    Interval H = Interval::max(Interval(1), Interval::from_rat(mpq_class(Hnum, Hden)));
    return BoundInputs::from_sspec(q_spec(primes), H);
}

} // namespace

TEST_CASE("rational constants are exact integers/rationals") {
    ConstParams p;
    p.d = 1;
    p.s = 3;
    CHECK(encloses(constant_value("c1", p), Interval::from_int(zpow(48, 12))));
    p.r = 0;
    CHECK(encloses(constant_value("c2", p), Interval::from_int(zpow(4, 16))));
    p.t = 2;
    CHECK(encloses(constant_value("c4", p), Interval::from_int(zpow(16, 20))));
    ConstParams pc10;
    pc10.d = 1;
    pc10.s = 2;
    CHECK(encloses(constant_value("c10", pc10), Interval(1)));
    pc10.s = 1;  // ((0)!)^2 / 2^-1 = 2
    CHECK(encloses(constant_value("c10", pc10), Interval(2)));
    pc10.s = 4;
    pc10.d = 2;
    // (3!)^2 / (2^2 2^3) = 36/32 = 9/8
    CHECK(encloses(constant_value("c10", pc10), Interval::from_rat(mpq_class(9, 8))));
}

TEST_CASE("c3 branches and variants") {
    ConstParams p;
    p.d = 3;
    p.r = 0;
    CHECK(encloses(constant_value("c3", p), Interval()));
    p.r = 1;
    p.c3_variant = C3Variant::section2;
    CHECK(encloses(constant_value("c3", p), Interval::from_rat(mpq_class(1, 3))));
    p.c3_variant = C3Variant::lemma3;
    CHECK(encloses(constant_value("c3", p), Interval(1)));
    // r = 2, d = 3: 29 e 2! 2 sqrt(1) log(3) = 116 e log 3
    p.r = 2;
    p.c3_variant = C3Variant::section2;
    Interval expect = Interval(116) * Interval(1).exp() * Interval(3).log();
    CHECK(encloses(constant_value("c3", p), expect));
    // lemma3 variant clamps log* 3 = max(log 3, 1) = log 3 here (log 3 > 1)
    p.c3_variant = C3Variant::lemma3;
    CHECK(encloses(constant_value("c3", p), expect));
    // but for d = 2 the readings differ: log 2 < 1
    p.d = 2;
    p.c3_variant = C3Variant::section2;
    Interval v_sec = constant_value("c3", p);
    p.c3_variant = C3Variant::lemma3;
    Interval v_lem = constant_value("c3", p);
    CHECK(v_sec.surely_lt(v_lem));
}

TEST_CASE("c5, c6, c11 against direct log-space evaluation") {
    ConstParams p;
    p.d = 1;
    p.r = 0;
    p.s = 3;
    p.t = 2;
    Interval c5 = constant_value("c5", p);
    // log c5 = 5 log 3 + 15 (log 16 + 1)
    Interval logc5 = Interval(3).log() * Interval(5) +
                     (Interval(16).log() + Interval(1)) * Interval(15);
    CHECK(encloses(c5.log(), logc5));
    CHECK(c5.log().rel_width() < 1e-25);

    ConstParams pm;
    pm.d = 1;
    pm.m = 1;
    Interval c6 = constant_value("c6", pm);
    // c6(1,1) = 2*2*1*1*(16e)^8
    Interval expect = Interval(4) * (Interval(16) * Interval::euler()).pow_ui(8);
    CHECK(encloses(c6, expect));
    Interval c11 = constant_value("c11", pm);
    CHECK(encloses(c11, expect * Interval(12)));  // lambda = 12 for m = 1
    pm.m = 2;
    Interval c11b = constant_value("c11", pm);
    Interval c6b = constant_value("c6", pm);
    CHECK(encloses(c11b, c6b));  // lambda = 1 for m >= 2
}

TEST_CASE("unknown constants and bad parameters") {
    ConstParams p;
    CHECK_THROWS_AS(constant_value("c7", p), Error);
    p.s = 0;
    CHECK_THROWS_AS(constant_value("c1", p), Error);
}

TEST_CASE("script_R") {
    // r = 0: c3 = 0 so R = h_K
    CHECK(encloses(script_R(2, 0, Interval(1), 7, C3Variant::section2), Interval(7)));
    // Q: max(1, 0) = 1
    CHECK(encloses(script_R(1, 0, Interval(1), 1, C3Variant::section2), Interval(1)));
    // r=1, d=2, R_K ~ 0.4812, h_K=1: c3 = 1/2, c3 d R_K = 0.4812 < 1
    Interval rk = Interval::from_decimal("0.4812");
    Interval R = script_R(2, 1, rk, 1, C3Variant::section2);
    CHECK(encloses(R, Interval(1)));
}

TEST_CASE("improvement factor") {
    // P'=1, P=3: 1 * (1 + max(log log 3, 1)) = 2
    CHECK(encloses(improvement_factor(3, 1), Interval(2)));
    // invariants on a small grid
    for (long P : {2L, 3L, 10L, 100L, 10000L, 1000000L}) {
        Interval f1 = improvement_factor(P, 1);
        Interval cap = Interval(2) * Interval(P).log().log_star();
        CHECK(!f1.surely_gt(cap));
        for (long Pp : {2L, 3L, 10L, 100L}) {
            if (Pp > P) continue;
            Interval f = improvement_factor(P, Pp);
            if (Interval(Pp).surely_gt(Interval(P).log())) {
                Interval cap2 = Interval(2) * (Interval(Pp) / Interval(Pp).log_star());
                CHECK(!f.surely_gt(cap2));
            }
        }
    }
    CHECK_THROWS_AS(improvement_factor(1, 2), Error);
}

TEST_CASE("Theorem A over Q, S = {inf,2,3,5}") {
    BoundInputs in = q_inputs({2, 3, 5});
    BoundReport rep = bound_thm_A(in);
    CHECK(rep.formula_id == "thmA");
    // compose independently: log c1 + log P + log(1+log*R_S/log*P) + log R_S (+ log H = 0)
    Interval c1 = constant_value("c1", ConstParams{1, 0, 4, 3, 1, C3Variant::section2});
    Interval RS = in.R_S;
    Interval paren = Interval(1) + RS.log_star() / Interval(5).log_star();
    Interval expect = c1.log() + Interval(5).log() + paren.log() + RS.log();
    CHECK(encloses(rep.log_value, expect));
}

TEST_CASE("Theorem A switches to the S_inf variant at t = 0") {
    BoundInputs in = q_inputs({});
    BoundReport rep = bound_thm_A(in);
    CHECK(rep.formula_id == "thmA_Sinf");
    // c2(1,0) R_K log* R_K H = 4^16 * 1 * 1 * 1
    CHECK(encloses(rep.value, Interval::from_int(zpow(4, 16))));
}

TEST_CASE("every unit-equation bound is exactly linear in H") {
    for (auto make : {bound_thm_A, bound_thm_B, bound_thm_C, bound_thm_1}) {
        BoundInputs in = q_inputs({2, 3}, 7, 2);
        BoundReport r1 = make(in);
        in.H = in.H * Interval(2);
        BoundReport r2 = make(in);
        Interval doubled = r1.value * Interval(2);
        CHECK(mpfr_equal_p(doubled.lo(), r2.value.lo()));
        CHECK(mpfr_equal_p(doubled.hi(), r2.value.hi()));
    }
}

TEST_CASE("Theorem B") {
    CHECK_THROWS_AS(bound_thm_B(q_inputs({})), Error);
    BoundInputs in = q_inputs({2});
    BoundReport rep = bound_thm_B(in);
    // c4(1,0,1) R^6 (2/log2) R_S H with script R = 1
    Interval c4 = Interval::from_int(zpow(16, 16));
    Interval expect = c4 * (Interval(2) / Interval(2).log()) * in.R_S;
    CHECK(encloses(rep.value, expect));
}

TEST_CASE("Theorem C") {
    // t <= 2: P' = 1
    BoundInputs in = q_inputs({2, 3});
    BoundReport rep = bound_thm_C(in);
    Interval c1 = constant_value("c1", ConstParams{1, 0, 3, 2, 1, C3Variant::section2});
    Interval expect = c1 * (Interval(1) + in.R_S.log_star()) * in.R_S;
    CHECK(encloses(rep.value, expect));
    // thmC <= thmA whenever t > 0
    for (auto primes : {std::initializer_list<long>{2}, {2, 3}, {2, 3, 5},
                        {2, 3, 5, 7}, {5, 11, 97}}) {
        BoundInputs i2 = q_inputs(primes, 15, 1);
        CHECK(!bound_thm_C(i2).value.surely_gt(bound_thm_A(i2).value));
    }
}

TEST_CASE("Theorem 1 over Q, S = {inf,2,3}, H = 1") {
    CHECK_THROWS_AS(bound_thm_1(q_inputs({})), Error);
    BoundInputs in = q_inputs({2, 3});
    BoundReport rep = bound_thm_1(in);
    Interval c5 = constant_value("c5", ConstParams{1, 0, 3, 2, 1, C3Variant::section2});
    // script R = 1, factor = 2 (P=3, P'=1), R_S = log2 log3
    Interval expect = c5 * Interval(2) * in.R_S;
    CHECK(encloses(rep.value, expect));
}

TEST_CASE("Theorem 2") {
    BoundInputs in = q_inputs({2});
    in.m = 1;
    in.theta = Interval(2).log();
    BoundReport rep = bound_thm_2(in);
    Interval c6 = constant_value("c6", ConstParams{1, 0, 2, 1, 1, C3Variant::section2});
    Interval expect = Interval(16) * c6 * Interval(2) * Interval(2).log() *
                      Interval::max((c6 * Interval(2)).log(), Interval(1));
    CHECK(encloses(rep.value, expect));
    // doubling theta doubles the bound while the log(c6 s P') branch is max
    BoundInputs in2 = in;
    in2.theta = in.theta * Interval(2);
    BoundReport rep2 = bound_thm_2(in2);
    CHECK(encloses(rep2.value, rep.value * Interval(2)));
    // m >= 1 and theta > 0 enforced
    BoundInputs bad = in;
    bad.m = 0;
    CHECK_THROWS_AS(bound_thm_2(bad), Error);
    bad = in;
    bad.theta = Interval();
    CHECK_THROWS_AS(bound_thm_2(bad), Error);
}

TEST_CASE("Lemma 2 theta bound") {
    BoundInputs in = q_inputs({2, 3});
    BoundReport rep = lemma2_theta_bound(in);
    CHECK(rep.formula_id == "lemma2");
    // c10(s=3,d=1) = (2!)^2/2 = 2
    CHECK(encloses(rep.value, Interval(2) * in.R_S));
}

TEST_CASE("Lemma 3 bound and witness") {
    SSpec S = q_spec({2, 3});
    Lemma3Result r = lemma3_bound(AlgNum(12), 1, S, 4);
    CHECK(encloses(r.bound, Interval(6).log()));
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == AlgNum(mpq_class(1, 12)));
    CHECK(encloses(r.witness_height, Interval()));

    SSpec S2 = q_spec({2});
    Lemma3Result r2 = lemma3_bound(AlgNum(5), 1, S2, 4);
    CHECK(encloses(r2.bound, Interval(5).log() + Interval(2).log()));
    CHECK(!r2.witness_height.surely_gt(r2.bound));

    // affine in n: increment is exactly c3 R_K + (h_K/d) log Q_S
    Lemma3Result a1 = lemma3_bound(AlgNum(7), 1, S, 0);
    Lemma3Result a2 = lemma3_bound(AlgNum(7), 2, S, 0);
    CHECK(encloses(a2.bound - a1.bound, a1.per_n_increment));

    CHECK_THROWS_AS(lemma3_bound(AlgNum(mpq_class(1, 5)), 1, S, 0), Error);
    CHECK_THROWS_AS(lemma3_bound(AlgNum(0), 1, S, 0), Error);
}

TEST_CASE("Proposition 5 lower bound") {
    // Q, v = inf (N=2), m=1, theta = log 2, H = 1, h_xi = log 1024
    Interval theta = Interval(2).log();
    Interval H(1);
    Interval hxi = Interval(1024).log();
    Interval lb = prop5_lower_bound(2, 1, 1, theta, H, hxi);
    ConstParams pm;
    pm.d = 1;
    pm.m = 1;
    Interval c11 = constant_value("c11", pm);
    Interval expect = -(c11 * (Interval(2) / Interval(2).log()) * theta *
                        (Interval(2) * hxi).log_star());
    CHECK(encloses(lb, expect));
    CHECK(lb.is_negative());
    // doubling H and h_xi together doubles |value| exactly
    Interval lb2 = prop5_lower_bound(2, 1, 1, theta, H * Interval(2), hxi * Interval(2));
    CHECK(encloses(lb2, lb * Interval(2)));
}

TEST_CASE("best_unit_bound") {
    BestBound b0 = best_unit_bound(q_inputs({}));
    REQUIRE(b0.reports.size() == 2);
    CHECK(b0.reports[0].formula_id == "thmA_Sinf");
    CHECK(b0.reports[1].formula_id == "thmC");

    BestBound b = best_unit_bound(q_inputs({2, 3}));
    REQUIRE(b.reports.size() == 4);
    CHECK(b.reports[0].formula_id == "thmA");
    CHECK(b.reports[1].formula_id == "thmB");
    CHECK(b.reports[2].formula_id == "thmC");
    CHECK(b.reports[3].formula_id == "thm1");
    for (const BoundReport& r : b.reports)
        CHECK(!b.reports[b.best_index].value.surely_gt(r.value));

    // adding a huge prime never decreases the thm1 value
    Interval v1 = bound_thm_1(q_inputs({2, 3})).value;
    Interval v2 = bound_thm_1(q_inputs({2, 3, 9973})).value;
    CHECK(!v2.surely_lt(v1));
}

TEST_CASE("doubling the precision never raises an upper bound") {
    for (auto make : {bound_thm_A, bound_thm_C, bound_thm_1}) {
        Interval coarse, fine;
        {
            PrecisionGuard g(64);
            coarse = make(q_inputs({2, 3, 5}, 7, 3)).value;
        }
        {
            PrecisionGuard g(128);
            fine = make(q_inputs({2, 3, 5}, 7, 3)).value;
        }
        CHECK(mpfr_lessequal_p(fine.hi(), coarse.hi()));
        CHECK(mpfr_greaterequal_p(fine.lo(), coarse.lo()));
        CHECK(fine.rel_width() < coarse.rel_width());
    }
}

TEST_CASE("corpus inequality: log* log P_S <= log* R_S + log 5") {
    for (auto primes : {std::initializer_list<long>{2}, {2, 3}, {2, 97},
                        {89, 97}, {2, 3, 5, 7, 11}}) {
        SSpec S = q_spec(primes);
        Interval lhs = Interval::from_int(S.stats.P_S).log().log_star();
        Interval rhs = S.regulator.value.log_star() + Interval(5).log();
        CHECK(!lhs.surely_gt(rhs));
    }
}
