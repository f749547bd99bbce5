#include "effbounds/nf_core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "effbounds/errors.hpp"

namespace effbounds {

namespace {

struct Budget {
    unsigned long left;
    explicit Budget(unsigned long n) : left(n) {}
    void spend(const char* what) {
        if (left == 0)
            throw err_limit_exceeded(std::string("work budget exhausted in ") + what);
        --left;
    }
};

long vp(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw std::domain_error("vp(0)");
    mpz_class rest;
    return (long)mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

// Tonelli-Shanks square root mod an odd prime; requires (n|p) != -1.
mpz_class sqrt_mod(const mpz_class& n0, const mpz_class& p) {
    mpz_class n = n0 % p;
    if (n < 0) n += p;
    if (n == 0) return 0;
    if (p % 4 == 3) {
        mpz_class e = (p + 1) / 4, r;
        mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    mpz_class q = p - 1;
    unsigned long s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    mpz_class m(s), c, t, r, e = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        mpz_class tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
            if (mpz_class(i) >= m) throw std::logic_error("sqrt_mod: not a residue");
        }
        mpz_class b = c;
        for (mpz_class j = m - i - 1; j > 0; --j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

} // namespace

std::vector<std::pair<mpz_class, int>> factor_int(const mpz_class& n0) {
    std::vector<std::pair<mpz_class, int>> out;
    mpz_class n = abs(n0);
    if (n <= 1) return out;
    int e = 0;
    while (n % 2 == 0) { n /= 2; ++e; }
    if (e) out.push_back({2, e});
    for (mpz_class d = 3; d * d <= n; d += 2) {
        e = 0;
        while (n % d == 0) { n /= d; ++e; }
        if (e) out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

FieldProfile build_rational_field() {
    FieldProfile f;
    f.kind = FieldProfile::Kind::rational;
    f.disc = 1;
    f.degree = 1;
    f.unit_rank = 0;
    f.regulator = Interval(1);
    f.class_number = 1;
    f.provenance = Provenance::computed;
    return f;
}

// ---------------------------------------------------------------------------
// Continued fraction of omega = (sigma + sqrt(disc)) / 2 and the fundamental
// unit as the product of complete quotients over one full period.

CfUnitData fundamental_unit_cf(long D, const QuadLimits& limits) {
    if (D <= 1) throw std::domain_error("fundamental_unit_cf: D must be > 1");
    mpz_class disc = (((D % 4) + 4) % 4 == 1) ? mpz_class(D) : mpz_class(4) * D;
    long sigma = mpz_odd_p(disc.get_mpz_t()) ? 1 : 0;
    mpz_class sq = isqrt(disc);

    Budget budget(limits.work_budget);
    std::map<std::pair<mpz_class, mpz_class>, size_t> seen;
    std::vector<AlgNum> quots;
    std::vector<mpz_class> partials;

    auto make_quot = [&](const mpz_class& P, const mpz_class& Q) {
        // (P + sqrt(disc))/Q; sqrt(disc) = sqrt(D) or 2 sqrt(D)
        mpz_class broot = (sigma == 1) ? 1 : 2;
        return AlgNum(P, broot, Q, D);
    };

    mpz_class P = sigma, Q = 2;
    size_t start = 0, end = 0;
    for (size_t k = 0;; ++k) {
        budget.spend("fundamental_unit_cf");
        if (Q <= 0) throw std::logic_error("fundamental_unit_cf: nonpositive Q");
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) { start = it->second; end = k; break; }
        seen.emplace(key, k);
        quots.push_back(make_quot(P, Q));
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), mpz_class(P + sq).get_mpz_t(), Q.get_mpz_t());
        partials.push_back(a);
        mpz_class Pn = a * Q - P;
        mpz_class num = disc - Pn * Pn;
        if (num % Q != 0) throw std::logic_error("fundamental_unit_cf: recursion broke");
        Q = num / Q;
        P = Pn;
    }

    CfUnitData out;
    AlgNum unit(1);
    for (size_t i = start; i < end; ++i) {
        unit = unit * quots[i];
        out.complete_quotients.push_back(quots[i]);
        out.partial_quotients.push_back(partials[i]);
    }
    mpq_class n = unit.norm_q();
    if (n != 1 && n != -1)
        throw std::logic_error("fundamental unit has |norm| != 1");
    if (unit.sign_at(0) < 0) unit = -unit;
    if ((unit - AlgNum(1)).sign_at(0) <= 0)
        throw std::logic_error("fundamental unit not > 1");
    out.unit = unit;
    out.norm_sign = (n == 1) ? 1 : -1;
    return out;
}

// ---------------------------------------------------------------------------
// Class numbers from reduced binary quadratic forms.

namespace {

// b' congruent to x mod 2m, normalized into (lo, lo + 2m]
mpz_class norm_into(const mpz_class& x, const mpz_class& lo, const mpz_class& m2) {
    mpz_class r = (x - lo - 1) % m2;
    if (r < 0) r += m2;
    return lo + 1 + r;
}

bool lt_sqrt(const mpz_class& v, const mpz_class& disc) {  // v < sqrt(disc)
    return v < 0 || v * v < disc;
}

bool is_reduced_indef(const mpz_class& a, const mpz_class& b, const mpz_class& disc) {
    if (b <= 0 || b * b >= disc) return false;
    mpz_class aa = abs(a);
    return lt_sqrt(2 * aa - b, disc) && disc < (2 * aa + b) * (2 * aa + b);
}

struct Form { mpz_class a, b, c; };

bool operator<(const Form& x, const Form& y) {
    int c = cmp(x.a, y.a);
    if (c) return c < 0;
    c = cmp(x.b, y.b);
    if (c) return c < 0;
    return cmp(x.c, y.c) < 0;
}

Form rho_indef(const Form& f, const mpz_class& disc, const mpz_class& sq) {
    mpz_class a2 = f.c;
    mpz_class aa = abs(a2);
    mpz_class b2 = sq - (sq + f.b) % (2 * aa);
    // b2 in (sq - 2|a2|, sq], b2 == -b (mod 2 a2)
    mpz_class c2 = (b2 * b2 - disc) / (4 * a2);
    return {a2, b2, c2};
}

mpz_class class_number_imag(const mpz_class& disc, Budget& budget) {
    // count primitive reduced positive definite forms
    mpz_class count = 0;
    mpz_class absd = -disc;
    for (mpz_class a = 1; 3 * a * a <= absd; ++a) {
        for (mpz_class b = -a + 1; b <= a; ++b) {
            budget.spend("class_number_imag");
            if (((b - disc) % 2) != 0) continue;
            mpz_class num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            mpz_class c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g != 1) continue;
            ++count;
        }
    }
    return count;
}

mpz_class narrow_class_number_real(const mpz_class& disc, Budget& budget) {
    mpz_class sq = isqrt(disc);
    std::set<Form> forms;
    for (mpz_class b = ((disc % 2 != 0) ? 1 : 2); b <= sq; b += 2) {
        mpz_class num = disc - b * b;  // = -4ac > 0
        if (num % 4 != 0) continue;
        mpz_class M = num / 4;         // = -ac = |a| |c|
        for (mpz_class a1 = 1; a1 * a1 <= M; ++a1) {
            budget.spend("narrow_class_number_real");
            if (M % a1 != 0) continue;
            mpz_class c1 = M / a1;
            // (a, c) in {(a1,-c1), (-a1,c1), (c1,-a1), (-c1,a1)}
            const mpz_class cand[4][2] = {
                {a1, -c1}, {-a1, c1}, {c1, -a1}, {-c1, a1}};
            for (auto& ac : cand) {
                Form f{ac[0], b, ac[1]};
                if (!is_reduced_indef(f.a, f.b, disc)) continue;
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), f.a.get_mpz_t(), f.b.get_mpz_t());
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.c.get_mpz_t());
                if (g != 1) continue;
                forms.insert(f);
            }
        }
    }
    // count rho-cycles
    std::set<Form> visited;
    mpz_class cycles = 0;
    for (const Form& f0 : forms) {
        if (visited.count(f0)) continue;
        ++cycles;
        Form f = f0;
        do {
            budget.spend("narrow_class_number_real cycle walk");
            visited.insert(f);
            f = rho_indef(f, disc, sq);
            if (!forms.count(f))
                throw std::logic_error("rho left the reduced set");
        } while (!(f.a == f0.a && f.b == f0.b && f.c == f0.c));
    }
    return cycles;
}

} // namespace

FieldProfile build_quadratic_field(long D, const QuadLimits& limits) {
    if (D == 0 || D == 1 || !is_squarefree(D))
        throw err_not_squarefree("D = " + std::to_string(D) + " is not a valid squarefree generator");
    FieldProfile f;
    f.kind = FieldProfile::Kind::quadratic;
    f.D = D;
    f.disc = (((D % 4) + 4) % 4 == 1) ? mpz_class(D) : mpz_class(4) * D;
    if (abs(f.disc) > limits.max_abs_disc)
        throw err_limit_exceeded("|disc| exceeds the desk-scale limit");
    f.degree = 2;
    f.provenance = Provenance::computed;

    Budget budget(limits.work_budget);
    if (D < 0) {
        f.unit_rank = 0;
        f.regulator = Interval(1);
        f.class_number = class_number_imag(f.disc, budget);
    } else {
        f.unit_rank = 1;
        CfUnitData cf = fundamental_unit_cf(D, limits);
        f.fundamental_unit = cf.unit;
        f.regulator = cf.unit.embed(0).log();
        mpz_class hplus = narrow_class_number_real(f.disc, budget);
        if (cf.norm_sign == 1) {
            if (hplus % 2 != 0)
                throw std::logic_error("narrow class number parity mismatch");
            f.class_number = hplus / 2;
        } else {
            f.class_number = hplus;
        }
    }
    return f;
}

std::vector<PrimeIdeal> split_prime(const FieldProfile& field, const mpz_class& p) {
    if (field.kind == FieldProfile::Kind::asserted)
        throw err_asserted_unsupported("asserted profiles carry their own ideal norms");
    if (field.kind == FieldProfile::Kind::rational) {
        if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
            throw std::domain_error("split_prime: " + p.get_str() + " is not prime");
        PrimeIdeal q;
        q.p = p;
        q.norm = p;
        q.tag = PrimeIdeal::Tag::rational;
        q.disc = 1;
        return {q};
    }
    return split_prime_quadratic(field.D, p);
}

std::vector<PrimeIdeal> split_prime_quadratic(long D, const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw std::domain_error("split_prime: " + p.get_str() + " is not prime");
    if (D == 0 || D == 1 || !is_squarefree(D))
        throw err_not_squarefree("invalid quadratic generator");
    mpz_class disc = (((D % 4) + 4) % 4 == 1) ? mpz_class(D) : mpz_class(4) * D;

    std::vector<PrimeIdeal> out;
    int k = mpz_kronecker(disc.get_mpz_t(), p.get_mpz_t());
    long sigma = mpz_odd_p(disc.get_mpz_t()) ? 1 : 0;
    if (k == 1) {
        // two ideals of norm p; roots of the minimal polynomial of omega mod p
        mpz_class r0, r1;
        if (p == 2) {
            // only odd disc splits at 2: x^2 - x + (1-disc)/4 has roots 0, 1
            r0 = 0;
            r1 = 1;
        } else if (sigma == 0) {
            mpz_class rt = sqrt_mod(mpz_class(D), p);
            r0 = rt;
            r1 = (p - rt) % p;
        } else {
            mpz_class rt = sqrt_mod(disc, p);
            mpz_class inv2;
            mpz_class two = 2;
            mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
            r0 = (1 + rt) * inv2 % p;
            r1 = (1 - rt % p + p) * inv2 % p;
        }
        if (r0 > r1) std::swap(r0, r1);
        int idx = 0;
        for (const mpz_class& r : {r0, r1}) {
            PrimeIdeal q;
            q.p = p;
            q.norm = p;
            q.tag = PrimeIdeal::Tag::split;
            q.disc = disc;
            q.omega_root = r;
            q.index = idx++;
            out.push_back(q);
        }
    } else if (k == -1) {
        PrimeIdeal q;
        q.p = p;
        q.norm = p * p;
        q.tag = PrimeIdeal::Tag::inert;
        q.disc = disc;
        out.push_back(q);
    } else {
        PrimeIdeal q;
        q.p = p;
        q.norm = p;
        q.tag = PrimeIdeal::Tag::ramified;
        q.disc = disc;
        out.push_back(q);
    }
    return out;
}

FieldProfile import_field_profile(const AssertedRecord& rec) {
    if (rec.d < 1) throw err_inconsistent("d must be >= 1");
    if (rec.r < 0 || rec.r > rec.d - 1)
        throw err_inconsistent("unit rank must satisfy 0 <= r <= d-1");
    if (rec.h_K < 1) throw err_inconsistent("h_K must be >= 1");
    Interval rk = Interval::from_decimal(rec.R_K);
    if (!rk.is_positive()) throw err_inconsistent("R_K must be positive");
    for (const mpz_class& n : rec.prime_ideal_norms)
        if (n < 2) throw err_inconsistent("prime ideal norms must be >= 2");

    FieldProfile f;
    f.kind = FieldProfile::Kind::asserted;
    f.disc = 0;
    f.degree = rec.d;
    f.unit_rank = rec.r;
    f.regulator = rk;
    f.class_number = rec.h_K;
    f.provenance = Provenance::asserted;
    f.asserted_prime_norms = rec.prime_ideal_norms;
    return f;
}

long ord_p_rational(const mpq_class& q, const mpz_class& p) {
    if (q == 0) throw std::domain_error("ord of 0");
    long v = 0;
    if (q.get_num() % p == 0) v = vp(q.get_num(), p);
    if (q.get_den() % p == 0) v -= vp(q.get_den(), p);
    return v;
}

long ord(const AlgNum& alpha, const PrimeIdeal& pi) {
    if (alpha.is_zero()) throw std::domain_error("ord of 0");
    switch (pi.tag) {
    case PrimeIdeal::Tag::rational:
        if (!alpha.is_rational())
            throw std::domain_error("ord: quadratic element at a rational-field ideal");
        return ord_p_rational(alpha.as_rational(), pi.p);
    case PrimeIdeal::Tag::inert: {
        long v = ord_p_rational(alpha.norm_q(), pi.p);
        if (v % 2 != 0) throw std::logic_error("ord: odd norm valuation at inert prime");
        return v / 2;
    }
    case PrimeIdeal::Tag::ramified:
        return ord_p_rational(alpha.norm_q(), pi.p);
    case PrimeIdeal::Tag::split: {
        // integral-basis coordinates: alpha = (A + B*omega) / den
        long sigma = mpz_odd_p(pi.disc.get_mpz_t()) ? 1 : 0;
        mpz_class A = (sigma == 1) ? mpz_class(alpha.a() - alpha.b()) : alpha.a();
        mpz_class B = (sigma == 1) ? mpz_class(2 * alpha.b()) : alpha.b();
        const mpz_class& den = alpha.c();
        long vden = (den % pi.p == 0) ? vp(den, pi.p) : 0;
        long m;
        if (A == 0) m = vp(B, pi.p);
        else if (B == 0) m = vp(A, pi.p);
        else m = std::min(vp(A, pi.p), vp(B, pi.p));
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), pi.p.get_mpz_t(), (unsigned long)m);
        mpz_class A1 = A / pk, B1 = B / pk;
        mpz_class nomega = (sigma * sigma - pi.disc) / 4;
        mpz_class N1 = A1 * A1 + A1 * B1 * sigma + B1 * B1 * nomega;
        long v = m;
        mpz_class test = (A1 + B1 * pi.omega_root) % pi.p;
        if (test < 0) test += pi.p;
        if (test == 0) v += (N1 == 0) ? 0 : vp(N1, pi.p);
        return v - vden;
    }
    }
    throw std::logic_error("ord: bad tag");
}

// ---------------------------------------------------------------------------
// Ideal class arithmetic in the wide class group: ideals in standard form
// Z a + Z (u + omega), norm a > 0, u mod a.  Products via module HNF,
// equivalence via reduction (unique reduced ideal for disc < 0, reduction
// cycle for disc > 0).

namespace {

struct ClassCtx {
    mpz_class disc;
    long sigma;
    mpz_class nomega;  // N(omega) = (sigma^2 - disc)/4
    mpz_class sq;      // floor(sqrt(disc)) for disc > 0
    Budget* budget;
};

struct QIdeal { mpz_class a, u; };  // Z a + Z (u + omega)

bool operator<(const QIdeal& x, const QIdeal& y) {
    int c = cmp(x.a, y.a);
    if (c) return c < 0;
    return cmp(x.u, y.u) < 0;
}
bool operator==(const QIdeal& x, const QIdeal& y) { return x.a == y.a && x.u == y.u; }

QIdeal normalized(QIdeal q) {
    q.u %= q.a;
    if (q.u < 0) q.u += q.a;
    return q;
}

QIdeal unit_ideal() { return {1, 0}; }

// module product with content removed (returns the class representative)
QIdeal multiply(const QIdeal& x, const QIdeal& y, const ClassCtx& cx) {
    struct Row { mpz_class c0, c1; };
    mpz_class g4c1 = x.u + y.u + cx.sigma;
    Row rows[4] = {
        {x.a * y.a, 0},
        {x.a * y.u, x.a},
        {y.a * x.u, y.a},
        {x.u * y.u - cx.nomega, g4c1},
    };
    // column-2 gcd with Bezout-tracked column-1 combination
    mpz_class g = 0, xc = 0;
    for (const Row& r : rows) {
        if (r.c1 == 0) continue;
        mpz_class s, t, gn;
        mpz_gcdext(gn.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                   g.get_mpz_t(), r.c1.get_mpz_t());
        xc = s * xc + t * r.c0;
        g = gn;
    }
    if (g == 0) throw std::logic_error("ideal product degenerated");
    mpz_class A = 0;
    for (const Row& r : rows) {
        mpz_class red = r.c0 - (r.c1 / g) * xc;
        mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), red.get_mpz_t());
    }
    if (A % g != 0 || xc % g != 0)
        throw std::logic_error("ideal product content mismatch");
    if (A * g != x.a * y.a)
        throw std::logic_error("ideal product norm mismatch");
    return normalized({A / g, xc / g});
}

QIdeal reduce_imag(QIdeal q, const ClassCtx& cx) {
    mpz_class a = q.a, b = 2 * q.u + cx.sigma;
    for (;;) {
        cx.budget->spend("reduce_imag");
        b = norm_into(b, -a, 2 * a);  // (-a, a]
        mpz_class c = (b * b - cx.disc) / (4 * a);
        if (a > c) { a = c; b = -b; continue; }
        if (a == c && b < 0) b = -b;
        break;
    }
    mpz_class u = (b - cx.sigma) / 2;
    return normalized({a, u});
}

bool is_reduced_ideal_real(const mpz_class& a, const mpz_class& b, const ClassCtx& cx) {
    return is_reduced_indef(a, b, cx.disc);
}

void rho_real(mpz_class& a, mpz_class& b, const ClassCtx& cx) {
    mpz_class c = (b * b - cx.disc) / (4 * a);
    mpz_class a2 = abs(c);
    mpz_class b2;
    if (a2 > cx.sq)
        b2 = norm_into(-b, -a2, 2 * a2);
    else
        b2 = norm_into(-b, cx.sq - 2 * a2, 2 * a2);
    a = a2;
    b = b2;
}

QIdeal canonical_real(QIdeal q, const ClassCtx& cx) {
    mpz_class a = q.a, b = 2 * q.u + cx.sigma;
    while (!is_reduced_ideal_real(a, b, cx)) {
        cx.budget->spend("canonical_real reduce");
        rho_real(a, b, cx);
    }
    // walk the cycle, take the lexicographically smallest (a, b)
    mpz_class besta = a, bestb = b;
    mpz_class a0 = a, b0 = b;
    for (;;) {
        cx.budget->spend("canonical_real cycle");
        rho_real(a, b, cx);
        if (a == a0 && b == b0) break;
        if (a < besta || (a == besta && b < bestb)) { besta = a; bestb = b; }
    }
    mpz_class u = (bestb - cx.sigma) / 2;
    return normalized({besta, u});
}

QIdeal canonical(const QIdeal& q, const ClassCtx& cx) {
    return cx.disc < 0 ? reduce_imag(q, cx) : canonical_real(q, cx);
}

QIdeal prime_to_ideal(const PrimeIdeal& pi, const ClassCtx& cx) {
    if (pi.tag == PrimeIdeal::Tag::split) {
        mpz_class b = (cx.sigma - 2 * pi.omega_root) % (2 * pi.p);
        if (b < 0) b += 2 * pi.p;
        return normalized({pi.p, (b - cx.sigma) / 2});
    }
    if (pi.tag == PrimeIdeal::Tag::ramified) {
        for (mpz_class b = 0; b < 2 * pi.p; ++b) {
            if ((b - cx.sigma) % 2 != 0) continue;
            if ((b * b - cx.disc) % (4 * pi.p) == 0)
                return normalized({pi.p, (b - cx.sigma) / 2});
        }
        throw std::logic_error("no standard form for ramified ideal");
    }
    throw std::logic_error("prime_to_ideal: inert/rational ideals are principal");
}

} // namespace

mpz_class class_subgroup_order(const FieldProfile& field,
                               const std::vector<PrimeIdeal>& ideals) {
    if (field.kind == FieldProfile::Kind::rational) return 1;
    if (field.kind != FieldProfile::Kind::quadratic)
        throw err_asserted_unsupported("class_subgroup_order needs a computed field");

    Budget budget(QuadLimits{}.work_budget);
    ClassCtx cx;
    cx.disc = field.disc;
    cx.sigma = mpz_odd_p(field.disc.get_mpz_t()) ? 1 : 0;
    cx.nomega = (mpz_class(cx.sigma * cx.sigma) - field.disc) / 4;
    cx.sq = field.disc > 0 ? isqrt(field.disc) : mpz_class(0);
    cx.budget = &budget;

    std::vector<QIdeal> gens;
    for (const PrimeIdeal& pi : ideals) {
        if (pi.tag == PrimeIdeal::Tag::inert || pi.tag == PrimeIdeal::Tag::rational)
            continue;
        gens.push_back(canonical(prime_to_ideal(pi, cx), cx));
    }

    std::set<QIdeal> subgroup;
    std::vector<QIdeal> frontier;
    QIdeal id = canonical(unit_ideal(), cx);
    subgroup.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        QIdeal cur = frontier.back();
        frontier.pop_back();
        for (const QIdeal& g : gens) {
            budget.spend("class_subgroup_order closure");
            QIdeal next = canonical(multiply(cur, g, cx), cx);
            if (subgroup.insert(next).second) frontier.push_back(next);
        }
    }
    return mpz_class((unsigned long)subgroup.size());
}

} // namespace effbounds
