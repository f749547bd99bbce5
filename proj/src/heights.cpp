#include "effbounds/heights.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "effbounds/errors.hpp"

namespace effbounds {

std::string Place::label() const {
    switch (kind) {
    case Kind::infinite_real:    return "inf" + std::to_string(embedding);
    case Kind::infinite_complex: return "inf_c";
    case Kind::finite:
        return "p" + ideal->p.get_str() +
               (ideal->tag == PrimeIdeal::Tag::split ? "." + std::to_string(ideal->index) : "");
    }
    return "?";
}

std::vector<Place> infinite_places(const FieldProfile& field) {
    std::vector<Place> out;
    switch (field.kind) {
    case FieldProfile::Kind::rational: {
        Place v;
        v.kind = Place::Kind::infinite_real;
        v.local_degree = 1;
        out.push_back(v);
        break;
    }
    case FieldProfile::Kind::quadratic:
        if (field.D > 0) {
            for (int i = 0; i < 2; ++i) {
                Place v;
                v.kind = Place::Kind::infinite_real;
                v.local_degree = 1;
                v.embedding = i;
                out.push_back(v);
            }
        } else {
            Place v;
            v.kind = Place::Kind::infinite_complex;
            v.local_degree = 2;
            out.push_back(v);
        }
        break;
    case FieldProfile::Kind::asserted:
        // r+1 synthetic infinite places; local degrees are unknown (0)
        for (int i = 0; i <= field.unit_rank; ++i) {
            Place v;
            v.kind = Place::Kind::infinite_real;
            v.local_degree = 0;
            v.embedding = i;
            out.push_back(v);
        }
        break;
    }
    return out;
}

static void compute_derived(SSpec& S) {
    S.stats = place_stats(S);
    S.regulator = s_regulator(S);
    // Lemma 1 sandwich ends
    Interval prod(1);
    for (const PrimeIdeal* pi : S.finite_ideals())
        prod = prod * Interval::from_int(pi->norm).log();
    S.lemma1_lo = S.field.regulator * prod;
    S.lemma1_hi = S.field.regulator * Interval::from_int(S.field.class_number) * prod;
}

std::vector<const PrimeIdeal*> SSpec::finite_ideals() const {
    std::vector<const PrimeIdeal*> out;
    for (const Place& v : places)
        if (v.kind == Place::Kind::finite) out.push_back(&*v.ideal);
    return out;
}

SSpec build_sspec(const FieldProfile& field, const std::vector<mpz_class>& primes,
                  const IdealSelection& sel) {
    SSpec S;
    S.field = field;
    S.places = infinite_places(field);

    std::vector<mpz_class> ps = primes;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    if (field.kind == FieldProfile::Kind::asserted) {
        if (!ps.empty())
            throw err_asserted_unsupported(
                "asserted profiles take prime ideal norms, not rational primes");
        for (const mpz_class& n : field.asserted_prime_norms) {
            Place v;
            v.kind = Place::Kind::finite;
            PrimeIdeal pi;
            pi.p = 0;  // sentinel: no element arithmetic available
            pi.norm = n;
            pi.tag = PrimeIdeal::Tag::rational;
            pi.disc = 0;
            v.ideal = pi;
            v.local_degree = 0;
            S.places.push_back(v);
        }
        compute_derived(S);
        return S;
    }

    for (const mpz_class& p : ps) {
        for (const PrimeIdeal& pi : split_prime(field, p)) {
            if (!sel.all) {
                bool wanted = false;
                for (auto& [q, idx] : sel.explicit_ideals)
                    if (q == pi.p && idx == pi.index) wanted = true;
                if (!wanted) continue;
            }
            Place v;
            v.kind = Place::Kind::finite;
            v.local_degree = (pi.tag == PrimeIdeal::Tag::split ||
                              pi.tag == PrimeIdeal::Tag::rational) ? 1 : 2;
            v.ideal = pi;
            S.places.push_back(v);
        }
    }
    compute_derived(S);
    return S;
}

SSpec make_sspec_from_places(const FieldProfile& field, std::vector<Place> places) {
    if (field.kind != FieldProfile::Kind::asserted) {
        int dsum = 0;
        for (const Place& v : places)
            if (v.kind != Place::Kind::finite) dsum += v.local_degree;
        if (dsum != field.degree)
            throw err_missing_infinite("infinite places have total local degree " +
                                       std::to_string(dsum) + ", expected " +
                                       std::to_string(field.degree));
    }
    std::stable_sort(places.begin(), places.end(), [](const Place& a, const Place& b) {
        return (a.kind == Place::Kind::finite) < (b.kind == Place::Kind::finite);
    });
    SSpec S;
    S.field = field;
    S.places = std::move(places);
    compute_derived(S);
    return S;
}

Interval abs_value(const AlgNum& alpha, const Place& v) {
    if (v.local_degree == 0)
        throw err_asserted_unsupported("no absolute values on asserted fields");
    switch (v.kind) {
    case Place::Kind::infinite_real: {
        if (alpha.is_rational()) {
            mpq_class q = abs(alpha.as_rational());
            return Interval::from_rat(q);
        }
        int s = alpha.sign_at(v.embedding);
        Interval e = alpha.embed(v.embedding);
        return s >= 0 ? e : -e;
    }
    case Place::Kind::infinite_complex:
        return Interval::from_rat(alpha.abs2_complex());
    case Place::Kind::finite: {
        if (alpha.is_zero()) return Interval();
        long o = ord(alpha, *v.ideal);
        mpq_class val;
        mpz_class nk;
        mpz_pow_ui(nk.get_mpz_t(), v.ideal->norm.get_mpz_t(),
                   (unsigned long)(o < 0 ? -o : o));
        val = (o >= 0) ? mpq_class(1, nk) : mpq_class(nk, 1);
        val.canonicalize();
        return Interval::from_rat(val);
    }
    }
    throw std::logic_error("abs_value: bad place");
}

std::optional<mpq_class> abs_value_exact(const AlgNum& alpha, const Place& v) {
    if (v.local_degree == 0) return std::nullopt;
    switch (v.kind) {
    case Place::Kind::infinite_real:
        if (!alpha.is_rational()) return std::nullopt;
        return abs(alpha.as_rational());
    case Place::Kind::infinite_complex:
        return alpha.abs2_complex();
    case Place::Kind::finite: {
        if (alpha.is_zero()) return mpq_class(0);
        long o = ord(alpha, *v.ideal);
        mpz_class nk;
        mpz_pow_ui(nk.get_mpz_t(), v.ideal->norm.get_mpz_t(),
                   (unsigned long)(o < 0 ? -o : o));
        mpq_class val = (o >= 0) ? mpq_class(1, nk) : mpq_class(nk, 1);
        val.canonicalize();
        return val;
    }
    }
    return std::nullopt;
}

Interval height(const AlgNum& alpha) {
    if (alpha.is_zero())
        throw std::domain_error("height of 0 is not defined here");
    if (alpha.is_rational()) {
        mpq_class q = alpha.as_rational();
        mpz_class m = std::max(abs(q.get_num()), abs(q.get_den()));
        return Interval::from_int(m).log();
    }
    long D = alpha.field_d();
    Interval sum;
    if (D > 0) {
        for (int i = 0; i < 2; ++i) {
            int s = alpha.sign_at(i);
            Interval e = alpha.embed(i);
            Interval a = s >= 0 ? e : -e;
            sum = sum + a.log_plus();
        }
    } else {
        sum = Interval::from_rat(alpha.abs2_complex()).log_plus();
    }
    // finite contributions: only primes dividing the denominator can give
    // |alpha|_p > 1
    for (auto& [p, e] : factor_int(alpha.c())) {
        (void)e;
        for (const PrimeIdeal& pi : split_prime_quadratic(D, p)) {
            long o = ord(alpha, pi);
            if (o < 0)
                sum = sum + Interval::from_int(pi.norm).log() * Interval(-o);
        }
    }
    return sum / Interval(2);
}

Interval local_height(const AlgNum& gamma, const Place& v) {
    if (gamma.is_zero()) throw std::domain_error("local height of 0");
    if (v.kind == Place::Kind::finite) {
        long o = ord(gamma, *v.ideal);
        if (o <= 0) return Interval();
        return Interval::from_int(v.ideal->norm).log() * Interval(o);
    }
    Interval a = abs_value(gamma, v);
    return (Interval(1) / a).log_plus();
}

mpq_class s_norm(const AlgNum& alpha, const SSpec& S) {
    if (alpha.is_zero()) throw std::domain_error("s_norm of 0");
    if (!S.field.computed())
        throw err_asserted_unsupported("s_norm needs a computed field");
    // |N_{K/Q}(alpha)|: the element itself over Q, the quadratic norm otherwise
    mpq_class acc = S.field.kind == FieldProfile::Kind::rational
                        ? abs(alpha.as_rational())
                        : abs(alpha.norm_q());
    for (const PrimeIdeal* pi : S.finite_ideals()) {
        long o = ord(alpha, *pi);
        if (o == 0) continue;
        mpz_class nk;
        mpz_pow_ui(nk.get_mpz_t(), pi->norm.get_mpz_t(), (unsigned long)(o < 0 ? -o : o));
        if (o > 0) acc /= nk;
        else acc *= nk;
    }
    acc.canonicalize();
    return acc;
}

PlaceStats place_stats(const SSpec& S) {
    PlaceStats st;
    st.s = (int)S.places.size();
    std::vector<mpz_class> norms;
    for (const Place& v : S.places)
        if (v.kind == Place::Kind::finite) norms.push_back(v.ideal->norm);
    st.t = (int)norms.size();
    std::sort(norms.begin(), norms.end(), [](const mpz_class& a, const mpz_class& b) { return a > b; });
    if (!norms.empty()) st.P_S = norms.front();
    if (norms.size() >= 3) st.Pp_S = norms[2];
    for (const mpz_class& n : norms) st.Q_S *= n;
    return st;
}

SRegulator s_regulator(const SSpec& S) {
    SRegulator r;
    std::vector<const PrimeIdeal*> fin = S.finite_ideals();
    Interval prod(1);
    for (const PrimeIdeal* pi : fin)
        prod = prod * Interval::from_int(pi->norm).log();

    switch (S.field.kind) {
    case FieldProfile::Kind::rational:
        r.value = prod;
        r.exact = true;
        r.class_index = 1;
        return r;
    case FieldProfile::Kind::quadratic: {
        std::vector<PrimeIdeal> ideals;
        for (const PrimeIdeal* pi : fin) ideals.push_back(*pi);
        r.class_index = class_subgroup_order(S.field, ideals);
        r.value = S.field.regulator * Interval::from_int(r.class_index) * prod;
        r.exact = true;
        return r;
    }
    case FieldProfile::Kind::asserted:
        r.value = Interval::hull(S.field.regulator * prod,
                                 S.field.regulator *
                                     Interval::from_int(S.field.class_number) * prod);
        r.exact = false;
        r.class_index = 0;
        return r;
    }
    throw std::logic_error("s_regulator: bad kind");
}

static std::vector<mpz_class> support_candidates(const AlgNum& alpha) {
    std::set<mpz_class> ps;
    if (alpha.is_rational()) {
        mpq_class q = alpha.as_rational();
        for (auto& [p, e] : factor_int(q.get_num())) { (void)e; ps.insert(p); }
        for (auto& [p, e] : factor_int(q.get_den())) { (void)e; ps.insert(p); }
    } else {
        mpz_class nnum = alpha.a() * alpha.a() -
                         mpz_class(alpha.field_d()) * alpha.b() * alpha.b();
        for (auto& [p, e] : factor_int(nnum)) { (void)e; ps.insert(p); }
        for (auto& [p, e] : factor_int(alpha.c())) { (void)e; ps.insert(p); }
    }
    return {ps.begin(), ps.end()};
}

static bool supported_in_s(const AlgNum& alpha, const SSpec& S, bool unit_mode) {
    if (alpha.is_zero()) return false;
    if (!S.field.computed())
        throw err_asserted_unsupported("S-membership tests need a computed field");
    std::vector<const PrimeIdeal*> fin = S.finite_ideals();
    for (const mpz_class& p : support_candidates(alpha)) {
        std::vector<PrimeIdeal> above =
            S.field.kind == FieldProfile::Kind::rational
                ? split_prime(S.field, p)
                : split_prime_quadratic(S.field.D, p);
        for (const PrimeIdeal& pi : above) {
            bool in_s = false;
            for (const PrimeIdeal* q : fin)
                if (*q == pi) in_s = true;
            if (in_s) continue;
            long o = ord(alpha, pi);
            if (unit_mode ? (o != 0) : (o < 0)) return false;
        }
    }
    return true;
}

bool is_s_unit(const AlgNum& alpha, const SSpec& S) { return supported_in_s(alpha, S, true); }
bool is_s_integer(const AlgNum& alpha, const SSpec& S) { return supported_in_s(alpha, S, false); }

} // namespace effbounds
