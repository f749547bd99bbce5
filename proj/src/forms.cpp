#include "effbounds/forms.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "effbounds/errors.hpp"

namespace effbounds {

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(int m, const AlgNum& c) {
    Poly p{m, {}};
    if (!c.is_zero()) p.terms.emplace(Monomial(m, 0), c);
    return p;
}

Poly Poly::variable(int m, int i) {
    Poly p{m, {}};
    Monomial mono(m, 0);
    mono[i] = 1;
    p.terms.emplace(mono, AlgNum(1));
    return p;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r{nvars, terms};
    for (const auto& [mono, c] : o.terms) {
        auto it = r.terms.find(mono);
        if (it == r.terms.end()) {
            r.terms.emplace(mono, c);
        } else {
            AlgNum s = it->second + c;
            if (s.is_zero()) r.terms.erase(it);
            else it->second = s;
        }
    }
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(AlgNum(-1)); }

Poly Poly::operator*(const Poly& o) const {
    Poly r{nvars, {}};
    for (const auto& [m1, c1] : terms) {
        for (const auto& [m2, c2] : o.terms) {
            Monomial mono(nvars);
            for (int i = 0; i < nvars; ++i) mono[i] = m1[i] + m2[i];
            AlgNum prod = c1 * c2;
            auto it = r.terms.find(mono);
            if (it == r.terms.end()) {
                if (!prod.is_zero()) r.terms.emplace(mono, prod);
            } else {
                AlgNum s = it->second + prod;
                if (s.is_zero()) r.terms.erase(it);
                else it->second = s;
            }
        }
    }
    return r;
}

Poly Poly::scaled(const AlgNum& c) const {
    Poly r{nvars, {}};
    if (c.is_zero()) return r;
    for (const auto& [mono, v] : terms) r.terms.emplace(mono, v * c);
    return r;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [mono, c] : terms) {
        (void)c;
        d = std::max(d, (int)std::accumulate(mono.begin(), mono.end(), 0u));
    }
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms.empty()) return true;
    int d = -1;
    for (const auto& [mono, c] : terms) {
        (void)c;
        int s = (int)std::accumulate(mono.begin(), mono.end(), 0u);
        if (d < 0) d = s;
        else if (d != s) return false;
    }
    return true;
}

long Poly::coeff_field() const {
    long D = 0;
    for (const auto& [mono, c] : terms) {
        (void)mono;
        if (c.field_d() != 0) {
            if (D != 0 && D != c.field_d())
                throw err_unsupported_coeff("coefficients from two distinct quadratic fields");
            D = c.field_d();
        }
    }
    return D;
}

AlgNum Poly::eval(const std::vector<AlgNum>& point) const {
    if ((int)point.size() != nvars) throw std::domain_error("eval: wrong arity");
    AlgNum acc(0);
    for (const auto& [mono, c] : terms) {
        AlgNum t = c;
        for (int i = 0; i < nvars; ++i)
            if (mono[i]) t = t * point[i].pow((long)mono[i]);
        acc = acc + t;
    }
    return acc;
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [mono, c] : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        for (int i = 0; i < nvars; ++i) {
            if (!mono[i]) continue;
            out += "*X" + std::to_string(i + 1);
            if (mono[i] > 1) out += "^" + std::to_string(mono[i]);
        }
    }
    return out;
}

Poly linear_to_poly(const LinearForm& l) {
    Poly p = Poly::zero((int)l.size());
    for (size_t i = 0; i < l.size(); ++i)
        p = p + Poly::variable((int)l.size(), (int)i).scaled(l[i]);
    return p;
}

Interval coeff_height(const LinearForm& l) {
    Interval h;
    for (const AlgNum& c : l)
        if (!c.is_zero()) h = Interval::max(h, height(c));
    return h;
}

// ---------------------------------------------------------------------------
// Form parser

namespace {

struct FormParser {
    const std::string& s;
    int m;
    size_t pos = 0;

    FormParser(const std::string& text, int vars) : s(text), m(vars) {}

    void skip() { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw err_syntax(what + " at position " + std::to_string(pos));
    }

    Poly expr() {
        Poly v = term();
        for (;;) {
            skip();
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    Poly term() {
        Poly v = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                v = v * factor();
            } else if (eat('/')) {
                Poly d = factor();
                if (d.total_degree() != 0 || d.is_zero())
                    fail("division only by nonzero constants");
                v = v.scaled(d.terms.begin()->second.inverse());
            } else if (pos < s.size() &&
                       (s[pos] == '(' || std::isalpha((unsigned char)s[pos]))) {
                v = v * factor();  // implicit multiplication: "X1 X2", "2(X+Y)"
            } else {
                return v;
            }
        }
    }

    Poly factor() {
        skip();
        if (eat('-')) return factor().scaled(AlgNum(-1));
        if (eat('+')) return factor();
        Poly base = atom();
        skip();
        if (eat('^')) {
            skip();
            long e = integer();
            Poly r = Poly::constant(m, AlgNum(1));
            for (long k = 0; k < e; ++k) r = r * base;
            return r;
        }
        return base;
    }

    long integer() {
        skip();
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected integer");
        long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000) fail("exponent too large");
            ++pos;
        }
        return v;
    }

    Poly atom() {
        skip();
        if (eat('(')) {
            Poly v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            std::string digits;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) digits += s[pos++];
            return Poly::constant(m, AlgNum(mpz_class(digits)));
        }
        if (s.compare(pos, 5, "sqrt(") == 0) {
            size_t close = pos + 5;
            int depth = 1;
            while (close < s.size() && depth) {
                if (s[close] == '(') ++depth;
                if (s[close] == ')') --depth;
                ++close;
            }
            if (depth) fail("unbalanced sqrt(");
            AlgNum v = AlgNum::parse(s.substr(pos, close - pos));
            pos = close;
            return Poly::constant(m, v);
        }
        if (pos < s.size() && std::isalpha((unsigned char)s[pos])) {
            char c = (char)std::toupper((unsigned char)s[pos]);
            ++pos;
            if (c == 'X' && pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                long idx = 0;
                while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                    idx = idx * 10 + (s[pos] - '0');
                    ++pos;
                }
                if (idx < 1 || idx > m) fail("variable index out of range");
                return Poly::variable(m, (int)idx - 1);
            }
            if (c == 'X') return Poly::variable(m, 0);
            if (c == 'Y') {
                if (m < 2) fail("variable Y needs m >= 2");
                return Poly::variable(m, 1);
            }
            fail("unknown identifier");
        }
        fail("unexpected character");
    }
};

} // namespace

Poly parse_form(const std::string& text, int m) {
    if (m < 1) throw err_param_out_of_range("m must be >= 1");
    FormParser p(text, m);
    Poly v = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    if (v.is_zero()) throw err_syntax("the zero polynomial is not a form");
    if (!v.is_homogeneous())
        throw err_not_homogeneous("'" + text + "' is not homogeneous");
    return v;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over the coefficient field

int rank_of(const std::vector<LinearForm>& rows_in) {
    std::vector<LinearForm> rows = rows_in;
    int rank = 0;
    if (rows.empty()) return 0;
    size_t m = rows[0].size();
    for (size_t col = 0; col < m && rank < (int)rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        AlgNum inv = rows[rank][col].inverse();
        for (size_t j = col; j < m; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if ((int)r == rank || rows[r][col].is_zero()) continue;
            AlgNum f = rows[r][col];
            for (size_t j = col; j < m; ++j)
                rows[r][j] = rows[r][j] - f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

namespace {

// Basis of { x : sum_k x_k rows[k] = 0 }.
std::vector<std::vector<AlgNum>> combination_nullspace(const std::vector<LinearForm>& rows) {
    size_t R = rows.size();
    if (R == 0) return {};
    size_t m = rows[0].size();
    std::vector<std::vector<AlgNum>> A(m, std::vector<AlgNum>(R));
    for (size_t k = 0; k < R; ++k)
        for (size_t j = 0; j < m; ++j) A[j][k] = rows[k][j];
    std::vector<long> pivot_col;
    size_t rr = 0;
    for (size_t col = 0; col < R && rr < m; ++col) {
        size_t piv = rr;
        while (piv < m && A[piv][col].is_zero()) ++piv;
        if (piv == m) continue;
        std::swap(A[rr], A[piv]);
        AlgNum inv = A[rr][col].inverse();
        for (size_t j = 0; j < R; ++j) A[rr][j] = A[rr][j] * inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == rr || A[r][col].is_zero()) continue;
            AlgNum f = A[r][col];
            for (size_t j = 0; j < R; ++j) A[r][j] = A[r][j] - f * A[rr][j];
        }
        pivot_col.push_back((long)col);
        ++rr;
    }
    std::vector<std::vector<AlgNum>> basis;
    std::set<long> pivots(pivot_col.begin(), pivot_col.end());
    for (size_t freec = 0; freec < R; ++freec) {
        if (pivots.count((long)freec)) continue;
        std::vector<AlgNum> v(R, AlgNum(0));
        v[freec] = AlgNum(1);
        for (size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = -A[i][freec];
        basis.push_back(std::move(v));
    }
    return basis;
}

AlgNum det_of(std::vector<std::vector<AlgNum>> M) {
    size_t n = M.size();
    AlgNum det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) return AlgNum(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det = det * M[col][col];
        AlgNum inv = M[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (M[r][col].is_zero()) continue;
            AlgNum f = M[r][col] * inv;
            for (size_t j = col; j < n; ++j) M[r][j] = M[r][j] - f * M[col][j];
        }
    }
    return det;
}

std::optional<AlgNum> proportionality(const LinearForm& f, const LinearForm& g) {
    size_t j = 0;
    while (j < g.size() && g[j].is_zero()) ++j;
    if (j == g.size()) return std::nullopt;
    AlgNum kappa = f[j] / g[j];
    if (kappa.is_zero()) return std::nullopt;
    for (size_t i = 0; i < f.size(); ++i)
        if (!(f[i] - kappa * g[i]).is_zero()) return std::nullopt;
    return kappa;
}

} // namespace

// ---------------------------------------------------------------------------
// Square roots in the field and binary factorization

std::optional<AlgNum> sqrt_in_field(const AlgNum& v, long field_D) {
    auto rat_sqrt = [](const mpq_class& q) -> std::optional<mpq_class> {
        if (q < 0) return std::nullopt;
        if (!mpz_perfect_square_p(q.get_num().get_mpz_t())) return std::nullopt;
        if (!mpz_perfect_square_p(q.get_den().get_mpz_t())) return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
        return mpq_class(n, d);
    };
    if (v.is_zero()) return AlgNum(0);
    if (v.is_rational()) {
        mpq_class q = v.as_rational();
        if (auto r = rat_sqrt(q)) return AlgNum(mpq_class(*r));
        if (field_D != 0) {
            mpq_class scaled = q / field_D;
            if (auto r = rat_sqrt(scaled))
                return AlgNum(mpq_class(*r)) * AlgNum::sqrt_d(field_D);
        }
        return std::nullopt;
    }
    if (v.field_d() != field_D) return std::nullopt;
    // (u + w sqrt D)^2 = s + t sqrt D => u^2 = (s +- sqrt(s^2 - t^2 D)) / 2
    mpq_class s(v.a(), v.c()), t(v.b(), v.c());
    s.canonicalize();
    t.canonicalize();
    mpq_class normv = s * s - t * t * field_D;
    auto wroot = rat_sqrt(normv);
    if (!wroot) return std::nullopt;
    for (int sign = 0; sign < 2; ++sign) {
        mpq_class u2 = (s + (sign ? mpq_class(-*wroot) : *wroot)) / 2;
        auto u = rat_sqrt(u2);
        if (!u || *u == 0) continue;
        mpq_class w = t / (2 * *u);
        AlgNum cand = AlgNum(mpq_class(*u)) + AlgNum(mpq_class(w)) * AlgNum::sqrt_d(field_D);
        if (cand * cand == v) return cand;
    }
    return std::nullopt;
}

namespace {

using UniPoly = std::vector<AlgNum>;  // coefficient of x^i at index i

int deg(const UniPoly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (!f[i].is_zero()) return i;
    return -1;
}

AlgNum eval_uni(const UniPoly& f, const AlgNum& x) {
    AlgNum acc(0);
    for (int i = deg(f); i >= 0; --i) acc = acc * x + f[i];
    return acc;
}

UniPoly deflate(const UniPoly& f, const AlgNum& root) {
    int d = deg(f);
    UniPoly q(d, AlgNum(0));
    AlgNum carry = f[d];
    for (int i = d - 1; i >= 0; --i) {
        q[i] = carry;
        carry = f[i] + carry * root;
    }
    if (!carry.is_zero()) throw std::logic_error("deflate: not a root");
    return q;
}

int degq(const std::vector<mpq_class>& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// monic gcd in Q[x]
std::vector<mpq_class> qpoly_gcd(std::vector<mpq_class> a, std::vector<mpq_class> b) {
    if (degq(a) < degq(b)) std::swap(a, b);
    while (degq(b) >= 0) {
        int da = degq(a), db = degq(b);
        mpq_class f = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        if (degq(a) < degq(b)) std::swap(a, b);
    }
    int da = degq(a);
    a.resize(da + 1);
    if (da >= 0) {
        mpq_class lead = a[da];
        for (auto& c : a) c /= lead;
    }
    return a;
}

std::vector<mpq_class> rational_part(const UniPoly& f, bool sqrt_part) {
    std::vector<mpq_class> out(f.size(), 0);
    for (size_t i = 0; i < f.size(); ++i) {
        out[i] = sqrt_part ? mpq_class(f[i].b(), f[i].c()) : mpq_class(f[i].a(), f[i].c());
        out[i].canonicalize();
    }
    return out;
}

std::vector<mpq_class> divisors_q(const mpz_class& n) {
    std::vector<mpz_class> ds{1};
    for (auto& [p, e] : factor_int(n)) {
        size_t cnt = ds.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < cnt; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::vector<mpq_class> out;
    out.reserve(ds.size());
    for (auto& d : ds) out.push_back(mpq_class(d));
    return out;
}

// all rational roots of a univariate polynomial with coefficients in the field
std::vector<mpq_class> rational_roots(const UniPoly& f) {
    std::vector<mpq_class> fa = rational_part(f, false);
    std::vector<mpq_class> fb = rational_part(f, true);
    bool has_b = degq(fb) >= 0;
    std::vector<mpq_class> g = has_b ? qpoly_gcd(fa, fb) : fa;
    int d = degq(g);
    std::vector<mpq_class> roots;
    if (d < 0) return roots;
    size_t low = 0;
    while ((int)low <= d && g[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if ((int)low > d) return roots;
    mpz_class den = 1;
    for (int i = (int)low; i <= d; ++i) den = lcm(den, g[i].get_den());
    std::vector<mpz_class> zi;
    for (int i = (int)low; i <= d; ++i) zi.push_back(mpz_class(g[i] * den));
    const mpz_class& a0 = zi.front();
    const mpz_class& an = zi.back();
    for (const mpq_class& pnum : divisors_q(a0)) {
        for (const mpq_class& qden : divisors_q(an)) {
            for (int sgn = 0; sgn < 2; ++sgn) {
                mpq_class cand = pnum / qden * (sgn ? -1 : 1);
                cand.canonicalize();
                mpq_class acc = 0;
                for (int i = (int)zi.size() - 1; i >= 0; --i) acc = acc * cand + zi[i];
                if (acc == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    return roots;
}

} // namespace

Factorization factorize(const Poly& F, long field_D,
                        const std::vector<LinearForm>* supplied) {
    if (F.is_zero() || !F.is_homogeneous())
        throw err_not_homogeneous("factorize needs a nonzero homogeneous form");
    int m = F.nvars;
    int n = F.total_degree();
    long FD = F.coeff_field();
    if (FD != 0 && FD != field_D)
        throw err_unsupported_coeff("form coefficients live outside the modeled field");

    if (supplied) {
        if ((int)supplied->size() != n)
            throw err_verification_failed("need exactly deg F = " + std::to_string(n) +
                                          " linear factors");
        Poly prod = Poly::constant(m, AlgNum(1));
        for (const LinearForm& l : *supplied) {
            if ((int)l.size() != m) throw err_verification_failed("factor arity mismatch");
            bool allzero = true;
            for (const AlgNum& c : l)
                if (!c.is_zero()) allzero = false;
            if (allzero) throw err_verification_failed("zero linear factor");
            prod = prod * linear_to_poly(l);
        }
        if (prod.is_zero() || F.terms.begin()->first != prod.terms.begin()->first)
            throw err_verification_failed("supplied factors do not multiply back to F");
        AlgNum scalar = F.terms.begin()->second / prod.terms.begin()->second;
        if (!(prod.scaled(scalar) == F))
            throw err_verification_failed("supplied factors do not multiply back to F");
        return Factorization{*supplied, scalar};
    }

    if (m != 2)
        throw err_factors_required("automatic factorization handles binary forms only; "
                                   "supply explicit factors for m >= 3");

    UniPoly f(n + 1, AlgNum(0));
    for (const auto& [mono, c] : F.terms) f[mono[0]] = c;
    int d0 = deg(f);
    Factorization out;
    for (int i = 0; i < n - d0; ++i)
        out.factors.push_back({AlgNum(0), AlgNum(1)});  // factor Y

    UniPoly work = f;
    work.resize(d0 + 1);
    for (;;) {
        int d = deg(work);
        if (d <= 0) break;
        if (d == 1) {
            AlgNum root = -work[0] / work[1];
            out.factors.push_back({AlgNum(1), -root});
            work = deflate(work, root);
            continue;
        }
        bool progressed = false;
        for (const mpq_class& r : rational_roots(work)) {
            AlgNum root{r};
            while (deg(work) >= 1 && eval_uni(work, root).is_zero()) {
                out.factors.push_back({AlgNum(1), -root});
                work = deflate(work, root);
                progressed = true;
            }
        }
        d = deg(work);
        if (d <= 1) continue;
        if (d == 2) {
            AlgNum A = work[2], B = work[1], C = work[0];
            AlgNum disc = B * B - AlgNum(4) * A * C;
            auto s = sqrt_in_field(disc, field_D);
            if (!s)
                throw err_does_not_split("quadratic factor does not split: discriminant " +
                                         disc.str() + " is not a square in the field");
            AlgNum r1 = (-B + *s) / (AlgNum(2) * A);
            AlgNum r2 = (-B - *s) / (AlgNum(2) * A);
            out.factors.push_back({AlgNum(1), -r1});
            work = deflate(work, r1);
            out.factors.push_back({AlgNum(1), -r2});
            work = deflate(work, r2);
            continue;
        }
        if (!progressed)
            throw err_does_not_split("no rational roots left and degree " +
                                     std::to_string(d) + " > 2 remains");
    }
    out.scalar = work[0];

    Poly prod = Poly::constant(m, out.scalar);
    for (const LinearForm& l : out.factors) prod = prod * linear_to_poly(l);
    if (!(prod == F)) throw std::logic_error("factorize: expansion check failed");
    return out;
}

// ---------------------------------------------------------------------------
// L0 and the graphs

std::vector<size_t> build_L0(const std::vector<LinearForm>& factors) {
    std::vector<size_t> reps;
    for (size_t i = 0; i < factors.size(); ++i) {
        bool found = false;
        for (size_t r : reps)
            if (proportionality(factors[i], factors[r])) { found = true; break; }
        if (!found) reps.push_back(i);
    }
    return reps;
}

void build_graph_G(FormSystem& fs) {
    size_t n0 = fs.L0.size();
    fs.g_edges.clear();
    for (size_t i = 0; i < n0; ++i) {
        for (size_t j = i + 1; j < n0; ++j) {
            for (size_t w = 0; w < n0; ++w) {
                if (w == i || w == j) continue;
                if (rank_of({fs.L0[i], fs.L0[j], fs.L0[w]}) == 2) {
                    fs.g_edges.push_back({i, j, w});
                    break;
                }
            }
        }
    }
    std::vector<int> parent(n0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const GEdge& e : fs.g_edges) parent[find((int)e.i)] = find((int)e.j);
    std::map<int, int> remap;
    fs.component.assign(n0, -1);
    for (size_t v = 0; v < n0; ++v) {
        auto [it, fresh] = remap.emplace(find((int)v), (int)remap.size());
        (void)fresh;
        fs.component[v] = it->second;
    }
    fs.k = (int)remap.size();
}

void build_graph_H(FormSystem& fs) {
    fs.h_edges.clear();
    fs.h_connected = (fs.k == 1);
    if (fs.k <= 1) return;

    std::vector<std::vector<LinearForm>> comp_forms(fs.k);
    for (size_t v = 0; v < fs.L0.size(); ++v)
        comp_forms[fs.component[v]].push_back(fs.L0[v]);

    for (int ci = 0; ci < fs.k; ++ci) {
        for (int cj = ci + 1; cj < fs.k; ++cj) {
            int ri = rank_of(comp_forms[ci]);
            int rj = rank_of(comp_forms[cj]);
            std::vector<LinearForm> stacked = comp_forms[ci];
            stacked.insert(stacked.end(), comp_forms[cj].begin(), comp_forms[cj].end());
            if (rank_of(stacked) >= ri + rj) continue;  // trivial intersection

            auto basis = combination_nullspace(stacked);
            size_t bi = comp_forms[ci].size();
            HEdge best;
            best.ci = ci;
            best.cj = cj;
            best.support = -1;
            auto consider = [&](const std::vector<AlgNum>& z) {
                LinearForm wit((size_t)fs.m, AlgNum(0));
                for (size_t a = 0; a < bi; ++a)
                    for (int c = 0; c < fs.m; ++c)
                        wit[c] = wit[c] + z[a] * comp_forms[ci][a][c];
                bool nonzero = false;
                for (const AlgNum& c : wit)
                    if (!c.is_zero()) nonzero = true;
                if (!nonzero) return;
                int nnz = 0;
                for (const AlgNum& c : z)
                    if (!c.is_zero()) ++nnz;
                if (best.support < 0 || nnz < best.support) {
                    best.support = nnz;
                    best.witness = wit;
                    best.u.assign(z.begin(), z.begin() + bi);
                    best.w.assign(z.begin() + bi, z.end());
                }
            };
            // minimal combined support over a small exact box of kernel
            // combinations; fall back to bare basis vectors
            if (basis.size() <= 4 && !basis.empty()) {
                std::vector<int> c(basis.size(), -2);
                for (;;) {
                    std::vector<AlgNum> z(stacked.size(), AlgNum(0));
                    bool any = false;
                    for (size_t b = 0; b < basis.size(); ++b) {
                        if (!c[b]) continue;
                        any = true;
                        for (size_t k2 = 0; k2 < z.size(); ++k2)
                            z[k2] = z[k2] + AlgNum((long)c[b]) * basis[b][k2];
                    }
                    if (any) consider(z);
                    size_t b = 0;
                    while (b < c.size() && c[b] == 2) c[b++] = -2;
                    if (b == c.size()) break;
                    ++c[b];
                }
            } else {
                for (const auto& z : basis) consider(z);
            }
            if (best.support >= 0) fs.h_edges.push_back(best);
        }
    }

    std::vector<int> parent(fs.k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const HEdge& e : fs.h_edges) parent[find(e.ci)] = find(e.cj);
    std::set<int> roots;
    for (int c = 0; c < fs.k; ++c) roots.insert(find(c));
    fs.h_connected = roots.size() == 1;
}

Verdict check_conditions(const FormSystem& fs) {
    Verdict v;
    v.rank = rank_of(fs.L0);
    v.rank_ok = v.rank == fs.m;
    v.k = fs.k;
    v.triangularly_connected = fs.k == 1 && fs.L0.size() >= 3;
    v.connectivity_ok = fs.k == 1 || fs.h_connected;
    if (!v.rank_ok)
        v.reasons.push_back("condition (i) fails: rank(L0) = " + std::to_string(v.rank) +
                            " < m = " + std::to_string(fs.m));
    if (fs.k > 1 && !fs.h_connected)
        v.reasons.push_back("condition (ii) fails: G(L0) has k = " + std::to_string(fs.k) +
                            " components and H is not connected");
    if (fs.k == 1 && fs.L0.size() < 3)
        v.reasons.push_back("k = 1 but |L0| = " + std::to_string(fs.L0.size()) +
                            " < 3: not triangularly connected (admissibility of this case "
                            "is unstated; reported not applicable)");
    v.applicable = v.rank_ok &&
                   ((fs.k == 1 && fs.L0.size() >= 3) || (fs.k > 1 && fs.h_connected));
    return v;
}

FormSystem analyze_form(const Poly& F, long field_D,
                        const std::vector<LinearForm>* supplied) {
    FormSystem fs;
    fs.m = F.nvars;
    fs.n = F.total_degree();
    fs.field_D = field_D;
    fs.F = F;
    if (fs.m < 2) throw err_param_out_of_range("decomposable forms need m >= 2");
    Factorization fac = factorize(F, field_D, supplied);
    fs.factors = fac.factors;
    fs.scalar = fac.scalar;

    std::vector<size_t> reps = build_L0(fs.factors);
    for (size_t r : reps) fs.L0.push_back(fs.factors[r]);
    fs.rep_of.resize(fs.factors.size());
    fs.prop_scalar.resize(fs.factors.size());
    for (size_t i = 0; i < fs.factors.size(); ++i) {
        for (size_t k = 0; k < reps.size(); ++k) {
            if (auto kap = proportionality(fs.factors[i], fs.factors[reps[k]])) {
                fs.rep_of[i] = k;
                fs.prop_scalar[i] = *kap;
                break;
            }
        }
    }
    build_graph_G(fs);
    build_graph_H(fs);
    fs.verdict = check_conditions(fs);
    return fs;
}

// ---------------------------------------------------------------------------
// Reduction to S-unit equations and the Theorem 3 chain

namespace {

mpz_class lcm_denominators(const LinearForm& l) {
    mpz_class d = 1;
    for (const AlgNum& c : l) d = lcm(d, c.c());
    return d;
}

// express target = a row_i + b row_j (rows independent); exact
std::pair<AlgNum, AlgNum> solve_two(const LinearForm& ri, const LinearForm& rj,
                                    const LinearForm& target) {
    size_t m = ri.size();
    for (size_t p = 0; p < m; ++p) {
        for (size_t q = p + 1; q < m; ++q) {
            AlgNum det = ri[p] * rj[q] - ri[q] * rj[p];
            if (det.is_zero()) continue;
            AlgNum a = (target[p] * rj[q] - target[q] * rj[p]) / det;
            AlgNum b = (ri[p] * target[q] - ri[q] * target[p]) / det;
            for (size_t c = 0; c < m; ++c)
                if (!(a * ri[c] + b * rj[c] - target[c]).is_zero())
                    throw std::logic_error("solve_two: inconsistent system");
            return {a, b};
        }
    }
    throw std::logic_error("solve_two: rows not independent");
}

Interval safe_height(const AlgNum& x) {
    return x.is_zero() ? Interval() : height(x);
}

} // namespace

UnitEquationSystem reduce_to_unit_equations(const FormSystem& fs, const AlgNum& delta,
                                            const SSpec& S, bool use_thm_b) {
    if (!fs.verdict.applicable)
        throw err_not_applicable("form does not satisfy conditions (i)/(ii)" +
                                 (fs.verdict.reasons.empty()
                                      ? std::string("")
                                      : ": " + fs.verdict.reasons.front()));
    if (!S.field.computed())
        throw err_asserted_unsupported("reduction needs a computed field");
    if (S.stats.t == 0) throw err_requires_finite("Theorem 3 requires t > 0");
    if (delta.is_zero() || !is_s_integer(delta, S))
        throw err_not_s_integral("delta must be a nonzero S-integer");

    UnitEquationSystem sys;
    size_t n0 = fs.L0.size();

    // integral normalization; the L0 representative is the first normalized
    // factor of its proportionality class, so every delta_v divides delta'
    std::vector<LinearForm> fint(fs.factors.size());
    std::vector<mpz_class> kappa(fs.factors.size());
    for (size_t f = 0; f < fs.factors.size(); ++f) {
        kappa[f] = lcm_denominators(fs.factors[f]);
        fint[f].resize(fs.factors[f].size());
        for (size_t c = 0; c < fs.factors[f].size(); ++c)
            fint[f][c] = AlgNum(kappa[f]) * fs.factors[f][c];
    }
    std::vector<size_t> first_factor(n0, SIZE_MAX);
    for (size_t f = 0; f < fs.factors.size(); ++f)
        if (first_factor[fs.rep_of[f]] == SIZE_MAX) first_factor[fs.rep_of[f]] = f;
    std::vector<LinearForm> L0int(n0);
    for (size_t v = 0; v < n0; ++v) L0int[v] = fint[first_factor[v]];

    AlgNum dnorm = delta;
    for (const mpz_class& kf : kappa) dnorm = dnorm * AlgNum(kf);
    dnorm = dnorm / fs.scalar;
    if (dnorm.is_zero() || !is_s_integer(dnorm, S))
        throw err_not_applicable(
            "normalized delta is not an S-integer (is F in O_S[X1..Xm]?)");
    sys.delta_norm = dnorm;
    sys.h_delta_norm = height(dnorm);

    Interval d((long)S.field.degree);
    Interval c3 = constant_value(
        "c3", ConstParams{S.field.degree, S.field.unit_rank, S.stats.s, S.stats.t, 1,
                          C3Variant::lemma3});
    Interval logq = S.stats.Q_S > 1 ? Interval::from_int(S.stats.Q_S).log() : Interval();
    Interval L3 = Interval::from_rat(s_norm(dnorm, S)).log() / d +
                  c3 * S.field.regulator +
                  (Interval::from_int(S.field.class_number) / d) * logq;
    sys.lemma3_term = L3;

    BoundInputs base_in = BoundInputs::from_sspec(S, Interval(1));
    std::vector<Interval> edge_term(fs.g_edges.size());
    for (size_t e = 0; e < fs.g_edges.size(); ++e) {
        const GEdge& ge = fs.g_edges[e];
        auto [a, b] = solve_two(L0int[ge.i], L0int[ge.j], L0int[ge.witness]);
        EdgeData ed;
        ed.edge_index = e;
        ed.lambda_i = a;
        ed.lambda_j = b;
        ed.lambda = AlgNum(-1);
        ed.h_lambda_i = safe_height(a);
        ed.h_lambda_j = safe_height(b);
        ed.h_lambda = Interval();
        Interval hl = Interval::max(ed.h_lambda_i, ed.h_lambda_j) + ed.h_lambda;
        ed.H_edge = Interval::max(Interval(1), hl + Interval(2) * L3);
        BoundInputs in = base_in;
        in.H = ed.H_edge;
        ed.A_edge = use_thm_b ? bound_thm_B(in).value : bound_thm_1(in).value;
        edge_term[e] = ed.A_edge + L3;
        sys.edges.push_back(ed);
    }

    // per-component propagation from the base edge: (2 dist + 1) step terms
    sys.bfs_dist.assign(n0, -1);
    sys.vertex_bound.assign(n0, Interval());
    std::vector<Interval> comp_term((size_t)fs.k, Interval());
    std::vector<int> comp_base_edge((size_t)fs.k, -1);
    for (size_t e = 0; e < fs.g_edges.size(); ++e) {
        int c = fs.component[fs.g_edges[e].i];
        comp_term[c] = Interval::max(comp_term[c], edge_term[e]);
        if (comp_base_edge[c] < 0) comp_base_edge[c] = (int)e;
    }
    for (int c = 0; c < fs.k; ++c) {
        if (comp_base_edge[c] < 0) {
            for (size_t v = 0; v < n0; ++v)
                if (fs.component[v] == c) {
                    sys.bfs_dist[v] = 0;
                    sys.vertex_bound[v] = L3;  // singleton: its own Lemma-3 unit
                }
            continue;
        }
        const GEdge& base = fs.g_edges[comp_base_edge[c]];
        std::queue<size_t> q;
        sys.bfs_dist[base.i] = 0;
        sys.bfs_dist[base.j] = 0;
        q.push(base.i);
        q.push(base.j);
        while (!q.empty()) {
            size_t v = q.front();
            q.pop();
            for (const GEdge& e : fs.g_edges) {
                size_t other;
                if (e.i == v) other = e.j;
                else if (e.j == v) other = e.i;
                else continue;
                if (sys.bfs_dist[other] < 0) {
                    sys.bfs_dist[other] = sys.bfs_dist[v] + 1;
                    q.push(other);
                }
            }
        }
        for (size_t v = 0; v < n0; ++v) {
            if (fs.component[v] != c) continue;
            if (sys.bfs_dist[v] < 0)
                throw std::logic_error("BFS failed to reach a component vertex");
            sys.vertex_bound[v] = Interval(2 * sys.bfs_dist[v] + 1) * comp_term[c];
        }
    }

    // k > 1: accumulate across H through the witness forms; needs
    // l(x) != 0 for every chosen witness l in L
    sys.vertex_bound_global = sys.vertex_bound;
    if (fs.k > 1) {
        std::vector<std::vector<size_t>> comp_members((size_t)fs.k);
        for (size_t v = 0; v < n0; ++v) comp_members[fs.component[v]].push_back(v);
        auto cross_side = [&](const HEdge& he, bool left) {
            const std::vector<AlgNum>& z = left ? he.u : he.w;
            const std::vector<size_t>& members = comp_members[left ? he.ci : he.cj];
            Interval sum;
            long nnz = 0;
            for (size_t a = 0; a < z.size(); ++a) {
                if (z[a].is_zero()) continue;
                ++nnz;
                sum = sum + safe_height(z[a]) + sys.vertex_bound[members[a]];
            }
            if (nnz > 1) sum = sum + Interval(nnz).log();
            return sum;
        };
        std::vector<Interval> comp_offset((size_t)fs.k, Interval());
        std::vector<int> seen((size_t)fs.k, 0);
        int c0 = fs.component[0];
        seen[c0] = 1;
        sys.h_order.push_back(c0);
        std::queue<int> q;
        q.push(c0);
        while (!q.empty()) {
            int c = q.front();
            q.pop();
            for (const HEdge& he : fs.h_edges) {
                int other = -1;
                if (he.ci == c && !seen[he.cj]) other = he.cj;
                if (he.cj == c && !seen[he.ci]) other = he.ci;
                if (other < 0) continue;
                comp_offset[other] =
                    comp_offset[c] + cross_side(he, true) + cross_side(he, false);
                seen[other] = 1;
                sys.h_order.push_back(other);
                q.push(other);
            }
        }
        for (size_t v = 0; v < n0; ++v)
            sys.vertex_bound_global[v] =
                sys.vertex_bound[v] + comp_offset[fs.component[v]];
    }

    // product closure: prod_f ckappa_f (delta_{rep f}/eps) * eps^n = delta'
    Interval closure = sys.h_delta_norm;
    for (size_t f = 0; f < fs.factors.size(); ++f) {
        AlgNum ck = (AlgNum(kappa[f]) * fs.prop_scalar[f]) /
                    AlgNum(kappa[first_factor[fs.rep_of[f]]]);
        closure = closure + safe_height(ck) + sys.vertex_bound_global[fs.rep_of[f]];
    }
    sys.h_eps = closure / Interval((long)fs.n);
    sys.h_delta_i.resize(n0);
    for (size_t v = 0; v < n0; ++v)
        sys.h_delta_i[v] = sys.vertex_bound_global[v] + sys.h_eps;
    return sys;
}

Thm3Report bound_thm_3(const FormSystem& fs, const AlgNum& delta, const SSpec& S,
                       bool use_thm_b) {
    Thm3Report out;
    out.system = reduce_to_unit_equations(fs, delta, S, use_thm_b);
    const UnitEquationSystem& sys = out.system;
    size_t n0 = fs.L0.size();

    std::vector<LinearForm> L0int(n0);
    for (size_t v = 0; v < n0; ++v) {
        LinearForm norm = fs.L0[v];
        mpz_class kf = lcm_denominators(norm);
        for (AlgNum& c : norm) c = AlgNum(kf) * c;
        L0int[v] = norm;
    }

    // m independent rows of L0, greedy and deterministic
    std::vector<size_t> chosen;
    std::vector<LinearForm> rows;
    for (size_t v = 0; v < n0 && (int)rows.size() < fs.m; ++v) {
        std::vector<LinearForm> trial = rows;
        trial.push_back(L0int[v]);
        if (rank_of(trial) > (int)rows.size()) {
            rows = trial;
            chosen.push_back(v);
        }
    }
    if ((int)rows.size() != fs.m) throw err_not_applicable("rank(L0) < m");

    // Cramer: x_i = det(M_i)/det(M); h(x_i) <= h(det M) + h(det M_i), with
    // h(det M) exact and h(det M_i) <= sum_rows(sum_j h(a_ij) + log m)
    std::vector<std::vector<AlgNum>> M;
    for (size_t r : chosen) M.push_back(L0int[r]);
    AlgNum detM = det_of(M);
    if (detM.is_zero()) throw std::logic_error("chosen rows are dependent");
    Interval h_detM = height(detM);

    Interval logm = fs.m >= 2 ? Interval((long)fs.m).log() : Interval();
    Interval final_bound;
    for (int col = 0; col < fs.m; ++col) {
        Interval h_det_col;
        for (int row = 0; row < fs.m; ++row) {
            Interval row_sum;
            for (int j = 0; j < fs.m; ++j) {
                if (j == col) row_sum = row_sum + sys.h_delta_i[chosen[row]];
                else row_sum = row_sum + safe_height(M[row][j]);
            }
            h_det_col = h_det_col + row_sum + logm;
        }
        final_bound = Interval::max(final_bound, h_detM + h_det_col);
    }

    BoundReport rep;
    bool cor4 = fs.m == 2 && fs.k == 1 && fs.n >= 3;
    rep.formula_id = use_thm_b ? "eq31" : (cor4 ? "corollary4" : "thm3");
    rep.value = final_bound;
    rep.log_value = final_bound.log();
    if (cor4 && !use_thm_b)
        rep.notes.push_back("binary Thue case: Theorem 3 with m = 2, k = 1");
    if (fs.k > 1)
        rep.notes.push_back("k > 1: bound assumes l(x) != 0 for every witness l in L");

    nlohmann::ordered_json tr;
    tr["delta_normalized"] = sys.delta_norm.str();
    tr["h_delta_normalized"] = sys.h_delta_norm.dec_hi();
    tr["lemma3_term"] = sys.lemma3_term.dec_hi();
    {
        Interval h;
        for (size_t v = 0; v < n0; ++v) h = Interval::max(h, coeff_height(L0int[v]));
        tr["coefficient_height_bound"] = h.dec_hi();
    }
    tr["edges"] = nlohmann::ordered_json::array();
    for (size_t e = 0; e < sys.edges.size(); ++e) {
        const EdgeData& ed = sys.edges[e];
        const GEdge& ge = fs.g_edges[e];
        nlohmann::ordered_json je;
        je["i"] = ge.i;
        je["j"] = ge.j;
        je["witness"] = ge.witness;
        je["lambda_i"] = ed.lambda_i.str();
        je["lambda_j"] = ed.lambda_j.str();
        je["lambda"] = ed.lambda.str();
        je["tau_height_i"] = ed.h_lambda_i.dec_hi();
        je["tau_height_j"] = ed.h_lambda_j.dec_hi();
        je["H_edge"] = ed.H_edge.dec_hi();
        je["A_edge"] = ed.A_edge.dec_hi();
        tr["edges"].push_back(je);
    }
    tr["bfs_dist"] = sys.bfs_dist;
    tr["vertex_bounds"] = nlohmann::ordered_json::array();
    for (size_t v = 0; v < n0; ++v)
        tr["vertex_bounds"].push_back(sys.vertex_bound_global[v].dec_hi());
    tr["h_eps"] = sys.h_eps.dec_hi();
    tr["cramer_rows"] = chosen;
    tr["h_det_exact"] = h_detM.dec_hi();
    tr["final_bound"] = final_bound.dec_hi();

    Interval factor = improvement_factor(S.stats.P_S, S.stats.Pp_S);
    Interval logq = Interval::from_int(S.stats.Q_S).log();
    Interval c8_to_s = final_bound / (factor * logq * S.regulator.value);
    Interval c8 = (c8_to_s.log() / Interval((long)S.stats.s)).exp();
    tr["shape"] = {{"factor_2_5", factor.dec_hi()},
                   {"log_Q_S", logq.dec_hi()},
                   {"R_S", S.regulator.value.dec_hi()},
                   {"c8_to_s", c8_to_s.dec_hi()},
                   {"c8", c8.dec_hi()}};
    rep.constants.push_back({"c8", c8});
    rep.constants.push_back({"c8_to_s", c8_to_s});
    out.report = rep;
    out.trace = std::move(tr);
    return out;
}

} // namespace effbounds
