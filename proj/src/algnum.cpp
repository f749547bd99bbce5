#include "effbounds/algnum.hpp"

#include <cctype>
#include <stdexcept>

#include "effbounds/errors.hpp"

namespace effbounds {

bool is_squarefree(long n) {
    if (n == 0) return false;
    unsigned long m = n < 0 ? -(unsigned long)n : (unsigned long)n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

SqrtReduction reduce_sqrt(const mpz_class& n) {
    if (n == 0) return {0, 0};
    mpz_class m = abs(n);
    mpz_class f = 1;
    for (mpz_class p = 2; p * p <= m; ++p) {
        mpz_class p2 = p * p;
        while (m % p2 == 0) {
            m /= p2;
            f *= p;
        }
    }
    long d = m.get_si() * (n < 0 ? -1 : 1);
    if (d == 1) { // perfect square (positive)
        return {f, 0};
    }
    return {f, d};
}

AlgNum::AlgNum(const mpq_class& q)
    : a_(q.get_num()), b_(0), c_(q.get_den()), d_(0) {}

AlgNum::AlgNum(mpz_class a, mpz_class b, mpz_class c, long D)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(D) {
    if (c_ == 0) throw std::domain_error("AlgNum: zero denominator");
    canonicalize();
}

void AlgNum::canonicalize() {
    if (c_ < 0) { a_ = -a_; b_ = -b_; c_ = -c_; }
    if (b_ == 0) {
        d_ = 0;
    } else {
        if (d_ == 0 || d_ == 1 || !is_squarefree(d_))
            throw std::domain_error("AlgNum: D must be squarefree, not 0 or 1");
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    if (g > 1) { a_ /= g; b_ /= g; c_ /= g; }
    if (a_ == 0 && b_ == 0) c_ = 1;
}

mpq_class AlgNum::as_rational() const {
    if (!is_rational()) throw std::domain_error("AlgNum: not rational");
    mpq_class q(a_, c_);
    q.canonicalize();
    return q;
}

static long common_field(const AlgNum& x, const AlgNum& y) {
    if (x.field_d() == y.field_d()) return x.field_d();
    if (x.field_d() == 0) return y.field_d();
    if (y.field_d() == 0) return x.field_d();
    throw err_unsupported_coeff("mixing elements of Q(sqrt(" +
                                std::to_string(x.field_d()) + ")) and Q(sqrt(" +
                                std::to_string(y.field_d()) + "))");
}

AlgNum AlgNum::operator+(const AlgNum& o) const {
    long D = common_field(*this, o);
    return AlgNum(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, D);
}

AlgNum AlgNum::operator-(const AlgNum& o) const {
    long D = common_field(*this, o);
    return AlgNum(a_ * o.c_ - o.a_ * c_, b_ * o.c_ - o.b_ * c_, c_ * o.c_, D);
}

AlgNum AlgNum::operator*(const AlgNum& o) const {
    long D = common_field(*this, o);
    // (a1 + b1 s)(a2 + b2 s) = a1 a2 + D b1 b2 + (a1 b2 + a2 b1) s
    mpz_class na = a_ * o.a_ + mpz_class(D) * b_ * o.b_;
    mpz_class nb = a_ * o.b_ + o.a_ * b_;
    return AlgNum(na, nb, c_ * o.c_, D);
}

AlgNum AlgNum::inverse() const {
    if (is_zero()) throw std::domain_error("AlgNum: division by zero");
    if (is_rational()) {
        mpq_class inv = 1 / as_rational();
        return AlgNum(inv);
    }
    // 1/((a+b s)/c) = c (a - b s) / (a^2 - D b^2)
    mpz_class n = a_ * a_ - mpz_class(d_) * b_ * b_;
    return AlgNum(c_ * a_, -c_ * b_, n, d_);
}

AlgNum AlgNum::operator/(const AlgNum& o) const { return *this * o.inverse(); }

AlgNum AlgNum::operator-() const { return AlgNum(-a_, -b_, c_, d_); }

AlgNum AlgNum::pow(long e) const {
    if (e == 0) return AlgNum(1);
    AlgNum base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    AlgNum acc(1);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

int AlgNum::cmp_key(const AlgNum& x, const AlgNum& y) {
    if (x.d_ != y.d_) return x.d_ < y.d_ ? -1 : 1;
    int c = cmp(x.a_, y.a_);
    if (c) return c;
    c = cmp(x.b_, y.b_);
    if (c) return c;
    return cmp(x.c_, y.c_);
}

mpq_class AlgNum::norm_q() const {
    mpq_class n(a_ * a_ - mpz_class(d_) * b_ * b_, c_ * c_);
    n.canonicalize();
    return n;
}

mpq_class AlgNum::trace_q() const {
    mpq_class t(2 * a_, c_);
    t.canonicalize();
    return t;
}

int AlgNum::sign_at(int embedding) const {
    if (d_ < 0) throw std::domain_error("sign_at: complex embedding");
    if (is_zero()) return 0;
    mpz_class b = embedding == 0 ? b_ : -b_;
    // sign of a + b sqrt(D), D > 0 squarefree (so sqrt irrational unless b=0)
    if (b == 0) return sgn(a_);
    if (a_ == 0) return sgn(b);
    if (sgn(a_) == sgn(b)) return sgn(a_);
    // opposite signs: compare a^2 with D b^2
    mpz_class lhs = a_ * a_, rhs = mpz_class(d_) * b * b;
    int c = cmp(lhs, rhs);
    if (c == 0) throw std::logic_error("sqrt(D) rational");
    return c > 0 ? sgn(a_) : sgn(b);
}

Interval AlgNum::embed(int embedding) const {
    if (d_ < 0) throw std::domain_error("embed: complex embedding, use abs2_complex");
    Interval av = Interval::from_int(a_);
    if (d_ == 0 || b_ == 0)
        return Interval::from_rat(mpq_class(a_, c_));
    Interval root = Interval::from_int(mpz_class(d_)).sqrt();
    Interval bv = Interval::from_int(embedding == 0 ? b_ : mpz_class(-b_));
    return (av + bv * root) / Interval::from_int(c_);
}

mpq_class AlgNum::abs2_complex() const {
    if (d_ > 0) throw std::domain_error("abs2_complex: field is real");
    if (d_ == 0) {
        mpq_class q = as_rational();
        return q * q;
    }
    return norm_q();
}

std::string AlgNum::str() const {
    if (is_rational()) {
        std::string s = a_.get_str();
        if (c_ != 1) s += "/" + c_.get_str();
        return s;
    }
    std::string num;
    if (a_ != 0) num = a_.get_str();
    if (b_ != 0) {
        if (b_ > 0 && a_ != 0) num += "+";
        if (b_ == -1) num += "-";
        else if (b_ != 1) num += b_.get_str() + "*";
        num += "sqrt(" + std::to_string(d_) + ")";
    }
    if (c_ == 1) return num;
    return "(" + num + ")/" + c_.get_str();
}

// ---------------------------------------------------------------------------
// Tiny recursive-descent parser for exact literals: + - * / ^ sqrt() ( ).

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw err_syntax(what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    AlgNum parse_expr() {
        AlgNum v = parse_term();
        for (;;) {
            skip();
            if (eat('+')) v = v + parse_term();
            else if (eat('-')) v = v - parse_term();
            else return v;
        }
    }

    AlgNum parse_term() {
        AlgNum v = parse_factor();
        for (;;) {
            skip();
            if (eat('*')) v = v * parse_factor();
            else if (eat('/')) {
                AlgNum d = parse_factor();
                if (d.is_zero()) fail("division by zero");
                v = v / d;
            } else return v;
        }
    }

    AlgNum parse_factor() {
        skip();
        if (eat('-')) return -parse_factor();
        if (eat('+')) return parse_factor();
        AlgNum base = parse_atom();
        skip();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            long e = parse_uint_long();
            return base.pow(neg ? -e : e);
        }
        return base;
    }

    long parse_uint_long() {
        skip();
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected integer");
        long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos;
        }
        return v;
    }

    AlgNum parse_atom() {
        skip();
        if (eat('(')) {
            AlgNum v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (s.compare(pos, 5, "sqrt(") == 0) {
            pos += 5;
            AlgNum arg = parse_expr();
            if (!eat(')')) fail("expected ')'");
            if (!arg.is_rational()) fail("nested sqrt not supported");
            mpq_class q = arg.as_rational();
            if (q < 0 && q.get_den() != 1) fail("sqrt of negative non-integer");
            // sqrt(n/m) = sqrt(n m) / m
            mpz_class nm = q.get_num() * q.get_den();
            SqrtReduction r = reduce_sqrt(nm);
            if (r.D == 0) return AlgNum(mpq_class(r.factor, q.get_den()));
            return AlgNum(0, r.factor, q.get_den(), r.D);
        }
        if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            std::string digits;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
                digits += s[pos++];
            return AlgNum(mpz_class(digits));
        }
        fail("unexpected character");
    }
};

} // namespace

AlgNum AlgNum::parse(const std::string& text) {
    Parser p(text);
    AlgNum v = p.parse_expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

} // namespace effbounds
