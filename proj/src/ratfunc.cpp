#include "kricker/ratfunc.hpp"

#include "kricker/error.hpp"

#include <cctype>

namespace kricker {

RatFunc RatFunc::make(Rational scalar, int shift, IntPoly num, IntPoly den) {
    if (den.is_zero()) throw math_error("RatFunc: zero denominator");
    if (scalar.is_zero() || num.is_zero()) return RatFunc();
    // extract t-valuations
    int vn = num.valuation(), vd = den.valuation();
    if (vn > 0) num = num.divide_exact(IntPoly::monomial(Int(1), vn));
    if (vd > 0) den = den.divide_exact(IntPoly::monomial(Int(1), vd));
    shift += vn - vd;
    // cancel common factor
    IntPoly g = IntPoly::gcd(num, den);
    if (!g.is_one()) {
        num = num.divide_exact(g);
        den = den.divide_exact(g);
    }
    // extract contents and signs into the scalar
    Int cn = num.content(), cd = den.content();
    num = num.primitive_part();
    den = den.primitive_part();
    scalar *= Rational(cn, cd);
    if (num.leading() < 0) {
        num = -num;
        scalar = -scalar;
    }
    if (den.leading() < 0) {
        den = -den;
        scalar = -scalar;
    }
    RatFunc f;
    f.scalar_ = std::move(scalar);
    f.shift_ = shift;
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    return f;
}

RatFunc RatFunc::from_laurent(const LaurentPoly& p) {
    if (p.is_zero()) return RatFunc();
    int v = p.min_exp();
    Int den = 1;
    for (const auto& [k, c] : p.terms()) den = den / gcd(den, c.den()) * c.den();
    std::vector<Int> coeffs(p.max_exp() - v + 1);
    for (const auto& [k, c] : p.terms()) coeffs[k - v] = c.num() * (den / c.den());
    return make(Rational(1, den), v, IntPoly(std::move(coeffs)), IntPoly(Int(1)));
}

RatFunc RatFunc::normalize(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw math_error("rf_normalize: zero denominator");
    return from_laurent(num) / from_laurent(den);
}

LaurentPoly RatFunc::to_laurent() const {
    if (!is_laurent()) throw math_error("RatFunc: not a Laurent polynomial: " + str());
    LaurentPoly p;
    for (int i = 0; i <= num_.degree(); ++i) {
        Rational c = scalar_ * Rational(num_.coeff(i));
        if (!c.is_zero()) p = p + LaurentPoly::monomial(c, i + shift_);
    }
    return p;
}

RatFunc RatFunc::operator-() const {
    RatFunc f = *this;
    f.scalar_ = -f.scalar_;
    return f;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int k = std::min(a.shift_, b.shift_);
    // a + b = t^k ( pa/qa t^{ka-k} na db + pb/qb t^{kb-k} nb da ) / (da db)
    IntPoly ta = IntPoly::monomial(Int(1), a.shift_ - k);
    IntPoly tb = IntPoly::monomial(Int(1), b.shift_ - k);
    const Rational& sa = a.scalar_;
    const Rational& sb = b.scalar_;
    IntPoly num = (ta * a.num_ * b.den_).mul_int(sa.num() * sb.den()) +
                  (tb * b.num_ * a.den_).mul_int(sb.num() * sa.den());
    return RatFunc::make(Rational(Int(1), sa.den() * sb.den()), k, std::move(num),
                         a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    return RatFunc::make(a.scalar_ * b.scalar_, a.shift_ + b.shift_, a.num_ * b.num_,
                         a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw math_error("RatFunc: inverse of zero");
    return make(scalar_.inverse(), -shift_, den_, num_);
}

RatFunc RatFunc::bar() const {
    if (is_zero()) return RatFunc();
    // f(1/t) = s t^{-shift} rev(num)/rev(den) t^{deg den - deg num}
    return make(scalar_, -shift_ + den_.degree() - num_.degree(), num_.reversed(),
                den_.reversed());
}

RatFunc rf_bar(const RatFunc& f) { return f.bar(); }

Rational RatFunc::eval_at_one() const {
    Rational d = den_.eval(Rational(1));
    if (d.is_zero()) {
        if (is_zero()) return Rational();
        throw math_error("RatFunc: pole at t = 1 in " + str());
    }
    return scalar_ * num_.eval(Rational(1)) / d;
}

std::string RatFunc::str() const {
    if (is_zero()) return "0";
    std::string s;
    bool have = false;
    if (!num_.is_one() || !den_.is_one()) {
        s += "(" + num_.str() + ")";
        if (!den_.is_one()) s += "/(" + den_.str() + ")";
        have = true;
    }
    if (shift_ != 0) {
        if (have) s += "*";
        s += "t^" + std::to_string(shift_);
        have = true;
    }
    if (!scalar_.is_one() || !have) {
        if (have) s += "*";
        s += scalar_.str();
    }
    return s;
}

namespace {

struct RfParser {
    const std::string& s;
    size_t i = 0;

    explicit RfParser(const std::string& text) : s(text) {}

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error("RatFunc parse error at offset " + std::to_string(i) + ": " + msg);
    }

    long long integer() {
        skip();
        bool neg = eat('-');
        if (!neg) eat('+');
        skip();
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected integer");
        long long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    }

    RatFunc atom() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        if (s[i] == '(') {
            ++i;
            RatFunc e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (s[i] == 't') {
            ++i;
            return RatFunc::t_power(1);
        }
        if (std::isdigit((unsigned char)s[i])) return RatFunc(Rational(integer()));
        fail("expected 't', integer or '('");
    }

    RatFunc factor() {
        skip();
        if (eat('-')) return -factor();
        RatFunc base = atom();
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip();
            bool paren = eat('(');
            long long e = integer();
            if (paren && !eat(')')) fail("expected ')'");
            RatFunc r(Rational(1));
            RatFunc b = e < 0 ? base.inverse() : base;
            for (long long k = 0; k < (e < 0 ? -e : e); ++k) r = r * b;
            return r;
        }
        return base;
    }

    RatFunc term() {
        RatFunc r = factor();
        while (true) {
            skip();
            if (eat('*')) r = r * factor();
            else if (eat('/')) r = r / factor();
            else return r;
        }
    }

    RatFunc expr() {
        RatFunc r = term();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '+') {
                ++i;
                r = r + term();
            } else if (i < s.size() && s[i] == '-') {
                ++i;
                r = r - term();
            } else {
                return r;
            }
        }
    }
};

}  // namespace

RatFunc RatFunc::parse(const std::string& text) {
    RfParser p(text);
    RatFunc r = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace kricker
