#include "kricker/poly.hpp"

#include <stdexcept>

namespace kricker {

IntPoly IntPoly::monomial(Int coeff, int deg) {
    if (coeff == 0) return IntPoly();
    std::vector<Int> c(deg + 1);
    c[deg] = std::move(coeff);
    return IntPoly(std::move(c));
}

int IntPoly::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return (int)i;
    return 0;
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& c : c_) g = boost::multiprecision::gcd(g, Int(abs(c)));
    return g;
}

IntPoly IntPoly::primitive_part() const {
    Int g = content();
    if (g == 0 || g == 1) return *this;
    std::vector<Int> c(c_);
    for (auto& x : c) x /= g;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::reversed() const {
    std::vector<Int> c(c_.rbegin(), c_.rend());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> c(c_);
    for (auto& x : c) x = -x;
    return IntPoly(std::move(c));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff((int)i) + b.coeff((int)i);
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::mul_int(const Int& k) const {
    if (k == 0) return IntPoly();
    std::vector<Int> c(c_);
    for (auto& x : c) x *= k;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::divide_exact(const IntPoly& d) const {
    if (d.is_zero()) throw std::domain_error("IntPoly: division by zero");
    if (is_zero()) return IntPoly();
    std::vector<Int> rem(c_);
    int dd = d.degree();
    int qd = (int)rem.size() - 1 - dd;
    if (qd < 0) throw std::domain_error("IntPoly: inexact division");
    std::vector<Int> q(qd + 1);
    for (int i = qd; i >= 0; --i) {
        Int top = rem[i + dd];
        if (top == 0) continue;
        if (top % d.leading() != 0) throw std::domain_error("IntPoly: inexact division");
        Int f = top / d.leading();
        q[i] = f;
        for (int j = 0; j <= dd; ++j) rem[i + j] -= f * d.c_[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("IntPoly: inexact division");
    return IntPoly(std::move(q));
}

Rational IntPoly::eval(const Rational& x) const {
    Rational r;
    for (int i = degree(); i >= 0; --i) r = r * x + Rational(coeff(i));
    return r;
}

IntPoly IntPoly::gcd(IntPoly a, IntPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    // Primitive PRS: pseudo-remainders with content stripped each step.
    while (!b.is_zero()) {
        int k = a.degree() - b.degree() + 1;
        Int lb = b.leading();
        Int scale = 1;
        for (int i = 0; i < k; ++i) scale *= lb;
        IntPoly r = a.mul_int(scale);
        // long division of r by b, keep remainder
        int dd = b.degree();
        std::vector<Int> rem(r.c_);
        for (int i = (int)rem.size() - 1 - dd; i >= 0; --i) {
            Int top = rem[i + dd];
            if (top == 0) continue;
            Int f = top / lb;  // exact by the pseudo-remainder scaling
            for (int j = 0; j <= dd; ++j) rem[i + j] -= f * b.c_[j];
        }
        rem.resize(std::min(rem.size(), (size_t)std::max(dd, 0)));
        a = b;
        b = IntPoly(std::move(rem)).primitive_part();
    }
    if (!a.is_zero() && a.leading() < 0) a = -a;
    return a;
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        Int c = coeff(i);
        if (c == 0) continue;
        if (!s.empty()) s += c > 0 ? "+" : "-";
        else if (c < 0) s += "-";
        Int a = abs(c);
        if (a != 1 || i == 0) s += a.str();
        if (i > 0) {
            if (a != 1) s += "*";
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int k) {
    LaurentPoly p;
    p.set(k, c);
    return p;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p;
    for (const auto& [k, c] : c_) p.c_[k] = -c;
    return p;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p = a;
    for (const auto& [k, c] : b.c_) p.set(k, p.coeff(k) + c);
    return p;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [i, c] : a.c_)
        for (const auto& [j, d] : b.c_) p.set(i + j, p.coeff(i + j) + c * d);
    return p;
}

LaurentPoly LaurentPoly::scale(const Rational& c) const {
    LaurentPoly p;
    if (c.is_zero()) return p;
    for (const auto& [k, x] : c_) p.c_[k] = x * c;
    return p;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly p;
    for (const auto& [k, c] : c_) p.c_[-k] = c;
    return p;
}

Rational LaurentPoly::eval_at_one() const {
    Rational r;
    for (const auto& [k, c] : c_) r += c;
    return r;
}

std::string LaurentPoly::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const auto& [k, c] = *it;
        std::string cs = c.str();
        if (!s.empty() && cs[0] != '-') s += "+";
        if (k == 0) { s += cs; continue; }
        if (cs == "1") {}
        else if (cs == "-1") s += "-";
        else s += cs + "*";
        s += "t";
        if (k != 1) s += "^" + std::to_string(k);
    }
    return s;
}

}  // namespace kricker
