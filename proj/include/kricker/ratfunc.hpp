#pragma once

#include "kricker/poly.hpp"

namespace kricker {

/// Canonical rational function in t: scalar * t^shift * num/den with num, den
/// coprime primitive integer polynomials, nonzero constant terms, positive
/// leading coefficients. Zero is scalar 0 with num = den = 1. Equal values
/// have identical representations, so equality is field-by-field.
class RatFunc {
public:
    RatFunc() : scalar_(0), shift_(0), num_(Int(1)), den_(Int(1)) {}
    RatFunc(long long n) : RatFunc(Rational(n)) {}
    RatFunc(const Rational& c) : scalar_(c), shift_(0), num_(Int(1)), den_(Int(1)) {
        if (c.is_zero()) *this = RatFunc();
    }

    static RatFunc make(Rational scalar, int shift, IntPoly num, IntPoly den);
    static RatFunc from_laurent(const LaurentPoly& p);
    static RatFunc normalize(const LaurentPoly& num, const LaurentPoly& den);
    static RatFunc t_power(int k) { return make(Rational(1), k, IntPoly(Int(1)), IntPoly(Int(1))); }

    const Rational& scalar() const { return scalar_; }
    int shift() const { return shift_; }
    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    bool is_zero() const { return scalar_.is_zero(); }
    bool is_one() const { return scalar_.is_one() && shift_ == 0 && num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }
    bool is_rational_const() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
    LaurentPoly to_laurent() const;  // throws unless is_laurent()

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.scalar_ == b.scalar_ && a.shift_ == b.shift_ && a.num_ == b.num_ &&
               a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    bool operator<(const RatFunc& o) const { return str() < o.str(); }

    RatFunc inverse() const;
    /// The involution t -> t^{-1}.
    RatFunc bar() const;
    Rational eval_at_one() const;  // throws on a pole at t = 1
    bool has_pole_at_one() const { return den_.eval(Rational(1)).is_zero(); }

    std::string str() const;
    static RatFunc parse(const std::string& text);

private:
    Rational scalar_;
    int shift_;
    IntPoly num_;
    IntPoly den_;
};

RatFunc rf_bar(const RatFunc& f);

}  // namespace kricker
