#pragma once

#include "kricker/rational.hpp"

#include <map>
#include <vector>

namespace kricker {

/// Dense integer-coefficient polynomial in t. Coefficient of t^i at index i;
/// no trailing zero coefficients (zero polynomial has empty storage).
class IntPoly {
public:
    IntPoly() {}
    IntPoly(Int c) { if (c != 0) c_.push_back(std::move(c)); }
    explicit IntPoly(std::vector<Int> c) : c_(std::move(c)) { trim(); }

    static IntPoly monomial(Int coeff, int deg);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return (int)c_.size() - 1; }  // -1 for zero
    Int coeff(int i) const { return (i >= 0 && i < (int)c_.size()) ? c_[i] : Int(0); }
    const Int& leading() const { return c_.back(); }
    Int constant() const { return coeff(0); }
    /// Smallest i with nonzero coefficient (0 for the zero polynomial).
    int valuation() const;

    Int content() const;          // gcd of coefficients, >= 0
    IntPoly primitive_part() const;
    IntPoly reversed() const;     // t^deg * p(1/t)

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
    IntPoly mul_int(const Int& k) const;

    /// Exact division; throws if the division leaves a remainder.
    IntPoly divide_exact(const IntPoly& d) const;
    Rational eval(const Rational& x) const;

    /// Primitive gcd via a fraction-free pseudo-remainder sequence.
    static IntPoly gcd(IntPoly a, IntPoly b);

    std::string str() const;

private:
    void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }
    std::vector<Int> c_;
};

/// Finitely supported exponent -> coefficient map over Q; no zero entries.
class LaurentPoly {
public:
    LaurentPoly() {}
    LaurentPoly(const Rational& c) { if (!c.is_zero()) c_[0] = c; }
    static LaurentPoly monomial(const Rational& c, int k);

    bool is_zero() const { return c_.empty(); }
    const std::map<int, Rational>& terms() const { return c_; }
    Rational coeff(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Rational() : it->second;
    }
    int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
    LaurentPoly scale(const Rational& c) const;
    LaurentPoly bar() const;      // t -> 1/t
    Rational eval_at_one() const;

    std::string str() const;

private:
    void set(int k, const Rational& c) { if (c.is_zero()) c_.erase(k); else c_[k] = c; }
    std::map<int, Rational> c_;
};

}  // namespace kricker
