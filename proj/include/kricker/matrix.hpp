#pragma once

#include "kricker/ratfunc.hpp"

#include <vector>

namespace kricker {

/// Dense matrix over Q(t). Small sizes only; all arithmetic exact.
class RfMatrix {
public:
    RfMatrix() : rows_(0), cols_(0) {}
    RfMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), a_(rows, std::vector<RatFunc>(cols)) {}

    static RfMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    RatFunc& at(size_t i, size_t j) { return a_[i][j]; }
    const RatFunc& at(size_t i, size_t j) const { return a_[i][j]; }

    friend RfMatrix operator+(const RfMatrix& a, const RfMatrix& b);
    friend RfMatrix operator-(const RfMatrix& a, const RfMatrix& b);
    friend RfMatrix operator*(const RfMatrix& a, const RfMatrix& b);
    friend bool operator==(const RfMatrix& a, const RfMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    RfMatrix operator-() const;

    RfMatrix transpose() const;
    /// Conjugate transpose for the t -> t^{-1} involution.
    RfMatrix bar_transpose() const;
    bool is_hermitian() const;

    RatFunc det() const;
    /// Exact inverse; throws a math error carrying the determinant if singular.
    RfMatrix inverse() const;

    bool has_pole_at_one() const;
    /// Entrywise evaluation at t = 1; throws on a pole.
    std::vector<std::vector<Rational>> eval_at_one() const;

    std::string str() const;

private:
    size_t rows_, cols_;
    std::vector<std::vector<RatFunc>> a_;
};

/// Signature (n_plus, n_minus) of an exact symmetric rational matrix.
std::pair<int, int> signature(const std::vector<std::vector<Rational>>& m);

}  // namespace kricker
