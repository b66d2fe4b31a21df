#include "kricker/matrix.hpp"

#include "kricker/error.hpp"

namespace kricker {

RfMatrix RfMatrix::identity(size_t n) {
    RfMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.a_[i][i] = RatFunc(1);
    return m;
}

RfMatrix operator+(const RfMatrix& a, const RfMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw math_error("matrix: size mismatch");
    RfMatrix m(a.rows_, a.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t j = 0; j < a.cols_; ++j) m.a_[i][j] = a.a_[i][j] + b.a_[i][j];
    return m;
}

RfMatrix operator-(const RfMatrix& a, const RfMatrix& b) { return a + (-b); }

RfMatrix RfMatrix::operator-() const {
    RfMatrix m(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m.a_[i][j] = -a_[i][j];
    return m;
}

RfMatrix operator*(const RfMatrix& a, const RfMatrix& b) {
    if (a.cols_ != b.rows_) throw math_error("matrix: size mismatch");
    RfMatrix m(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            if (a.a_[i][k].is_zero()) continue;
            for (size_t j = 0; j < b.cols_; ++j)
                m.a_[i][j] += a.a_[i][k] * b.a_[k][j];
        }
    return m;
}

RfMatrix RfMatrix::transpose() const {
    RfMatrix m(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m.a_[j][i] = a_[i][j];
    return m;
}

RfMatrix RfMatrix::bar_transpose() const {
    RfMatrix m(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m.a_[j][i] = a_[i][j].bar();
    return m;
}

bool RfMatrix::is_hermitian() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = i; j < cols_; ++j)
            if (a_[j][i] != a_[i][j].bar()) return false;
    return true;
}

namespace {

// Clear all entries to integer polynomials: returns (P, c) with M = c * P.
std::pair<std::vector<std::vector<IntPoly>>, RatFunc> cleared(const RfMatrix& m) {
    IntPoly dl(Int(1));
    Int sl = 1;
    int minshift = 0;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const RatFunc& f = m.at(i, j);
            if (f.is_zero()) continue;
            IntPoly g = IntPoly::gcd(dl, f.den());
            dl = dl * f.den().divide_exact(g);
            sl = sl / gcd(sl, f.scalar().den()) * f.scalar().den();
            minshift = std::min(minshift, f.shift() - f.den().degree());
        }
    RatFunc c = RatFunc::make(Rational(Int(1), sl), minshift, IntPoly(Int(1)), dl);
    RatFunc cinv = c.inverse();
    std::vector<std::vector<IntPoly>> p(m.rows(), std::vector<IntPoly>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            RatFunc e = m.at(i, j) * cinv;
            if (e.is_zero()) continue;
            LaurentPoly lp = e.to_laurent();
            if (lp.min_exp() < 0) throw math_error("matrix: internal clearing failure");
            std::vector<Int> cs(lp.max_exp() + 1);
            for (const auto& [k, q] : lp.terms()) {
                if (q.den() != 1) throw math_error("matrix: internal clearing failure");
                cs[k] = q.num();
            }
            p[i][j] = IntPoly(std::move(cs));
        }
    return {std::move(p), c};
}

}  // namespace

RatFunc RfMatrix::det() const {
    if (rows_ != cols_) throw math_error("matrix: det of non-square matrix");
    size_t n = rows_;
    if (n == 0) return RatFunc(1);
    auto [a, c] = cleared(*this);
    int sign = 1;
    IntPoly prev(Int(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t s = k + 1;
            while (s < n && a[s][k].is_zero()) ++s;
            if (s == n) return RatFunc();
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).divide_exact(prev);
        prev = a[k][k];
    }
    RatFunc d = RatFunc::make(Rational(sign), 0, a[n - 1][n - 1], IntPoly(Int(1)));
    RatFunc cn(1);
    for (size_t i = 0; i < n; ++i) cn = cn * c;
    return d * cn;
}

RfMatrix RfMatrix::inverse() const {
    if (rows_ != cols_) throw math_error("matrix: inverse of non-square matrix");
    size_t n = rows_;
    if (n == 0) return *this;
    auto [p, c] = cleared(*this);
    // Bareiss-Jordan on [P | I]: ends with the left block det * I.
    std::vector<std::vector<IntPoly>> a(n, std::vector<IntPoly>(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = p[i][j];
        a[i][n + i] = IntPoly(Int(1));
    }
    IntPoly prev(Int(1));
    int sign = 1;
    for (size_t k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t s = k + 1;
            while (s < n && a[s][k].is_zero()) ++s;
            if (s == n) throw math_error("SingularMatrix: det = 0");
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            for (size_t j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).divide_exact(prev);
            }
            a[i][k] = IntPoly();
        }
        prev = a[k][k];
    }
    RatFunc d = RatFunc::make(Rational(sign), 0, a[n - 1][n - 1], IntPoly(Int(1)));
    (void)d;
    RfMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i) {
        RatFunc diag = RatFunc::make(Rational(1), 0, a[i][i], IntPoly(Int(1)));
        for (size_t j = 0; j < n; ++j) {
            RatFunc x = RatFunc::make(Rational(1), 0, a[i][n + j], IntPoly(Int(1)));
            inv.a_[i][j] = x / diag / c;
        }
    }
    return inv;
}

bool RfMatrix::has_pole_at_one() const {
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (a_[i][j].has_pole_at_one()) return true;
    return false;
}

std::vector<std::vector<Rational>> RfMatrix::eval_at_one() const {
    std::vector<std::vector<Rational>> m(rows_, std::vector<Rational>(cols_));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m[i][j] = a_[i][j].eval_at_one();
    return m;
}

std::string RfMatrix::str() const {
    std::string s = "[";
    for (size_t i = 0; i < rows_; ++i) {
        s += i ? ", [" : "[";
        for (size_t j = 0; j < cols_; ++j) {
            if (j) s += ", ";
            s += a_[i][j].str();
        }
        s += "]";
    }
    return s + "]";
}

std::pair<int, int> signature(const std::vector<std::vector<Rational>>& input) {
    auto m = input;
    size_t n = m.size();
    std::vector<bool> done(n, false);
    int pos = 0, neg = 0;
    for (size_t step = 0; step < n; ++step) {
        size_t piv = n;
        for (size_t i = 0; i < n && piv == n; ++i)
            if (!done[i] && !m[i][i].is_zero()) piv = i;
        if (piv == n) {
            // all remaining diagonal entries zero; symmetrize a nonzero off-diagonal
            size_t bi = n, bj = n;
            for (size_t i = 0; i < n && bi == n; ++i)
                for (size_t j = i + 1; j < n && bi == n; ++j)
                    if (!done[i] && !done[j] && !m[i][j].is_zero()) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) break;  // zero block
            for (size_t k = 0; k < n; ++k) m[bi][k] += m[bj][k];
            for (size_t k = 0; k < n; ++k) m[k][bi] += m[k][bj];
            piv = bi;
        }
        Rational d = m[piv][piv];
        (d.sign() > 0 ? pos : neg)++;
        done[piv] = true;
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || m[i][piv].is_zero()) continue;
            Rational f = m[i][piv] / d;
            for (size_t j = 0; j < n; ++j)
                if (!done[j]) m[i][j] -= f * m[piv][j];
            m[i][piv] = Rational();
        }
        for (size_t j = 0; j < n; ++j)
            if (!done[j]) m[piv][j] = Rational();
    }
    return {pos, neg};
}

}  // namespace kricker
