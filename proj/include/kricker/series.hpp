#pragma once

#include "kricker/diagram.hpp"
#include "kricker/rational.hpp"

#include <map>

namespace kricker {

/// Graded, truncation-bounded rational linear combination of canonical
/// beaded diagrams. Terms above the i-degree cap (and the optional
/// total-vertex cap kdeg2, twice the Kontsevich degree) are dropped.
class DiagramSeries {
public:
    struct Term {
        Rational coeff;
        Diagram repr;
    };

    DiagramSeries() : ideg_cap_(0), kdeg2_cap_(-1) {}
    explicit DiagramSeries(int ideg_cap, int kdeg2_cap = -1)
        : ideg_cap_(ideg_cap), kdeg2_cap_(kdeg2_cap) {}

    int ideg_cap() const { return ideg_cap_; }
    int kdeg2_cap() const { return kdeg2_cap_; }
    const std::map<std::string, Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    bool within_caps(const Diagram& d) const {
        if (d.i_degree() > ideg_cap_) return false;
        if (kdeg2_cap_ >= 0 && d.kdeg2() > kdeg2_cap_) return false;
        return true;
    }

    /// Canonicalizes and accumulates; drops zero coefficients and terms
    /// beyond the caps.
    void add(const Rational& coeff, const Diagram& d);
    void add_canonical(const Rational& coeff, const CanonicalForm& cf);
    void add_series(const DiagramSeries& s, const Rational& scale = Rational(1));

    Rational coeff_of(const Diagram& d) const;
    Rational coeff_of_key(const std::string& key) const;

    /// The series with the single empty diagram on the given skeleton.
    static DiagramSeries unit(const Skeleton& skel, int ideg_cap, int kdeg2_cap = -1);

    DiagramSeries scaled(const Rational& c) const;
    DiagramSeries with_caps(int ideg_cap, int kdeg2_cap) const;
    /// Keep only the i-degree == n part.
    DiagramSeries graded_part(int n) const;
    int min_ideg() const;  // smallest i-degree present; ideg_cap+1 if empty

    friend DiagramSeries operator+(const DiagramSeries& a, const DiagramSeries& b);
    friend DiagramSeries operator-(const DiagramSeries& a, const DiagramSeries& b);
    friend bool operator==(const DiagramSeries& a, const DiagramSeries& b);

    std::string str() const;

private:
    int ideg_cap_;
    int kdeg2_cap_;
    std::map<std::string, Term> terms_;
};

/// Bilinear extension of disjoint union.
DiagramSeries mul_disjoint(const DiagramSeries& a, const DiagramSeries& b);

/// Coproduct of a single diagram: one (left, right) pair per subset of
/// connected graph components (winding labels of concatenated skeleton
/// segments multiply).
std::vector<std::pair<Diagram, Diagram>> coproduct(const Diagram& d);

}  // namespace kricker
