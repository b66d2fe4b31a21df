#include "kricker/series.hpp"

#include "kricker/error.hpp"

namespace kricker {

void DiagramSeries::add(const Rational& coeff, const Diagram& d) {
    if (coeff.is_zero() || !within_caps(d)) return;
    add_canonical(coeff, canonical_form(d));
}

void DiagramSeries::add_canonical(const Rational& coeff, const CanonicalForm& cf) {
    if (cf.zero) return;
    Rational c = cf.sign < 0 ? -coeff : coeff;
    if (c.is_zero() || !within_caps(cf.repr)) return;
    auto it = terms_.find(cf.key);
    if (it == terms_.end()) {
        terms_.emplace(cf.key, Term{c, cf.repr});
        return;
    }
    it->second.coeff += c;
    if (it->second.coeff.is_zero()) terms_.erase(it);
}

void DiagramSeries::add_series(const DiagramSeries& s, const Rational& scale) {
    for (const auto& [k, t] : s.terms_) {
        if (!within_caps(t.repr)) continue;
        Rational c = t.coeff * scale;
        if (c.is_zero()) continue;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, Term{c, t.repr});
        } else {
            it->second.coeff += c;
            if (it->second.coeff.is_zero()) terms_.erase(it);
        }
    }
}

Rational DiagramSeries::coeff_of(const Diagram& d) const {
    return coeff_of_key(canonical_key(d));
}

Rational DiagramSeries::coeff_of_key(const std::string& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational() : it->second.coeff;
}

DiagramSeries DiagramSeries::unit(const Skeleton& skel, int ideg_cap, int kdeg2_cap) {
    DiagramSeries s(ideg_cap, kdeg2_cap);
    Diagram d;
    d.skel = skel;
    s.add(Rational(1), d);
    return s;
}

DiagramSeries DiagramSeries::scaled(const Rational& c) const {
    DiagramSeries s(ideg_cap_, kdeg2_cap_);
    s.add_series(*this, c);
    return s;
}

DiagramSeries DiagramSeries::with_caps(int ideg_cap, int kdeg2_cap) const {
    DiagramSeries s(ideg_cap, kdeg2_cap);
    s.add_series(*this);
    return s;
}

DiagramSeries DiagramSeries::graded_part(int n) const {
    DiagramSeries s(ideg_cap_, kdeg2_cap_);
    for (const auto& [k, t] : terms_)
        if (t.repr.i_degree() == n) s.terms_.emplace(k, t);
    return s;
}

int DiagramSeries::min_ideg() const {
    int m = ideg_cap_ + 1;
    for (const auto& [k, t] : terms_) m = std::min(m, t.repr.i_degree());
    return m;
}

DiagramSeries operator+(const DiagramSeries& a, const DiagramSeries& b) {
    DiagramSeries s(std::min(a.ideg_cap_, b.ideg_cap_),
                    a.kdeg2_cap_ < 0 ? b.kdeg2_cap_
                                     : (b.kdeg2_cap_ < 0 ? a.kdeg2_cap_
                                                         : std::min(a.kdeg2_cap_, b.kdeg2_cap_)));
    s.add_series(a);
    s.add_series(b);
    return s;
}

DiagramSeries operator-(const DiagramSeries& a, const DiagramSeries& b) {
    DiagramSeries s(std::min(a.ideg_cap_, b.ideg_cap_),
                    a.kdeg2_cap_ < 0 ? b.kdeg2_cap_
                                     : (b.kdeg2_cap_ < 0 ? a.kdeg2_cap_
                                                         : std::min(a.kdeg2_cap_, b.kdeg2_cap_)));
    s.add_series(a);
    s.add_series(b, Rational(-1));
    return s;
}

bool operator==(const DiagramSeries& a, const DiagramSeries& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [k, t] : a.terms_) {
        auto it = b.terms_.find(k);
        if (it == b.terms_.end() || it->second.coeff != t.coeff) return false;
    }
    return true;
}

std::string DiagramSeries::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, t] : terms_) {
        if (!s.empty()) s += " + ";
        s += t.coeff.str() + " * " + diagram_str(t.repr);
    }
    return s;
}

DiagramSeries mul_disjoint(const DiagramSeries& a, const DiagramSeries& b) {
    DiagramSeries s(std::min(a.ideg_cap(), b.ideg_cap()),
                    a.kdeg2_cap() < 0
                        ? b.kdeg2_cap()
                        : (b.kdeg2_cap() < 0 ? a.kdeg2_cap()
                                             : std::min(a.kdeg2_cap(), b.kdeg2_cap())));
    for (const auto& [ka, ta] : a.terms()) {
        if (ta.repr.i_degree() > s.ideg_cap()) continue;
        for (const auto& [kb, tb] : b.terms()) {
            if (ta.repr.i_degree() + tb.repr.i_degree() > s.ideg_cap()) continue;
            if (s.kdeg2_cap() >= 0 && ta.repr.kdeg2() + tb.repr.kdeg2() > s.kdeg2_cap()) continue;
            s.add(ta.coeff * tb.coeff, disjoint_union(ta.repr, tb.repr));
        }
    }
    return s;
}

std::vector<std::pair<Diagram, Diagram>> coproduct(const Diagram& d) {
    auto comps = d.graph_components();
    size_t n = comps.size();
    std::vector<std::pair<Diagram, Diagram>> out;
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
        std::vector<int> left, right;
        for (size_t i = 0; i < n; ++i)
            ((mask >> i) & 1 ? left : right).push_back((int)i);
        out.emplace_back(d.restrict_components(comps, left), d.restrict_components(comps, right));
    }
    return out;
}

}  // namespace kricker
