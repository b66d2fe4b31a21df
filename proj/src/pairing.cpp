#include "kricker/pairing.hpp"

#include "kricker/error.hpp"

#include <algorithm>
#include <numeric>

namespace kricker {

namespace {

Skeleton series_skeleton(const DiagramSeries& s) {
    if (s.is_zero()) return Skeleton();
    return s.terms().begin()->second.repr.skel;
}

}  // namespace

DiagramSeries exp_disjoint(const DiagramSeries& s) {
    bool has_deg0 = false;
    for (const auto& [k, t] : s.terms())
        if (t.repr.i_degree() == 0 && !t.repr.empty()) has_deg0 = true;
    if (has_deg0 && s.kdeg2_cap() < 0)
        throw math_error("exp_disjoint: strut powers need a vertex cap");
    DiagramSeries out = DiagramSeries::unit(series_skeleton(s), s.ideg_cap(), s.kdeg2_cap());
    DiagramSeries power = out;
    Rational fact(1);
    for (int k = 1;; ++k) {
        power = mul_disjoint(power, s);
        if (power.is_zero()) break;
        fact *= Rational(k);
        out.add_series(power, fact.inverse());
    }
    return out;
}

DiagramSeries log_disjoint(const DiagramSeries& s) {
    Diagram empty;
    empty.skel = series_skeleton(s);
    if (s.coeff_of(empty) != Rational(1))
        throw math_error("log_disjoint: unit coefficient required on the empty diagram");
    DiagramSeries x = s;
    x.add(Rational(-1), empty);
    bool has_deg0 = false;
    for (const auto& [k, t] : x.terms())
        if (t.repr.i_degree() == 0 && !t.repr.empty()) has_deg0 = true;
    if (has_deg0 && s.kdeg2_cap() < 0)
        throw math_error("log_disjoint: strut powers need a vertex cap");
    DiagramSeries out(s.ideg_cap(), s.kdeg2_cap());
    DiagramSeries power = DiagramSeries::unit(series_skeleton(s), s.ideg_cap(), s.kdeg2_cap());
    Rational sign(1);
    for (int k = 1;; ++k) {
        power = mul_disjoint(power, x);
        if (power.is_zero()) break;
        out.add_series(power, sign / Rational(k));
        sign = -sign;
    }
    return out;
}

DiagramSeries inverse_disjoint(const DiagramSeries& s) {
    Diagram empty;
    empty.skel = series_skeleton(s);
    Rational c = s.coeff_of(empty);
    if (c.is_zero()) throw math_error("inverse_disjoint: no unit term");
    DiagramSeries x = s.scaled(c.inverse());
    x.add(Rational(-1), empty);
    // 1/(1+x) = sum (-x)^k
    DiagramSeries out(s.ideg_cap(), s.kdeg2_cap());
    DiagramSeries power = DiagramSeries::unit(empty.skel, s.ideg_cap(), s.kdeg2_cap());
    out.add_series(power);
    for (int k = 1;; ++k) {
        power = mul_disjoint(power, x);
        if (power.is_zero()) break;
        out.add_series(power, Rational(k % 2 ? -1 : 1));
    }
    return out.scaled(c.inverse());
}

bool has_strut_in(const Diagram& d, const std::set<std::string>& colors) {
    for (const auto& e : d.edges) {
        if (e.a.triv || e.b.triv) continue;
        const Leg& la = d.legs[e.a.v];
        const Leg& lb = d.legs[e.b.v];
        if (!la.on_skeleton && !lb.on_skeleton && colors.count(la.color) && colors.count(lb.color))
            return true;
    }
    return false;
}

bool has_strut_in(const DiagramSeries& s, const std::set<std::string>& colors) {
    for (const auto& [k, t] : s.terms())
        if (has_strut_in(t.repr, colors)) return true;
    return false;
}

namespace {

// Ends during gluing: junctions are encoded as legs with index -(j+1).
End junction_end(int j) { return End::at_leg(-(j + 1)); }
bool is_junction(const End& e) { return !e.triv && e.v < 0; }

struct GlueEdge {
    End a, b;
    RatFunc label;
};

// Splice all junctions (each referenced by exactly two edge ends); composed
// labels follow the P(t)Q(t^-1) rule along the traversal.
std::vector<GlueEdge> splice(std::vector<GlueEdge> edges) {
    while (true) {
        int j = 0;
        bool found = false;
        for (const auto& e : edges) {
            if (is_junction(e.a)) {
                j = e.a.v;
                found = true;
                break;
            }
            if (is_junction(e.b)) {
                j = e.b.v;
                found = true;
                break;
            }
        }
        if (!found) return edges;
        // collect the two edge ends at junction j
        int e1 = -1, e2 = -1;
        for (size_t i = 0; i < edges.size(); ++i) {
            int hits = (edges[i].a == End::at_leg(j) ? 1 : 0) +
                       (edges[i].b == End::at_leg(j) ? 1 : 0);
            if (hits == 2) throw math_error("bracket: strut glued to itself (vacuum circle)");
            if (hits == 1) {
                if (e1 < 0) e1 = (int)i;
                else e2 = (int)i;
            }
        }
        if (e1 < 0 || e2 < 0) throw math_error("bracket: dangling junction");
        GlueEdge E1 = edges[e1], E2 = edges[e2];
        // orient traversal: other(E1) -> j -> other(E2)
        bool e1_into = E1.b == End::at_leg(j);
        End start = e1_into ? E1.a : E1.b;
        RatFunc f1 = e1_into ? E1.label : E1.label.bar();
        bool e2_out = E2.a == End::at_leg(j);
        End finish = e2_out ? E2.b : E2.a;
        RatFunc f2 = e2_out ? E2.label : E2.label.bar();
        GlueEdge merged{start, finish, f1 * f2};
        std::vector<GlueEdge> next;
        for (size_t i = 0; i < edges.size(); ++i)
            if ((int)i != e1 && (int)i != e2) next.push_back(edges[i]);
        next.push_back(merged);
        edges = std::move(next);
    }
}

void glue_pairs_into(DiagramSeries& out, const Rational& coeff, const Diagram& td,
                     const Diagram& te, const std::vector<std::pair<int, int>>& pairs) {
    // pairs: (d-leg index, e-leg index)
    Diagram r;
    r.skel = td.skel;
    r.n_triv = td.n_triv + te.n_triv;
    std::vector<int> dmap(td.legs.size(), 0), emap(te.legs.size(), 0);
    std::vector<bool> dglued(td.legs.size(), false), eglued(te.legs.size(), false);
    for (size_t i = 0; i < pairs.size(); ++i) {
        dglued[pairs[i].first] = true;
        eglued[pairs[i].second] = true;
        dmap[pairs[i].first] = -(int)(i + 1);
        emap[pairs[i].second] = -(int)(i + 1);
    }
    for (size_t i = 0; i < td.legs.size(); ++i) {
        if (dglued[i]) continue;
        dmap[i] = (int)r.legs.size();
        r.legs.push_back(td.legs[i]);
    }
    for (size_t i = 0; i < te.legs.size(); ++i) {
        if (eglued[i]) continue;
        emap[i] = (int)r.legs.size();
        r.legs.push_back(te.legs[i]);
    }
    // both sides may carry beads/skeleton legs only on disjoint components
    if (td.has_beads() || te.has_beads()) {
        r.ensure_beads();
        for (size_t c = 0; c < r.beads.size(); ++c) {
            if (!td.beads.empty() && td.beads[c].size() > 1) r.beads[c] = td.beads[c];
            if (!te.beads.empty() && te.beads[c].size() > 1) {
                if (r.beads[c].size() > 1 && td.beads.size() > c && td.beads[c].size() > 1)
                    throw math_error("bracket: both sides bead skeleton component");
                r.beads[c] = te.beads[c];
            }
        }
    }
    std::vector<GlueEdge> edges;
    for (const auto& e : td.edges) {
        auto remap = [&](const End& x) { return x.triv ? x : End::at_leg(dmap[x.v]); };
        edges.push_back({remap(e.a), remap(e.b), e.label});
    }
    for (const auto& e : te.edges) {
        auto remap = [&](const End& x) {
            return x.triv ? End::at_triv(x.v + td.n_triv, x.port) : End::at_leg(emap[x.v]);
        };
        edges.push_back({remap(e.a), remap(e.b), e.label});
    }
    edges = splice(std::move(edges));
    for (const auto& e : edges) r.edges.push_back({e.a, e.b, e.label});
    out.add_series(gauge_normalize_term(coeff, r, out.ideg_cap(), out.kdeg2_cap()));
}

}  // namespace

DiagramSeries bracket(const DiagramSeries& d, const DiagramSeries& e,
                      const std::set<std::string>& colors) {
    bool ds = has_strut_in(d, colors), es = has_strut_in(e, colors);
    if (ds && es) throw math_error("bracket: both sides carry S-struts");
    int icap = std::min(d.ideg_cap(), e.ideg_cap());
    int kcap = d.kdeg2_cap() < 0
                   ? e.kdeg2_cap()
                   : (e.kdeg2_cap() < 0 ? d.kdeg2_cap() : std::min(d.kdeg2_cap(), e.kdeg2_cap()));
    DiagramSeries out(icap, kcap);
    for (const auto& [kd, td] : d.terms()) {
        // group the S-legs per color
        std::map<std::string, std::vector<int>> dlegs;
        for (size_t i = 0; i < td.repr.legs.size(); ++i) {
            const Leg& l = td.repr.legs[i];
            if (!l.on_skeleton && colors.count(l.color)) dlegs[l.color].push_back((int)i);
        }
        for (const auto& [ke, te] : e.terms()) {
            std::map<std::string, std::vector<int>> elegs;
            for (size_t i = 0; i < te.repr.legs.size(); ++i) {
                const Leg& l = te.repr.legs[i];
                if (!l.on_skeleton && colors.count(l.color)) elegs[l.color].push_back((int)i);
            }
            bool match = dlegs.size() == elegs.size();
            for (const auto& [c, v] : dlegs)
                if (!elegs.count(c) || elegs[c].size() != v.size()) match = false;
            if (!match) continue;
            // enumerate bijections per color
            std::vector<std::string> cs;
            for (const auto& [c, v] : dlegs) cs.push_back(c);
            std::vector<std::vector<int>> perms;
            for (const auto& c : cs) {
                std::vector<int> p(dlegs[c].size());
                std::iota(p.begin(), p.end(), 0);
                perms.push_back(p);
            }
            Rational coeff = td.coeff * te.coeff;
            while (true) {
                std::vector<std::pair<int, int>> pairs;
                for (size_t ci = 0; ci < cs.size(); ++ci)
                    for (size_t i = 0; i < perms[ci].size(); ++i)
                        pairs.push_back({dlegs[cs[ci]][i], elegs[cs[ci]][perms[ci][i]]});
                glue_pairs_into(out, coeff, td.repr, te.repr, pairs);
                size_t ci = 0;
                for (; ci < perms.size(); ++ci) {
                    if (std::next_permutation(perms[ci].begin(), perms[ci].end())) break;
                }
                if (ci == perms.size()) break;
            }
        }
    }
    return out;
}

DiagramSeries chi(const DiagramSeries& s, const std::set<std::string>& colors) {
    DiagramSeries out(s.ideg_cap(), s.kdeg2_cap());
    for (const auto& [key, term] : s.terms()) {
        Diagram base = term.repr;
        for (const auto& c : colors)
            if (base.skel.index_of(c) >= 0)
                throw math_error("chi: skeleton already has component " + c);
        Skeleton ns = base.skel;
        std::map<std::string, int> comp_of;
        for (const auto& c : colors) {
            comp_of[c] = (int)ns.components.size();
            ns.components.push_back({SkeletonComponent::Kind::interval, c});
        }
        std::map<std::string, std::vector<int>> legs_by;
        for (size_t i = 0; i < base.legs.size(); ++i)
            if (!base.legs[i].on_skeleton && colors.count(base.legs[i].color))
                legs_by[base.legs[i].color].push_back((int)i);
        // odometer over orderings per color
        std::vector<std::string> cs;
        std::vector<std::vector<int>> perms;
        Rational norm(1);
        for (auto& [c, v] : legs_by) {
            cs.push_back(c);
            std::vector<int> p(v.size());
            std::iota(p.begin(), p.end(), 0);
            perms.push_back(p);
            Rational f(1);
            for (size_t i = 2; i <= v.size(); ++i) f *= Rational((long long)i);
            norm *= f;
        }
        while (true) {
            Diagram d = base;
            d.skel = ns;
            if (!d.beads.empty()) d.beads.resize(ns.components.size());
            for (size_t ci = 0; ci < cs.size(); ++ci) {
                const auto& v = legs_by[cs[ci]];
                for (size_t i = 0; i < v.size(); ++i) {
                    d.legs[v[i]].on_skeleton = true;
                    d.legs[v[i]].at = {comp_of[cs[ci]], perms[ci][i]};
                    d.legs[v[i]].color.clear();
                }
            }
            if (!d.beads.empty())
                for (const auto& c : cs)
                    d.beads[comp_of[c]].assign(legs_by[c].size() + 1, 0);
            out.add_series(gauge_normalize_term(term.coeff / norm, d, s.ideg_cap(), s.kdeg2_cap()));
            size_t ci = 0;
            for (; ci < perms.size(); ++ci)
                if (std::next_permutation(perms[ci].begin(), perms[ci].end())) break;
            if (ci == perms.size()) break;
        }
    }
    return out;
}

namespace {

// strip legs of the named interval components into colored legs
Diagram strip_components(const Diagram& d, const std::set<std::string>& colors) {
    Diagram r;
    std::vector<int> cmap(d.skel.components.size(), -1);
    for (size_t c = 0; c < d.skel.components.size(); ++c) {
        if (colors.count(d.skel.components[c].id)) {
            if (!d.beads.empty())
                for (int x : d.beads[c])
                    if (x) throw math_error("chi_inv: beads on a stripped component");
            continue;
        }
        cmap[c] = (int)r.skel.components.size();
        r.skel.components.push_back(d.skel.components[c]);
    }
    r.n_triv = d.n_triv;
    r.legs = d.legs;
    for (auto& l : r.legs) {
        if (!l.on_skeleton) continue;
        if (cmap[l.at.component] >= 0) {
            l.at.component = cmap[l.at.component];
        } else {
            l.color = d.skel.components[l.at.component].id;
            l.on_skeleton = false;
            l.at = {};
        }
    }
    r.edges = d.edges;
    if (!d.beads.empty()) {
        r.beads.resize(r.skel.components.size());
        for (size_t c = 0; c < d.skel.components.size(); ++c)
            if (cmap[c] >= 0) r.beads[cmap[c]] = d.beads[c];
    }
    return r;
}

}  // namespace

DiagramSeries chi_inv(const DiagramSeries& s, const std::set<std::string>& colors) {
    if (s.is_zero()) return DiagramSeries(s.ideg_cap(), s.kdeg2_cap());
    // C0: strip positions; R: explicit STU corrections so that
    // chi(C0) = s + R formally, then recurse on R (fewer legs).
    DiagramSeries c0(s.ideg_cap(), s.kdeg2_cap());
    DiagramSeries corrections(s.ideg_cap(), s.kdeg2_cap());
    bool any_legs = false;
    for (const auto& [key, term] : s.terms()) {
        c0.add_series(gauge_normalize_term(term.coeff, strip_components(term.repr, colors),
                                           s.ideg_cap(), s.kdeg2_cap()));
        // per stripped component: legs in position order
        const Diagram& d = term.repr;
        std::vector<std::pair<int, std::vector<int>>> comps;  // (component, legs by pos)
        for (size_t c = 0; c < d.skel.components.size(); ++c) {
            if (!colors.count(d.skel.components[c].id)) continue;
            auto on = d.legs_on_component((int)c);
            if (on.size() > 1) any_legs = true;
            if (!on.empty()) comps.push_back({(int)c, on});
        }
        if (comps.empty()) continue;
        // enumerate target arrangements per component; walk adjacent swaps,
        // collecting the contraction at each step
        std::vector<std::vector<int>> perms;
        Rational norm(1);
        for (auto& [c, on] : comps) {
            std::vector<int> p(on.size());
            std::iota(p.begin(), p.end(), 0);
            perms.push_back(p);
            Rational f(1);
            for (size_t i = 2; i <= on.size(); ++i) f *= Rational((long long)i);
            norm *= f;
        }
        while (true) {
            Diagram cur = d;
            for (size_t ci = 0; ci < comps.size(); ++ci) {
                int comp = comps[ci].first;
                // current leg order along the component, target = perms[ci]
                // applied to the original order
                std::vector<int> target;
                for (size_t i = 0; i < perms[ci].size(); ++i)
                    target.push_back(comps[ci].second[perms[ci][i]]);
                // selection sort with adjacent swaps
                while (true) {
                    auto on = cur.legs_on_component(comp);
                    size_t pos = 0;
                    while (pos < on.size() && on[pos] == target[pos]) ++pos;
                    if (pos >= on.size()) break;
                    size_t j = pos;
                    while (on[j] != target[pos]) ++j;
                    for (size_t jj = j; jj > pos; --jj) {
                        int low = on[jj - 1];
                        auto c_at = stu_contract_at(cur, low);
                        if (c_at)
                            corrections.add_series(gauge_normalize_term(
                                term.coeff / norm, *c_at, s.ideg_cap(), s.kdeg2_cap()));
                        cur = swap_adjacent_legs(cur, low);
                        std::swap(on[jj - 1], on[jj]);
                    }
                }
            }
            size_t ci = 0;
            for (; ci < perms.size(); ++ci)
                if (std::next_permutation(perms[ci].begin(), perms[ci].end())) break;
            if (ci == perms.size()) break;
        }
    }
    if (!any_legs || corrections.is_zero()) return c0;
    // modulo STU: chi(C0) = s - corrections, so chi_inv(s) = C0 + chi_inv(corrections)
    return c0 + chi_inv(corrections, colors);
}

DiagramSeries glue_with_form(const Diagram& d, const RfMatrix& ell,
                             const std::vector<std::string>& basis, GlueMode mode, int ideg_cap,
                             const Rational& pair_factor) {
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    for (const auto& l : d.legs)
        if (!l.on_skeleton && !index.count(l.color))
            throw math_error("glue_with_form: leg color not in basis: " + l.color);
    DiagramSeries out(ideg_cap);
    std::vector<int> legs;
    for (size_t i = 0; i < d.legs.size(); ++i)
        if (!d.legs[i].on_skeleton) legs.push_back((int)i);

    auto emit = [&](const std::vector<std::pair<int, int>>& chosen) {
        Diagram r;
        r.skel = d.skel;
        r.n_triv = d.n_triv;
        std::vector<int> lmap(d.legs.size(), -1);
        std::vector<bool> glued(d.legs.size(), false);
        for (auto& [x, y] : chosen) glued[x] = glued[y] = true;
        for (size_t i = 0; i < d.legs.size(); ++i) {
            if (glued[i]) continue;
            lmap[i] = (int)r.legs.size();
            r.legs.push_back(d.legs[i]);
        }
        r.beads = d.beads;
        std::vector<GlueEdge> edges;
        for (const auto& e : d.edges) {
            auto remap = [&](const End& x) {
                if (x.triv) return x;
                if (glued[x.v]) return End::at_leg(-(x.v + 1000));
                return End::at_leg(lmap[x.v]);
            };
            edges.push_back({remap(e.a), remap(e.b), e.label});
        }
        Rational coeff(1);
        for (auto& [x, y] : chosen) {
            const RatFunc& l = ell.at(index.at(d.legs[x].color), index.at(d.legs[y].color));
            if (l.is_zero()) return;  // trivial by LE
            edges.push_back({End::at_leg(-(x + 1000)), End::at_leg(-(y + 1000)), l});
            coeff *= pair_factor;
        }
        auto spliced = splice(std::move(edges));
        Diagram rr = r;
        for (const auto& e : spliced) rr.edges.push_back({e.a, e.b, e.label});
        out.add_series(gauge_normalize_term(coeff, rr, ideg_cap));
    };

    // enumerate matchings of the colored legs
    std::function<void(std::vector<int>, std::vector<std::pair<int, int>>&)> rec =
        [&](std::vector<int> rest, std::vector<std::pair<int, int>>& chosen) {
            if (rest.empty()) {
                emit(chosen);
                return;
            }
            int first = rest[0];
            if (mode == GlueMode::some_legs)
                rec(std::vector<int>(rest.begin() + 1, rest.end()), chosen);
            for (size_t i = 1; i < rest.size(); ++i) {
                std::vector<int> nrest;
                for (size_t j = 1; j < rest.size(); ++j)
                    if (j != i) nrest.push_back(rest[j]);
                chosen.push_back({first, rest[i]});
                rec(std::move(nrest), chosen);
                chosen.pop_back();
            }
        };
    std::vector<std::pair<int, int>> chosen;
    rec(legs, chosen);
    return out;
}

StrutDecomposition strut_split(const DiagramSeries& g, const std::set<std::string>& colors) {
    int kcap = g.kdeg2_cap();
    if (kcap < 0) {
        for (const auto& [k, t] : g.terms()) kcap = std::max(kcap, t.repr.kdeg2());
        if (kcap < 0) kcap = 0;
    }
    DiagramSeries gg = g.with_caps(g.ideg_cap(), kcap);
    DiagramSeries lg = log_disjoint(gg);
    // pull out the S-struts
    std::vector<std::string> basis(colors.begin(), colors.end());
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    RfMatrix w(basis.size(), basis.size());
    DiagramSeries rest(lg.ideg_cap(), lg.kdeg2_cap());
    for (const auto& [key, term] : lg.terms()) {
        const Diagram& d = term.repr;
        if (d.n_triv == 0 && d.legs.size() == 2 && d.edges.size() == 1 &&
            !d.legs[0].on_skeleton && !d.legs[1].on_skeleton && colors.count(d.legs[0].color) &&
            colors.count(d.legs[1].color)) {
            // strut i -> j with label P contributes c*P to W_ij (doubled on the diagonal)
            const DEdge& e = d.edges[0];
            size_t i = index[d.legs[e.a.v].color];
            size_t j = index[d.legs[e.b.v].color];
            RatFunc contrib = e.label * RatFunc(term.coeff);
            if (i == j) {
                w.at(i, i) += contrib + contrib.bar();
            } else {
                w.at(i, j) += contrib;
                w.at(j, i) += contrib.bar();
            }
            continue;
        }
        rest.add_canonical(term.coeff, CanonicalForm{key, term.repr, 1, false});
    }
    StrutDecomposition out{w, basis, exp_disjoint(rest)};
    // verify the recomposition
    DiagramSeries ws(lg.ideg_cap(), lg.kdeg2_cap());
    Skeleton sk = series_skeleton(gg);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            if (w.at(i, j).is_zero()) continue;
            Diagram strut;
            strut.skel = sk;
            strut.legs = {Leg::colored(basis[i]), Leg::colored(basis[j])};
            strut.edges.push_back({End::at_leg(0), End::at_leg(1), w.at(i, j)});
            ws.add_series(gauge_normalize_term(Rational(1, 2), strut, ws.ideg_cap(), kcap));
        }
    DiagramSeries recomposed = mul_disjoint(exp_disjoint(ws), out.h);
    if (!(recomposed == gg)) throw math_error("strut_split: input is not Gaussian");
    return out;
}

DiagramSeries integrate(const DiagramSeries& g, const std::set<std::string>& colors) {
    StrutDecomposition sd = strut_split(g, colors);
    if (sd.w.det().is_zero()) throw math_error("DegenerateGaussian: det W = 0");
    RfMatrix winv = sd.w.inverse();
    // cap strut powers by the S-leg count of H
    int maxlegs = 0;
    for (const auto& [k, t] : sd.h.terms()) {
        int n = 0;
        for (const auto& l : t.repr.legs)
            if (!l.on_skeleton && colors.count(l.color)) ++n;
        maxlegs = std::max(maxlegs, n);
    }
    Skeleton empty_sk;
    DiagramSeries ws(g.ideg_cap(), 2 * maxlegs);
    for (size_t i = 0; i < sd.basis.size(); ++i)
        for (size_t j = 0; j < sd.basis.size(); ++j) {
            if (winv.at(i, j).is_zero()) continue;
            Diagram strut;
            strut.skel = empty_sk;
            strut.legs = {Leg::colored(sd.basis[i]), Leg::colored(sd.basis[j])};
            strut.edges.push_back({End::at_leg(0), End::at_leg(1), winv.at(i, j)});
            ws.add_series(
                gauge_normalize_term(Rational(-1, 2), strut, ws.ideg_cap(), ws.kdeg2_cap()));
        }
    DiagramSeries kernel = exp_disjoint(ws);
    // match skeletons for the bracket
    if (!(series_skeleton(sd.h) == empty_sk)) {
        DiagramSeries fixed(kernel.ideg_cap(), kernel.kdeg2_cap());
        for (const auto& [k, t] : kernel.terms()) {
            Diagram d = t.repr;
            d.skel = series_skeleton(sd.h);
            fixed.add(t.coeff, d);
        }
        kernel = fixed;
    }
    DiagramSeries result = bracket(kernel, sd.h.with_caps(g.ideg_cap(), -1), colors);
    return result.with_caps(g.ideg_cap(), g.kdeg2_cap());
}

bool is_group_like(const DiagramSeries& s) {
    // compare the coproduct against the tensor square, truncating both sides
    // by the series caps on each factor's degrees combined
    std::map<std::pair<std::string, std::string>, Rational> lhs, rhs;
    auto add = [&](std::map<std::pair<std::string, std::string>, Rational>& m,
                   const std::string& a, const std::string& b, const Rational& c) {
        auto key = std::make_pair(a, b);
        auto it = m.find(key);
        Rational nv = (it == m.end() ? Rational() : it->second) + c;
        if (nv.is_zero()) {
            if (it != m.end()) m.erase(it);
        } else {
            m[key] = nv;
        }
    };
    for (const auto& [k, t] : s.terms()) {
        for (const auto& [l, r] : coproduct(t.repr))
            add(lhs, canonical_key(l), canonical_key(r), t.coeff);
    }
    for (const auto& [ka, ta] : s.terms())
        for (const auto& [kb, tb] : s.terms()) {
            if (ta.repr.i_degree() + tb.repr.i_degree() > s.ideg_cap()) continue;
            if (s.kdeg2_cap() >= 0 && ta.repr.kdeg2() + tb.repr.kdeg2() > s.kdeg2_cap()) continue;
            add(rhs, ka, kb, ta.coeff * tb.coeff);
        }
    // drop lhs pairs beyond the caps (the coproduct never exceeds them, но
    // the tensor square was truncated)
    return lhs == rhs;
}

}  // namespace kricker
