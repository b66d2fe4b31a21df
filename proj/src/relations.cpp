#include "kricker/relations.hpp"

#include "kricker/error.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>

namespace kricker {

std::string RelationInstance::str() const {
    static const char* names[] = {"AS",  "IHX",  "STU", "STUExpand", "LE",   "OR",
                                  "Hol", "HolW", "LV",  "Link",      "Winding"};
    std::string s = names[(int)kind];
    if (vertex >= 0) s += " v=" + std::to_string(vertex);
    if (edge >= 0) s += " e=" + std::to_string(edge);
    if (leg >= 0) s += " leg=" + std::to_string(leg);
    if (!color.empty()) s += " color=" + color;
    if (param) s += " k=" + std::to_string(param);
    return s;
}

DiagramSeries gauge_normalize_term(const Rational& coeff, const Diagram& d, int ideg_cap,
                                   int kdeg2_cap) {
    DiagramSeries out(ideg_cap, kdeg2_cap);
    if (coeff.is_zero() || !out.within_caps(d)) return out;
    struct Option {
        Rational c;
        RatFunc label;
    };
    std::vector<std::vector<Option>> choices;
    for (const auto& e : d.edges) {
        std::vector<Option> opts;
        if (e.label.is_laurent()) {
            LaurentPoly lp = e.label.to_laurent();
            for (const auto& [k, c] : lp.terms())
                opts.push_back({c, RatFunc::t_power(k)});
        } else {
            opts.push_back({e.label.scalar(), RatFunc::make(Rational(1), e.label.shift(),
                                                            e.label.num(), e.label.den())});
        }
        choices.push_back(std::move(opts));
    }
    std::vector<size_t> pick(choices.size(), 0);
    while (true) {
        Diagram t = d;
        Rational c = coeff;
        for (size_t i = 0; i < choices.size(); ++i) {
            const Option& o = choices[i][pick[i]];
            c *= o.c;
            t.edges[i].label = o.label;
        }
        out.add(c, t);
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return out;
}

DiagramSeries gauge_normalize(const DiagramSeries& s) {
    DiagramSeries out(s.ideg_cap(), s.kdeg2_cap());
    for (const auto& [k, t] : s.terms())
        out.add_series(gauge_normalize_term(t.coeff, t.repr, s.ideg_cap(), s.kdeg2_cap()));
    return out;
}

namespace {

int edge_at(const Diagram& d, int v, int port) {
    End p = End::at_triv(v, port);
    for (size_t i = 0; i < d.edges.size(); ++i)
        if (d.edges[i].a == p || d.edges[i].b == p) return (int)i;
    throw math_error("relations: unsaturated port");
}

int edge_at_leg(const Diagram& d, int leg) {
    End p = End::at_leg(leg);
    for (size_t i = 0; i < d.edges.size(); ++i)
        if (d.edges[i].a == p || d.edges[i].b == p) return (int)i;
    throw math_error("relations: dangling leg");
}

Diagram as_flip(const Diagram& d, int v) {
    Diagram r = d;
    for (auto& e : r.edges) {
        auto fix = [&](End& x) {
            if (x.triv && x.v == v && x.port > 0) x.port = 3 - x.port;
        };
        fix(e.a);
        fix(e.b);
    }
    return r;
}

// IHX at a central 1-labelled edge between distinct trivalent vertices.
// With I written u = (c,a,b), v = (c,g,dl) in cyclic order, the partners are
// H: u = (c,b,g), v = (c,dl,a) and X: u = (c,a,g), v = (c,dl,b); I = H - X.
struct IhxPair {
    Diagram h, x;
};

std::optional<IhxPair> ihx_at(const Diagram& d, int edge) {
    const DEdge& e = d.edges[edge];
    if (!e.a.triv || !e.b.triv || e.a.v == e.b.v) return std::nullopt;
    if (!e.label.is_one()) return std::nullopt;
    int u = e.a.v, v = e.b.v;
    int pu = e.a.port, pv = e.b.port;
    End ua = End::at_triv(u, (pu + 1) % 3), ub = End::at_triv(u, (pu + 2) % 3);
    End vg = End::at_triv(v, (pv + 1) % 3), vd = End::at_triv(v, (pv + 2) % 3);
    auto rewire4 = [&](End s1, End t1, End s2, End t2, End s3, End t3, End s4, End t4) {
        Diagram tmp = d;
        auto move_end = [&](Diagram& dd, End from, End to) {
            for (auto& ed : dd.edges) {
                if (ed.a == from) {
                    ed.a = to;
                    return;
                }
                if (ed.b == from) {
                    ed.b = to;
                    return;
                }
            }
            throw math_error("relations: ihx rewire failed");
        };
        // go through temporary port ids to avoid collisions
        move_end(tmp, s1, End::at_triv(s1.v, 100));
        move_end(tmp, s2, End::at_triv(s2.v, 101));
        move_end(tmp, s3, End::at_triv(s3.v, 102));
        move_end(tmp, s4, End::at_triv(s4.v, 103));
        move_end(tmp, End::at_triv(s1.v, 100), t1);
        move_end(tmp, End::at_triv(s2.v, 101), t2);
        move_end(tmp, End::at_triv(s3.v, 102), t3);
        move_end(tmp, End::at_triv(s4.v, 103), t4);
        return tmp;
    };
    // H: outer ends (a,b,g,dl) attach to slots u+1<-b, u+2<-g, v+1<-dl, v+2<-a
    Diagram h = rewire4(ub, ua, vg, ub, vd, vg, ua, vd);
    // X: u+1<-a, u+2<-g, v+1<-dl, v+2<-b
    Diagram x = rewire4(ua, ua, vg, ub, vd, vg, ub, vd);
    return IhxPair{h, x};
}

// STU contraction of adjacent skeleton legs (low at pos p, high at p+1).
// New trivalent vertex w with cyclic order (skeleton edge, lower branch,
// upper branch); connecting edge labelled 1 oriented off the skeleton.
std::optional<Diagram> stu_contract(const Diagram& d, int leg_low) {
    if (leg_low < 0 || leg_low >= (int)d.legs.size()) return std::nullopt;
    const Leg& low = d.legs[leg_low];
    if (!low.on_skeleton) return std::nullopt;
    int comp = low.at.component, p = low.at.pos;
    auto on = d.legs_on_component(comp);
    if (p + 1 >= (int)on.size()) return std::nullopt;
    int leg_high = on[p + 1];
    if (!d.beads.empty() && d.beads[comp][p + 1] != 0) return std::nullopt;
    Diagram r;
    r.skel = d.skel;
    r.n_triv = d.n_triv + 1;
    int w = d.n_triv;
    std::vector<int> lmap(d.legs.size(), -1);
    for (size_t i = 0; i < d.legs.size(); ++i) {
        if ((int)i == leg_low || (int)i == leg_high) continue;
        Leg l = d.legs[i];
        if (l.on_skeleton && l.at.component == comp && l.at.pos > p + 1) l.at.pos -= 1;
        lmap[i] = (int)r.legs.size();
        r.legs.push_back(l);
    }
    int newleg = (int)r.legs.size();
    r.legs.push_back(Leg::skeletal(comp, p));
    for (const auto& e : d.edges) {
        auto remap = [&](const End& x) -> End {
            if (x.triv) return x;
            if (x.v == leg_low) return End::at_triv(w, 1);
            if (x.v == leg_high) return End::at_triv(w, 2);
            return End::at_leg(lmap[x.v]);
        };
        r.edges.push_back({remap(e.a), remap(e.b), e.label});
    }
    r.edges.push_back({End::at_leg(newleg), End::at_triv(w, 0), RatFunc(1)});
    if (!d.beads.empty()) {
        r.beads = d.beads;
        auto& b = r.beads[comp];
        b.erase(b.begin() + p + 1);
    }
    return r;
}

Diagram swap_adjacent(const Diagram& d, int leg_low) {
    const Leg& low = d.legs[leg_low];
    int comp = low.at.component, p = low.at.pos;
    auto on = d.legs_on_component(comp);
    int leg_high = on[p + 1];
    Diagram r = d;
    r.legs[leg_low].at.pos = p + 1;
    r.legs[leg_high].at.pos = p;
    return r;
}

// STU resolution at a trivalent vertex attached to the skeleton by a
// 1-labelled edge: (parallel, crossed).
std::optional<std::pair<Diagram, Diagram>> stu_expand(const Diagram& d, int w) {
    for (int ps = 0; ps < 3; ++ps) {
        int ei;
        try {
            ei = edge_at(d, w, ps);
        } catch (const Error&) {
            return std::nullopt;
        }
        const DEdge& e = d.edges[ei];
        End other = (e.a == End::at_triv(w, ps)) ? e.b : e.a;
        if (other.triv || !d.legs[other.v].on_skeleton || !e.label.is_one()) continue;
        int skleg = other.v;
        int comp = d.legs[skleg].at.component, p = d.legs[skleg].at.pos;
        auto build = [&](bool crossed) {
            Diagram r;
            r.skel = d.skel;
            r.n_triv = d.n_triv - 1;
            std::vector<int> tmap(d.n_triv, -1);
            int tn = 0;
            for (int v = 0; v < d.n_triv; ++v)
                if (v != w) tmap[v] = tn++;
            std::vector<int> lmap(d.legs.size(), -1);
            for (size_t i = 0; i < d.legs.size(); ++i) {
                if ((int)i == skleg) continue;
                Leg l = d.legs[i];
                if (l.on_skeleton && l.at.component == comp && l.at.pos > p) l.at.pos += 1;
                lmap[i] = (int)r.legs.size();
                r.legs.push_back(l);
            }
            int leg_lo = (int)r.legs.size();
            r.legs.push_back(Leg::skeletal(comp, crossed ? p + 1 : p));
            int leg_hi = (int)r.legs.size();
            r.legs.push_back(Leg::skeletal(comp, crossed ? p : p + 1));
            for (size_t i = 0; i < d.edges.size(); ++i) {
                if ((int)i == ei) continue;
                auto remap = [&](const End& x) -> End {
                    if (x.triv && x.v == w) {
                        if (x.port == (ps + 1) % 3) return End::at_leg(leg_lo);
                        return End::at_leg(leg_hi);
                    }
                    if (x.triv) return End::at_triv(tmap[x.v], x.port);
                    return End::at_leg(lmap[x.v]);
                };
                r.edges.push_back({remap(d.edges[i].a), remap(d.edges[i].b), d.edges[i].label});
            }
            if (!d.beads.empty()) {
                r.beads = d.beads;
                auto& b = r.beads[comp];
                b.insert(b.begin() + p + 1, 0);
            }
            return r;
        };
        return std::make_pair(build(false), build(true));
    }
    return std::nullopt;
}

// Link-relation gluing: attach the * leg onto the edge adjacent to leg u,
// just before u. The far part keeps its label; the near part toward u is
// labelled 1; the new vertex has cyclic order (far, *, near).
Diagram link_glue(const Diagram& d, int star, int u) {
    Diagram r;
    r.skel = d.skel;
    r.n_triv = d.n_triv + 1;
    int w = d.n_triv;
    std::vector<int> lmap(d.legs.size(), -1);
    for (size_t i = 0; i < d.legs.size(); ++i) {
        if ((int)i == star) continue;
        lmap[i] = (int)r.legs.size();
        r.legs.push_back(d.legs[i]);
    }
    int eu = edge_at_leg(d, u);
    int estar = edge_at_leg(d, star);
    for (size_t i = 0; i < d.edges.size(); ++i) {
        const DEdge& e = d.edges[i];
        auto remap = [&](const End& x) -> End {
            if (x.triv) return x;
            return End::at_leg(lmap[x.v]);
        };
        if (eu == estar && (int)i == eu) {
            // the * edge ends at u itself: gluing makes a tadpole at w
            bool toward_u = e.b == End::at_leg(u);
            if (toward_u) {
                r.edges.push_back({End::at_triv(w, 1), End::at_triv(w, 0), e.label});
                r.edges.push_back({End::at_triv(w, 2), End::at_leg(lmap[u]), RatFunc(1)});
            } else {
                r.edges.push_back({End::at_triv(w, 0), End::at_triv(w, 1), e.label});
                r.edges.push_back({End::at_leg(lmap[u]), End::at_triv(w, 2), RatFunc(1)});
            }
        } else if ((int)i == eu) {
            bool toward_u = e.b == End::at_leg(u);
            End far = toward_u ? e.a : e.b;
            if (toward_u) {
                r.edges.push_back({remap(far), End::at_triv(w, 0), e.label});
                r.edges.push_back({End::at_triv(w, 2), End::at_leg(lmap[u]), RatFunc(1)});
            } else {
                r.edges.push_back({End::at_triv(w, 0), remap(far), e.label});
                r.edges.push_back({End::at_leg(lmap[u]), End::at_triv(w, 2), RatFunc(1)});
            }
        } else if ((int)i == estar) {
            bool toward_star = e.b == End::at_leg(star);
            End far = toward_star ? e.a : e.b;
            if (toward_star)
                r.edges.push_back({remap(far), End::at_triv(w, 1), e.label});
            else
                r.edges.push_back({End::at_triv(w, 1), remap(far), e.label});
        } else {
            r.edges.push_back({remap(e.a), remap(e.b), e.label});
        }
    }
    return r;
}

// Inverses of link gluings: reconstruct the anchor diagram of any link
// relation one of whose glued outputs is d. A gluing site is a trivalent
// vertex w with cyclic order (far, *, near) whose near edge is 1-labelled
// and ends at a leg colored in link_colors.
std::vector<Diagram> unglue_anchors(const Diagram& d, const std::set<std::string>& link_colors) {
    std::vector<Diagram> out;
    for (int w = 0; w < d.n_triv; ++w) {
        for (int pn = 0; pn < 3; ++pn) {
            int en = -1, efar = -1, estar = -1;
            for (size_t i = 0; i < d.edges.size(); ++i) {
                const DEdge& e = d.edges[i];
                if (e.a == End::at_triv(w, pn) || e.b == End::at_triv(w, pn)) en = (int)i;
                if (e.a == End::at_triv(w, (pn + 1) % 3) || e.b == End::at_triv(w, (pn + 1) % 3))
                    efar = (int)i;
                if (e.a == End::at_triv(w, (pn + 2) % 3) || e.b == End::at_triv(w, (pn + 2) % 3))
                    estar = (int)i;
            }
            if (en < 0 || efar < 0 || estar < 0) continue;
            if (en == efar || en == estar) continue;
            const DEdge& ne = d.edges[en];
            End uleg = ne.a == End::at_triv(w, pn) ? ne.b : ne.a;
            if (uleg.triv || d.legs[uleg.v].on_skeleton) continue;
            if (!link_colors.count(d.legs[uleg.v].color)) continue;
            if (!ne.label.is_one()) continue;
            if (efar == estar) {
                // the far and * ends form a loop at w (glued tadpole)
                const DEdge& le = d.edges[efar];
                Diagram a;
                a.skel = d.skel;
                a.n_triv = d.n_triv - 1;
                std::vector<int> tmap(d.n_triv, -1);
                int tn = 0;
                for (int v = 0; v < d.n_triv; ++v)
                    if (v != w) tmap[v] = tn++;
                a.legs = d.legs;
                int star = (int)a.legs.size();
                a.legs.push_back(Leg::colored(d.legs[uleg.v].color));
                a.beads = d.beads;
                auto remap = [&](const End& x) -> End {
                    if (x.triv) return End::at_triv(tmap[x.v], x.port);
                    return x;
                };
                for (size_t i = 0; i < d.edges.size(); ++i) {
                    if ((int)i == en || (int)i == efar) continue;
                    a.edges.push_back({remap(d.edges[i].a), remap(d.edges[i].b), d.edges[i].label});
                }
                bool b_at_far = le.b == End::at_triv(w, (pn + 1) % 3);
                if (b_at_far) a.edges.push_back({End::at_leg(star), uleg, le.label});
                else a.edges.push_back({uleg, End::at_leg(star), le.label});
                out.push_back(std::move(a));
                continue;
            }
            // rebuild the anchor: drop w, merge far+near into one edge toward
            // the u leg, reattach the * edge to a fresh leg of the same color
            Diagram a;
            a.skel = d.skel;
            a.n_triv = d.n_triv - 1;
            std::vector<int> tmap(d.n_triv, -1);
            int tn = 0;
            for (int v = 0; v < d.n_triv; ++v)
                if (v != w) tmap[v] = tn++;
            a.legs = d.legs;
            int star = (int)a.legs.size();
            a.legs.push_back(Leg::colored(d.legs[uleg.v].color));
            a.beads = d.beads;
            auto remap = [&](const End& x) -> End {
                if (x.triv) return End::at_triv(tmap[x.v], x.port);
                return x;
            };
            const DEdge& fe = d.edges[efar];
            bool far_into_w = fe.b == End::at_triv(w, (pn + 1) % 3);
            End far_other = far_into_w ? fe.a : fe.b;
            const DEdge& se = d.edges[estar];
            bool star_into_w = se.b == End::at_triv(w, (pn + 2) % 3);
            End star_other = star_into_w ? se.a : se.b;
            if (far_other.triv && far_other.v == w) continue;
            if (star_other.triv && star_other.v == w) continue;
            for (size_t i = 0; i < d.edges.size(); ++i) {
                if ((int)i == en || (int)i == efar || (int)i == estar) continue;
                a.edges.push_back({remap(d.edges[i].a), remap(d.edges[i].b), d.edges[i].label});
            }
            if (far_into_w) a.edges.push_back({remap(far_other), uleg, fe.label});
            else a.edges.push_back({uleg, remap(far_other), fe.label});
            if (star_into_w) a.edges.push_back({remap(star_other), End::at_leg(star), se.label});
            else a.edges.push_back({End::at_leg(star), remap(star_other), se.label});
            out.push_back(std::move(a));
        }
    }
    return out;
}

Diagram winding_move(const Diagram& d, const std::string& color, int k) {
    Diagram r = d;
    for (auto& e : r.edges) {
        int mult = 0;
        if (!e.a.triv && !d.legs[e.a.v].on_skeleton && d.legs[e.a.v].color == color) mult += k;
        if (!e.b.triv && !d.legs[e.b.v].on_skeleton && d.legs[e.b.v].color == color) mult -= k;
        if (mult) e.label = e.label * RatFunc::t_power(mult);
    }
    return r;
}

Diagram hol_move(const Diagram& d, int v, int k) {
    Diagram r = d;
    for (auto& e : r.edges) {
        int mult = 0;
        if (e.a.triv && e.a.v == v) mult += k;
        if (e.b.triv && e.b.v == v) mult -= k;
        if (mult) e.label = e.label * RatFunc::t_power(mult);
    }
    return r;
}

}  // namespace

DiagramSeries apply_relation(const Rational& coeff, const Diagram& d, const RelationInstance& r,
                             int ideg_cap, int kdeg2_cap) {
    DiagramSeries out(ideg_cap, kdeg2_cap);
    switch (r.kind) {
        case RelKind::AS: {
            if (r.vertex < 0 || r.vertex >= d.n_triv) throw math_error("AS: bad vertex");
            out.add_series(gauge_normalize_term(-coeff, as_flip(d, r.vertex), ideg_cap, kdeg2_cap));
            return out;
        }
        case RelKind::IHX: {
            auto hx = ihx_at(d, r.edge);
            if (!hx) throw math_error("IHX: inapplicable edge");
            out.add_series(gauge_normalize_term(coeff, hx->h, ideg_cap, kdeg2_cap));
            out.add_series(gauge_normalize_term(-coeff, hx->x, ideg_cap, kdeg2_cap));
            return out;
        }
        case RelKind::STU: {
            auto c = stu_contract(d, r.leg);
            if (!c) throw math_error("STU: inapplicable legs");
            out.add_series(gauge_normalize_term(coeff, *c, ideg_cap, kdeg2_cap));
            out.add_series(
                gauge_normalize_term(coeff, swap_adjacent(d, r.leg), ideg_cap, kdeg2_cap));
            return out;
        }
        case RelKind::STUExpand: {
            auto px = stu_expand(d, r.vertex);
            if (!px) throw math_error("STU: vertex not skeleton-adjacent via a 1-edge");
            out.add_series(gauge_normalize_term(coeff, px->first, ideg_cap, kdeg2_cap));
            out.add_series(gauge_normalize_term(-coeff, px->second, ideg_cap, kdeg2_cap));
            return out;
        }
        case RelKind::Link: {
            if (r.leg < 0 || r.leg >= (int)d.legs.size() || d.legs[r.leg].on_skeleton)
                throw math_error("Link: bad * leg");
            std::string color = d.legs[r.leg].color;
            out.add_series(gauge_normalize_term(coeff, d, ideg_cap, kdeg2_cap));
            for (size_t u = 0; u < d.legs.size(); ++u) {
                if ((int)u == r.leg || d.legs[u].on_skeleton || d.legs[u].color != color) continue;
                out.add_series(
                    gauge_normalize_term(coeff, link_glue(d, r.leg, (int)u), ideg_cap, kdeg2_cap));
            }
            return out;
        }
        case RelKind::Winding: {
            out.add_series(gauge_normalize_term(coeff, winding_move(d, r.color, r.param), ideg_cap,
                                                kdeg2_cap));
            return out;
        }
        case RelKind::Hol: {
            out.add_series(
                gauge_normalize_term(coeff, hol_move(d, r.vertex, r.param), ideg_cap, kdeg2_cap));
            return out;
        }
        case RelKind::OR: {
            Diagram t = d;
            std::swap(t.edges[r.edge].a, t.edges[r.edge].b);
            t.edges[r.edge].label = t.edges[r.edge].label.bar();
            out.add_series(gauge_normalize_term(coeff, t, ideg_cap, kdeg2_cap));
            return out;
        }
        case RelKind::LE: {
            const RatFunc& l = d.edges[r.edge].label;
            if (!l.is_laurent()) throw math_error("LE: non-Laurent label");
            LaurentPoly p = l.to_laurent();
            if (p.terms().size() < 2) {
                out.add_series(gauge_normalize_term(coeff, d, ideg_cap, kdeg2_cap));
                return out;
            }
            auto [k0, c0] = *p.terms().begin();
            Diagram t1 = d, t2 = d;
            t1.edges[r.edge].label = RatFunc::from_laurent(LaurentPoly::monomial(c0, k0));
            t2.edges[r.edge].label = RatFunc::from_laurent(p - LaurentPoly::monomial(c0, k0));
            out.add_series(gauge_normalize_term(coeff, t1, ideg_cap, kdeg2_cap));
            out.add_series(gauge_normalize_term(coeff, t2, ideg_cap, kdeg2_cap));
            return out;
        }
        case RelKind::HolW:
        case RelKind::LV:
            throw math_error("apply_relation: kind handled during construction, not rewriting");
    }
    throw math_error("apply_relation: bad kind");
}

std::optional<Diagram> stu_contract_at(const Diagram& d, int leg_low) {
    return stu_contract(d, leg_low);
}

Diagram swap_adjacent_legs(const Diagram& d, int leg_low) { return swap_adjacent(d, leg_low); }

std::vector<RelationInstance> enumerate_relations(const Diagram& d,
                                                  const std::set<std::string>& link_colors) {
    std::vector<RelationInstance> out;
    for (int v = 0; v < d.n_triv; ++v) {
        RelationInstance r{RelKind::AS};
        r.vertex = v;
        out.push_back(r);
    }
    for (size_t e = 0; e < d.edges.size(); ++e) {
        if (ihx_at(d, (int)e)) {
            RelationInstance r{RelKind::IHX};
            r.edge = (int)e;
            out.push_back(r);
        }
    }
    for (size_t l = 0; l < d.legs.size(); ++l) {
        if (!d.legs[l].on_skeleton) continue;
        if (stu_contract(d, (int)l)) {
            RelationInstance r{RelKind::STU};
            r.leg = (int)l;
            out.push_back(r);
        }
    }
    for (int v = 0; v < d.n_triv; ++v) {
        if (stu_expand(d, v)) {
            RelationInstance r{RelKind::STUExpand};
            r.vertex = v;
            out.push_back(r);
        }
    }
    for (size_t l = 0; l < d.legs.size(); ++l) {
        if (d.legs[l].on_skeleton || !link_colors.count(d.legs[l].color)) continue;
        RelationInstance r{RelKind::Link};
        r.leg = (int)l;
        r.color = d.legs[l].color;
        out.push_back(r);
    }
    return out;
}

namespace {

IntPoly lcm_poly(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    IntPoly g = IntPoly::gcd(a, b);
    return (a * b).divide_exact(g).primitive_part();
}

// rewrite every label as a Q-combination of atoms t^j / D
DiagramSeries atomize(const DiagramSeries& s, const IntPoly& d_lcm) {
    DiagramSeries out(s.ideg_cap(), s.kdeg2_cap());
    for (const auto& [key, term] : s.terms()) {
        struct Option {
            Rational c;
            RatFunc label;
        };
        std::vector<std::vector<Option>> choices;
        for (const auto& e : term.repr.edges) {
            std::vector<Option> opts;
            if (d_lcm.is_one() && e.label.den().is_one()) {
                LaurentPoly lp = e.label.to_laurent();
                for (const auto& [k, c] : lp.terms())
                    opts.push_back({c, RatFunc::t_power(k)});
            } else {
                // everything over the common denominator so that LE-linear
                // dependences across labels become coordinatewise
                IntPoly mult = d_lcm.divide_exact(e.label.den());
                IntPoly numext = e.label.num() * mult;
                for (int i = 0; i <= numext.degree(); ++i) {
                    if (numext.coeff(i) == 0) continue;
                    opts.push_back(
                        {e.label.scalar() * Rational(numext.coeff(i)),
                         RatFunc::make(Rational(1), e.label.shift() + i, IntPoly(Int(1)), d_lcm)});
                }
            }
            choices.push_back(std::move(opts));
        }
        std::vector<size_t> pick(choices.size(), 0);
        while (true) {
            Diagram t = term.repr;
            Rational c = term.coeff;
            for (size_t i = 0; i < choices.size(); ++i) {
                c *= choices[i][pick[i]].c;
                t.edges[i].label = choices[i][pick[i]].label;
            }
            out.add(c, t);
            size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < choices[i].size()) break;
                pick[i] = 0;
            }
            if (i == pick.size()) break;
        }
    }
    return out;
}

using SparseVec = std::map<int, Rational>;

struct RowReducer {
    std::map<int, SparseVec> rows;  // pivot column -> row

    SparseVec reduce(SparseVec v) const {
        while (!v.empty()) {
            int p = v.begin()->first;
            auto it = rows.find(p);
            if (it == rows.end()) return v;
            Rational f = v.begin()->second / it->second.at(p);
            for (const auto& [c, x] : it->second) {
                auto vt = v.find(c);
                Rational nv = (vt == v.end() ? Rational() : vt->second) - f * x;
                if (nv.is_zero()) {
                    if (vt != v.end()) v.erase(vt);
                } else {
                    v[c] = nv;
                }
            }
        }
        return v;
    }

    void insert(SparseVec v) {
        v = reduce(std::move(v));
        if (!v.empty()) rows.emplace(v.begin()->first, std::move(v));
    }
};

}  // namespace

Ternary equal_mod_relations(const DiagramSeries& a, const DiagramSeries& b, const EqOptions& opt) {
    int icap = std::min(a.ideg_cap(), b.ideg_cap());
    int kcap = a.kdeg2_cap() < 0
                   ? b.kdeg2_cap()
                   : (b.kdeg2_cap() < 0 ? a.kdeg2_cap() : std::min(a.kdeg2_cap(), b.kdeg2_cap()));
    DiagramSeries diff(icap, kcap);
    diff.add_series(gauge_normalize(a.with_caps(icap, kcap)));
    diff.add_series(gauge_normalize(b.with_caps(icap, kcap)), Rational(-1));
    if (diff.is_zero()) return Ternary::yes;

    // common denominator over the difference, closed under the bar involution
    IntPoly d_lcm(Int(1));
    for (const auto& [k, t] : diff.terms())
        for (const auto& e : t.repr.edges)
            if (!e.label.den().is_one()) d_lcm = lcm_poly(d_lcm, e.label.den());
    {
        IntPoly rev = d_lcm.reversed().primitive_part();
        if (!rev.is_zero() && rev.leading() < 0) rev = -rev;
        d_lcm = lcm_poly(d_lcm, rev);
    }
    diff = atomize(diff, d_lcm);
    if (diff.is_zero()) return Ternary::yes;

    struct Entry {
        Diagram repr;
        int depth;
        bool expanded = false;
    };
    std::map<std::string, Entry> universe;
    std::map<std::string, int> colindex;
    bool overflow = false;

    auto intern = [&](const std::string& key, const Diagram& repr, int depth) {
        auto it = universe.find(key);
        if (it == universe.end()) {
            universe.emplace(key, Entry{repr, depth, false});
            colindex.emplace(key, (int)colindex.size());
        }
    };

    for (const auto& [k, t] : diff.terms()) intern(k, t.repr, 0);

    RowReducer rr;
    auto series_to_vec = [&](const DiagramSeries& s, int depth) {
        SparseVec v;
        for (const auto& [k, t] : s.terms()) {
            intern(k, t.repr, depth);
            int col = colindex[k];
            Rational nv = (v.count(col) ? v[col] : Rational()) + t.coeff;
            if (nv.is_zero()) v.erase(col);
            else v[col] = nv;
        }
        return v;
    };
    auto target_reduces = [&]() {
        SparseVec target;
        for (const auto& [k, t] : diff.terms()) target[colindex[k]] = t.coeff;
        return rr.reduce(std::move(target)).empty();
    };

    // iterative deepening: expand one level at a time and retest, so that
    // positive answers do not pay for the full universe
    for (int level = 0; level < opt.depth && !overflow; ++level) {
        std::vector<std::string> frontier;
        for (const auto& [k, e] : universe)
            if (!e.expanded && e.depth == level) frontier.push_back(k);
        if (frontier.empty()) break;
        for (const auto& key : frontier) {
            if (universe.size() > opt.max_universe) {
                overflow = true;
                break;
            }
            Diagram d;
            {
                Entry& ent = universe[key];
                if (ent.expanded) continue;
                ent.expanded = true;
                d = ent.repr;
            }
            for (const auto& inst : enumerate_relations(d, opt.link_colors)) {
                DiagramSeries vec(icap, kcap);
                CanonicalForm self{key, d, 1, false};
                switch (inst.kind) {
                    case RelKind::AS: {
                        vec.add_canonical(Rational(1), self);
                        vec.add_series(
                            gauge_normalize_term(Rational(1), as_flip(d, inst.vertex), icap, kcap));
                        break;
                    }
                    case RelKind::IHX: {
                        auto hx = ihx_at(d, inst.edge);
                        vec.add_canonical(Rational(1), self);
                        vec.add_series(gauge_normalize_term(Rational(-1), hx->h, icap, kcap));
                        vec.add_series(gauge_normalize_term(Rational(1), hx->x, icap, kcap));
                        break;
                    }
                    case RelKind::STU: {
                        auto c = stu_contract(d, inst.leg);
                        vec.add_series(gauge_normalize_term(Rational(1), *c, icap, kcap));
                        vec.add_canonical(Rational(-1), self);
                        vec.add_series(gauge_normalize_term(Rational(1), swap_adjacent(d, inst.leg),
                                                            icap, kcap));
                        break;
                    }
                    case RelKind::STUExpand: {
                        auto px = stu_expand(d, inst.vertex);
                        vec.add_canonical(Rational(1), self);
                        vec.add_series(gauge_normalize_term(Rational(-1), px->first, icap, kcap));
                        vec.add_series(gauge_normalize_term(Rational(1), px->second, icap, kcap));
                        break;
                    }
                    case RelKind::Link: {
                        for (size_t u = 0; u < d.legs.size(); ++u) {
                            if ((int)u == inst.leg || d.legs[u].on_skeleton ||
                                d.legs[u].color != inst.color)
                                continue;
                            vec.add_series(gauge_normalize_term(
                                Rational(1), link_glue(d, inst.leg, (int)u), icap, kcap));
                        }
                        break;
                    }
                    default:
                        continue;
                }
                if (vec.is_zero()) continue;
                rr.insert(series_to_vec(vec, level + 1));
            }
            if (!opt.link_colors.empty()) {
                for (const auto& anchor : unglue_anchors(d, opt.link_colors)) {
                    DiagramSeries s = gauge_normalize_term(Rational(1), anchor, icap, kcap);
                    for (const auto& [k2, t2] : s.terms()) intern(k2, t2.repr, level + 1);
                }
            }
        }
        if (target_reduces()) return Ternary::yes;
        if (getenv("KRICKER_EQ_DEBUG"))
            fprintf(stderr, "equal_mod level %d: universe %zu\n", level, universe.size());
    }

    if (target_reduces()) return Ternary::yes;
    if (overflow) return Ternary::indeterminate;
    bool closed = true;
    for (const auto& [k, e] : universe)
        if (!e.expanded) closed = false;
    return closed ? Ternary::no : Ternary::indeterminate;
}

bool equal_mod_relations_bool(const DiagramSeries& a, const DiagramSeries& b,
                              const EqOptions& opt) {
    Ternary t = equal_mod_relations(a, b, opt);
    if (t == Ternary::indeterminate)
        throw indeterminate_error("equal_mod_relations: universe bound exceeded");
    return t == Ternary::yes;
}

}  // namespace kricker
