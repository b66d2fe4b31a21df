#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kricker/error.hpp"
#include "kricker/relations.hpp"

#include <random>

using namespace kricker;

static RatFunc rf(const std::string& s) { return RatFunc::parse(s); }

static Diagram tripod(const std::string& a, const std::string& b, const std::string& c) {
    Diagram d;
    d.n_triv = 1;
    d.legs = {Leg::colored(a), Leg::colored(b), Leg::colored(c)};
    for (int i = 0; i < 3; ++i)
        d.edges.push_back({End::at_triv(0, i), End::at_leg(i), RatFunc(1)});
    return d;
}

static DiagramSeries one_term(const Diagram& d, int icap, const Rational& c = Rational(1)) {
    DiagramSeries s(icap);
    s.add(c, d);
    return s;
}

TEST_CASE("LE expansion in gauge_normalize") {
    Diagram d;
    d.legs = {Leg::colored("u"), Leg::colored("v")};
    d.edges.push_back({End::at_leg(0), End::at_leg(1), rf("2*t+3")});
    DiagramSeries s = gauge_normalize_term(Rational(1), d, 2);
    CHECK(s.size() == 2);
    Diagram dt = d;
    dt.edges[0].label = rf("t");
    Diagram d1 = d;
    d1.edges[0].label = rf("1");
    CHECK(s.coeff_of(dt) == Rational(2));
    CHECK(s.coeff_of(d1) == Rational(3));
    // rational-function labels keep the scalar out front
    Diagram dr = d;
    dr.edges[0].label = rf("3/(1-t)");
    DiagramSeries sr = gauge_normalize_term(Rational(1), dr, 2);
    CHECK(sr.size() == 1);
    Diagram dr1 = d;
    dr1.edges[0].label = rf("1/(t-1)");
    CHECK(sr.coeff_of(dr1) == Rational(-3));
}

TEST_CASE("gauge_normalize is idempotent") {
    Diagram d;
    d.n_triv = 2;
    d.legs = {Leg::colored("s"), Leg::colored("s")};
    d.edges.push_back({End::at_triv(0, 0), End::at_triv(1, 0), rf("t^2-1")});
    d.edges.push_back({End::at_triv(0, 1), End::at_triv(1, 2), rf("t")});
    d.edges.push_back({End::at_triv(0, 2), End::at_leg(0), rf("1/(1-t)")});
    d.edges.push_back({End::at_triv(1, 1), End::at_leg(1), rf("t^-2")});
    DiagramSeries s1 = gauge_normalize_term(Rational(1), d, 3);
    DiagramSeries s2 = gauge_normalize(s1);
    CHECK(s1 == s2);
}

TEST_CASE("AS involution") {
    Diagram y = tripod("u", "v", "w");
    RelationInstance as{RelKind::AS};
    as.vertex = 0;
    DiagramSeries once = apply_relation(Rational(1), y, as, 2);
    CHECK(once.size() == 1);
    // applying AS twice returns the original term exactly
    const auto& t = once.terms().begin()->second;
    DiagramSeries twice = apply_relation(t.coeff, t.repr, as, 2);
    CHECK(twice == one_term(y, 2));
}

TEST_CASE("AS equality needs the sign") {
    Diagram y1 = tripod("u", "v", "w");
    Diagram y2 = tripod("u", "w", "v");
    CHECK(equal_mod_relations(one_term(y1, 2), one_term(y2, 2, Rational(-1))) == Ternary::yes);
    CHECK(equal_mod_relations(one_term(y1, 2), one_term(y2, 2)) == Ternary::no);
    CHECK(equal_mod_relations(one_term(y1, 2), one_term(y1, 2).scaled(Rational(2))) ==
          Ternary::no);
}

TEST_CASE("IHX instance reduces to zero") {
    // H-shaped diagram: two trivalent vertices joined by a 1-edge, four
    // distinct colored legs
    Diagram h;
    h.n_triv = 2;
    h.legs = {Leg::colored("a"), Leg::colored("b"), Leg::colored("c"), Leg::colored("d")};
    h.edges.push_back({End::at_triv(0, 0), End::at_triv(1, 0), rf("1")});
    h.edges.push_back({End::at_triv(0, 1), End::at_leg(0), rf("1")});
    h.edges.push_back({End::at_triv(0, 2), End::at_leg(1), rf("1")});
    h.edges.push_back({End::at_triv(1, 1), End::at_leg(2), rf("1")});
    h.edges.push_back({End::at_triv(1, 2), End::at_leg(3), rf("1")});
    RelationInstance ihx{RelKind::IHX};
    ihx.edge = 0;
    DiagramSeries rhs = apply_relation(Rational(1), h, ihx, 2);
    CHECK(rhs.size() == 2);
    CHECK(equal_mod_relations(one_term(h, 2), rhs) == Ternary::yes);
    // I - H + X itself is in the span
    DiagramSeries zero(2);
    DiagramSeries lhs = one_term(h, 2) - rhs;
    CHECK(equal_mod_relations(lhs, zero) == Ternary::yes);
}

TEST_CASE("STU on adjacent skeleton legs") {
    Skeleton sk = Skeleton::intervals({"K"});
    Diagram p;
    p.skel = sk;
    p.legs = {Leg::skeletal(0, 0), Leg::skeletal(0, 1), Leg::colored("x"), Leg::colored("y")};
    p.edges.push_back({End::at_leg(0), End::at_leg(2), rf("t")});
    p.edges.push_back({End::at_leg(1), End::at_leg(3), rf("t^2")});
    RelationInstance stu{RelKind::STU};
    stu.leg = 0;
    DiagramSeries rhs = apply_relation(Rational(1), p, stu, 2);
    CHECK(rhs.size() == 2);
    CHECK(equal_mod_relations(one_term(p, 2), rhs) == Ternary::yes);
}

TEST_CASE("hol gauge normal forms agree") {
    Diagram a = tripod("u", "v", "w");
    a.edges[0].label = rf("t");
    a.edges[1].label = rf("t");
    a.edges[2].label = rf("t");
    // all labels multiplied by t at the único vertex: same class as plain tripod
    CHECK(gauge_normalize_term(Rational(1), a, 2) ==
          gauge_normalize_term(Rational(1), tripod("u", "v", "w"), 2));
}

TEST_CASE("winding move keeps bracket class sane") {
    // strut s->s' labelled t: winding k=1 at s multiplies out-edge by t
    Diagram d;
    d.legs = {Leg::colored("s"), Leg::colored("s2")};
    d.edges.push_back({End::at_leg(0), End::at_leg(1), rf("t")});
    RelationInstance w{RelKind::Winding};
    w.color = "s";
    w.param = 1;
    DiagramSeries out = apply_relation(Rational(1), d, w, 2);
    Diagram e = d;
    e.edges[0].label = rf("t^2");
    CHECK(out == one_term(e, 2));
}

TEST_CASE("random relation round trips") {
    std::mt19937_64 rng(1234);
    Skeleton sk = Skeleton::intervals({"K"});
    for (int trial = 0; trial < 30; ++trial) {
        // random small diagram: a tripod pair with labels, some legs on skeleton
        Diagram d;
        d.skel = sk;
        d.n_triv = 2;
        d.legs = {Leg::skeletal(0, 0), Leg::skeletal(0, 1), Leg::colored("s"),
                  Leg::colored("s")};
        auto rl = [&]() {
            int k = (int)(rng() % 5) - 2;
            return RatFunc::t_power(k);
        };
        d.edges.push_back({End::at_triv(0, 0), End::at_triv(1, 0), rl()});
        d.edges.push_back({End::at_triv(0, 1), End::at_leg(0), rl()});
        d.edges.push_back({End::at_triv(0, 2), End::at_leg(2), rl()});
        d.edges.push_back({End::at_triv(1, 1), End::at_leg(1), rl()});
        d.edges.push_back({End::at_triv(1, 2), End::at_leg(3), rl()});
        DiagramSeries start = gauge_normalize_term(Rational(1), d, 3);
        // random chain of rewrites
        DiagramSeries cur = start;
        for (int step = 0; step < 4; ++step) {
            // pick a term and an applicable relation
            if (cur.is_zero()) break;
            size_t pick = rng() % cur.size();
            auto it = cur.terms().begin();
            std::advance(it, pick);
            Rational c = it->second.coeff;
            Diagram dd = it->second.repr;
            auto rels = enumerate_relations(dd, {"s"});
            if (rels.empty()) continue;
            RelationInstance inst = rels[rng() % rels.size()];
            DiagramSeries rewritten = apply_relation(c, dd, inst, 3);
            DiagramSeries next(cur.ideg_cap(), cur.kdeg2_cap());
            next.add_series(cur);
            next.add_series(one_term(dd, 3, c), Rational(-1));
            next.add_series(rewritten);
            cur = next;
        }
        EqOptions opt;
        opt.link_colors = {"s"};
        opt.depth = 6;
        CHECK(equal_mod_relations(start, cur, opt) == Ternary::yes);
    }
}

TEST_CASE("link relation figure instance") {
    // interval skeleton + circle skeleton, colors s (with link relations), s2
    Skeleton sk;
    sk.components.push_back({SkeletonComponent::Kind::interval, "K"});
    sk.components.push_back({SkeletonComponent::Kind::circle, "O"});
    Diagram d;
    d.skel = sk;
    d.n_triv = 1;
    d.legs = {Leg::skeletal(0, 0),  // interval leg to the Y vertex
              Leg::colored("s"),    // Y's s leg (label t)
              Leg::colored("s2"),   // Y's s' leg
              Leg::skeletal(1, 0),  // circle top -> * (s)
              Leg::skeletal(1, 1),  // circle lower-left -> s2 (label t^2)
              Leg::skeletal(1, 2),  // circle lower-right -> s
              Leg::colored("s"),    // the * leg
              Leg::colored("s2"), Leg::colored("s")};
    d.edges.push_back({End::at_triv(0, 0), End::at_leg(0), rf("1")});
    d.edges.push_back({End::at_triv(0, 1), End::at_leg(1), rf("t")});
    d.edges.push_back({End::at_triv(0, 2), End::at_leg(2), rf("1")});
    d.edges.push_back({End::at_leg(3), End::at_leg(6), rf("1")});
    d.edges.push_back({End::at_leg(4), End::at_leg(7), rf("t^2")});
    d.edges.push_back({End::at_leg(5), End::at_leg(8), rf("1")});
    d.validate();
    // the sum of the two gluings of * is zero in the quotient
    RelationInstance link{RelKind::Link};
    link.leg = 6;
    link.color = "s";
    DiagramSeries rhs = apply_relation(Rational(1), d, link, 3);
    // rhs = d + sum: so sum = rhs - d must be 0 mod relations
    DiagramSeries sum = rhs - gauge_normalize_term(Rational(1), d, 3);
    EqOptions opt;
    opt.link_colors = {"s"};
    CHECK(equal_mod_relations(sum, DiagramSeries(3), opt) == Ternary::yes);
    // and it is a genuinely nonzero sum of two diagrams before the quotient
    CHECK(sum.size() == 2);
    // without link relations the sum is not in the AS/IHX/STU span; a full
    // closure proof is expensive, so only assert it does not reduce
    EqOptions bare;
    CHECK(equal_mod_relations(sum.with_caps(2, -1), DiagramSeries(2), bare) != Ternary::yes);
}

TEST_CASE("indeterminate surfaced on tiny budget") {
    // an IHX rewrite needs one exploration step; with depth 0 the engine
    // must admit indeterminacy rather than claim inequality
    Diagram h;
    h.n_triv = 2;
    h.legs = {Leg::colored("a"), Leg::colored("b"), Leg::colored("c"), Leg::colored("d")};
    h.edges.push_back({End::at_triv(0, 0), End::at_triv(1, 0), RatFunc(1)});
    h.edges.push_back({End::at_triv(0, 1), End::at_leg(0), RatFunc(1)});
    h.edges.push_back({End::at_triv(0, 2), End::at_leg(1), RatFunc(1)});
    h.edges.push_back({End::at_triv(1, 1), End::at_leg(2), RatFunc(1)});
    h.edges.push_back({End::at_triv(1, 2), End::at_leg(3), RatFunc(1)});
    RelationInstance ihx{RelKind::IHX};
    ihx.edge = 0;
    DiagramSeries rhs = apply_relation(Rational(1), h, ihx, 2);
    EqOptions opt;
    opt.depth = 0;
    CHECK(equal_mod_relations(one_term(h, 2), rhs, opt) == Ternary::indeterminate);
    CHECK_THROWS_AS(equal_mod_relations_bool(one_term(h, 2), rhs, opt), Error);
}
