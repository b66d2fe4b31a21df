#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kricker/series.hpp"

#include <random>

using namespace kricker;

static RatFunc rf(const std::string& s) { return RatFunc::parse(s); }

// theta graph: vertices u, v joined by three parallel edges with the given
// labels, all oriented u -> v; cyclic orders (0,1,2) at u and (0,1,2) at v
// matched edge-by-edge in reversed order at v (planar embedding).
static Diagram theta(const RatFunc& l0, const RatFunc& l1, const RatFunc& l2) {
    Diagram d;
    d.n_triv = 2;
    d.edges.push_back({End::at_triv(0, 0), End::at_triv(1, 2), l0});
    d.edges.push_back({End::at_triv(0, 1), End::at_triv(1, 1), l1});
    d.edges.push_back({End::at_triv(0, 2), End::at_triv(1, 0), l2});
    return d;
}

static Diagram tripod(const std::string& a, const std::string& b, const std::string& c) {
    Diagram d;
    d.n_triv = 1;
    d.legs = {Leg::colored(a), Leg::colored(b), Leg::colored(c)};
    for (int i = 0; i < 3; ++i)
        d.edges.push_back({End::at_triv(0, i), End::at_leg(i), RatFunc(1)});
    return d;
}

static Diagram strut(const std::string& a, const std::string& b, const RatFunc& l) {
    Diagram d;
    d.legs = {Leg::colored(a), Leg::colored(b)};
    d.edges.push_back({End::at_leg(0), End::at_leg(1), l});
    return d;
}

TEST_CASE("i_degree") {
    CHECK(strut("u", "v", rf("t")).i_degree() == 0);
    CHECK(tripod("u", "v", "w").i_degree() == 1);
    CHECK(theta(rf("1"), rf("1"), rf("t")).i_degree() == 2);
}

TEST_CASE("validate catches malformed diagrams") {
    Diagram d = tripod("u", "v", "w");
    d.validate();
    Diagram bad = d;
    bad.edges[0].b = End::at_leg(1);
    CHECK_THROWS(bad.validate());
    Diagram zero = strut("u", "v", RatFunc());
    CHECK_THROWS(zero.validate());
}

TEST_CASE("canonical key invariance under relabeling") {
    Diagram t1 = theta(rf("1"), rf("1"), rf("t"));
    // same theta with vertices written in the other order and edges permuted
    Diagram t2;
    t2.n_triv = 2;
    t2.edges.push_back({End::at_triv(1, 1), End::at_triv(0, 1), rf("1")});
    t2.edges.push_back({End::at_triv(1, 2), End::at_triv(0, 0), rf("t")});
    t2.edges.push_back({End::at_triv(1, 0), End::at_triv(0, 2), rf("1")});
    CHECK(canonical_key(t1) == canonical_key(t2));
}

TEST_CASE("labels distinguish") {
    CHECK(canonical_key(theta(rf("1"), rf("1"), rf("t"))) !=
          canonical_key(theta(rf("1"), rf("1"), rf("1"))));
}

TEST_CASE("hol gauge invariance of keys") {
    // multiply all three edge labels at vertex 0 (all outgoing) by t
    Diagram a = theta(rf("1"), rf("1"), rf("t"));
    Diagram b = theta(rf("t"), rf("t"), rf("t^2"));
    CHECK(canonical_key(a) == canonical_key(b));
    // OR: flip one edge and bar its label
    Diagram c = a;
    std::swap(c.edges[2].a, c.edges[2].b);
    c.edges[2].label = c.edges[2].label.bar();
    CHECK(canonical_key(a) == canonical_key(c));
}

TEST_CASE("cyclic order of tripods folds into the AS sign") {
    Diagram a = tripod("u", "v", "w");
    // swap two legs: (u,w,v) is a reflection; same key, opposite sign
    Diagram b = tripod("u", "w", "v");
    auto ca = canonical_form(a), cb = canonical_form(b);
    CHECK(ca.key == cb.key);
    CHECK(ca.sign == -cb.sign);
    CHECK_FALSE(ca.zero);
    // rotations identify with the same sign
    Diagram c;
    c.n_triv = 1;
    c.legs = {Leg::colored("v"), Leg::colored("w"), Leg::colored("u")};
    for (int i = 0; i < 3; ++i)
        c.edges.push_back({End::at_triv(0, i), End::at_leg(i), RatFunc(1)});
    auto cc = canonical_form(c);
    CHECK(ca.key == cc.key);
    CHECK(ca.sign == cc.sign);
    // a tripod with two equal colors dies by AS
    CHECK(canonical_form(tripod("s", "s", "x")).zero);
    // brute-force confirmation on the nonzero one: series arithmetic sees
    // the reflection as -1
    DiagramSeries s(2);
    s.add(Rational(1), a);
    s.add(Rational(1), b);
    CHECK(s.is_zero());
}

TEST_CASE("key stability under random permutations") {
    std::mt19937_64 rng(41);
    Diagram base;
    base.n_triv = 3;
    base.legs = {Leg::colored("s"), Leg::colored("s"), Leg::colored("u")};
    base.edges.push_back({End::at_triv(0, 0), End::at_triv(1, 0), rf("t")});
    base.edges.push_back({End::at_triv(1, 1), End::at_triv(2, 0), rf("1-t")});
    base.edges.push_back({End::at_triv(2, 1), End::at_triv(0, 1), rf("1")});
    base.edges.push_back({End::at_triv(0, 2), End::at_leg(0), rf("t^2")});
    base.edges.push_back({End::at_triv(1, 2), End::at_leg(1), rf("1")});
    base.edges.push_back({End::at_triv(2, 2), End::at_leg(2), rf("t^-1")});
    std::string key = canonical_key(base);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> tp = {0, 1, 2}, lp = {0, 1, 2};
        std::shuffle(tp.begin(), tp.end(), rng);
        std::shuffle(lp.begin(), lp.end(), rng);
        int rot[3] = {(int)(rng() % 3), (int)(rng() % 3), (int)(rng() % 3)};
        Diagram d = base;
        d.legs.clear();
        for (int i = 0; i < 3; ++i) d.legs.push_back(base.legs[0]);
        for (int i = 0; i < 3; ++i) d.legs[lp[i]] = base.legs[i];
        for (auto& e : d.edges) {
            auto mape = [&](End x) {
                if (x.triv) return End::at_triv(tp[x.v], (x.port + rot[x.v]) % 3);
                return End::at_leg(lp[x.v]);
            };
            e.a = mape(e.a);
            e.b = mape(e.b);
            if (rng() % 2) {
                std::swap(e.a, e.b);
                e.label = e.label.bar();
            }
        }
        std::shuffle(d.edges.begin(), d.edges.end(), rng);
        CHECK(canonical_key(d) == key);
    }
}

TEST_CASE("skeleton legs and beads") {
    Skeleton sk = Skeleton::intervals({"K"});
    Diagram d;
    d.skel = sk;
    d.legs = {Leg::skeletal(0, 0), Leg::skeletal(0, 1)};
    d.edges.push_back({End::at_leg(0), End::at_leg(1), rf("t")});
    d.validate();
    // bead below leg 0 pushes across both legs (x t on the out-edge, x t^-1 on
    // the in-edge) and cancels against the -1 bead at the top
    Diagram b = d;
    b.beads = {{1, 0, -1}};
    CHECK(canonical_key(b) == canonical_key(d));
    // bead between the legs: only the in-edge factor applies
    Diagram c = d;
    c.beads = {{0, 1, -1}};
    Diagram c2 = d;
    c2.edges[0].label = rf("1");
    CHECK(canonical_key(c) == canonical_key(c2));
    // beads in terminal segment are residual, not removable
    Diagram e = d;
    e.beads = {{0, 0, 2}};
    CHECK(canonical_key(e) != canonical_key(d));
}

TEST_CASE("series accumulation and truncation") {
    DiagramSeries s(1);
    s.add(Rational(1), tripod("u", "v", "w"));
    s.add(Rational(2), tripod("u", "v", "w"));
    CHECK(s.size() == 1);
    CHECK(s.coeff_of(tripod("u", "v", "w")) == Rational(3));
    s.add(Rational(-3), tripod("u", "v", "w"));
    CHECK(s.is_zero());
    s.add(Rational(1), theta(rf("1"), rf("1"), rf("t")));  // over cap, dropped
    CHECK(s.is_zero());
}

TEST_CASE("disjoint union on series") {
    DiagramSeries a(2), b(2);
    a.add(Rational(1), tripod("u", "v", "w"));
    b.add(Rational(1), tripod("u", "v", "w"));
    DiagramSeries p = mul_disjoint(a, b);
    CHECK(p.size() == 1);
    // commutative, and unit works
    Diagram empty;
    DiagramSeries u = DiagramSeries::unit(Skeleton(), 2);
    CHECK(mul_disjoint(u, a) == a);
    CHECK(mul_disjoint(a, b) == mul_disjoint(b, a));
    // truncation: Y | Y at cap 1 -> dropped
    DiagramSeries a1 = a.with_caps(1, -1);
    CHECK(mul_disjoint(a1, a1).is_zero());
}

TEST_CASE("coproduct") {
    Diagram y = tripod("u", "v", "w");
    auto cp = coproduct(y);
    CHECK(cp.size() == 2);  // connected: (empty, D), (D, empty)
    Diagram two = disjoint_union(y, strut("a", "b", rf("t")));
    CHECK(coproduct(two).size() == 4);
}
