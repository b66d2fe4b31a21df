#pragma once

#include "kricker/ratfunc.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kricker {

struct SkeletonComponent {
    enum class Kind { interval, circle };
    Kind kind = Kind::interval;
    std::string id;
    friend bool operator==(const SkeletonComponent&, const SkeletonComponent&) = default;
};

struct Skeleton {
    std::vector<SkeletonComponent> components;
    int index_of(const std::string& id) const;
    bool empty() const { return components.empty(); }
    friend bool operator==(const Skeleton&, const Skeleton&) = default;
    static Skeleton intervals(const std::vector<std::string>& ids);
    static Skeleton circles(const std::vector<std::string>& ids);
    std::string str() const;
};

/// Attachment point on the skeleton: ordinal position along the component
/// (for circles, counted from the base point).
struct SkelPoint {
    int component = -1;
    int pos = 0;
    auto operator<=>(const SkelPoint&) const = default;
};

/// Univalent vertex: either embedded in the skeleton or colored.
struct Leg {
    bool on_skeleton = false;
    SkelPoint at;
    std::string color;
    static Leg colored(std::string c) {
        Leg l;
        l.color = std::move(c);
        return l;
    }
    static Leg skeletal(int component, int pos) {
        Leg l;
        l.on_skeleton = true;
        l.at = {component, pos};
        return l;
    }
    friend bool operator==(const Leg&, const Leg&) = default;
};

/// One endpoint of an edge: a port of a trivalent vertex (ports 0,1,2 in
/// cyclic order) or a univalent vertex.
struct End {
    bool triv = false;
    int v = 0;
    int port = 0;
    auto operator<=>(const End&) const = default;
    static End at_triv(int v, int port) { return {true, v, port}; }
    static End at_leg(int v) { return {false, v, 0}; }
};

struct DEdge {
    End a, b;  // oriented a -> b
    RatFunc label;
};

/// Beaded Jacobi diagram. Trivalent vertices are anonymous indices with
/// cyclic port order; univalent vertices are Legs. Edge labels live in Q(t).
/// Winding variant: beads[c][s] is the t-exponent of skeleton segment s of
/// component c (segment 0 precedes the first leg; intervals have one trailing
/// segment, circles are cut at the base point).
struct Diagram {
    Skeleton skel;
    int n_triv = 0;
    std::vector<Leg> legs;
    std::vector<DEdge> edges;
    std::vector<std::vector<int>> beads;  // empty = no beads anywhere

    int i_degree() const { return n_triv; }
    /// Twice the Kontsevich degree: total vertex count.
    int kdeg2() const { return n_triv + (int)legs.size(); }
    bool has_beads() const;
    bool empty() const { return n_triv == 0 && legs.empty(); }

    void validate() const;  // throws on malformed structure

    std::vector<int> legs_on_component(int c) const;  // leg indices sorted by pos
    int count_color_legs(const std::string& color) const;
    std::set<std::string> colors() const;

    /// Connected components of the graph part; each entry lists vertex ids
    /// (trivalent as t-index, legs as n_triv + leg-index).
    std::vector<std::vector<int>> graph_components() const;

    /// Restriction to a subset of graph components (legs keep absolute
    /// skeleton positions; beads of dropped legs merge into neighbors).
    Diagram restrict_components(const std::vector<std::vector<int>>& comps,
                                const std::vector<int>& take) const;

    void ensure_beads();
    /// Insert a skeleton leg at (component, pos), shifting later positions.
    int insert_skel_leg(int component, int pos);
    void relabel_colors(const std::map<std::string, std::string>& m);
};

/// Disjoint union over a shared skeleton. At most one operand may carry legs
/// or beads on any given skeleton component.
Diagram disjoint_union(const Diagram& a, const Diagram& b);

struct CanonicalForm {
    std::string key;
    Diagram repr;    // canonically numbered, OR/Hol gauge fixed, beads pushed
    int sign = 1;    // input = sign * repr modulo AS
    bool zero = false;  // an odd automorphism kills the diagram (AS)
};

/// Canonical form up to graph isomorphism (respecting skeleton attachment
/// and colors), the OR/Hol/Hol_w gauges, and the AS relation: reflections of
/// trivalent vertices are folded in with a sign, and diagrams with an odd
/// automorphism canonicalize to zero.
CanonicalForm canonical_form(const Diagram& d);
std::string canonical_key(const Diagram& d);

std::string diagram_str(const Diagram& d);

}  // namespace kricker
