#include "kricker/diagram.hpp"

#include "kricker/error.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>

namespace kricker {

int Skeleton::index_of(const std::string& id) const {
    for (size_t i = 0; i < components.size(); ++i)
        if (components[i].id == id) return (int)i;
    return -1;
}

Skeleton Skeleton::intervals(const std::vector<std::string>& ids) {
    Skeleton s;
    for (const auto& id : ids) s.components.push_back({SkeletonComponent::Kind::interval, id});
    return s;
}

Skeleton Skeleton::circles(const std::vector<std::string>& ids) {
    Skeleton s;
    for (const auto& id : ids) s.components.push_back({SkeletonComponent::Kind::circle, id});
    return s;
}

std::string Skeleton::str() const {
    std::string s;
    for (const auto& c : components) {
        s += c.kind == SkeletonComponent::Kind::interval ? "I:" : "O:";
        s += c.id;
        s += ";";
    }
    return s;
}

bool Diagram::has_beads() const {
    for (const auto& b : beads)
        for (int e : b)
            if (e != 0) return true;
    return false;
}

void Diagram::validate() const {
    std::set<std::pair<int, int>> ports;
    std::set<int> used_legs;
    auto touch = [&](const End& e) {
        if (e.triv) {
            if (e.v < 0 || e.v >= n_triv || e.port < 0 || e.port > 2)
                throw math_error("diagram: bad trivalent end");
            if (!ports.insert({e.v, e.port}).second)
                throw math_error("diagram: port used twice");
        } else {
            if (e.v < 0 || e.v >= (int)legs.size()) throw math_error("diagram: bad leg end");
            if (!used_legs.insert(e.v).second) throw math_error("diagram: leg used twice");
        }
    };
    for (const auto& e : edges) {
        touch(e.a);
        touch(e.b);
        if (e.label.is_zero()) throw math_error("diagram: zero edge label");
    }
    if ((int)ports.size() != 3 * n_triv) throw math_error("diagram: unsaturated trivalent vertex");
    if (used_legs.size() != legs.size()) throw math_error("diagram: dangling leg");
    if (!beads.empty() && beads.size() != skel.components.size())
        throw math_error("diagram: bead vector size");
    for (size_t c = 0; c < skel.components.size(); ++c) {
        auto on = legs_on_component((int)c);
        for (size_t i = 0; i < on.size(); ++i)
            if (legs[on[i]].at.pos != (int)i)
                throw math_error("diagram: non-dense skeleton positions");
        if (!beads.empty() && beads[c].size() != on.size() + 1)
            throw math_error("diagram: bead segment count");
    }
    for (const auto& l : legs)
        if (l.on_skeleton &&
            (l.at.component < 0 || l.at.component >= (int)skel.components.size()))
            throw math_error("diagram: leg on missing skeleton component");
}

std::vector<int> Diagram::legs_on_component(int c) const {
    std::vector<int> r;
    for (size_t i = 0; i < legs.size(); ++i)
        if (legs[i].on_skeleton && legs[i].at.component == c) r.push_back((int)i);
    std::sort(r.begin(), r.end(), [&](int x, int y) { return legs[x].at.pos < legs[y].at.pos; });
    return r;
}

int Diagram::count_color_legs(const std::string& color) const {
    int n = 0;
    for (const auto& l : legs)
        if (!l.on_skeleton && l.color == color) ++n;
    return n;
}

std::set<std::string> Diagram::colors() const {
    std::set<std::string> r;
    for (const auto& l : legs)
        if (!l.on_skeleton) r.insert(l.color);
    return r;
}

std::vector<std::vector<int>> Diagram::graph_components() const {
    int n = n_triv + (int)legs.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto id = [&](const End& e) { return e.triv ? e.v : n_triv + e.v; };
    for (const auto& e : edges) parent[find(id(e.a))] = find(id(e.b));
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> r;
    for (auto& [k, v] : groups) r.push_back(std::move(v));
    return r;
}

void Diagram::ensure_beads() {
    if (beads.empty()) {
        beads.resize(skel.components.size());
        for (size_t c = 0; c < skel.components.size(); ++c)
            beads[c].assign(legs_on_component((int)c).size() + 1, 0);
    }
}

int Diagram::insert_skel_leg(int component, int pos) {
    for (auto& l : legs)
        if (l.on_skeleton && l.at.component == component && l.at.pos >= pos) ++l.at.pos;
    if (!beads.empty()) {
        auto& b = beads[component];
        b.insert(b.begin() + pos + 1, 0);
    }
    legs.push_back(Leg::skeletal(component, pos));
    return (int)legs.size() - 1;
}

void Diagram::relabel_colors(const std::map<std::string, std::string>& m) {
    for (auto& l : legs) {
        if (l.on_skeleton) continue;
        auto it = m.find(l.color);
        if (it != m.end()) l.color = it->second;
    }
}

Diagram Diagram::restrict_components(const std::vector<std::vector<int>>& comps,
                                     const std::vector<int>& take) const {
    std::vector<bool> keep_vertex(n_triv + legs.size(), false);
    for (int ci : take)
        for (int v : comps[ci]) keep_vertex[v] = true;
    Diagram r;
    r.skel = skel;
    std::vector<int> tmap(n_triv, -1), lmap(legs.size(), -1);
    for (int v = 0; v < n_triv; ++v)
        if (keep_vertex[v]) tmap[v] = r.n_triv++;
    r.beads.assign(skel.components.size(), {});
    for (size_t c = 0; c < skel.components.size(); ++c) {
        auto on = legs_on_component((int)c);
        std::vector<int> newpos(on.size());
        int p = 0;
        for (size_t i = 0; i < on.size(); ++i)
            newpos[i] = keep_vertex[n_triv + on[i]] ? p++ : -1;
        std::vector<int> nb(p + 1, 0);
        int seg = 0;
        std::vector<int> ob =
            beads.empty() ? std::vector<int>(on.size() + 1, 0) : beads[c];
        for (size_t i = 0; i <= on.size(); ++i) {
            nb[seg] += ob[i];
            if (i < on.size() && newpos[i] >= 0) ++seg;
        }
        r.beads[c] = std::move(nb);
        for (size_t i = 0; i < on.size(); ++i) {
            if (newpos[i] < 0) continue;
            lmap[on[i]] = (int)r.legs.size();
            r.legs.push_back(Leg::skeletal((int)c, newpos[i]));
        }
    }
    for (size_t li = 0; li < legs.size(); ++li) {
        if (!keep_vertex[n_triv + li] || legs[li].on_skeleton) continue;
        lmap[li] = (int)r.legs.size();
        r.legs.push_back(legs[li]);
    }
    auto remap = [&](const End& e) {
        return e.triv ? End::at_triv(tmap[e.v], e.port) : End::at_leg(lmap[e.v]);
    };
    for (const auto& e : edges) {
        int ida = e.a.triv ? e.a.v : n_triv + e.a.v;
        if (!keep_vertex[ida]) continue;
        r.edges.push_back({remap(e.a), remap(e.b), e.label});
    }
    if (!r.has_beads()) r.beads.clear();
    return r;
}

Diagram disjoint_union(const Diagram& a, const Diagram& b) {
    if (!(a.skel == b.skel)) throw math_error("disjoint_union: skeleton mismatch");
    for (size_t c = 0; c < a.skel.components.size(); ++c) {
        auto touches = [c](const Diagram& d) {
            if (!d.legs_on_component((int)c).empty()) return true;
            if (d.beads.empty()) return false;
            for (int x : d.beads[c])
                if (x != 0) return true;
            return false;
        };
        if (touches(a) && touches(b))
            throw math_error("disjoint_union: both operands touch skeleton component " +
                             a.skel.components[c].id);
    }
    Diagram r = a;
    int toff = r.n_triv;
    int loff = (int)r.legs.size();
    r.n_triv += b.n_triv;
    for (const auto& l : b.legs) r.legs.push_back(l);
    for (const auto& e : b.edges) {
        auto sh = [&](const End& x) {
            return x.triv ? End::at_triv(x.v + toff, x.port) : End::at_leg(x.v + loff);
        };
        r.edges.push_back({sh(e.a), sh(e.b), e.label});
    }
    if (b.has_beads()) {
        r.ensure_beads();
        for (size_t c = 0; c < r.beads.size(); ++c) {
            bool bb = false;
            for (int x : b.beads[c])
                if (x) bb = true;
            if (bb) r.beads[c] = b.beads[c];
        }
    }
    if (!r.has_beads()) r.beads.clear();
    return r;
}

std::string diagram_str(const Diagram& d) {
    std::string s = "{skel=" + d.skel.str() + " T=" + std::to_string(d.n_triv) + " legs=[";
    for (const auto& l : d.legs) {
        if (l.on_skeleton)
            s += "s" + std::to_string(l.at.component) + "." + std::to_string(l.at.pos);
        else
            s += l.color;
        s += ",";
    }
    s += "] edges=[";
    for (const auto& e : d.edges) {
        auto es = [](const End& x) {
            return (x.triv ? "t" : "l") + std::to_string(x.v) +
                   (x.triv ? ":" + std::to_string(x.port) : "");
        };
        s += es(e.a) + ">" + es(e.b) + "=" + e.label.str() + ",";
    }
    s += "]";
    if (d.has_beads()) {
        s += " beads=";
        for (const auto& b : d.beads) {
            s += "(";
            for (int x : b) s += std::to_string(x) + ",";
            s += ")";
        }
    }
    return s + "}";
}

// ---------- canonical form ----------

namespace {

// Push every bead to the terminal segment of its component, adjusting leg
// edge labels by Hol_w on the way.
Diagram push_beads(const Diagram& input) {
    Diagram d = input;
    if (!d.has_beads()) {
        d.beads.clear();
        return d;
    }
    d.ensure_beads();
    for (size_t c = 0; c < d.skel.components.size(); ++c) {
        auto on = d.legs_on_component((int)c);
        auto& b = d.beads[c];
        for (size_t i = 0; i < on.size(); ++i) {
            int k = b[i];
            if (k == 0) continue;
            b[i] = 0;
            b[i + 1] += k;
            for (auto& e : d.edges) {
                if (e.a == End::at_leg(on[i])) e.label = e.label * RatFunc::t_power(k);
                if (e.b == End::at_leg(on[i])) e.label = e.label * RatFunc::t_power(-k);
            }
        }
    }
    if (!d.has_beads()) d.beads.clear();
    return d;
}

std::string label_invariant(const RatFunc& f) {
    RatFunc f0 = RatFunc::make(f.scalar(), 0, f.num(), f.den());
    std::string a = f0.str(), b = f0.bar().str();
    return a < b ? a : b;
}

struct CEdge {
    int ta, va, pa, tb, vb, pb;  // t: 0 = trivalent, 1 = leg
    RatFunc label;
};

// port permutations: 0..2 rotations (even), 3..5 reflections (odd)
inline int port_map(int m, int p) { return m < 3 ? (p - m + 3) % 3 : (m - p) % 3; }
inline int port_map_inv(int m, int q) { return m < 3 ? (q + m) % 3 : (m - q) % 3; }
inline int perm_sign(int m) { return m < 3 ? 1 : -1; }

struct ComponentCanon {
    const Diagram& d;
    std::vector<int> tverts, lverts, edge_ids;
    std::string best;
    Diagram best_repr;
    int best_sign = 1;
    bool have_best = false;
    bool zero = false;

    explicit ComponentCanon(const Diagram& dd) : d(dd) {}

    void try_numbering(const std::map<int, int>& newt, const std::map<int, int>& newl) {
        std::map<std::pair<int, int>, std::string> portkey;
        for (int ei : edge_ids) {
            const DEdge& e = d.edges[ei];
            auto addkey = [&](const End& self, const End& other) {
                if (!self.triv) return;
                std::string k;
                if (other.triv && other.v == self.v) k = "LOOP";
                else if (other.triv) k = "T" + std::to_string(newt.at(other.v));
                else k = "L" + std::to_string(newl.at(other.v));
                portkey[{self.v, self.port}] = k + "|" + label_invariant(e.label);
            };
            addkey(e.a, e.b);
            addkey(e.b, e.a);
        }
        std::vector<std::vector<int>> rot_choices(tverts.size());
        for (size_t i = 0; i < tverts.size(); ++i) {
            int v = tverts[i];
            std::array<std::string, 3> pk;
            for (int p = 0; p < 3; ++p) {
                auto it = portkey.find({v, p});
                pk[p] = it == portkey.end() ? std::string("?") : it->second;
            }
            std::string bestrot;
            for (int m = 0; m < 6; ++m) {
                std::string s = pk[port_map_inv(m, 0)] + "/" + pk[port_map_inv(m, 1)] + "/" +
                                pk[port_map_inv(m, 2)];
                if (bestrot.empty() || s < bestrot) bestrot = s;
            }
            for (int m = 0; m < 6; ++m) {
                std::string s = pk[port_map_inv(m, 0)] + "/" + pk[port_map_inv(m, 1)] + "/" +
                                pk[port_map_inv(m, 2)];
                if (s == bestrot) rot_choices[i].push_back(m);
            }
        }
        std::vector<int> combo(tverts.size(), 0);
        while (true) {
            encode(newt, newl, rot_choices, combo);
            size_t i = 0;
            for (; i < combo.size(); ++i) {
                if (++combo[i] < (int)rot_choices[i].size()) break;
                combo[i] = 0;
            }
            if (i == combo.size()) break;
        }
    }

    void encode(const std::map<int, int>& newt, const std::map<int, int>& newl,
                const std::vector<std::vector<int>>& rot_choices, const std::vector<int>& combo) {
        std::map<int, int> rot;
        int sign = 1;
        for (size_t i = 0; i < tverts.size(); ++i) {
            int m = rot_choices[i][combo[i]];
            rot[tverts[i]] = m;
            sign *= perm_sign(m);
        }
        auto cend = [&](const End& e) -> std::array<int, 3> {
            if (e.triv) return {0, newt.at(e.v), port_map(rot.at(e.v), e.port)};
            return {1, newl.at(e.v), 0};
        };
        std::vector<CEdge> ces;
        for (int ei : edge_ids) {
            const DEdge& e = d.edges[ei];
            auto A = cend(e.a), B = cend(e.b);
            RatFunc lab = e.label;
            if (B < A) {
                std::swap(A, B);
                lab = lab.bar();
            }
            ces.push_back({A[0], A[1], A[2], B[0], B[1], B[2], lab});
        }
        std::sort(ces.begin(), ces.end(), [](const CEdge& x, const CEdge& y) {
            return std::tie(x.ta, x.va, x.pa, x.tb, x.vb, x.pb) <
                   std::tie(y.ta, y.va, y.pa, y.tb, y.vb, y.pb);
        });
        // Hol gauge: each trivalent vertex v carries one t-power k_v; an edge
        // a->b picks up t^{k_a - k_b} over its trivalent ends. Fix the gauge
        // by zeroing valuations along a spanning forest of the internal
        // (trivalent-trivalent, non-loop) edges and spending the leftover
        // per-tree constant on the minimal boundary edge.
        int nt = (int)tverts.size(), nl = (int)lverts.size();
        (void)nl;
        if (nt > 0) {
            std::vector<std::vector<int>> tadj(nt);
            for (size_t i = 0; i < ces.size(); ++i)
                if (ces[i].ta == 0 && ces[i].tb == 0 && ces[i].va != ces[i].vb) {
                    tadj[ces[i].va].push_back((int)i);
                    tadj[ces[i].vb].push_back((int)i);
                }
            std::vector<int> k(nt, 0), seen(nt, 0);
            for (int root = 0; root < nt; ++root) {
                if (seen[root]) continue;
                seen[root] = 1;
                std::vector<int> order{root};
                for (size_t qi = 0; qi < order.size(); ++qi) {
                    int u = order[qi];
                    for (int ei : tadj[u]) {
                        const CEdge& e = ces[ei];
                        int w = e.va == u ? e.vb : e.va;
                        if (seen[w]) continue;
                        seen[w] = 1;
                        order.push_back(w);
                        // want val + k_a - k_b = 0 post-gauge
                        if (e.va == u) k[w] = e.label.shift() + k[u];
                        else k[w] = k[u] - e.label.shift();
                    }
                }
                // leftover constant: zero the first boundary edge of this tree
                int kappa = 0;
                bool found = false;
                std::set<int> invert(order.begin(), order.end());
                for (const auto& e : ces) {
                    bool at = e.ta == 0 && invert.count(e.va);
                    bool bt = e.tb == 0 && invert.count(e.vb);
                    if (at && (e.tb != 0)) {
                        kappa = -(e.label.shift() + k[e.va]);
                        found = true;
                        break;
                    }
                    if (bt && (e.ta != 0)) {
                        kappa = e.label.shift() - k[e.vb];
                        found = true;
                        break;
                    }
                }
                if (found)
                    for (int v : order) k[v] += kappa;
            }
            for (auto& e : ces) {
                int mult = 0;
                if (e.ta == 0) mult += k[e.va];
                if (e.tb == 0) mult -= k[e.vb];
                if (mult) e.label = e.label * RatFunc::t_power(mult);
            }
        }
        std::string s = "T" + std::to_string(nt) + ";";
        std::vector<int> legorder(nl);
        for (int li : lverts) legorder[newl.at(li)] = li;
        for (int li : legorder) {
            const Leg& l = d.legs[li];
            if (l.on_skeleton)
                s += "S" + std::to_string(l.at.component) + "." + std::to_string(l.at.pos) + ";";
            else
                s += "C" + l.color + ";";
        }
        for (const auto& e : ces)
            s += "(" + std::to_string(e.ta) + "," + std::to_string(e.va) + "," +
                 std::to_string(e.pa) + ")(" + std::to_string(e.tb) + "," + std::to_string(e.vb) +
                 "," + std::to_string(e.pb) + ")=" + e.label.str() + ";";
        if (have_best && s == best && sign != best_sign) {
            zero = true;  // odd automorphism: the class vanishes by AS
            return;
        }
        if (!have_best || s < best) {
            have_best = true;
            best = s;
            best_sign = sign;
            best_repr = Diagram();
            best_repr.n_triv = nt;
            best_repr.legs.resize(nl);
            for (int li : lverts) best_repr.legs[newl.at(li)] = d.legs[li];
            for (const auto& e : ces) {
                End A = e.ta == 0 ? End::at_triv(e.va, e.pa) : End::at_leg(e.va);
                End B = e.tb == 0 ? End::at_triv(e.vb, e.pb) : End::at_leg(e.vb);
                best_repr.edges.push_back({A, B, e.label});
            }
        }
    }
};

}  // namespace

CanonicalForm canonical_form(const Diagram& input) {
    Diagram d = push_beads(input);
    auto comps = d.graph_components();

    struct CompResult {
        std::string key;
        Diagram repr;
        int sign;
    };
    std::vector<CompResult> results;
    int total_sign = 1;

    for (const auto& comp : comps) {
        ComponentCanon cc(d);
        for (int v : comp) {
            if (v < d.n_triv) cc.tverts.push_back(v);
            else cc.lverts.push_back(v - d.n_triv);
        }
        std::set<int> inset(comp.begin(), comp.end());
        for (size_t ei = 0; ei < d.edges.size(); ++ei) {
            const auto& e = d.edges[ei];
            int ida = e.a.triv ? e.a.v : d.n_triv + e.a.v;
            if (inset.count(ida)) cc.edge_ids.push_back((int)ei);
        }

        std::vector<int> skel_legs, color_legs;
        for (int li : cc.lverts)
            (d.legs[li].on_skeleton ? skel_legs : color_legs).push_back(li);
        std::sort(skel_legs.begin(), skel_legs.end(),
                  [&](int x, int y) { return d.legs[x].at < d.legs[y].at; });

        // Weisfeiler-Leman style refinement to cut the numbering search:
        // stable vertex signatures partition trivalent vertices and color
        // legs into classes; only class-respecting numberings are explored.
        // vertex handle: trivalent index v, or -1-li for leg li
        auto initial_sig = [&](int h) -> std::string {
            if (h >= 0) return "T";
            const Leg& l = d.legs[-1 - h];
            if (l.on_skeleton)
                return "S" + std::to_string(l.at.component) + "." + std::to_string(l.at.pos);
            return "C" + l.color;
        };
        std::vector<int> handles;
        for (int v : cc.tverts) handles.push_back(v);
        for (int li : cc.lverts) handles.push_back(-1 - li);
        std::map<int, std::string> sig;
        for (int h : handles) sig[h] = initial_sig(h);
        auto end_handle = [&](const End& e) { return e.triv ? e.v : -1 - e.v; };
        for (int round = 0; round < (int)handles.size(); ++round) {
            std::map<int, std::string> next;
            for (int h : handles) {
                std::vector<std::string> nb;
                for (int ei : cc.edge_ids) {
                    const DEdge& e = d.edges[ei];
                    int ha = end_handle(e.a), hb = end_handle(e.b);
                    if (ha == h) nb.push_back(label_invariant(e.label) + "@" + sig[hb]);
                    if (hb == h) nb.push_back(label_invariant(e.label) + "@" + sig[ha]);
                }
                std::sort(nb.begin(), nb.end());
                std::string s = sig[h] + "[";
                for (const auto& x : nb) s += x + ",";
                next[h] = s + "]";
            }
            if (next == sig) break;
            sig = std::move(next);
        }
        // class blocks, trivalent and colored legs separately, ordered by signature
        std::map<std::string, std::vector<int>> tclasses, cclasses;
        for (int v : cc.tverts) tclasses[sig[v]].push_back(v);
        for (int li : color_legs) cclasses[sig[-1 - li]].push_back(li);

        std::vector<std::vector<int>> tblocks, cblocks;
        for (auto& [s, blk] : tclasses) tblocks.push_back(blk);
        for (auto& [s, blk] : cclasses) cblocks.push_back(blk);

        std::vector<int> tperm, cperm;
        auto rebuild = [&](const std::vector<std::vector<int>>& blocks, std::vector<int>& out) {
            out.clear();
            for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
        };
        auto next_block_perm = [](std::vector<std::vector<int>>& blocks) {
            for (auto& b : blocks)
                if (std::next_permutation(b.begin(), b.end())) return true;
            return false;
        };
        bool more_t = true;
        while (more_t) {
            rebuild(tblocks, tperm);
            std::vector<std::vector<int>> cb = cblocks;
            bool more_c = true;
            while (more_c) {
                rebuild(cb, cperm);
                std::map<int, int> newt, newl;
                for (size_t i = 0; i < tperm.size(); ++i) newt[tperm[i]] = (int)i;
                int li = 0;
                for (int sl : skel_legs) newl[sl] = li++;
                for (int sl : cperm) newl[sl] = li++;
                cc.try_numbering(newt, newl);
                more_c = next_block_perm(cb);
            }
            more_t = next_block_perm(tblocks);
        }
        if (cc.zero) {
            CanonicalForm z;
            z.zero = true;
            z.repr.skel = d.skel;
            return z;
        }
        results.push_back({cc.best, cc.best_repr, cc.best_sign});
        total_sign *= cc.best_sign;
    }

    std::sort(results.begin(), results.end(),
              [](const CompResult& a, const CompResult& b) { return a.key < b.key; });

    CanonicalForm out;
    out.sign = total_sign;
    out.repr.skel = d.skel;
    out.repr.beads = d.beads;
    std::string key = "K|" + d.skel.str() + "|";
    if (d.has_beads()) {
        for (const auto& b : d.beads) {
            key += "b";
            for (int x : b) key += std::to_string(x) + ",";
        }
    }
    for (const auto& r : results) {
        key += "#" + r.key;
        int toff = out.repr.n_triv, loff = (int)out.repr.legs.size();
        out.repr.n_triv += r.repr.n_triv;
        for (const auto& l : r.repr.legs) out.repr.legs.push_back(l);
        for (const auto& e : r.repr.edges) {
            auto sh = [&](const End& x) {
                return x.triv ? End::at_triv(x.v + toff, x.port) : End::at_leg(x.v + loff);
            };
            out.repr.edges.push_back({sh(e.a), sh(e.b), e.label});
        }
    }
    out.key = key;
    return out;
}

std::string canonical_key(const Diagram& d) { return canonical_form(d).key; }

}  // namespace kricker
