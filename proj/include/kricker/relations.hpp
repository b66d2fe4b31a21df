#pragma once

#include "kricker/series.hpp"

#include <optional>
#include <set>

namespace kricker {

enum class RelKind { AS, IHX, STU, STUExpand, LE, OR, Hol, HolW, LV, Link, Winding };

/// A relation applied at a concrete site of a diagram.
struct RelationInstance {
    RelKind kind;
    int vertex = -1;     // AS / Hol / STUExpand
    int edge = -1;       // IHX / OR / LE
    int leg = -1;        // STU: lower leg; Link: the distinguished * leg
    std::string color;   // Link / Winding
    int param = 0;       // Winding and Hol exponent k
    std::string str() const;
};

/// Per-term normalization: canonical form (OR orientations, Hol gauge, Hol_w
/// bead pushing) plus the LE step: Laurent labels split into monomial terms,
/// rational-function labels keep a scalar-1 label with the scalar moved into
/// the coefficient. Formal color sums (LV) never reach this layer; they are
/// expanded where diagrams are built.
DiagramSeries gauge_normalize_term(const Rational& coeff, const Diagram& d, int ideg_cap,
                                   int kdeg2_cap = -1);
DiagramSeries gauge_normalize(const DiagramSeries& s);

/// The series the given term is equal to under the relation instance.
DiagramSeries apply_relation(const Rational& coeff, const Diagram& d, const RelationInstance& r,
                             int ideg_cap, int kdeg2_cap = -1);

/// All relation sites applicable to d (AS, IHX, STU both directions, Link for
/// flagged colors; Winding/Hol/OR with param 1 as gauge moves).
std::vector<RelationInstance> enumerate_relations(const Diagram& d,
                                                  const std::set<std::string>& link_colors);

/// STU contraction of the adjacent skeleton-leg pair starting at leg_low
/// (nullopt when inapplicable), and the position swap of that pair. The
/// contraction C satisfies C = D - swap(D) in the quotient.
std::optional<Diagram> stu_contract_at(const Diagram& d, int leg_low);
Diagram swap_adjacent_legs(const Diagram& d, int leg_low);

enum class Ternary { yes, no, indeterminate };

struct EqOptions {
    int depth = 4;              // universe exploration depth
    size_t max_universe = 20000;
    std::set<std::string> link_colors;
};

/// Decides a == b in the quotient by AS, IHX, STU, LE, OR, Hol, Hol_w and
/// link relations for the flagged colors, up to the series' i-degree cap.
/// Membership of a-b in the relation span is decided by exact row reduction
/// over a bounded universe of diagrams; indeterminate when the universe
/// cannot be closed within the caps.
Ternary equal_mod_relations(const DiagramSeries& a, const DiagramSeries& b,
                            const EqOptions& opt = {});
/// Same, but throws an indeterminate error instead of returning it.
bool equal_mod_relations_bool(const DiagramSeries& a, const DiagramSeries& b,
                              const EqOptions& opt = {});

}  // namespace kricker
