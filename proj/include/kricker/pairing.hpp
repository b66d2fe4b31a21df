#pragma once

#include "kricker/matrix.hpp"
#include "kricker/relations.hpp"
#include "kricker/series.hpp"

#include <set>
#include <string>
#include <vector>

namespace kricker {

/// exp with respect to disjoint union, truncated by the series caps. Strut
/// powers are unbounded in i-degree, so series with i-degree-0 terms require
/// a kdeg2 cap.
DiagramSeries exp_disjoint(const DiagramSeries& s);
/// Inverse of exp_disjoint; input must have coefficient 1 on the empty diagram.
DiagramSeries log_disjoint(const DiagramSeries& s);
/// Multiplicative inverse for the disjoint union product.
DiagramSeries inverse_disjoint(const DiagramSeries& s);

/// The gluing bracket <D,E>_S: sum over per-color bijections between the
/// S-legs of the two sides, composed edges labelled P(t)Q(t^-1). Throws when
/// both sides carry S-struts.
DiagramSeries bracket(const DiagramSeries& d, const DiagramSeries& e,
                      const std::set<std::string>& colors);

bool has_strut_in(const Diagram& d, const std::set<std::string>& colors);
bool has_strut_in(const DiagramSeries& s, const std::set<std::string>& colors);

/// chi_S: averages the orderings of S-colored legs onto fresh interval
/// components named by the colors.
DiagramSeries chi(const DiagramSeries& s, const std::set<std::string>& colors);
/// Exact formal inverse of chi on its image; on general series it inverts
/// modulo STU (explicit corrections are subtracted recursively).
DiagramSeries chi_inv(const DiagramSeries& s, const std::set<std::string>& colors);

enum class GlueMode { all_legs, some_legs };

/// Sum over pairings of colored legs, each glued pair (v,w) becoming an edge
/// labelled ell(v,w). all_legs keeps perfect pairings only.
DiagramSeries glue_with_form(const Diagram& d, const RfMatrix& ell,
                             const std::vector<std::string>& basis, GlueMode mode, int ideg_cap,
                             const Rational& pair_factor = Rational(1));

struct StrutDecomposition {
    RfMatrix w;                       // hermitian S-strut matrix
    std::vector<std::string> basis;   // row/column color names
    DiagramSeries h;                  // S-substantial factor
};

/// Writes a group-like G as exp_|_(W/2) |_| H with H S-substantial; throws a
/// math error when G has no such shape.
StrutDecomposition strut_split(const DiagramSeries& g, const std::set<std::string>& colors);

/// Formal Gaussian integration along S: <exp_|_(-W^{-1}/2), H>_S.
DiagramSeries integrate(const DiagramSeries& g, const std::set<std::string>& colors);

/// Coproduct-based group-likeness check up to the series caps.
bool is_group_like(const DiagramSeries& s);

}  // namespace kricker
