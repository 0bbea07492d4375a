/* simpcat/presheaf.hpp
 *
 * Explicit truncated presheaves: every simplex in every dimension up to a
 * working bound is materialized as a plain element, with tabulated face and
 * degeneracy actions.  This is the workhorse behind the binary constructions
 * (products, pushouts, pullbacks, covers built from representations): build
 * the construction elementwise, then `canonicalize` back to the non-degenerate
 * storage form by detecting degenerate elements (images of some s_i) and
 * computing Eilenberg–Zilber forms.  It also serves as the brute-force oracle
 * the EZ machinery is tested against.
 */

#pragma once

#include <string>
#include <vector>

#include "simpcat/sset.hpp"

namespace simpcat {

/// A functor on the ordinal category truncated at dimension `W`, tabulated.
struct ExplicitPresheaf {
    int W = 0;                 // top materialized dimension
    std::vector<int> card;     // card[n] = |X_n| for 0 <= n <= W
    // face[n][i][e]: the i-th face of element e of dimension n (1 <= n <= W)
    std::vector<std::vector<std::vector<int>>> face;
    // degen[n][i][e]: s_i of element e of dimension n (0 <= n < W)
    std::vector<std::vector<std::vector<int>>> degen;

    void init(int top);
    /// Spot-check the simplicial identities on the tables (exhaustive).
    bool check_identities(std::string* first_violation = nullptr) const;
};

/// Tabulate a stored simplicial set as an explicit presheaf up to dimension W
/// (elements of dimension n are indexed by the order of all_simplices(X, n)).
ExplicitPresheaf tabulate(const SimplicialSet& X, int W);

/// Index of a reference within all_simplices(X, n) — the element numbering
/// used by tabulate.
int ref_index(const SimplicialSet& X, const SimplexRef& s);

/// Result of canonicalization: the simplicial set plus, per dimension, the
/// EZ reference of every raw element (so callers can translate provenance
/// payloads attached to elements).
struct CanonResult {
    SimplicialSet sset;
    std::vector<std::vector<SimplexRef>> elt_ref;  // [n][e] -> ref in sset
    std::vector<std::vector<int>> nd_elt;          // [n][id] -> raw element index
};

/// Convert an explicit presheaf to non-degenerate storage.  `label` names the
/// non-degenerate simplex arising from raw element e of dimension n.
CanonResult canonicalize(const ExplicitPresheaf& P,
                         const std::function<std::string(int, int)>& label);

}  // namespace simpcat
