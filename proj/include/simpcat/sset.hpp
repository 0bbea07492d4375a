/* simpcat/sset.hpp
 *
 * Finite simplicial sets, stored by their non-degenerate simplices and face
 * incidences up to an explicit dimension cap.  Degenerate simplices are never
 * stored: every simplex is referenced in its Eilenberg–Zilber normal form, a
 * pair (surjection, non-degenerate base), which is unique.  The presheaf
 * action of an arbitrary weakly monotone map is computed by composing with
 * the reference's surjection, factoring epi-mono, walking stored faces along
 * the mono part and absorbing the epi part into the degeneracy.
 */

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simpcat/ordinal.hpp"

namespace simpcat {

/// Reference to a (possibly degenerate) simplex in EZ normal form:
/// the simplex equals degeneracy* applied to the non-degenerate simplex
/// `nd_index` of dimension `degeneracy.target_dim`.  `dim` is the dimension
/// of the referenced simplex itself (= degeneracy.source_dim).
struct SimplexRef {
    int dim = 0;
    int nd_index = 0;
    OrdinalMap degeneracy;  // surjection [dim] ->> [base dim]

    SimplexRef() : degeneracy(ordinal_identity(0)) {}
    SimplexRef(int d, int id, OrdinalMap deg) : dim(d), nd_index(id), degeneracy(std::move(deg)) {}

    int base_dim() const { return degeneracy.target_dim; }
    bool is_degenerate() const { return dim != base_dim(); }

    bool operator==(const SimplexRef&) const = default;
    auto operator<=>(const SimplexRef& o) const {
        if (auto c = dim <=> o.dim; c != 0) return c;
        if (auto c = base_dim() <=> o.base_dim(); c != 0) return c;
        if (auto c = nd_index <=> o.nd_index; c != 0) return c;
        return degeneracy.values <=> o.degeneracy.values;
    }

    std::string to_string() const;
};

/// Identity reference to the non-degenerate simplex `id` of dimension `d`.
inline SimplexRef nd_ref(int d, int id) { return SimplexRef(d, id, ordinal_identity(d)); }

/// A stored non-degenerate simplex: an optional label and, for dimension >= 1,
/// the array of its dim+1 faces (entry i is the i-th face, dimension dim-1).
struct NdSimplex {
    std::string label;
    std::vector<SimplexRef> faces;
};

/// A finite simplicial set truncated at dimension `cap`.
struct SimplicialSet {
    int cap = 0;
    std::vector<std::vector<NdSimplex>> nd;  // nd[d] = non-degenerate d-simplices

    int nd_count(int d) const {
        return d >= 0 && d < static_cast<int>(nd.size()) ? static_cast<int>(nd[static_cast<size_t>(d)].size())
                                                         : 0;
    }
    /// Top dimension that actually carries non-degenerate simplices.
    int top_dim() const;
    const NdSimplex& simplex(int d, int id) const { return nd[static_cast<size_t>(d)][static_cast<size_t>(id)]; }
    NdSimplex& simplex(int d, int id) { return nd[static_cast<size_t>(d)][static_cast<size_t>(id)]; }
    /// Counts of non-degenerate simplices per dimension 0..top_dim().
    std::vector<int> nd_counts() const;
    /// Index of the vertex with the given label, if present.
    std::optional<int> vertex_by_label(const std::string& label) const;
};

/// Outcome of structural validation: all face references in range, all
/// degeneracies genuine surjections, and the simplicial identity
/// d_i d_j = d_{j-1} d_i (i < j) on every stored simplex.
struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const SimplicialSet& X);

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// Δⁿ: non-degenerate k-simplices are the strictly increasing (k+1)-subsets
/// of {0..n}; cap = n.  Labels are the digit strings of the subsets.
SimplicialSet standard_simplex(int n);

/// ∂Δⁿ = skeleton(Δⁿ, n-1); cap = max(n-1, 0).  Requires n >= 1.
SimplicialSet boundary(int n);

/// Λⁿₖ: all faces of Δⁿ except the k-th, and their faces; cap = n-1.
SimplicialSet horn(int n, int k);

/// Spⁿ: the chain of consecutive edges 0→1→…→n; cap = max(1, …) = 1 for n>=1.
SimplicialSet spine(int n);

/// S¹ = Δ¹/∂Δ¹: one vertex, one non-degenerate edge; cap = 2 so that
/// 2-dimensional queries (fillers, fundamental-category relations) make sense.
SimplicialSet circle();

/// The walking retraction R: Δ¹ (edge i: 0→1) with a freely added left
/// inverse r: 1→0 and a 2-simplex witnessing r∘i = id₀; built by two pushouts
/// (glue an edge along its boundary, then glue Δ² along ∂Δ² onto (i, r, s⁰0)).
/// Counts: 2 vertices, 2 edges, 1 two-simplex; cap = 2.
SimplicialSet walking_retraction();

/// Copy with a different cap.  Raising the cap adds nothing (there are no
/// stored simplices above the old cap); lowering it discards higher
/// non-degenerate simplices (= skeleton).
SimplicialSet with_cap(const SimplicialSet& X, int cap);

// ---------------------------------------------------------------------------
// The presheaf action
// ---------------------------------------------------------------------------

/// The action X(a) applied to s, in EZ normal form.  Total in the stored data
/// (any dimensions), used internally by the builders.
SimplexRef act(const SimplicialSet& X, const SimplexRef& s, const OrdinalMap& a);

/// Checked public variant: requires a.target_dim == s.dim and result
/// dimension (= a.source_dim) <= cap; throws otherwise.
SimplexRef evaluate(const SimplicialSet& X, const SimplexRef& s, const OrdinalMap& a);

/// One generator step applied to a simplex: a face d_i or a degeneracy s_i.
struct SimplexOp {
    enum Kind { Face, Degeneracy } kind = Face;
    int index = 0;
};

/// Apply a word of face/degeneracy generators (first entry applied first) to
/// `base` and return the EZ normal form.  Throws if the word is not
/// composable (an index out of range for the current dimension).
SimplexRef ez_normalize(const SimplicialSet& X, const SimplexRef& base,
                        const std::vector<SimplexOp>& word);

/// All simplices of X in dimension n, i.e. all EZ references
/// (non-degenerate base of dimension k <= min(n, cap), surjection [n]->>[k]),
/// in a deterministic order.
std::vector<SimplexRef> all_simplices(const SimplicialSet& X, int n);

/// The k-th vertex of a simplex (its image under the vertex inclusion).
SimplexRef simplex_vertex(const SimplicialSet& X, const SimplexRef& s, int k);

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

/// A simplicial map, stored by the images of the non-degenerate simplices of
/// the source (equal-dimension references into the target).  Degenerate
/// simplices map by naturality: (η* x) ↦ η* f(x).
struct SimplicialMap {
    SimplicialSet source;
    SimplicialSet target;
    std::vector<std::vector<SimplexRef>> assignment;  // per dim, per nd index

    const SimplexRef& image_of_nd(int d, int id) const {
        return assignment[static_cast<size_t>(d)][static_cast<size_t>(id)];
    }
};

/// Naturality transport of an arbitrary reference through the map.
SimplexRef apply_map(const SimplicialMap& f, const SimplexRef& s);

/// Check that the assignment commutes with all face maps.
ValidationReport validate_map(const SimplicialMap& f);

SimplicialMap identity_map(const SimplicialSet& X);

/// Composite g ∘ f; requires f.target and g.source to have identical data.
SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f);

/// The classifying map Δᵈ → X of a d-simplex s: the unique simplicial map
/// sending the top simplex of Δᵈ to s.
SimplicialMap classify(const SimplicialSet& X, const SimplexRef& s);

/// Inclusions of the standard subobjects into Δⁿ.
SimplicialMap boundary_inclusion(int n);
SimplicialMap horn_inclusion(int n, int k);
SimplicialMap spine_inclusion(int n);

/// The inclusion Δ⁰ → Δⁿ at vertex k, with the source cap raised to n so the
/// two sides share a cap (as the cover checks require).
SimplicialMap vertex_inclusion(int n, int k);

// ---------------------------------------------------------------------------
// Limits and colimits
// ---------------------------------------------------------------------------

struct ProductResult {
    SimplicialSet sset;
    SimplicialMap proj_left, proj_right;
    /// For each dimension d <= cap, the product simplex corresponding to a
    /// pair of references (in EZ form) of the factors.
    SimplexRef pair_ref(int d, const SimplexRef& x, const SimplexRef& y) const;
    // internal: lookup tables filled by product()
    std::vector<std::map<std::pair<SimplexRef, SimplexRef>, SimplexRef>> pair_table;
};

/// Categorical product restricted to cap = min(cap_X + cap_Y, limit).
ProductResult product(const SimplicialSet& X, const SimplicialSet& Y, int limit = 6);

/// The canonical map Z → X×Y induced by f: Z→X and g: Z→Y.
SimplicialMap pair_map(const ProductResult& XY, const SimplicialMap& f, const SimplicialMap& g);

struct PushoutResult {
    SimplicialSet sset;
    SimplicialMap inj_left;   // from f.target
    SimplicialMap inj_right;  // from g.target
};

/// Pushout of f: A→X, g: A→Y (same source object required).  Computed as the
/// dimensionwise quotient of X ⊔ Y by the equivalence generated by
/// f(a) ~ g(a) over all simplices a (degenerate ones included), then
/// re-normalized: previously non-degenerate simplices may become degenerate
/// in the quotient.  Result cap = max of the target caps.
PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& g);

/// Skeleton: drop non-degenerate simplices above n; cap = n.
SimplicialSet skeleton(const SimplicialSet& X, int n);

/// Path components: the coequalizer of the two vertex maps out of the edges.
struct Pi0Result {
    int count = 0;
    std::vector<int> component;  // per vertex id
};
Pi0Result pi0(const SimplicialSet& X);

/// Opposite simplicial set: faces reindexed by i ↦ n−i (the order-reversing
/// involution of the ordinal category); an involution on objects and maps.
SimplicialSet opposite(const SimplicialSet& X);
SimplicialMap opposite_map(const SimplicialMap& f);

struct CoproductResult {
    SimplicialSet sset;
    std::vector<SimplicialMap> injections;
};
CoproductResult coproduct(const std::vector<SimplicialSet>& Xs);

// ---------------------------------------------------------------------------
// Isomorphism search
// ---------------------------------------------------------------------------

struct IsoResult {
    enum Status { Iso, NotIso, Exhausted } status = NotIso;
    std::optional<SimplicialMap> forward;  // witness when status == Iso
};

/// Backtracking search for a simplicial isomorphism (dimension-0 assignments
/// extended upward through face constraints).  `budget` bounds the number of
/// assignment attempts; on exhaustion the verdict is Exhausted, never a
/// silent failure.  Compares non-degenerate data per dimension; the cap
/// metadata itself is not part of the comparison.
IsoResult is_isomorphic(const SimplicialSet& X, const SimplicialSet& Y, long budget = 1000000);

/// Isomorphism over a common base: find φ with q ∘ φ = p.
IsoResult is_isomorphic_over(const SimplicialMap& p, const SimplicialMap& q, long budget = 1000000);

/// Enumerate all simplicial maps Z → W (optionally over a base: maps φ with
/// q ∘ φ = p for given p: Z→X, q: W→X), up to `max_count`; used by the
/// universal-property checks.  Returns nullopt if the search budget blows.
std::optional<std::vector<SimplicialMap>> enumerate_maps(
    const SimplicialSet& Z, const SimplicialSet& W,
    const SimplicialMap* p = nullptr, const SimplicialMap* q = nullptr,
    long budget = 1000000, size_t max_count = 4096);

}  // namespace simpcat
