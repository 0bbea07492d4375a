/* simpcat/covers.hpp
 *
 * Left, right, and two-sided covers of simplicial sets, and the equivalence
 * between left covers of X and set-valued representations of the fundamental
 * category of X.
 *
 * A map p: E → X is a LEFT cover (up to the shared cap) when, for every
 * dimension n, the comparison map  e ↦ (initial vertex of e, p(e))  is a
 * bijection from the full simplex set Eₙ onto the fibre product
 * E₀ ×_{X₀} Xₙ over initial vertices.  Degenerate simplices take part via
 * their EZ forms.  Right covers are left covers of the opposites; two-sided
 * covers require the analogous bijection at every vertex inclusion.
 *
 * A left cover is equivalent data to a functor F: τ₁X → Set: `fibre` reads
 * the functor off a cover (unique edge lifts), `reconstruct` rebuilds the
 * cover from the functor, and `verify_recfib` certifies the round trips on
 * concrete inputs.
 */

#pragma once

#include <string>
#include <vector>

#include "simpcat/fpcat.hpp"
#include "simpcat/sset.hpp"

namespace simpcat {

// ---------------------------------------------------------------------------
// Representations of a presented category
// ---------------------------------------------------------------------------

/// A finite set-valued functor on a presented category: a finite set per
/// object and a function per generator, with functoriality over the
/// relations as the validation condition.
struct Representation {
    CatPresentation base;
    std::vector<std::vector<std::string>> vertex_sets;  // per object: element names
    std::vector<std::vector<int>> edge_maps;  // per generator: index map F(src) → F(tgt)

    /// Evaluate a word diagrammatically on an element; -1 on any mismatch.
    int apply_word(int src_obj, const Word& w, int elem) const;
};

/// Shape consistency plus functoriality: both sides of every relation of the
/// base induce the same function pointwise.
ValidationReport validate_representation(const Representation& F);

// ---------------------------------------------------------------------------
// Cover checks
// ---------------------------------------------------------------------------

struct CoverReport {
    bool ok = false;
    std::vector<bool> per_dim;  // verdict for each dimension 0..cap
    int fail_dim = -1;          // first failing dimension, or -1
    std::string detail;         // first counterexample, human-readable
};

/// The per-dimension bijection check at the initial vertex.  Source and
/// target must share their cap (raise one with with_cap first if needed).
CoverReport is_left_cover(const SimplicialMap& p);

/// Left cover of the opposites: the same check at terminal vertices.
CoverReport is_right_cover(const SimplicialMap& p);

/// Two-sided: the comparison bijection at every vertex inclusion of every
/// dimension.  Equivalent to being a left cover whose monodromy functions
/// are all bijections (pi1_cover_correspondence compares the two).
CoverReport is_cover(const SimplicialMap& p);

/// Per target vertex, the source vertices lying over it.
std::vector<std::vector<int>> vertex_fibres(const SimplicialMap& p);

// ---------------------------------------------------------------------------
// The fibre functor and reconstruction
// ---------------------------------------------------------------------------

/// Monodromy representation of a left cover: vertex fibres, with each
/// generating edge acting by its unique lifts.  Throws std::invalid_argument
/// when is_left_cover fails.  The base presentation is the fundamental
/// category of the target (cap raised to 2 when needed).
Representation fibre(const SimplicialMap& p);

/// The left cover with total space ⊔_{α ∈ Xₙ} F(α₀): faces transport
/// elements along initial-vertex edges, projection forgets the element.
/// F.base must match the fundamental category of X (object and generator
/// counts and endpoints).  Throws on a non-functorial F.
SimplicialMap reconstruct(const SimplicialSet& X, const Representation& F);

struct UniversalCoverResult {
    SimplicialMap cover;    // X̃ₓ → X
    int basepoint = -1;     // vertex id in cover.source over x: the identity
    bool truncated = false; // some hom-set failed to certify Finite
    int hom_bound = 0;      // the bound the enumeration used
};

/// The universal left cover based at vertex x, materialized from hom-sets of
/// the fundamental category: n-simplices are pairs (σ ∈ Xₙ, w: x → σ₀).
/// When every hom-set certifies Finite the result is exact; otherwise the
/// truncated flag is set and elements whose faces would leave the enumerated
/// words are pruned to keep a genuine simplicial set.
UniversalCoverResult universal_left_cover(const SimplicialSet& X, int x, int hom_bound);

// ---------------------------------------------------------------------------
// Round-trip verification and monodromy correspondence
// ---------------------------------------------------------------------------

struct RoundTripReport {
    bool ok = false;
    std::string detail;
};

/// fibre(reconstruct(F)) is naturally isomorphic to F: searches for
/// per-object bijections commuting with every generator's action.
RoundTripReport roundtrip_representation(const SimplicialSet& X, const Representation& F);

/// reconstruct(fibre(p)) is isomorphic to p over the base.
RoundTripReport roundtrip_cover(const SimplicialMap& p);

struct RecFibReport {
    bool ok = true;
    std::vector<std::string> lines;  // one verdict per corpus entry
};

/// Run both round trips over a corpus.
RecFibReport verify_recfib(const SimplicialSet& X, const std::vector<Representation>& reps,
                           const std::vector<SimplicialMap>& covers);

struct MonodromyReport {
    CoverReport left;
    CoverReport cover;
    bool checked_monodromy = false;  // fibre was computable (left cover held)
    std::vector<int> nonbijective;   // generators whose action is not a bijection
    bool all_bijective = false;
    bool agree = false;  // is_cover ⇔ (left cover ∧ all edge maps bijective)
};

/// Compare the two characterizations of two-sidedness on one map.
MonodromyReport pi1_cover_correspondence(const SimplicialMap& p);

// ---------------------------------------------------------------------------
// Pullback (base change)
// ---------------------------------------------------------------------------

struct PullbackResult {
    SimplicialSet sset;
    SimplicialMap to_left;   // to f.source
    SimplicialMap to_right;  // to g.source
};

/// Pullback of f: A → X and g: B → X: dimensionwise pairs of simplices with
/// equal images, EZ-renormalized.  Cap = min of the source caps.  Left
/// covers are stable under base change along any map.
PullbackResult pullback(const SimplicialMap& f, const SimplicialMap& g);

// ---------------------------------------------------------------------------
// Named example
// ---------------------------------------------------------------------------

/// The connected 2-fold cover of the circle: two vertices in a 2-cycle,
/// mapped edgewise onto the loop.  A two-sided cover with swap monodromy.
SimplicialMap circle_double_cover();

}  // namespace simpcat
