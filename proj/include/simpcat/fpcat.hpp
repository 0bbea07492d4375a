/* simpcat/fpcat.hpp
 *
 * Finitely presented categories and the word problem.  A presentation is a
 * set of objects, typed generators, and relations between parallel words
 * (written diagrammatically: the first letter is applied first).  The word
 * problem is attacked by shortlex Knuth–Bendix completion over typed words;
 * all downstream verdicts (word equality, hom-set finiteness, equivalence to
 * the terminal category) are tri-state — budgets exhaust into Unknown or
 * Truncated rather than silently guessing.
 *
 * The fundamental category of a simplicial set lives here: objects are the
 * vertices, generators the non-degenerate edges, and every non-degenerate
 * 2-simplex contributes the relation  d₁ = d₂·d₀  (degenerate edges read as
 * empty words).  The nerve goes the other way, from a finite category to a
 * capped simplicial set.
 */

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "simpcat/sset.hpp"

namespace simpcat {

/// A composable word of generator indices in diagrammatic order (first
/// applied first).  The empty word is an identity; its object is supplied by
/// context where it matters.
using Word = std::vector<int>;

struct Generator {
    std::string name;
    int src = 0;
    int tgt = 0;
};

struct CatPresentation {
    std::vector<std::string> objects;
    std::vector<Generator> generators;
    std::vector<std::pair<Word, Word>> relations;

    int object_index(const std::string& name) const;
    int generator_index(const std::string& name) const;
    /// Endpoints of a word; `fallback` is returned for the empty word.
    int word_src(const Word& w, int fallback = -1) const;
    int word_tgt(const Word& w, int fallback = -1) const;
    /// Do consecutive letters compose?
    bool composable(const Word& w) const;
    /// "id" for the empty word, otherwise letters joined with '·'.
    std::string show_word(const Word& w) const;
};

/// Endpoints in range, generator names unique, relation sides parallel.
ValidationReport validate_presentation(const CatPresentation& p);

/// The free category on a reflexive quiver: no relations.
CatPresentation free_category(const std::vector<std::string>& objects,
                              const std::vector<Generator>& arrows);

/// τ₁X from the 2-truncation of X.  Requires cap >= 2.
CatPresentation fundamental_category(const SimplicialSet& X);

// ---------------------------------------------------------------------------
// Rewriting
// ---------------------------------------------------------------------------

struct RewriteRule {
    Word lhs, rhs;  // parallel words, lhs strictly shortlex-greater
    bool operator==(const RewriteRule&) const = default;
};

struct RewriteSystem {
    std::vector<RewriteRule> rules;
    /// True only when every critical pair of every rule pair resolved within
    /// the budgets: normalize is then a decision procedure.
    bool complete = false;
    std::string note;  // which budget gave out, when incomplete
};

/// Shortlex order: length first, then lexicographic by generator index.
bool shortlex_less(const Word& a, const Word& b);

/// Knuth–Bendix completion over typed words.  Budget exhaustion (too many
/// rules, or a rule side beyond max_len) yields an incomplete system that is
/// still sound for reduction.
RewriteSystem complete_rewriting(const CatPresentation& p, int max_rules = 400, int max_len = 24);

/// Reduce to normal form (leftmost occurrence, first rule; terminating since
/// every rule strictly decreases shortlex order).
Word normalize(const RewriteSystem& rs, Word w);

enum class Verdict { Equal, NotEqual, Unknown };

/// Decide w1 ≡ w2 in the presented category.  Complete system: compare
/// normal forms.  Incomplete: bounded bidirectional search inside the
/// congruence — may return Unknown, never a wrong NotEqual.
/// Throws when both words are nonempty with mismatched endpoints.
Verdict words_equal(const CatPresentation& p, const RewriteSystem& rs, const Word& w1,
                    const Word& w2, long bfs_budget = 50000);

struct HomSet {
    enum Status { Finite, Truncated } status = Truncated;
    std::vector<Word> words;  // normal forms in increasing shortlex order
};

/// Normal-form words from a to every object, enumerated by increasing
/// length.  Certificate: prefixes of irreducible words are irreducible, so
/// one empty length level proves no longer normal forms exist (this implies
/// the gap condition for any growth bound G); Finite additionally requires a
/// complete system so that normal forms biject with morphisms.
std::vector<HomSet> hom_sets_from(const CatPresentation& p, const RewriteSystem& rs, int a,
                                  int length_bound);

/// The (a, b) component of hom_sets_from.
HomSet hom_set(const CatPresentation& p, const RewriteSystem& rs, int a, int b, int length_bound);

// ---------------------------------------------------------------------------
// Finite categories
// ---------------------------------------------------------------------------

struct FiniteCategory {
    std::vector<std::string> objects;
    struct Mor {
        std::string name;
        int src = 0;
        int tgt = 0;
    };
    std::vector<Mor> morphisms;
    std::vector<int> identity;           // per object: its identity morphism
    std::vector<std::vector<int>> then;  // then[f][g] = "f, then g", or -1

    int hom_count(int a, int b) const;
    /// Fold a sequence of morphism ids; -1 on a composition mismatch.
    int compose_seq(int at_object, const std::vector<int>& ids) const;
};

/// Unit laws, associativity, endpoint consistency — the full table.
ValidationReport validate_category(const FiniteCategory& C);

/// Standard small categories.
FiniteCategory ordinal_category(int n);       // the poset [n]
FiniteCategory discrete_category(int k);      // k objects, identities only
FiniteCategory cyclic_group_category(int m);  // one object, ℤ/m
FiniteCategory retraction_category();         // 0 ⇄ 1 with r∘i = id₀

/// Componentwise product C × D.
FiniteCategory product_category(const FiniteCategory& C, const FiniteCategory& D);

/// The nerve, truncated at `cap`: non-degenerate k-simplices are composable
/// k-tuples of non-identity morphisms; inner faces compose, and a composite
/// that lands on an identity produces a degenerate reference.
SimplicialSet nerve(const FiniteCategory& C, int cap);

struct RealizeResult {
    bool ok = false;
    std::string failure;  // which hom-set truncated, when not ok
    FiniteCategory cat;
    /// morphism id of a normal form; keys are (source object, word)
    std::map<std::pair<int, Word>, int> index_of;
    std::vector<Word> word_of;  // per morphism id
};

/// Materialize the presented category when every hom-set certifies Finite
/// within the bound; composition is concatenate-then-normalize.
RealizeResult realize_finite(const CatPresentation& p, const RewriteSystem& rs, int length_bound);

struct CatIsoReport {
    bool iso = false;
    std::string detail;
    int morphism_count = 0;  // of the realized side, when realization worked
};

/// Check that the functor determined by `object_map` (presentation object ->
/// D object) and `gen_image` (generator -> D morphism id) is an isomorphism
/// of categories: relations hold in D, objects biject, and evaluation is a
/// bijection on every hom-set of the finite realization.
CatIsoReport check_presented_iso(const CatPresentation& p, const RewriteSystem& rs,
                                 int length_bound, const FiniteCategory& D,
                                 const std::vector<int>& object_map,
                                 const std::vector<int>& gen_image);

/// τ₁(nerve C) ≅ C via the canonical evaluation functor.
CatIsoReport tau_nerve_roundtrip(const FiniteCategory& C, int length_bound = 12,
                                 int max_rules = 400, int max_len = 24);

// ---------------------------------------------------------------------------
// Localization and split monomorphisms
// ---------------------------------------------------------------------------

/// Freely invert the listed generators: a fresh generator s̄: tgt→src per
/// s ∈ gens, with relations s·s̄ = id and s̄·s = id.
CatPresentation localize(const CatPresentation& p, const std::vector<int>& gens);

/// localize at every generator (the fundamental groupoid presentation when
/// p = τ₁X).
CatPresentation groupoidify(const CatPresentation& p);

struct SplitMonoReport {
    struct Pair {
        Word mono;        // m: a → b
        Word retraction;  // r: b → a with m·r ≡ id_a
    };
    std::vector<Pair> pairs;
    /// True when every hom-set certified Finite and the system is complete:
    /// the list is then provably all of them.
    bool exhaustive = false;
};

/// All ordered pairs of normal forms (m, r) with m·r ≡ id, within the word
/// bound.  Identity monos are excluded unless `include_identities`.  The BFS
/// budget is only consulted when the rewriting system is incomplete.
SplitMonoReport split_monos(const CatPresentation& p, const RewriteSystem& rs, int word_bound,
                            bool include_identities = false, long bfs_budget = 50000);

struct DpiBounds {
    int max_rules = 400;
    int max_len = 24;
    int word_bound = 8;
    long bfs_budget = 50000;
};

struct DpiResult {
    CatPresentation tau;        // τ₁X
    CatPresentation localized;  // τ₁X with the split-mono generators inverted
    std::vector<int> inverted;  // generator indices that were inverted
    bool exhaustive = false;    // split-mono search was exhaustive
};

/// Localize τ₁X at the generators whose classes are split monomorphisms.
DpiResult dpi1_surrogate(const SimplicialSet& X, const DpiBounds& bounds = {});

enum class Ternary { Yes, No, Unknown };

/// Equivalent to the terminal category: every hom-set a singleton (and at
/// least one object).  Yes needs certified singletons everywhere; No needs a
/// certified witness (an empty hom-set, or two distinct classes); anything
/// short of a certificate is Unknown.
Ternary equivalent_to_terminal(const CatPresentation& p, const RewriteSystem& rs, int length_bound);

}  // namespace simpcat
