/* simpcat/ordinal.hpp
 *
 * Weakly monotone maps between finite ordinals [m] = {0 < 1 < ... < m}.
 * These are the arrows along which simplices are pulled back: the injective
 * generators are the face maps ∂ⁿᵢ (skip i) and the surjective generators the
 * degeneracy maps σⁿᵢ (hit i twice).  Every map factors uniquely as a
 * surjection followed by an injection; that factorization is the engine of
 * the Eilenberg–Zilber normal form used throughout the library.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace simpcat {

/// A weakly monotone map [source_dim] -> [target_dim], stored by its values.
struct OrdinalMap {
    int source_dim = 0;
    int target_dim = 0;
    std::vector<int> values;  // size source_dim + 1, weakly increasing, in [0, target_dim]

    OrdinalMap() = default;
    OrdinalMap(int src_dim, int tgt_dim, std::vector<int> vals);

    int operator()(int i) const { return values[static_cast<size_t>(i)]; }

    bool operator==(const OrdinalMap&) const = default;

    /// True if values are weakly increasing and within [0, target_dim].
    bool well_formed() const;
    bool is_identity() const;
    bool is_surjective() const;
    bool is_injective() const;

    std::string to_string() const;
};

/// Identity map on [n].
OrdinalMap ordinal_identity(int n);

/// Face map ∂ⁿᵢ : [n-1] -> [n], the injection skipping i.  Requires n >= 1, 0 <= i <= n.
OrdinalMap face_map(int n, int i);

/// Degeneracy map σⁿᵢ : [n+1] -> [n], the surjection taking the value i twice.
/// Requires n >= 0, 0 <= i <= n.
OrdinalMap degeneracy_map(int n, int i);

/// The vertex inclusion [0] -> [n] picking k.
OrdinalMap vertex_map(int n, int k);

/// The edge inclusion [1] -> [n] picking a <= b.
OrdinalMap edge_map(int n, int a, int b);

/// Composite after ∘ before.  Requires before.target_dim == after.source_dim.
OrdinalMap compose(const OrdinalMap& after, const OrdinalMap& before);

/// Epi-mono factorization a = inj ∘ surj (unique in the ordinal category).
struct EpiMono {
    OrdinalMap surj;  // [source] ->> [image rank]
    OrdinalMap inj;   // [image rank] >-> [target]
};
EpiMono epi_mono_factor(const OrdinalMap& a);

/// All surjections [n] ->> [k], in a deterministic order.
/// A monotone surjection is determined by the set of positions i with
/// η(i) = η(i+1); enumeration is by those (n-k)-subsets of {0..n-1}.
std::vector<OrdinalMap> all_surjections(int n, int k);

/// All weakly monotone maps [m] -> [n], in a deterministic order.
std::vector<OrdinalMap> all_ordinal_maps(int m, int n);

/// The set D = {i : η(i) = η(i+1)} of collapsed positions of a surjection.
std::vector<int> collapse_positions(const OrdinalMap& surj);

/// Inverse of collapse_positions: the surjection [n] ->> [n - |D|] collapsing D.
OrdinalMap surjection_from_collapses(int n, const std::vector<int>& positions);

/// Reverse a map across the order-reversing involution:
/// ρ(a)(i) = target_dim - a(source_dim - i).  Sends ∂ⁿᵢ to ∂ⁿ_{n-i} and σⁿᵢ to σⁿ_{n-i}.
OrdinalMap reverse(const OrdinalMap& a);

}  // namespace simpcat
