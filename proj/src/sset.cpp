#include "simpcat/sset.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "simpcat/presheaf.hpp"

namespace simpcat {

std::string SimplexRef::to_string() const {
    std::ostringstream os;
    os << "(" << dim << "," << nd_index;
    if (is_degenerate()) {
        os << ",s";
        for (int p : collapse_positions(degeneracy)) os << p;
    }
    os << ")";
    return os.str();
}

int SimplicialSet::top_dim() const {
    for (int d = static_cast<int>(nd.size()) - 1; d >= 0; --d)
        if (!nd[static_cast<size_t>(d)].empty()) return d;
    return 0;
}

std::vector<int> SimplicialSet::nd_counts() const {
    std::vector<int> out;
    for (int d = 0; d <= top_dim(); ++d) out.push_back(nd_count(d));
    return out;
}

std::optional<int> SimplicialSet::vertex_by_label(const std::string& label) const {
    for (int i = 0; i < nd_count(0); ++i)
        if (simplex(0, i).label == label) return i;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Presheaf action
// ---------------------------------------------------------------------------

namespace {

/// ∂ᵢ* on an arbitrary reference of dimension d >= 1.
SimplexRef elementary_face(const SimplicialSet& X, const SimplexRef& r, int i) {
    OrdinalMap m = compose(r.degeneracy, face_map(r.dim, i));
    EpiMono em = epi_mono_factor(m);
    if (em.inj.is_identity()) return SimplexRef(r.dim - 1, r.nd_index, em.surj);
    // The mono part misses exactly one value v of the base ordinal: look it up
    // in the stored faces of the non-degenerate base.
    int v = -1;
    {
        std::set<int> img(em.inj.values.begin(), em.inj.values.end());
        for (int q = 0; q <= em.inj.target_dim; ++q)
            if (!img.count(q)) {
                v = q;
                break;
            }
    }
    const SimplexRef& fo = X.simplex(r.base_dim(), r.nd_index).faces[static_cast<size_t>(v)];
    return SimplexRef(r.dim - 1, fo.nd_index, compose(fo.degeneracy, em.surj));
}

}  // namespace

SimplexRef act(const SimplicialSet& X, const SimplexRef& s, const OrdinalMap& a) {
    OrdinalMap total = compose(s.degeneracy, a);
    EpiMono em = epi_mono_factor(total);
    // Mono part: peel off elementary faces, largest missing value first.
    SimplexRef cur = nd_ref(s.base_dim(), s.nd_index);
    OrdinalMap inj = em.inj;
    while (!inj.is_identity()) {
        int v = -1;
        {
            std::set<int> img(inj.values.begin(), inj.values.end());
            for (int q = inj.target_dim; q >= 0; --q)
                if (!img.count(q)) {
                    v = q;
                    break;
                }
        }
        cur = elementary_face(X, cur, v);
        std::vector<int> vals = inj.values;
        for (int& x : vals)
            if (x > v) --x;
        inj = OrdinalMap(inj.source_dim, inj.target_dim - 1, std::move(vals));
    }
    return SimplexRef(a.source_dim, cur.nd_index, compose(cur.degeneracy, em.surj));
}

SimplexRef evaluate(const SimplicialSet& X, const SimplexRef& s, const OrdinalMap& a) {
    if (a.target_dim != s.dim)
        throw std::invalid_argument("evaluate: map target dimension does not match simplex dimension");
    if (a.source_dim > X.cap)
        throw std::out_of_range("evaluate: result dimension exceeds the cap");
    if (s.base_dim() > X.cap || s.nd_index >= X.nd_count(s.base_dim()))
        throw std::out_of_range("evaluate: dangling simplex reference");
    return act(X, s, a);
}

SimplexRef ez_normalize(const SimplicialSet& X, const SimplexRef& base,
                        const std::vector<SimplexOp>& word) {
    // The composite of the word as one ordinal map: applying d_i then s_j ...
    // corresponds to the map composite ∂_i ∘ σ_j ∘ … read left to right.
    OrdinalMap m = ordinal_identity(base.dim);
    for (const SimplexOp& op : word) {
        int d = m.source_dim;  // current simplex dimension
        if (op.kind == SimplexOp::Face) {
            if (d < 1 || op.index < 0 || op.index > d)
                throw std::invalid_argument("ez_normalize: non-composable face generator");
            m = compose(m, face_map(d, op.index));
        } else {
            if (op.index < 0 || op.index > d)
                throw std::invalid_argument("ez_normalize: non-composable degeneracy generator");
            m = compose(m, degeneracy_map(d, op.index));
        }
    }
    return act(X, base, m);
}

std::vector<SimplexRef> all_simplices(const SimplicialSet& X, int n) {
    std::vector<SimplexRef> out;
    for (int k = 0; k <= std::min(n, X.cap); ++k) {
        int cnt = X.nd_count(k);
        if (cnt == 0) continue;
        for (const OrdinalMap& eta : all_surjections(n, k))
            for (int id = 0; id < cnt; ++id) out.push_back(SimplexRef(n, id, eta));
    }
    return out;
}

SimplexRef simplex_vertex(const SimplicialSet& X, const SimplexRef& s, int k) {
    return act(X, s, vertex_map(s.dim, k));
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate(const SimplicialSet& X) {
    ValidationReport rep;
    auto flag = [&](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };
    if (X.cap < 0) flag("negative cap");
    if (static_cast<int>(X.nd.size()) > X.cap + 1) flag("non-degenerate simplices above the cap");
    // Reference invariants first; identity checks only run on well-referenced data.
    bool refs_ok = true;
    for (int d = 0; d < static_cast<int>(X.nd.size()); ++d) {
        for (int id = 0; id < X.nd_count(d); ++id) {
            const NdSimplex& s = X.simplex(d, id);
            std::ostringstream who;
            who << "simplex (" << d << "," << id << ")";
            if (d == 0) {
                if (!s.faces.empty()) {
                    flag(who.str() + ": vertex with faces");
                    refs_ok = false;
                }
                continue;
            }
            if (static_cast<int>(s.faces.size()) != d + 1) {
                flag(who.str() + ": face array has wrong length");
                refs_ok = false;
                continue;
            }
            for (int i = 0; i <= d; ++i) {
                const SimplexRef& f = s.faces[static_cast<size_t>(i)];
                if (f.dim != d - 1 || !f.degeneracy.well_formed() || !f.degeneracy.is_surjective() ||
                    f.degeneracy.source_dim != d - 1) {
                    flag(who.str() + ": face " + std::to_string(i) + " is not a surjective EZ reference");
                    refs_ok = false;
                    continue;
                }
                if (f.base_dim() >= d || f.nd_index < 0 || f.nd_index >= X.nd_count(f.base_dim())) {
                    flag(who.str() + ": face " + std::to_string(i) + " dangles");
                    refs_ok = false;
                }
            }
        }
    }
    if (!refs_ok) return rep;
    for (int d = 2; d < static_cast<int>(X.nd.size()); ++d)
        for (int id = 0; id < X.nd_count(d); ++id)
            for (int j = 1; j <= d; ++j)
                for (int i = 0; i < j; ++i) {
                    SimplexRef top = nd_ref(d, id);
                    SimplexRef a = elementary_face(X, elementary_face(X, top, j), i);
                    SimplexRef b = elementary_face(X, elementary_face(X, top, i), j - 1);
                    if (!(a == b)) {
                        std::ostringstream os;
                        os << "simplex (" << d << "," << id << "): d" << i << "d" << j << " = " << a.to_string()
                           << " but d" << j - 1 << "d" << i << " = " << b.to_string();
                        flag(os.str());
                    }
                }
    return rep;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace {

std::string subset_label(const std::vector<int>& s) {
    bool wide = !s.empty() && s.back() > 9;
    std::ostringstream os;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && wide) os << ".";
        os << s[i];
    }
    return os.str();
}

/// Strictly increasing k-subsets of {0, …, n-1}, lexicographically.
std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k > n) return out;
    std::vector<int> cur(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[static_cast<size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++cur[static_cast<size_t>(pos)];
        for (int q = pos + 1; q < k; ++q) cur[static_cast<size_t>(q)] = cur[static_cast<size_t>(q - 1)] + 1;
    }
    return out;
}

/// Build the subcomplex of Δⁿ spanned by the vertex subsets accepted by
/// `keep` (which must be closed under passing to subsets), together with its
/// inclusion into Δⁿ.  The cap of the subcomplex is the top retained size - 1.
std::pair<SimplicialSet, SimplicialMap> delta_subcomplex(
    int n, const std::function<bool(const std::vector<int>&)>& keep) {
    SimplicialSet delta = standard_simplex(n);
    std::map<std::vector<int>, int> delta_id;
    {
        for (int k = 0; k <= n; ++k) {
            auto subs = subsets_of_size(n + 1, k + 1);
            for (size_t i = 0; i < subs.size(); ++i) delta_id[subs[i]] = static_cast<int>(i);
        }
    }
    SimplicialSet S;
    std::map<std::vector<int>, int> sub_id;
    std::vector<std::vector<std::vector<int>>> kept(static_cast<size_t>(n) + 1);
    int top = 0;
    for (int k = 0; k <= n; ++k)
        for (auto& sub : subsets_of_size(n + 1, k + 1))
            if (keep(sub)) {
                sub_id[sub] = static_cast<int>(kept[static_cast<size_t>(k)].size());
                kept[static_cast<size_t>(k)].push_back(sub);
                top = std::max(top, k);
            }
    S.cap = top;
    S.nd.resize(static_cast<size_t>(top) + 1);
    for (int k = 0; k <= top; ++k)
        for (auto& sub : kept[static_cast<size_t>(k)]) {
            NdSimplex s;
            s.label = subset_label(sub);
            if (k >= 1)
                for (int i = 0; i <= k; ++i) {
                    std::vector<int> f = sub;
                    f.erase(f.begin() + i);
                    s.faces.push_back(nd_ref(k - 1, sub_id.at(f)));
                }
            S.nd[static_cast<size_t>(k)].push_back(std::move(s));
        }
    SimplicialMap inc;
    inc.source = S;
    inc.target = delta;
    inc.assignment.resize(S.nd.size());
    for (int k = 0; k <= top; ++k)
        for (auto& sub : kept[static_cast<size_t>(k)])
            inc.assignment[static_cast<size_t>(k)].push_back(nd_ref(k, delta_id.at(sub)));
    return {S, inc};
}

}  // namespace

SimplicialSet standard_simplex(int n) {
    if (n < 0) throw std::invalid_argument("standard_simplex: negative dimension");
    SimplicialSet X;
    X.cap = n;
    X.nd.resize(static_cast<size_t>(n) + 1);
    std::map<std::vector<int>, int> id_of;
    for (int k = 0; k <= n; ++k) {
        auto subs = subsets_of_size(n + 1, k + 1);
        for (size_t i = 0; i < subs.size(); ++i) {
            id_of[subs[i]] = static_cast<int>(i);
            NdSimplex s;
            s.label = subset_label(subs[i]);
            if (k >= 1)
                for (int j = 0; j <= k; ++j) {
                    std::vector<int> f = subs[i];
                    f.erase(f.begin() + j);
                    s.faces.push_back(nd_ref(k - 1, id_of.at(f)));
                }
            X.nd[static_cast<size_t>(k)].push_back(std::move(s));
        }
    }
    return X;
}

SimplicialSet boundary(int n) {
    if (n < 1) throw std::invalid_argument("boundary: requires n >= 1");
    return skeleton(standard_simplex(n), n - 1);
}

SimplicialSet horn(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("horn: parameters out of range");
    return horn_inclusion(n, k).source;
}

SimplicialSet spine(int n) {
    if (n < 1) throw std::invalid_argument("spine: requires n >= 1");
    return spine_inclusion(n).source;
}

SimplicialSet circle() {
    SimplicialSet X;
    X.cap = 2;
    X.nd.resize(3);
    X.nd[0].push_back(NdSimplex{"*", {}});
    X.nd[1].push_back(NdSimplex{"a", {nd_ref(0, 0), nd_ref(0, 0)}});
    return X;
}

SimplicialSet with_cap(const SimplicialSet& X, int cap) {
    if (cap < 0) throw std::invalid_argument("with_cap: negative cap");
    SimplicialSet Y = X;
    Y.cap = cap;
    if (static_cast<int>(Y.nd.size()) > cap + 1) Y.nd.resize(static_cast<size_t>(cap) + 1);
    return Y;
}

SimplicialSet skeleton(const SimplicialSet& X, int n) {
    if (n > X.cap) throw std::invalid_argument("skeleton: dimension above the cap");
    return with_cap(X, n);
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

SimplexRef apply_map(const SimplicialMap& f, const SimplexRef& s) {
    const SimplexRef& im = f.image_of_nd(s.base_dim(), s.nd_index);
    return act(f.target, im, s.degeneracy);
}

ValidationReport validate_map(const SimplicialMap& f) {
    ValidationReport rep;
    auto flag = [&](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };
    if (f.assignment.size() < f.source.nd.size()) {
        flag("assignment missing dimensions");
        return rep;
    }
    for (int d = 0; d < static_cast<int>(f.source.nd.size()); ++d) {
        if (f.assignment[static_cast<size_t>(d)].size() != f.source.nd[static_cast<size_t>(d)].size()) {
            flag("assignment size mismatch at dimension " + std::to_string(d));
            return rep;
        }
        for (int id = 0; id < f.source.nd_count(d); ++id) {
            const SimplexRef& im = f.image_of_nd(d, id);
            if (im.dim != d) flag("image dimension mismatch at (" + std::to_string(d) + "," + std::to_string(id) + ")");
        }
    }
    if (!rep.ok) return rep;
    for (int d = 1; d < static_cast<int>(f.source.nd.size()); ++d)
        for (int id = 0; id < f.source.nd_count(d); ++id)
            for (int i = 0; i <= d; ++i) {
                SimplexRef lhs = apply_map(f, act(f.source, nd_ref(d, id), face_map(d, i)));
                SimplexRef rhs = act(f.target, f.image_of_nd(d, id), face_map(d, i));
                if (!(lhs == rhs))
                    flag("face " + std::to_string(i) + " of (" + std::to_string(d) + "," + std::to_string(id) +
                         ") does not commute");
            }
    return rep;
}

SimplicialMap identity_map(const SimplicialSet& X) {
    SimplicialMap f;
    f.source = X;
    f.target = X;
    f.assignment.resize(X.nd.size());
    for (int d = 0; d < static_cast<int>(X.nd.size()); ++d)
        for (int id = 0; id < X.nd_count(d); ++id)
            f.assignment[static_cast<size_t>(d)].push_back(nd_ref(d, id));
    return f;
}

SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f) {
    SimplicialMap h;
    h.source = f.source;
    h.target = g.target;
    h.assignment.resize(f.assignment.size());
    for (int d = 0; d < static_cast<int>(f.assignment.size()); ++d)
        for (const SimplexRef& r : f.assignment[static_cast<size_t>(d)])
            h.assignment[static_cast<size_t>(d)].push_back(apply_map(g, r));
    return h;
}

SimplicialMap classify(const SimplicialSet& X, const SimplexRef& s) {
    int n = s.dim;
    SimplicialMap f;
    f.source = standard_simplex(n);
    f.target = X;
    f.assignment.resize(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        auto subs = subsets_of_size(n + 1, k + 1);
        for (auto& sub : subs) {
            OrdinalMap inc(k, n, sub);
            f.assignment[static_cast<size_t>(k)].push_back(act(X, s, inc));
        }
    }
    return f;
}

SimplicialMap boundary_inclusion(int n) {
    if (n < 1) throw std::invalid_argument("boundary_inclusion: requires n >= 1");
    return delta_subcomplex(n, [n](const std::vector<int>& s) {
               return static_cast<int>(s.size()) <= n;
           }).second;
}

SimplicialMap horn_inclusion(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("horn_inclusion: parameters out of range");
    // Keep subsets missing at least one element other than k.
    return delta_subcomplex(n, [n, k](const std::vector<int>& s) {
               for (int j = 0; j <= n; ++j) {
                   if (j == k) continue;
                   if (std::find(s.begin(), s.end(), j) == s.end()) return true;
               }
               return false;
           }).second;
}

SimplicialMap spine_inclusion(int n) {
    if (n < 1) throw std::invalid_argument("spine_inclusion: requires n >= 1");
    return delta_subcomplex(n, [](const std::vector<int>& s) {
               if (s.size() == 1) return true;
               if (s.size() == 2) return s[1] == s[0] + 1;
               return false;
           }).second;
}

SimplicialMap vertex_inclusion(int n, int k) {
    SimplicialMap f;
    f.source = with_cap(standard_simplex(0), n);
    f.source.nd[0][0].label = std::to_string(k);
    f.target = standard_simplex(n);
    f.assignment.resize(1);
    f.assignment[0].push_back(nd_ref(0, k));
    return f;
}

// ---------------------------------------------------------------------------
// Walking retraction (two pushouts)
// ---------------------------------------------------------------------------

SimplicialSet walking_retraction() {
    // Step 1: glue a second edge onto Δ¹ along its boundary, endpoints reversed.
    SimplicialMap f1 = boundary_inclusion(1);  // ∂Δ¹ → Δ¹
    SimplicialMap g1;
    g1.source = f1.source;
    g1.target = standard_simplex(1);
    g1.assignment.resize(1);
    g1.assignment[0].push_back(nd_ref(0, 1));  // vertex 0 of the boundary ↦ 1
    g1.assignment[0].push_back(nd_ref(0, 0));  // vertex 1 of the boundary ↦ 0
    PushoutResult step1 = pushout(f1, g1);

    // Locate the pieces in the quotient.
    const SimplicialMap& jX = step1.inj_left;   // first Δ¹ (the mono i)
    const SimplicialMap& jY = step1.inj_right;  // second Δ¹ (the retraction r)
    SimplexRef v0 = jX.image_of_nd(0, 0);
    SimplexRef v1 = jX.image_of_nd(0, 1);
    SimplexRef ei = jX.image_of_nd(1, 0);
    SimplexRef er = jY.image_of_nd(1, 0);

    // Step 2: glue Δ² along ∂Δ² onto (i, r, s⁰0), witnessing r∘i = id₀.
    SimplicialMap f2 = boundary_inclusion(2);  // ∂Δ² → Δ²
    SimplicialMap g2;
    g2.source = f2.source;
    g2.target = with_cap(step1.sset, 2);
    g2.assignment.resize(2);
    g2.assignment[0] = {v0, v1, v0};  // vertices 0, 1, 2
    // boundary edges in subset order: 01 ↦ i, 02 ↦ degenerate at 0, 12 ↦ r
    g2.assignment[1] = {ei, SimplexRef(1, v0.nd_index, degeneracy_map(0, 0)), er};
    PushoutResult step2 = pushout(f2, g2);

    SimplicialSet R = step2.sset;
    // Friendly labels: 0 is the source of the image of i.
    SimplexRef i_edge = apply_map(step2.inj_right, ei);
    SimplexRef r_edge = apply_map(step2.inj_right, er);
    int i_id = i_edge.nd_index, r_id = r_edge.nd_index;
    int v0_id = act(R, nd_ref(1, i_id), vertex_map(1, 0)).nd_index;
    int v1_id = act(R, nd_ref(1, i_id), vertex_map(1, 1)).nd_index;
    R.nd[0][static_cast<size_t>(v0_id)].label = "0";
    R.nd[0][static_cast<size_t>(v1_id)].label = "1";
    R.nd[1][static_cast<size_t>(i_id)].label = "i";
    R.nd[1][static_cast<size_t>(r_id)].label = "r";
    R.nd[2][0].label = "t";
    return R;
}

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

SimplexRef ProductResult::pair_ref(int d, const SimplexRef& x, const SimplexRef& y) const {
    if (d < 0 || d >= static_cast<int>(pair_table.size()))
        throw std::out_of_range("pair_ref: dimension above the product cap");
    auto it = pair_table[static_cast<size_t>(d)].find({x, y});
    if (it == pair_table[static_cast<size_t>(d)].end())
        throw std::out_of_range("pair_ref: unknown pair of references");
    return it->second;
}

ProductResult product(const SimplicialSet& X, const SimplicialSet& Y, int limit) {
    int cap = std::min(X.cap + Y.cap, limit);
    ExplicitPresheaf P;
    P.init(cap);
    std::vector<std::vector<SimplexRef>> ex(static_cast<size_t>(cap) + 1), ey(static_cast<size_t>(cap) + 1);
    std::vector<std::map<SimplexRef, int>> ix(static_cast<size_t>(cap) + 1), iy(static_cast<size_t>(cap) + 1);
    for (int n = 0; n <= cap; ++n) {
        ex[static_cast<size_t>(n)] = all_simplices(X, n);
        ey[static_cast<size_t>(n)] = all_simplices(Y, n);
        for (size_t i = 0; i < ex[static_cast<size_t>(n)].size(); ++i)
            ix[static_cast<size_t>(n)][ex[static_cast<size_t>(n)][i]] = static_cast<int>(i);
        for (size_t i = 0; i < ey[static_cast<size_t>(n)].size(); ++i)
            iy[static_cast<size_t>(n)][ey[static_cast<size_t>(n)][i]] = static_cast<int>(i);
        P.card[static_cast<size_t>(n)] =
            static_cast<int>(ex[static_cast<size_t>(n)].size() * ey[static_cast<size_t>(n)].size());
    }
    auto elt = [&](int n, int i, int j) {
        return i * static_cast<int>(ey[static_cast<size_t>(n)].size()) + j;
    };
    auto unpair = [&](int n, int e) {
        int m = static_cast<int>(ey[static_cast<size_t>(n)].size());
        return std::pair<int, int>{e / m, e % m};
    };
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& col = P.face[static_cast<size_t>(n)][static_cast<size_t>(i)];
            col.resize(static_cast<size_t>(P.card[static_cast<size_t>(n)]));
            OrdinalMap d = face_map(n, i);
            for (int e = 0; e < P.card[static_cast<size_t>(n)]; ++e) {
                auto [a, b] = unpair(n, e);
                int fa = ix[static_cast<size_t>(n) - 1].at(act(X, ex[static_cast<size_t>(n)][static_cast<size_t>(a)], d));
                int fb = iy[static_cast<size_t>(n) - 1].at(act(Y, ey[static_cast<size_t>(n)][static_cast<size_t>(b)], d));
                col[static_cast<size_t>(e)] = elt(n - 1, fa, fb);
            }
        }
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& col = P.degen[static_cast<size_t>(n)][static_cast<size_t>(i)];
            col.resize(static_cast<size_t>(P.card[static_cast<size_t>(n)]));
            OrdinalMap s = degeneracy_map(n, i);
            for (int e = 0; e < P.card[static_cast<size_t>(n)]; ++e) {
                auto [a, b] = unpair(n, e);
                int sa = ix[static_cast<size_t>(n) + 1].at(act(X, ex[static_cast<size_t>(n)][static_cast<size_t>(a)], s));
                int sb = iy[static_cast<size_t>(n) + 1].at(act(Y, ey[static_cast<size_t>(n)][static_cast<size_t>(b)], s));
                col[static_cast<size_t>(e)] = elt(n + 1, sa, sb);
            }
        }
    auto label = [&](int n, int e) {
        auto [a, b] = unpair(n, e);
        const SimplexRef& rx = ex[static_cast<size_t>(n)][static_cast<size_t>(a)];
        const SimplexRef& ry = ey[static_cast<size_t>(n)][static_cast<size_t>(b)];
        auto part = [](const SimplicialSet& Z, const SimplexRef& r) {
            std::string s = Z.simplex(r.base_dim(), r.nd_index).label;
            if (r.is_degenerate())
                for (int p : collapse_positions(r.degeneracy)) s += "~" + std::to_string(p);
            return s;
        };
        return "(" + part(X, rx) + "," + part(Y, ry) + ")";
    };
    CanonResult C = canonicalize(P, label);
    ProductResult out;
    out.sset = C.sset;
    out.pair_table.resize(static_cast<size_t>(cap) + 1);
    for (int n = 0; n <= cap; ++n)
        for (int e = 0; e < P.card[static_cast<size_t>(n)]; ++e) {
            auto [a, b] = unpair(n, e);
            out.pair_table[static_cast<size_t>(n)][{ex[static_cast<size_t>(n)][static_cast<size_t>(a)],
                                                    ey[static_cast<size_t>(n)][static_cast<size_t>(b)]}] =
                C.elt_ref[static_cast<size_t>(n)][static_cast<size_t>(e)];
        }
    out.proj_left.source = out.sset;
    out.proj_left.target = X;
    out.proj_right.source = out.sset;
    out.proj_right.target = Y;
    out.proj_left.assignment.resize(out.sset.nd.size());
    out.proj_right.assignment.resize(out.sset.nd.size());
    for (int n = 0; n < static_cast<int>(out.sset.nd.size()); ++n)
        for (int id = 0; id < out.sset.nd_count(n); ++id) {
            auto [a, b] = unpair(n, C.nd_elt[static_cast<size_t>(n)][static_cast<size_t>(id)]);
            out.proj_left.assignment[static_cast<size_t>(n)].push_back(
                ex[static_cast<size_t>(n)][static_cast<size_t>(a)]);
            out.proj_right.assignment[static_cast<size_t>(n)].push_back(
                ey[static_cast<size_t>(n)][static_cast<size_t>(b)]);
        }
    return out;
}

SimplicialMap pair_map(const ProductResult& XY, const SimplicialMap& f, const SimplicialMap& g) {
    SimplicialMap h;
    h.source = f.source;
    h.target = XY.sset;
    h.assignment.resize(f.source.nd.size());
    for (int d = 0; d < static_cast<int>(f.source.nd.size()); ++d)
        for (int id = 0; id < f.source.nd_count(d); ++id)
            h.assignment[static_cast<size_t>(d)].push_back(
                XY.pair_ref(d, f.image_of_nd(d, id), g.image_of_nd(d, id)));
    return h;
}

// ---------------------------------------------------------------------------
// Pushout
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& g) {
    if (f.source.nd_counts() != g.source.nd_counts() || f.source.cap != g.source.cap)
        throw std::invalid_argument("pushout: the two maps do not share their source");
    const SimplicialSet& A = f.source;
    const SimplicialSet& X = f.target;
    const SimplicialSet& Y = g.target;
    int cap = std::max(X.cap, Y.cap);

    std::vector<std::vector<SimplexRef>> ea(static_cast<size_t>(cap) + 1), ex(static_cast<size_t>(cap) + 1),
        ey(static_cast<size_t>(cap) + 1);
    std::vector<std::map<SimplexRef, int>> ix(static_cast<size_t>(cap) + 1), iy(static_cast<size_t>(cap) + 1);
    std::vector<std::vector<int>> cls(static_cast<size_t>(cap) + 1);  // raw index -> class id
    std::vector<std::vector<int>> reps(static_cast<size_t>(cap) + 1); // class id -> raw index
    for (int n = 0; n <= cap; ++n) {
        ea[static_cast<size_t>(n)] = all_simplices(A, n);
        ex[static_cast<size_t>(n)] = all_simplices(X, n);
        ey[static_cast<size_t>(n)] = all_simplices(Y, n);
        for (size_t i = 0; i < ex[static_cast<size_t>(n)].size(); ++i)
            ix[static_cast<size_t>(n)][ex[static_cast<size_t>(n)][i]] = static_cast<int>(i);
        for (size_t i = 0; i < ey[static_cast<size_t>(n)].size(); ++i)
            iy[static_cast<size_t>(n)][ey[static_cast<size_t>(n)][i]] = static_cast<int>(i);
        int off = static_cast<int>(ex[static_cast<size_t>(n)].size());
        UnionFind uf(off + static_cast<int>(ey[static_cast<size_t>(n)].size()));
        for (const SimplexRef& a : ea[static_cast<size_t>(n)])
            uf.unite(ix[static_cast<size_t>(n)].at(apply_map(f, a)),
                     off + iy[static_cast<size_t>(n)].at(apply_map(g, a)));
        cls[static_cast<size_t>(n)].resize(static_cast<size_t>(off) + ey[static_cast<size_t>(n)].size());
        std::map<int, int> root_to_class;
        for (int e = 0; e < static_cast<int>(cls[static_cast<size_t>(n)].size()); ++e) {
            int r = uf.find(e);
            auto it = root_to_class.find(r);
            if (it == root_to_class.end()) {
                int c = static_cast<int>(reps[static_cast<size_t>(n)].size());
                root_to_class.emplace(r, c);
                reps[static_cast<size_t>(n)].push_back(e);
                cls[static_cast<size_t>(n)][static_cast<size_t>(e)] = c;
            } else {
                cls[static_cast<size_t>(n)][static_cast<size_t>(e)] = it->second;
            }
        }
    }
    // Quotient presheaf via representatives.
    auto side_act = [&](int n, int raw, const OrdinalMap& m) -> int {
        int off = static_cast<int>(ex[static_cast<size_t>(n)].size());
        int out_n = m.source_dim;
        if (raw < off) {
            SimplexRef r = act(X, ex[static_cast<size_t>(n)][static_cast<size_t>(raw)], m);
            return ix[static_cast<size_t>(out_n)].at(r);
        }
        SimplexRef r = act(Y, ey[static_cast<size_t>(n)][static_cast<size_t>(raw - off)], m);
        return static_cast<int>(ex[static_cast<size_t>(out_n)].size()) + iy[static_cast<size_t>(out_n)].at(r);
    };
    ExplicitPresheaf P;
    P.init(cap);
    for (int n = 0; n <= cap; ++n)
        P.card[static_cast<size_t>(n)] = static_cast<int>(reps[static_cast<size_t>(n)].size());
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& col = P.face[static_cast<size_t>(n)][static_cast<size_t>(i)];
            col.resize(static_cast<size_t>(P.card[static_cast<size_t>(n)]));
            for (int c = 0; c < P.card[static_cast<size_t>(n)]; ++c)
                col[static_cast<size_t>(c)] = cls[static_cast<size_t>(n) - 1][static_cast<size_t>(
                    side_act(n, reps[static_cast<size_t>(n)][static_cast<size_t>(c)], face_map(n, i)))];
        }
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& col = P.degen[static_cast<size_t>(n)][static_cast<size_t>(i)];
            col.resize(static_cast<size_t>(P.card[static_cast<size_t>(n)]));
            for (int c = 0; c < P.card[static_cast<size_t>(n)]; ++c)
                col[static_cast<size_t>(c)] = cls[static_cast<size_t>(n) + 1][static_cast<size_t>(
                    side_act(n, reps[static_cast<size_t>(n)][static_cast<size_t>(c)], degeneracy_map(n, i)))];
        }
    auto label = [&](int n, int c) {
        int raw = reps[static_cast<size_t>(n)][static_cast<size_t>(c)];
        int off = static_cast<int>(ex[static_cast<size_t>(n)].size());
        const SimplicialSet& Z = raw < off ? X : Y;
        const SimplexRef& r = raw < off ? ex[static_cast<size_t>(n)][static_cast<size_t>(raw)]
                                        : ey[static_cast<size_t>(n)][static_cast<size_t>(raw - off)];
        return Z.simplex(r.base_dim(), r.nd_index).label;
    };
    CanonResult C = canonicalize(P, label);
    PushoutResult out;
    out.sset = C.sset;
    auto make_inj = [&](const SimplicialSet& Z, bool left) {
        SimplicialMap j;
        j.source = Z;
        j.target = out.sset;
        j.assignment.resize(Z.nd.size());
        for (int d = 0; d < static_cast<int>(Z.nd.size()); ++d)
            for (int id = 0; id < Z.nd_count(d); ++id) {
                int raw = left ? ix[static_cast<size_t>(d)].at(nd_ref(d, id))
                               : static_cast<int>(ex[static_cast<size_t>(d)].size()) +
                                     iy[static_cast<size_t>(d)].at(nd_ref(d, id));
                int c = cls[static_cast<size_t>(d)][static_cast<size_t>(raw)];
                j.assignment[static_cast<size_t>(d)].push_back(
                    C.elt_ref[static_cast<size_t>(d)][static_cast<size_t>(c)]);
            }
        return j;
    };
    out.inj_left = make_inj(X, true);
    out.inj_right = make_inj(Y, false);
    return out;
}

// ---------------------------------------------------------------------------
// pi0, opposite, coproduct
// ---------------------------------------------------------------------------

Pi0Result pi0(const SimplicialSet& X) {
    int nv = X.nd_count(0);
    UnionFind uf(nv);
    for (int e = 0; e < X.nd_count(1); ++e) {
        const auto& faces = X.simplex(1, e).faces;
        uf.unite(faces[0].nd_index, faces[1].nd_index);
    }
    Pi0Result out;
    out.component.resize(static_cast<size_t>(nv));
    std::map<int, int> root_to_class;
    for (int v = 0; v < nv; ++v) {
        int r = uf.find(v);
        auto it = root_to_class.find(r);
        if (it == root_to_class.end()) {
            root_to_class.emplace(r, out.count);
            out.component[static_cast<size_t>(v)] = out.count++;
        } else {
            out.component[static_cast<size_t>(v)] = it->second;
        }
    }
    return out;
}

SimplicialSet opposite(const SimplicialSet& X) {
    SimplicialSet Y = X;
    for (int d = 1; d < static_cast<int>(Y.nd.size()); ++d)
        for (int id = 0; id < Y.nd_count(d); ++id) {
            const auto& faces = X.simplex(d, id).faces;
            auto& out = Y.simplex(d, id).faces;
            for (int i = 0; i <= d; ++i) {
                const SimplexRef& r = faces[static_cast<size_t>(d - i)];
                out[static_cast<size_t>(i)] = SimplexRef(r.dim, r.nd_index, reverse(r.degeneracy));
            }
        }
    return Y;
}

SimplicialMap opposite_map(const SimplicialMap& f) {
    SimplicialMap g;
    g.source = opposite(f.source);
    g.target = opposite(f.target);
    g.assignment.resize(f.assignment.size());
    for (int d = 0; d < static_cast<int>(f.assignment.size()); ++d)
        for (const SimplexRef& r : f.assignment[static_cast<size_t>(d)])
            g.assignment[static_cast<size_t>(d)].push_back(
                SimplexRef(r.dim, r.nd_index, reverse(r.degeneracy)));
    return g;
}

CoproductResult coproduct(const std::vector<SimplicialSet>& Xs) {
    CoproductResult out;
    int cap = 0;
    for (const auto& X : Xs) cap = std::max(cap, X.cap);
    out.sset.cap = cap;
    out.sset.nd.resize(static_cast<size_t>(cap) + 1);
    std::vector<std::vector<int>> offset(Xs.size(), std::vector<int>(static_cast<size_t>(cap) + 1, 0));
    for (size_t c = 0; c < Xs.size(); ++c) {
        for (int d = 0; d < static_cast<int>(Xs[c].nd.size()); ++d) {
            offset[c][static_cast<size_t>(d)] = out.sset.nd_count(d);
            for (int id = 0; id < Xs[c].nd_count(d); ++id) {
                NdSimplex s = Xs[c].simplex(d, id);
                for (SimplexRef& r : s.faces)
                    r.nd_index += offset[c][static_cast<size_t>(r.base_dim())];
                out.sset.nd[static_cast<size_t>(d)].push_back(std::move(s));
            }
        }
    }
    for (size_t c = 0; c < Xs.size(); ++c) {
        SimplicialMap j;
        j.source = Xs[c];
        j.target = out.sset;
        j.assignment.resize(Xs[c].nd.size());
        for (int d = 0; d < static_cast<int>(Xs[c].nd.size()); ++d)
            for (int id = 0; id < Xs[c].nd_count(d); ++id)
                j.assignment[static_cast<size_t>(d)].push_back(
                    nd_ref(d, id + offset[c][static_cast<size_t>(d)]));
        out.injections.push_back(std::move(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Isomorphism search and map enumeration
// ---------------------------------------------------------------------------

namespace {

struct IsoSearch {
    const SimplicialSet& X;
    const SimplicialSet& Y;
    const SimplicialMap* p;  // optional over-constraints
    const SimplicialMap* q;
    long budget;
    std::vector<std::vector<int>> assign;  // X nd -> Y nd id, or -1
    std::vector<std::vector<char>> used;   // Y nd flags

    bool out_of_budget = false;

    IsoSearch(const SimplicialSet& x, const SimplicialSet& y, const SimplicialMap* pp,
              const SimplicialMap* qq, long b)
        : X(x), Y(y), p(pp), q(qq), budget(b) {
        assign.resize(std::max(X.nd.size(), Y.nd.size()));
        used.resize(assign.size());
        for (size_t d = 0; d < assign.size(); ++d) {
            assign[d].assign(static_cast<size_t>(X.nd_count(static_cast<int>(d))), -1);
            used[d].assign(static_cast<size_t>(Y.nd_count(static_cast<int>(d))), 0);
        }
    }

    SimplexRef image_ref(const SimplexRef& r) const {
        // map a reference of X through the partial assignment (bases assigned)
        return act(Y, nd_ref(r.base_dim(), assign[static_cast<size_t>(r.base_dim())][static_cast<size_t>(r.nd_index)]),
                   r.degeneracy);
    }

    bool extend(int d, int id) {
        if (d >= static_cast<int>(X.nd.size()) || static_cast<size_t>(id) >= assign[static_cast<size_t>(d)].size()) {
            // advance to next slot
            int nd_ = d, ni = id;
            while (nd_ < static_cast<int>(assign.size()) &&
                   static_cast<size_t>(ni) >= assign[static_cast<size_t>(nd_)].size()) {
                ++nd_;
                ni = 0;
            }
            if (nd_ >= static_cast<int>(assign.size())) return true;  // complete
            return extend(nd_, ni);
        }
        const NdSimplex& s = X.simplex(d, id);
        for (int cand = 0; cand < Y.nd_count(d); ++cand) {
            if (used[static_cast<size_t>(d)][static_cast<size_t>(cand)]) continue;
            if (--budget < 0) {
                out_of_budget = true;
                return false;
            }
            if (d >= 1) {
                bool ok = true;
                const NdSimplex& t = Y.simplex(d, cand);
                for (int i = 0; i <= d && ok; ++i)
                    if (!(image_ref(s.faces[static_cast<size_t>(i)]) == t.faces[static_cast<size_t>(i)])) ok = false;
                if (!ok) continue;
            }
            if (p && q) {
                if (!(p->image_of_nd(d, id) == q->image_of_nd(d, cand))) continue;
            }
            assign[static_cast<size_t>(d)][static_cast<size_t>(id)] = cand;
            used[static_cast<size_t>(d)][static_cast<size_t>(cand)] = 1;
            if (extend(d, id + 1)) return true;
            if (out_of_budget) return false;
            assign[static_cast<size_t>(d)][static_cast<size_t>(id)] = -1;
            used[static_cast<size_t>(d)][static_cast<size_t>(cand)] = 0;
        }
        return false;
    }
};

}  // namespace

IsoResult is_isomorphic(const SimplicialSet& X, const SimplicialSet& Y, long budget) {
    IsoResult out;
    if (X.nd_counts() != Y.nd_counts()) {
        out.status = IsoResult::NotIso;
        return out;
    }
    IsoSearch search(X, Y, nullptr, nullptr, budget);
    bool found = search.extend(0, 0);
    if (search.out_of_budget) {
        out.status = IsoResult::Exhausted;
        return out;
    }
    if (!found) {
        out.status = IsoResult::NotIso;
        return out;
    }
    out.status = IsoResult::Iso;
    SimplicialMap w;
    w.source = X;
    w.target = Y;
    w.assignment.resize(X.nd.size());
    for (int d = 0; d < static_cast<int>(X.nd.size()); ++d)
        for (int id = 0; id < X.nd_count(d); ++id)
            w.assignment[static_cast<size_t>(d)].push_back(
                nd_ref(d, search.assign[static_cast<size_t>(d)][static_cast<size_t>(id)]));
    out.forward = std::move(w);
    return out;
}

IsoResult is_isomorphic_over(const SimplicialMap& p, const SimplicialMap& q, long budget) {
    IsoResult out;
    if (p.source.nd_counts() != q.source.nd_counts()) {
        out.status = IsoResult::NotIso;
        return out;
    }
    IsoSearch search(p.source, q.source, &p, &q, budget);
    bool found = search.extend(0, 0);
    if (search.out_of_budget) {
        out.status = IsoResult::Exhausted;
        return out;
    }
    if (!found) {
        out.status = IsoResult::NotIso;
        return out;
    }
    out.status = IsoResult::Iso;
    SimplicialMap w;
    w.source = p.source;
    w.target = q.source;
    w.assignment.resize(p.source.nd.size());
    for (int d = 0; d < static_cast<int>(p.source.nd.size()); ++d)
        for (int id = 0; id < p.source.nd_count(d); ++id)
            w.assignment[static_cast<size_t>(d)].push_back(
                nd_ref(d, search.assign[static_cast<size_t>(d)][static_cast<size_t>(id)]));
    out.forward = std::move(w);
    return out;
}

std::optional<std::vector<SimplicialMap>> enumerate_maps(const SimplicialSet& Z, const SimplicialSet& W,
                                                         const SimplicialMap* p, const SimplicialMap* q,
                                                         long budget, size_t max_count) {
    // Candidate images per slot are arbitrary references (not only nd ones).
    std::vector<std::vector<SimplexRef>> cands(Z.nd.size());
    for (int d = 0; d < static_cast<int>(Z.nd.size()); ++d) cands[static_cast<size_t>(d)] = all_simplices(W, d);
    std::vector<std::vector<SimplexRef>> assign(Z.nd.size());
    for (int d = 0; d < static_cast<int>(Z.nd.size()); ++d)
        assign[static_cast<size_t>(d)].assign(static_cast<size_t>(Z.nd_count(d)), SimplexRef{});
    std::vector<SimplicialMap> found;
    bool exhausted = false;

    std::function<bool(int, int)> rec = [&](int d, int id) -> bool {
        while (d < static_cast<int>(Z.nd.size()) && id >= Z.nd_count(d)) {
            ++d;
            id = 0;
        }
        if (d >= static_cast<int>(Z.nd.size())) {
            SimplicialMap m;
            m.source = Z;
            m.target = W;
            m.assignment = assign;
            found.push_back(std::move(m));
            return found.size() >= max_count;
        }
        const NdSimplex& s = Z.simplex(d, id);
        for (const SimplexRef& cand : cands[static_cast<size_t>(d)]) {
            if (--budget < 0) {
                exhausted = true;
                return true;
            }
            if (d >= 1) {
                bool ok = true;
                for (int i = 0; i <= d && ok; ++i) {
                    const SimplexRef& fr = s.faces[static_cast<size_t>(i)];
                    SimplexRef want = act(W, assign[static_cast<size_t>(fr.base_dim())][static_cast<size_t>(fr.nd_index)],
                                          fr.degeneracy);
                    if (!(act(W, cand, face_map(d, i)) == want)) ok = false;
                }
                if (!ok) continue;
            }
            if (p && q) {
                if (!(apply_map(*q, cand) == p->image_of_nd(d, id))) continue;
            }
            assign[static_cast<size_t>(d)][static_cast<size_t>(id)] = cand;
            if (rec(d, id + 1)) return true;
        }
        return false;
    };
    rec(0, 0);
    if (exhausted) return std::nullopt;
    return found;
}

}  // namespace simpcat
