#include "simpcat/covers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "simpcat/presheaf.hpp"

namespace simpcat {

namespace {

std::string ref_str(const SimplexRef& r) {
    std::string s = "(dim " + std::to_string(r.dim) + ", nd " + std::to_string(r.nd_index);
    if (r.is_degenerate()) {
        s += ", deg [";
        for (size_t i = 0; i < r.degeneracy.values.size(); ++i) {
            if (i) s += " ";
            s += std::to_string(r.degeneracy.values[i]);
        }
        s += "]";
    }
    return s + ")";
}

int initial_vertex(const SimplicialSet& X, const SimplexRef& s) {
    return simplex_vertex(X, s, 0).nd_index;
}

}  // namespace

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

int Representation::apply_word(int src_obj, const Word& w, int elem) const {
    if (src_obj < 0 || src_obj >= static_cast<int>(vertex_sets.size())) return -1;
    int at = src_obj;
    int cur = elem;
    if (cur < 0 || cur >= static_cast<int>(vertex_sets[static_cast<size_t>(at)].size())) return -1;
    for (int g : w) {
        if (g < 0 || g >= static_cast<int>(base.generators.size())) return -1;
        const Generator& gen = base.generators[static_cast<size_t>(g)];
        if (gen.src != at) return -1;
        const auto& f = edge_maps[static_cast<size_t>(g)];
        if (cur >= static_cast<int>(f.size())) return -1;
        cur = f[static_cast<size_t>(cur)];
        at = gen.tgt;
        if (cur < 0 || cur >= static_cast<int>(vertex_sets[static_cast<size_t>(at)].size())) return -1;
    }
    return cur;
}

ValidationReport validate_representation(const Representation& F) {
    ValidationReport rep;
    auto flag = [&](const std::string& m) {
        rep.ok = false;
        rep.violations.push_back(m);
    };
    ValidationReport basechk = validate_presentation(F.base);
    if (!basechk.ok) {
        for (const std::string& v : basechk.violations) flag("base: " + v);
        return rep;
    }
    if (F.vertex_sets.size() != F.base.objects.size()) {
        flag("one vertex set per object required");
        return rep;
    }
    if (F.edge_maps.size() != F.base.generators.size()) {
        flag("one edge map per generator required");
        return rep;
    }
    for (size_t g = 0; g < F.edge_maps.size(); ++g) {
        const Generator& gen = F.base.generators[g];
        const auto& f = F.edge_maps[g];
        if (f.size() != F.vertex_sets[static_cast<size_t>(gen.src)].size())
            flag("edge map of " + gen.name + " has the wrong domain size");
        int cod = static_cast<int>(F.vertex_sets[static_cast<size_t>(gen.tgt)].size());
        for (int val : f)
            if (val < 0 || val >= cod) flag("edge map of " + gen.name + " leaves its codomain");
    }
    if (!rep.ok) return rep;
    for (size_t i = 0; i < F.base.relations.size(); ++i) {
        const auto& [u, v] = F.base.relations[i];
        if (u.empty() && v.empty()) continue;
        int a = F.base.word_src(u, F.base.word_src(v));
        int card = static_cast<int>(F.vertex_sets[static_cast<size_t>(a)].size());
        for (int e = 0; e < card; ++e)
            if (F.apply_word(a, u, e) != F.apply_word(a, v, e)) {
                flag("relation " + std::to_string(i) + " breaks functoriality at element " +
                     std::to_string(e));
                break;
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cover checks
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> vertex_fibres(const SimplicialMap& p) {
    std::vector<std::vector<int>> out(static_cast<size_t>(p.target.nd_count(0)));
    for (int v = 0; v < p.source.nd_count(0); ++v)
        out[static_cast<size_t>(p.image_of_nd(0, v).nd_index)].push_back(v);
    return out;
}

namespace {

/// The bijection check at a chosen vertex of every simplex: e ↦ (vertex_k e, p e)
/// against pairs (v ∈ E₀, σ ∈ Xₙ) with p(v) = σ_k.
CoverReport vertex_comparison_cover(const SimplicialMap& p, bool every_vertex) {
    ValidationReport vr = validate_map(p);
    if (!vr.ok) throw std::invalid_argument("cover check: invalid map: " + vr.violations.front());
    if (p.source.cap != p.target.cap)
        throw std::invalid_argument("cover check: source and target caps differ");
    const SimplicialSet& E = p.source;
    const SimplicialSet& X = p.target;
    std::vector<std::vector<int>> fib = vertex_fibres(p);
    CoverReport rep;
    rep.ok = true;
    for (int n = 0; n <= X.cap; ++n) {
        bool okn = true;
        std::string why;
        std::vector<SimplexRef> Es = all_simplices(E, n);
        std::vector<SimplexRef> Xs = all_simplices(X, n);
        for (int k = 0; k <= (every_vertex ? n : 0); ++k) {
            std::map<std::pair<int, SimplexRef>, int> hits;
            for (const SimplexRef& e : Es) {
                auto key = std::make_pair(simplex_vertex(E, e, k).nd_index, apply_map(p, e));
                if (++hits[key] > 1 && okn) {
                    okn = false;
                    why = "dim " + std::to_string(n) + ", vertex " + std::to_string(k) +
                          ": two simplices lie over " + ref_str(key.second) +
                          " with the same marked vertex";
                }
            }
            for (const SimplexRef& s : Xs) {
                int sk = simplex_vertex(X, s, k).nd_index;
                for (int v : fib[static_cast<size_t>(sk)])
                    if (!hits.count({v, s}) && okn) {
                        okn = false;
                        why = "dim " + std::to_string(n) + ", vertex " + std::to_string(k) +
                              ": no lift of " + ref_str(s) + " at fibre vertex " +
                              std::to_string(v);
                    }
            }
            if (!okn) break;
        }
        rep.per_dim.push_back(okn);
        if (!okn && rep.fail_dim < 0) {
            rep.fail_dim = n;
            rep.detail = why;
        }
        rep.ok = rep.ok && okn;
    }
    return rep;
}

}  // namespace

CoverReport is_left_cover(const SimplicialMap& p) { return vertex_comparison_cover(p, false); }

CoverReport is_right_cover(const SimplicialMap& p) {
    CoverReport rep = vertex_comparison_cover(opposite_map(p), false);
    if (!rep.detail.empty()) rep.detail = "(checked on opposites) " + rep.detail;
    return rep;
}

CoverReport is_cover(const SimplicialMap& p) { return vertex_comparison_cover(p, true); }

// ---------------------------------------------------------------------------
// The fibre functor
// ---------------------------------------------------------------------------

Representation fibre(const SimplicialMap& p) {
    CoverReport lc = is_left_cover(p);
    if (!lc.ok) throw std::invalid_argument("fibre: not a left cover: " + lc.detail);
    const SimplicialSet& E = p.source;
    const SimplicialSet& X = p.target;
    Representation F;
    F.base = fundamental_category(X.cap >= 2 ? X : with_cap(X, 2));
    std::vector<std::vector<int>> fib = vertex_fibres(p);

    // element names: source vertex labels when globally unique, ids otherwise
    bool unique = true;
    {
        std::set<std::string> seen;
        for (int v = 0; v < E.nd_count(0); ++v) {
            const std::string& l = E.simplex(0, v).label;
            if (l.empty() || !seen.insert(l).second) unique = false;
        }
    }
    std::vector<int> pos(static_cast<size_t>(E.nd_count(0)), -1);
    for (const auto& f : fib) {
        F.vertex_sets.emplace_back();
        for (size_t i = 0; i < f.size(); ++i) {
            pos[static_cast<size_t>(f[i])] = static_cast<int>(i);
            F.vertex_sets.back().push_back(unique ? E.simplex(0, f[i]).label
                                                  : "e" + std::to_string(f[i]));
        }
    }

    std::vector<SimplexRef> E1 = all_simplices(E, 1);
    for (int g = 0; g < X.nd_count(1); ++g) {
        int src = X.simplex(1, g).faces[1].nd_index;
        SimplexRef gref = nd_ref(1, g);
        std::vector<int> action;
        for (int e : fib[static_cast<size_t>(src)]) {
            int found = -1;
            for (const SimplexRef& l : E1) {
                if (initial_vertex(E, l) != e) continue;
                if (!(apply_map(p, l) == gref)) continue;
                if (found >= 0) throw std::logic_error("fibre: edge lift not unique");
                found = simplex_vertex(E, l, 1).nd_index;
            }
            if (found < 0) throw std::logic_error("fibre: edge lift missing");
            action.push_back(pos[static_cast<size_t>(found)]);
        }
        F.edge_maps.push_back(std::move(action));
    }
    ValidationReport fr = validate_representation(F);
    if (!fr.ok) throw std::logic_error("fibre: extracted action not functorial: " + fr.violations.front());
    return F;
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

SimplicialMap reconstruct(const SimplicialSet& X, const Representation& F) {
    ValidationReport fr = validate_representation(F);
    if (!fr.ok) throw std::invalid_argument("reconstruct: " + fr.violations.front());
    if (static_cast<int>(F.base.objects.size()) != X.nd_count(0) ||
        static_cast<int>(F.base.generators.size()) != X.nd_count(1))
        throw std::invalid_argument("reconstruct: representation base does not match the space");
    for (int e = 0; e < X.nd_count(1); ++e) {
        const auto& faces = X.simplex(1, e).faces;
        const Generator& g = F.base.generators[static_cast<size_t>(e)];
        if (g.src != faces[1].nd_index || g.tgt != faces[0].nd_index)
            throw std::invalid_argument("reconstruct: generator endpoints disagree with the edges");
    }

    int W = X.cap;
    std::vector<std::vector<SimplexRef>> refs(static_cast<size_t>(W) + 1);
    std::vector<std::vector<int>> off(static_cast<size_t>(W) + 1);
    ExplicitPresheaf P;
    P.init(W);
    for (int n = 0; n <= W; ++n) {
        refs[static_cast<size_t>(n)] = all_simplices(X, n);
        int total = 0;
        for (const SimplexRef& s : refs[static_cast<size_t>(n)]) {
            off[static_cast<size_t>(n)].push_back(total);
            total += static_cast<int>(
                F.vertex_sets[static_cast<size_t>(initial_vertex(X, s))].size());
        }
        P.card[static_cast<size_t>(n)] = total;
    }
    auto fib_size = [&](int n, int j) {
        return static_cast<int>(
            F.vertex_sets[static_cast<size_t>(initial_vertex(X, refs[static_cast<size_t>(n)][static_cast<size_t>(j)]))]
                .size());
    };
    auto transport = [&](int n, int j, int u) {
        SimplexRef e01 =
            evaluate(X, refs[static_cast<size_t>(n)][static_cast<size_t>(j)], OrdinalMap(1, n, {0, 1}));
        if (e01.is_degenerate()) return u;
        return F.edge_maps[static_cast<size_t>(e01.nd_index)][static_cast<size_t>(u)];
    };
    for (int n = 1; n <= W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& row = P.face[static_cast<size_t>(n)][static_cast<size_t>(i)];
            for (size_t j = 0; j < refs[static_cast<size_t>(n)].size(); ++j) {
                SimplexRef b = evaluate(X, refs[static_cast<size_t>(n)][j], face_map(n, i));
                int jb = ref_index(X, b);
                for (int u = 0; u < fib_size(n, static_cast<int>(j)); ++u) {
                    int uu = i == 0 ? transport(n, static_cast<int>(j), u) : u;
                    row.push_back(off[static_cast<size_t>(n) - 1][static_cast<size_t>(jb)] + uu);
                }
            }
        }
    for (int n = 0; n < W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& row = P.degen[static_cast<size_t>(n)][static_cast<size_t>(i)];
            for (size_t j = 0; j < refs[static_cast<size_t>(n)].size(); ++j) {
                SimplexRef b = evaluate(X, refs[static_cast<size_t>(n)][j], degeneracy_map(n, i));
                int jb = ref_index(X, b);
                for (int u = 0; u < fib_size(n, static_cast<int>(j)); ++u)
                    row.push_back(off[static_cast<size_t>(n) + 1][static_cast<size_t>(jb)] + u);
            }
        }

    auto decode = [&](int n, int elt) {
        int j = static_cast<int>(std::upper_bound(off[static_cast<size_t>(n)].begin(),
                                                  off[static_cast<size_t>(n)].end(), elt) -
                                 off[static_cast<size_t>(n)].begin()) -
                1;
        return std::make_pair(j, elt - off[static_cast<size_t>(n)][static_cast<size_t>(j)]);
    };
    CanonResult canon = canonicalize(P, [&](int n, int elt) {
        auto [j, u] = decode(n, elt);
        const SimplexRef& s = refs[static_cast<size_t>(n)][static_cast<size_t>(j)];
        std::string elem =
            F.vertex_sets[static_cast<size_t>(initial_vertex(X, s))][static_cast<size_t>(u)];
        if (s.is_degenerate()) return std::string("deg:") + elem;
        return X.simplex(n, s.nd_index).label + ":" + elem;
    });
    SimplicialMap out;
    out.source = canon.sset;
    out.target = X;
    out.assignment.resize(static_cast<size_t>(W) + 1);
    for (int n = 0; n <= W; ++n)
        for (int id = 0; id < canon.sset.nd_count(n); ++id) {
            auto [j, u] = decode(n, canon.nd_elt[static_cast<size_t>(n)][static_cast<size_t>(id)]);
            (void)u;
            out.assignment[static_cast<size_t>(n)].push_back(refs[static_cast<size_t>(n)][static_cast<size_t>(j)]);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Universal left cover
// ---------------------------------------------------------------------------

UniversalCoverResult universal_left_cover(const SimplicialSet& X, int x, int hom_bound) {
    if (x < 0 || x >= X.nd_count(0)) throw std::out_of_range("universal_left_cover: no such vertex");
    CatPresentation tau = fundamental_category(X.cap >= 2 ? X : with_cap(X, 2));
    RewriteSystem rs = complete_rewriting(tau);
    std::vector<HomSet> homs = hom_sets_from(tau, rs, x, hom_bound);

    UniversalCoverResult out;
    out.hom_bound = hom_bound;
    for (const HomSet& h : homs)
        if (h.status != HomSet::Finite) out.truncated = true;

    std::vector<std::map<Word, int>> widx(homs.size());
    for (size_t v = 0; v < homs.size(); ++v)
        for (size_t i = 0; i < homs[v].words.size(); ++i)
            widx[v][homs[v].words[i]] = static_cast<int>(i);

    int W = X.cap;
    std::vector<std::vector<SimplexRef>> refs(static_cast<size_t>(W) + 1);
    std::vector<std::vector<std::vector<bool>>> alive(static_cast<size_t>(W) + 1);
    for (int n = 0; n <= W; ++n) {
        refs[static_cast<size_t>(n)] = all_simplices(X, n);
        for (const SimplexRef& s : refs[static_cast<size_t>(n)])
            alive[static_cast<size_t>(n)].push_back(std::vector<bool>(
                homs[static_cast<size_t>(initial_vertex(X, s))].words.size(), true));
    }

    // the face of (σ, w): d_i keeps w for i > 0; d₀ composes with the 0→1 edge
    auto face_word_index = [&](int n, int j, int wi, int i, int* jb_out) -> int {
        const SimplexRef& s = refs[static_cast<size_t>(n)][static_cast<size_t>(j)];
        SimplexRef b = evaluate(X, s, face_map(n, i));
        int jb = ref_index(X, b);
        *jb_out = jb;
        int v0 = initial_vertex(X, s);
        if (i > 0) return wi;  // the initial vertex is preserved
        SimplexRef e01 = evaluate(X, s, OrdinalMap(1, n, {0, 1}));
        Word w = homs[static_cast<size_t>(v0)].words[static_cast<size_t>(wi)];
        if (!e01.is_degenerate()) w.push_back(e01.nd_index);
        w = normalize(rs, std::move(w));
        int bv = initial_vertex(X, b);
        auto it = widx[static_cast<size_t>(bv)].find(w);
        return it == widx[static_cast<size_t>(bv)].end() ? -1 : it->second;
    };

    // prune to the largest subfamily closed under faces and degeneracies
    bool changed = true;
    while (changed) {
        changed = false;
        for (int n = 1; n <= W; ++n)
            for (size_t j = 0; j < refs[static_cast<size_t>(n)].size(); ++j)
                for (size_t wi = 0; wi < alive[static_cast<size_t>(n)][j].size(); ++wi) {
                    if (!alive[static_cast<size_t>(n)][j][wi]) continue;
                    for (int i = 0; i <= n; ++i) {
                        int jb = -1;
                        int wb = face_word_index(n, static_cast<int>(j), static_cast<int>(wi), i, &jb);
                        if (wb < 0 || !alive[static_cast<size_t>(n) - 1][static_cast<size_t>(jb)]
                                            [static_cast<size_t>(wb)]) {
                            alive[static_cast<size_t>(n)][j][wi] = false;
                            changed = true;
                            break;
                        }
                    }
                }
        for (int n = 0; n < W; ++n)
            for (size_t j = 0; j < refs[static_cast<size_t>(n)].size(); ++j)
                for (size_t wi = 0; wi < alive[static_cast<size_t>(n)][j].size(); ++wi) {
                    if (!alive[static_cast<size_t>(n)][j][wi]) continue;
                    for (int i = 0; i <= n; ++i) {
                        SimplexRef b =
                            evaluate(X, refs[static_cast<size_t>(n)][j], degeneracy_map(n, i));
                        int jb = ref_index(X, b);
                        if (!alive[static_cast<size_t>(n) + 1][static_cast<size_t>(jb)][wi]) {
                            alive[static_cast<size_t>(n)][j][wi] = false;
                            changed = true;
                            break;
                        }
                    }
                }
    }

    // index the survivors and assemble the presheaf
    std::vector<std::vector<std::vector<int>>> idx(static_cast<size_t>(W) + 1);
    ExplicitPresheaf P;
    P.init(W);
    for (int n = 0; n <= W; ++n) {
        int count = 0;
        for (size_t j = 0; j < refs[static_cast<size_t>(n)].size(); ++j) {
            idx[static_cast<size_t>(n)].emplace_back();
            for (size_t wi = 0; wi < alive[static_cast<size_t>(n)][j].size(); ++wi)
                idx[static_cast<size_t>(n)].back().push_back(
                    alive[static_cast<size_t>(n)][j][wi] ? count++ : -1);
        }
        P.card[static_cast<size_t>(n)] = count;
    }
    std::vector<std::vector<std::pair<int, int>>> of_elt(static_cast<size_t>(W) + 1);
    for (int n = 0; n <= W; ++n) {
        of_elt[static_cast<size_t>(n)].resize(static_cast<size_t>(P.card[static_cast<size_t>(n)]));
        for (size_t j = 0; j < idx[static_cast<size_t>(n)].size(); ++j)
            for (size_t wi = 0; wi < idx[static_cast<size_t>(n)][j].size(); ++wi) {
                int e = idx[static_cast<size_t>(n)][j][wi];
                if (e >= 0)
                    of_elt[static_cast<size_t>(n)][static_cast<size_t>(e)] = {static_cast<int>(j),
                                                                              static_cast<int>(wi)};
            }
    }
    for (int n = 1; n <= W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& row = P.face[static_cast<size_t>(n)][static_cast<size_t>(i)];
            for (const auto& [j, wi] : of_elt[static_cast<size_t>(n)]) {
                int jb = -1;
                int wb = face_word_index(n, j, wi, i, &jb);
                row.push_back(idx[static_cast<size_t>(n) - 1][static_cast<size_t>(jb)][static_cast<size_t>(wb)]);
            }
        }
    for (int n = 0; n < W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& row = P.degen[static_cast<size_t>(n)][static_cast<size_t>(i)];
            for (const auto& [j, wi] : of_elt[static_cast<size_t>(n)]) {
                SimplexRef b = evaluate(X, refs[static_cast<size_t>(n)][static_cast<size_t>(j)],
                                        degeneracy_map(n, i));
                int jb = ref_index(X, b);
                row.push_back(idx[static_cast<size_t>(n) + 1][static_cast<size_t>(jb)][static_cast<size_t>(wi)]);
            }
        }

    CanonResult canon = canonicalize(P, [&](int n, int elt) {
        auto [j, wi] = of_elt[static_cast<size_t>(n)][static_cast<size_t>(elt)];
        const SimplexRef& s = refs[static_cast<size_t>(n)][static_cast<size_t>(j)];
        const Word& w =
            homs[static_cast<size_t>(initial_vertex(X, s))].words[static_cast<size_t>(wi)];
        std::string base =
            s.is_degenerate() ? std::string("deg") : X.simplex(n, s.nd_index).label;
        return base + ":" + tau.show_word(w);
    });
    out.cover.source = canon.sset;
    out.cover.target = X;
    out.cover.assignment.resize(static_cast<size_t>(W) + 1);
    for (int n = 0; n <= W; ++n)
        for (int id = 0; id < canon.sset.nd_count(n); ++id) {
            auto [j, wi] =
                of_elt[static_cast<size_t>(n)]
                      [static_cast<size_t>(canon.nd_elt[static_cast<size_t>(n)][static_cast<size_t>(id)])];
            (void)wi;
            out.cover.assignment[static_cast<size_t>(n)].push_back(
                refs[static_cast<size_t>(n)][static_cast<size_t>(j)]);
        }

    // basepoint: the identity word over x
    {
        int jx = -1;
        for (size_t j = 0; j < refs[0].size(); ++j)
            if (refs[0][j].nd_index == x) jx = static_cast<int>(j);
        int raw = idx[0][static_cast<size_t>(jx)][static_cast<size_t>(widx[static_cast<size_t>(x)].at(Word{}))];
        out.basepoint = canon.elt_ref[0][static_cast<size_t>(raw)].nd_index;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Round trips
// ---------------------------------------------------------------------------

RoundTripReport roundtrip_representation(const SimplicialSet& X, const Representation& F) {
    RoundTripReport rep;
    SimplicialMap E = reconstruct(X, F);
    CoverReport lc = is_left_cover(E);
    if (!lc.ok) {
        rep.detail = "reconstruction is not a left cover: " + lc.detail;
        return rep;
    }
    Representation G = fibre(E);
    int nobj = static_cast<int>(F.vertex_sets.size());
    for (int v = 0; v < nobj; ++v)
        if (F.vertex_sets[static_cast<size_t>(v)].size() != G.vertex_sets[static_cast<size_t>(v)].size()) {
            rep.detail = "fibre sizes differ at object " + std::to_string(v);
            return rep;
        }
    // search for per-object bijections commuting with every generator
    std::vector<std::vector<int>> bij(static_cast<size_t>(nobj));
    auto consistent = [&](int upto) {
        for (size_t g = 0; g < F.base.generators.size(); ++g) {
            const Generator& gen = F.base.generators[g];
            if (gen.src > upto || gen.tgt > upto) continue;
            const auto& bs = bij[static_cast<size_t>(gen.src)];
            const auto& bt = bij[static_cast<size_t>(gen.tgt)];
            for (size_t u = 0; u < bs.size(); ++u)
                if (bt[static_cast<size_t>(F.edge_maps[g][u])] !=
                    G.edge_maps[g][static_cast<size_t>(bs[u])])
                    return false;
        }
        return true;
    };
    std::function<bool(int)> search = [&](int v) -> bool {
        if (v == nobj) return true;
        std::vector<int> perm(F.vertex_sets[static_cast<size_t>(v)].size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bij[static_cast<size_t>(v)] = perm;
            if (consistent(v) && search(v + 1)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        bij[static_cast<size_t>(v)].clear();
        return false;
    };
    if (!search(0)) {
        rep.detail = "no natural isomorphism between the representation and its round trip";
        return rep;
    }
    rep.ok = true;
    rep.detail = "round trip exact";
    return rep;
}

RoundTripReport roundtrip_cover(const SimplicialMap& p) {
    RoundTripReport rep;
    Representation F = fibre(p);
    SimplicialMap E2 = reconstruct(p.target, F);
    IsoResult iso = is_isomorphic_over(p, E2);
    if (iso.status == IsoResult::Iso) {
        rep.ok = true;
        rep.detail = "round trip exact";
    } else {
        rep.detail = iso.status == IsoResult::Exhausted
                         ? "isomorphism search over the base exhausted its budget"
                         : "reconstruction of the fibre is not isomorphic over the base";
    }
    return rep;
}

RecFibReport verify_recfib(const SimplicialSet& X, const std::vector<Representation>& reps,
                           const std::vector<SimplicialMap>& covers) {
    RecFibReport out;
    for (size_t i = 0; i < reps.size(); ++i) {
        RoundTripReport r = roundtrip_representation(X, reps[i]);
        out.lines.push_back("representation " + std::to_string(i) + ": " +
                            (r.ok ? "ok" : "FAIL: " + r.detail));
        out.ok = out.ok && r.ok;
    }
    for (size_t i = 0; i < covers.size(); ++i) {
        RoundTripReport r = roundtrip_cover(covers[i]);
        out.lines.push_back("cover " + std::to_string(i) + ": " +
                            (r.ok ? "ok" : "FAIL: " + r.detail));
        out.ok = out.ok && r.ok;
    }
    return out;
}

MonodromyReport pi1_cover_correspondence(const SimplicialMap& p) {
    MonodromyReport rep;
    rep.left = is_left_cover(p);
    rep.cover = is_cover(p);
    if (rep.left.ok) {
        Representation F = fibre(p);
        rep.checked_monodromy = true;
        rep.all_bijective = true;
        for (size_t g = 0; g < F.edge_maps.size(); ++g) {
            const Generator& gen = F.base.generators[g];
            bool bij = F.vertex_sets[static_cast<size_t>(gen.src)].size() ==
                       F.vertex_sets[static_cast<size_t>(gen.tgt)].size();
            std::set<int> image(F.edge_maps[g].begin(), F.edge_maps[g].end());
            bij = bij && image.size() == F.edge_maps[g].size();
            if (!bij) {
                rep.all_bijective = false;
                rep.nonbijective.push_back(static_cast<int>(g));
            }
        }
    }
    rep.agree = rep.cover.ok == (rep.left.ok && rep.all_bijective);
    return rep;
}

// ---------------------------------------------------------------------------
// Pullback
// ---------------------------------------------------------------------------

PullbackResult pullback(const SimplicialMap& f, const SimplicialMap& g) {
    if (f.target.cap != g.target.cap || f.target.nd_counts() != g.target.nd_counts())
        throw std::invalid_argument("pullback: maps do not share a target");
    const SimplicialSet& A = f.source;
    const SimplicialSet& B = g.source;
    int W = std::min(A.cap, B.cap);
    std::vector<std::vector<SimplexRef>> ra(static_cast<size_t>(W) + 1),
        rb(static_cast<size_t>(W) + 1);
    std::vector<std::vector<std::pair<int, int>>> elems(static_cast<size_t>(W) + 1);
    std::vector<std::map<std::pair<int, int>, int>> find(static_cast<size_t>(W) + 1);
    ExplicitPresheaf P;
    P.init(W);
    for (int n = 0; n <= W; ++n) {
        ra[static_cast<size_t>(n)] = all_simplices(A, n);
        rb[static_cast<size_t>(n)] = all_simplices(B, n);
        for (size_t ia = 0; ia < ra[static_cast<size_t>(n)].size(); ++ia) {
            SimplexRef fa = apply_map(f, ra[static_cast<size_t>(n)][ia]);
            for (size_t ib = 0; ib < rb[static_cast<size_t>(n)].size(); ++ib)
                if (fa == apply_map(g, rb[static_cast<size_t>(n)][ib])) {
                    find[static_cast<size_t>(n)][{static_cast<int>(ia), static_cast<int>(ib)}] =
                        static_cast<int>(elems[static_cast<size_t>(n)].size());
                    elems[static_cast<size_t>(n)].emplace_back(static_cast<int>(ia),
                                                               static_cast<int>(ib));
                }
        }
        P.card[static_cast<size_t>(n)] = static_cast<int>(elems[static_cast<size_t>(n)].size());
    }
    auto locate = [&](int n, const SimplexRef& sa, const SimplexRef& sb) {
        return find[static_cast<size_t>(n)].at(
            {ref_index(A, sa), ref_index(B, sb)});
    };
    for (int n = 1; n <= W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& row = P.face[static_cast<size_t>(n)][static_cast<size_t>(i)];
            for (const auto& [ia, ib] : elems[static_cast<size_t>(n)])
                row.push_back(locate(n - 1,
                                     evaluate(A, ra[static_cast<size_t>(n)][static_cast<size_t>(ia)], face_map(n, i)),
                                     evaluate(B, rb[static_cast<size_t>(n)][static_cast<size_t>(ib)], face_map(n, i))));
        }
    for (int n = 0; n < W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& row = P.degen[static_cast<size_t>(n)][static_cast<size_t>(i)];
            for (const auto& [ia, ib] : elems[static_cast<size_t>(n)])
                row.push_back(locate(n + 1,
                                     evaluate(A, ra[static_cast<size_t>(n)][static_cast<size_t>(ia)], degeneracy_map(n, i)),
                                     evaluate(B, rb[static_cast<size_t>(n)][static_cast<size_t>(ib)], degeneracy_map(n, i))));
        }
    CanonResult canon = canonicalize(P, [&](int n, int elt) {
        const auto& [ia, ib] = elems[static_cast<size_t>(n)][static_cast<size_t>(elt)];
        const SimplexRef& sa = ra[static_cast<size_t>(n)][static_cast<size_t>(ia)];
        const SimplexRef& sb = rb[static_cast<size_t>(n)][static_cast<size_t>(ib)];
        std::string la = sa.is_degenerate() ? "deg" : A.simplex(n, sa.nd_index).label;
        std::string lb = sb.is_degenerate() ? "deg" : B.simplex(n, sb.nd_index).label;
        return "(" + la + "," + lb + ")";
    });
    PullbackResult out;
    out.sset = canon.sset;
    out.to_left.source = canon.sset;
    out.to_left.target = A;
    out.to_left.assignment.resize(static_cast<size_t>(W) + 1);
    out.to_right.source = canon.sset;
    out.to_right.target = B;
    out.to_right.assignment.resize(static_cast<size_t>(W) + 1);
    for (int n = 0; n <= W; ++n)
        for (int id = 0; id < canon.sset.nd_count(n); ++id) {
            const auto& [ia, ib] =
                elems[static_cast<size_t>(n)]
                     [static_cast<size_t>(canon.nd_elt[static_cast<size_t>(n)][static_cast<size_t>(id)])];
            out.to_left.assignment[static_cast<size_t>(n)].push_back(
                ra[static_cast<size_t>(n)][static_cast<size_t>(ia)]);
            out.to_right.assignment[static_cast<size_t>(n)].push_back(
                rb[static_cast<size_t>(n)][static_cast<size_t>(ib)]);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Named example
// ---------------------------------------------------------------------------

SimplicialMap circle_double_cover() {
    SimplicialSet E;
    E.cap = 2;
    E.nd.resize(3);
    E.nd[0].push_back(NdSimplex{"n", {}});
    E.nd[0].push_back(NdSimplex{"s", {}});
    E.nd[1].push_back(NdSimplex{"a0", {nd_ref(0, 1), nd_ref(0, 0)}});  // n → s
    E.nd[1].push_back(NdSimplex{"a1", {nd_ref(0, 0), nd_ref(0, 1)}});  // s → n
    SimplicialMap p;
    p.source = E;
    p.target = circle();
    p.assignment = {{nd_ref(0, 0), nd_ref(0, 0)}, {nd_ref(1, 0), nd_ref(1, 0)}, {}};
    return p;
}

}  // namespace simpcat
