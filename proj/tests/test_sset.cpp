#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "simpcat/presheaf.hpp"
#include "simpcat/sset.hpp"

using namespace simpcat;

namespace {

OrdinalMap random_map(std::mt19937_64& rng, int m, int n) {
    std::vector<int> vals(static_cast<size_t>(m) + 1);
    std::uniform_int_distribution<int> pick(0, n);
    for (int& v : vals) v = pick(rng);
    std::sort(vals.begin(), vals.end());
    return OrdinalMap(m, n, std::move(vals));
}

}  // namespace

TEST_CASE("standard simplices and subobjects") {
    SECTION("counts and labels of the standard simplex") {
        SimplicialSet d3 = standard_simplex(3);
        REQUIRE(d3.cap == 3);
        REQUIRE(d3.nd_counts() == std::vector<int>{4, 6, 4, 1});
        REQUIRE(validate(d3).ok);
        SimplicialSet d2 = standard_simplex(2);
        REQUIRE(d2.simplex(0, 1).label == "1");
        REQUIRE(d2.simplex(1, 0).label == "01");
        REQUIRE(d2.simplex(1, 1).label == "02");
        REQUIRE(d2.simplex(1, 2).label == "12");
        REQUIRE(d2.simplex(2, 0).label == "012");
    }
    SECTION("boundary, horn, spine") {
        REQUIRE(boundary(3).nd_counts() == std::vector<int>{4, 6, 4});
        REQUIRE(boundary(3).cap == 2);
        REQUIRE(horn(2, 1).nd_counts() == std::vector<int>{3, 2});
        REQUIRE(horn(3, 0).nd_counts() == std::vector<int>{4, 6, 3});
        REQUIRE(spine(4).nd_counts() == std::vector<int>{5, 4});
        REQUIRE(validate(horn(3, 1)).ok);
        REQUIRE(validate(spine(4)).ok);
        // the inner 2-horn and the 2-spine are the same subobject of Δ²
        SimplicialSet h = horn(2, 1), sp = spine(2);
        REQUIRE(h.nd_counts() == sp.nd_counts());
        REQUIRE(is_isomorphic(h, sp).status == IsoResult::Iso);
    }
    SECTION("inclusions validate") {
        REQUIRE(validate_map(boundary_inclusion(3)).ok);
        REQUIRE(validate_map(horn_inclusion(3, 2)).ok);
        REQUIRE(validate_map(spine_inclusion(3)).ok);
        REQUIRE(validate_map(vertex_inclusion(2, 1)).ok);
        REQUIRE(vertex_inclusion(2, 1).source.cap == 2);
    }
    SECTION("circle and walking retraction") {
        REQUIRE(circle().nd_counts() == std::vector<int>{1, 1});
        REQUIRE(circle().cap == 2);
        REQUIRE(validate(circle()).ok);
        SimplicialSet R = walking_retraction();
        REQUIRE(R.cap == 2);
        REQUIRE(R.nd_counts() == std::vector<int>{2, 2, 1});
        REQUIRE(validate(R).ok);
    }
}

TEST_CASE("walking retraction has the advertised incidences") {
    SimplicialSet R = walking_retraction();
    int v0 = *R.vertex_by_label("0");
    int v1 = *R.vertex_by_label("1");
    int ei = -1, er = -1;
    for (int e = 0; e < R.nd_count(1); ++e) {
        if (R.simplex(1, e).label == "i") ei = e;
        if (R.simplex(1, e).label == "r") er = e;
    }
    REQUIRE(ei >= 0);
    REQUIRE(er >= 0);
    // i: 0 -> 1  (faces of an edge are [target, source])
    REQUIRE(R.simplex(1, ei).faces[0] == nd_ref(0, v1));
    REQUIRE(R.simplex(1, ei).faces[1] == nd_ref(0, v0));
    // r: 1 -> 0
    REQUIRE(R.simplex(1, er).faces[0] == nd_ref(0, v0));
    REQUIRE(R.simplex(1, er).faces[1] == nd_ref(0, v1));
    // t witnesses r∘i = id₀: d₀t = r, d₂t = i, d₁t = s₀(0)
    const NdSimplex& t = R.simplex(2, 0);
    REQUIRE(t.faces[0] == nd_ref(1, er));
    REQUIRE(t.faces[2] == nd_ref(1, ei));
    REQUIRE(t.faces[1] == SimplexRef(1, v0, degeneracy_map(0, 0)));
}

TEST_CASE("the presheaf action") {
    SECTION("all_simplices counts on the interval") {
        SimplicialSet d1 = standard_simplex(1);
        REQUIRE(all_simplices(d1, 0).size() == 2);
        REQUIRE(all_simplices(d1, 1).size() == 3);   // 2 degenerate + 1
        REQUIRE(all_simplices(d1, 2).size() == 4);   // nerve of [1] in dim 2
        REQUIRE(all_simplices(d1, 3).size() == 5);
    }
    SECTION("degenerate edge bookkeeping on the circle") {
        SimplicialSet s1 = circle();
        SimplexRef a = nd_ref(1, 0);
        SimplexRef s0a = act(s1, a, degeneracy_map(1, 0));
        REQUIRE(s0a == SimplexRef(2, 0, degeneracy_map(1, 0)));
        REQUIRE(act(s1, s0a, face_map(2, 0)) == a);
        REQUIRE(act(s1, s0a, face_map(2, 1)) == a);
        // d₂ s₀ = s₀ d₁: the degenerate edge on the one vertex
        REQUIRE(act(s1, s0a, face_map(2, 2)) == SimplexRef(1, 0, degeneracy_map(0, 0)));
    }
    SECTION("tabulated action satisfies every simplicial identity") {
        for (const SimplicialSet& X :
             {standard_simplex(3), horn(3, 1), circle(), walking_retraction(), opposite(walking_retraction())}) {
            ExplicitPresheaf P = tabulate(X, 4);
            std::string why;
            bool ok = P.check_identities(&why);
            INFO(why);
            REQUIRE(ok);
        }
    }
    SECTION("functoriality on random composable pairs") {
        std::mt19937_64 rng(20240811);
        std::vector<SimplicialSet> menagerie = {standard_simplex(3), horn(3, 1), circle(),
                                                walking_retraction()};
        std::uniform_int_distribution<int> dim(0, 4);
        for (int trial = 0; trial < 300; ++trial) {
            const SimplicialSet& X = menagerie[static_cast<size_t>(trial) % menagerie.size()];
            int m = dim(rng), n = dim(rng), p = dim(rng);
            OrdinalMap a = random_map(rng, m, n);
            OrdinalMap b = random_map(rng, n, p);
            auto elts = all_simplices(X, p);
            std::uniform_int_distribution<size_t> pick(0, elts.size() - 1);
            SimplexRef s = elts[pick(rng)];
            REQUIRE(act(X, act(X, s, b), a) == act(X, s, compose(b, a)));
        }
    }
    SECTION("checked evaluation guards dimensions") {
        SimplicialSet s1 = circle();
        REQUIRE_THROWS_AS(evaluate(s1, nd_ref(1, 0), face_map(2, 0)), std::invalid_argument);
        REQUIRE_THROWS_AS(evaluate(s1, nd_ref(1, 0), OrdinalMap(3, 1, {0, 0, 1, 1})), std::out_of_range);
        REQUIRE(evaluate(s1, nd_ref(1, 0), degeneracy_map(1, 0)) ==
                SimplexRef(2, 0, degeneracy_map(1, 0)));
    }
    SECTION("generator words normalize like the composite map") {
        SimplicialSet d3 = standard_simplex(3);
        SimplexRef top = nd_ref(3, 0);
        // d₀ lands on {123}; its d₁ drops the middle vertex, giving the edge
        // {1,3}; the final s₀ fattens it to a degenerate 2-simplex
        SimplexRef r = ez_normalize(d3, top, {{SimplexOp::Face, 0}, {SimplexOp::Face, 1}, {SimplexOp::Degeneracy, 0}});
        REQUIRE(r.dim == 2);
        REQUIRE(r.base_dim() == 1);
        REQUIRE(d3.simplex(1, r.nd_index).label == "13");
        // s₀ then d₀ is the identity
        REQUIRE(ez_normalize(d3, top, {{SimplexOp::Degeneracy, 0}, {SimplexOp::Face, 0}}) == top);
        REQUIRE_THROWS_AS(ez_normalize(d3, top, std::vector<SimplexOp>{{SimplexOp::Face, 7}}),
                          std::invalid_argument);
    }
    SECTION("vertices of simplices") {
        SimplicialSet d2 = standard_simplex(2);
        SimplexRef top = nd_ref(2, 0);
        for (int k = 0; k <= 2; ++k) {
            SimplexRef v = simplex_vertex(d2, top, k);
            REQUIRE(d2.simplex(0, v.nd_index).label == std::to_string(k));
        }
    }
}

TEST_CASE("structural validation catches corruption") {
    SECTION("swapped face breaks the simplicial identity") {
        SimplicialSet bad = standard_simplex(2);
        std::swap(bad.simplex(2, 0).faces[0], bad.simplex(2, 0).faces[2]);
        ValidationReport rep = validate(bad);
        REQUIRE_FALSE(rep.ok);
        REQUIRE_FALSE(rep.violations.empty());
    }
    SECTION("dangling reference is reported, not dereferenced") {
        SimplicialSet bad = standard_simplex(2);
        bad.simplex(2, 0).faces[1] = nd_ref(1, 99);
        ValidationReport rep = validate(bad);
        REQUIRE_FALSE(rep.ok);
    }
    SECTION("face array of the wrong length") {
        SimplicialSet bad = standard_simplex(1);
        bad.simplex(1, 0).faces.pop_back();
        REQUIRE_FALSE(validate(bad).ok);
    }
}

TEST_CASE("maps, classification, composition") {
    SECTION("classifying maps validate and hit their simplex") {
        SimplicialSet R = walking_retraction();
        SimplicialMap c = classify(R, nd_ref(2, 0));
        REQUIRE(validate_map(c).ok);
        REQUIRE(c.image_of_nd(2, 0) == nd_ref(2, 0));
        SimplicialMap cd = classify(R, SimplexRef(1, 0, degeneracy_map(0, 0)));
        REQUIRE(validate_map(cd).ok);
    }
    SECTION("identity and composition") {
        SimplicialMap id = identity_map(standard_simplex(2));
        REQUIRE(validate_map(id).ok);
        SimplicialMap inc = boundary_inclusion(2);
        SimplicialMap both = compose_maps(id, inc);
        REQUIRE(validate_map(both).ok);
        REQUIRE(both.image_of_nd(1, 2) == inc.image_of_nd(1, 2));
    }
    SECTION("naturality transport of degenerate references") {
        SimplicialMap inc = spine_inclusion(2);
        SimplexRef deg(1, 0, degeneracy_map(0, 0));  // degenerate edge on vertex 0
        SimplexRef im = apply_map(inc, deg);
        REQUIRE(im.is_degenerate());
        REQUIRE(im.base_dim() == 0);
    }
}

TEST_CASE("products") {
    SECTION("the square") {
        ProductResult sq = product(standard_simplex(1), standard_simplex(1));
        REQUIRE(sq.sset.cap == 2);
        REQUIRE(sq.sset.nd_counts() == std::vector<int>{4, 5, 2});
        REQUIRE(validate(sq.sset).ok);
        REQUIRE(validate_map(sq.proj_left).ok);
        REQUIRE(validate_map(sq.proj_right).ok);
    }
    SECTION("truncation by the limit argument") {
        ProductResult sq1 = product(standard_simplex(1), standard_simplex(1), 1);
        REQUIRE(sq1.sset.cap == 1);
        REQUIRE(sq1.sset.nd_counts() == std::vector<int>{4, 5});
    }
    SECTION("unit and prism") {
        ProductResult unit = product(standard_simplex(2), standard_simplex(0));
        REQUIRE(unit.sset.nd_counts() == std::vector<int>{3, 3, 1});
        REQUIRE(is_isomorphic(unit.sset, standard_simplex(2)).status == IsoResult::Iso);
        ProductResult prism = product(standard_simplex(1), standard_simplex(2));
        REQUIRE(prism.sset.nd_counts() == std::vector<int>{6, 12, 10, 3});
        REQUIRE(validate(prism.sset).ok);
    }
    SECTION("pairing against the projections") {
        ProductResult sq = product(standard_simplex(1), standard_simplex(1));
        SimplicialMap diag = pair_map(sq, identity_map(standard_simplex(1)), identity_map(standard_simplex(1)));
        REQUIRE(validate_map(diag).ok);
        SimplicialMap back = compose_maps(sq.proj_left, diag);
        REQUIRE(back.image_of_nd(1, 0) == nd_ref(1, 0));
        // the diagonal edge of the square is non-degenerate
        REQUIRE_FALSE(diag.image_of_nd(1, 0).is_degenerate());
    }
    SECTION("universal property on a small test object") {
        ProductResult sq = product(standard_simplex(1), standard_simplex(1));
        // maps Δ¹ → Δ¹×Δ¹ correspond to pairs of maps Δ¹ → Δ¹ (3 each)
        auto into_product = enumerate_maps(standard_simplex(1), sq.sset);
        REQUIRE(into_product.has_value());
        REQUIRE(into_product->size() == 9);
    }
}

TEST_CASE("pushouts") {
    SECTION("collapsing the boundary of the interval gives the circle") {
        SimplicialMap f = boundary_inclusion(1);
        SimplicialMap g;
        g.source = f.source;
        g.target = standard_simplex(0);
        g.assignment.resize(1);
        g.assignment[0] = {nd_ref(0, 0), nd_ref(0, 0)};
        PushoutResult q = pushout(f, g);
        REQUIRE(q.sset.nd_counts() == std::vector<int>{1, 1});
        REQUIRE(validate(q.sset).ok);
        REQUIRE(is_isomorphic(q.sset, circle()).status == IsoResult::Iso);
        REQUIRE(validate_map(q.inj_left).ok);
        REQUIRE(validate_map(q.inj_right).ok);
    }
    SECTION("gluing two intervals end to start gives the 2-spine") {
        SimplicialMap f = vertex_inclusion(1, 1);
        SimplicialMap g = vertex_inclusion(1, 0);
        f.source = standard_simplex(0);  // shared source object, cap 0
        g.source = standard_simplex(0);
        PushoutResult q = pushout(f, g);
        REQUIRE(q.sset.nd_counts() == std::vector<int>{3, 2});
        REQUIRE(is_isomorphic(q.sset, spine(2)).status == IsoResult::Iso);
    }
    SECTION("mismatched sources are rejected") {
        SimplicialMap f = boundary_inclusion(1);
        SimplicialMap g = vertex_inclusion(1, 0);
        g.source = standard_simplex(0);
        REQUIRE_THROWS_AS(pushout(f, g), std::invalid_argument);
    }
    SECTION("a previously non-degenerate simplex may become degenerate") {
        // collapse the target edge of Δ² onto a vertex: the 02 and 01 edges glue
        SimplicialMap f;  // Δ⁰ ⊔ ... use the 12-edge inclusion as classify
        SimplicialSet d2 = standard_simplex(2);
        f = classify(d2, nd_ref(1, 2));  // Δ¹ → Δ², edge 12
        SimplicialMap g;
        g.source = f.source;
        g.target = standard_simplex(0);
        g.assignment.resize(2);
        g.assignment[0] = {nd_ref(0, 0), nd_ref(0, 0)};
        g.assignment[1] = {SimplexRef(1, 0, degeneracy_map(0, 0))};
        PushoutResult q = pushout(f, g);
        REQUIRE(validate(q.sset).ok);
        // pinched triangle: 0 and the merged point, two parallel edges 01 and
        // 02, and the triangle survives with its 12-face now degenerate
        REQUIRE(q.sset.nd_count(0) == 2);
        REQUIRE(q.sset.nd_count(1) == 2);
        REQUIRE(q.sset.nd_count(2) == 1);
        REQUIRE(q.sset.simplex(2, 0).faces[0].is_degenerate());
    }
}

TEST_CASE("skeleton, components, opposites, coproducts") {
    SECTION("skeleta") {
        REQUIRE(is_isomorphic(skeleton(standard_simplex(3), 2), boundary(3)).status == IsoResult::Iso);
        REQUIRE_THROWS_AS(skeleton(standard_simplex(2), 3), std::invalid_argument);
    }
    SECTION("path components") {
        CoproductResult two = coproduct({standard_simplex(2), standard_simplex(0)});
        REQUIRE(pi0(two.sset).count == 2);
        REQUIRE(pi0(circle()).count == 1);
        REQUIRE(pi0(spine(4)).count == 1);
        Pi0Result comps = pi0(two.sset);
        REQUIRE(comps.component[0] == comps.component[1]);
        REQUIRE(comps.component[0] != comps.component[3]);
    }
    SECTION("opposite reverses edges") {
        SimplicialSet op = opposite(standard_simplex(2));
        REQUIRE(validate(op).ok);
        // vertex 0 of the op-edge "01" is the old target, vertex 1
        SimplexRef v = simplex_vertex(op, nd_ref(1, 0), 0);
        REQUIRE(op.simplex(0, v.nd_index).label == "1");
        ExplicitPresheaf P = tabulate(opposite(walking_retraction()), 4);
        REQUIRE(P.check_identities());
    }
    SECTION("opposite is an involution and swaps outer horns") {
        SimplicialSet R = walking_retraction();
        REQUIRE(is_isomorphic(opposite(opposite(R)), R).status == IsoResult::Iso);
        REQUIRE(is_isomorphic(horn(2, 0), horn(2, 2)).status == IsoResult::NotIso);
        REQUIRE(is_isomorphic(opposite(horn(2, 0)), horn(2, 2)).status == IsoResult::Iso);
    }
    SECTION("coproduct injections") {
        CoproductResult c = coproduct({circle(), walking_retraction()});
        REQUIRE(c.sset.nd_counts() == std::vector<int>{3, 3, 1});
        REQUIRE(c.injections.size() == 2);
        REQUIRE(validate_map(c.injections[0]).ok);
        REQUIRE(validate_map(c.injections[1]).ok);
    }
}

TEST_CASE("isomorphism search and map enumeration") {
    SECTION("cap metadata is ignored, data decides") {
        REQUIRE(is_isomorphic(with_cap(circle(), 5), circle()).status == IsoResult::Iso);
    }
    SECTION("budget exhaustion is reported") {
        IsoResult r = is_isomorphic(standard_simplex(3), standard_simplex(3), 1);
        REQUIRE(r.status == IsoResult::Exhausted);
    }
    SECTION("witness maps validate") {
        IsoResult r = is_isomorphic(opposite(horn(2, 0)), horn(2, 2));
        REQUIRE(r.forward.has_value());
        REQUIRE(validate_map(*r.forward).ok);
    }
    SECTION("map counts into small targets") {
        auto vertex_maps = enumerate_maps(standard_simplex(0), standard_simplex(2));
        REQUIRE(vertex_maps->size() == 3);
        auto interval_maps = enumerate_maps(standard_simplex(1), standard_simplex(1));
        REQUIRE(interval_maps->size() == 3);
        auto more = enumerate_maps(standard_simplex(1), standard_simplex(2));
        REQUIRE(more->size() == 6);
        auto self = enumerate_maps(circle(), circle());
        REQUIRE(self->size() == 2);
        for (const SimplicialMap& m : *self) REQUIRE(validate_map(m).ok);
    }
}
