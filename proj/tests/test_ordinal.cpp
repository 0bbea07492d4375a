#include <catch2/catch_amalgamated.hpp>

#include "simpcat/ordinal.hpp"

using namespace simpcat;

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_CASE("elementary ordinal maps") {
    SECTION("face maps skip their index") {
        OrdinalMap d0 = face_map(2, 0);
        REQUIRE(d0.values == std::vector<int>{1, 2});
        OrdinalMap d1 = face_map(2, 1);
        REQUIRE(d1.values == std::vector<int>{0, 2});
        OrdinalMap d2 = face_map(2, 2);
        REQUIRE(d2.values == std::vector<int>{0, 1});
        REQUIRE(d0.is_injective());
        REQUIRE_FALSE(d0.is_surjective());
    }
    SECTION("degeneracy maps repeat their index") {
        OrdinalMap s0 = degeneracy_map(1, 0);
        REQUIRE(s0.values == std::vector<int>{0, 0, 1});
        OrdinalMap s1 = degeneracy_map(1, 1);
        REQUIRE(s1.values == std::vector<int>{0, 1, 1});
        REQUIRE(s0.is_surjective());
        REQUIRE_FALSE(s0.is_injective());
    }
    SECTION("vertex and edge picks") {
        REQUIRE(vertex_map(3, 2).values == std::vector<int>{2});
        REQUIRE(edge_map(3, 1, 3).values == std::vector<int>{1, 3});
    }
    SECTION("weak monotonicity is enforced") {
        REQUIRE_THROWS_AS(OrdinalMap(1, 1, {1, 0}), std::invalid_argument);
        REQUIRE_THROWS_AS(OrdinalMap(0, 1, {2}), std::invalid_argument);
    }
}

TEST_CASE("composition and the cosimplicial identities") {
    SECTION("composition acts by substitution") {
        OrdinalMap a(1, 2, {0, 2});
        OrdinalMap b(2, 1, {0, 0, 1});
        OrdinalMap c = compose(b, a);  // b after a
        REQUIRE(c.source_dim == 1);
        REQUIRE(c.target_dim == 1);
        REQUIRE(c.values == std::vector<int>{0, 1});
    }
    SECTION("d_i d_j = d_{j-1} d_i on simplices, i < j") {
        for (int n = 2; n <= 5; ++n)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i) {
                    // simplex-level composites correspond to the reversed map order
                    OrdinalMap lhs = compose(face_map(n, j), face_map(n - 1, i));
                    OrdinalMap rhs = compose(face_map(n, i), face_map(n - 1, j - 1));
                    REQUIRE(lhs == rhs);
                }
    }
    SECTION("s_i s_j = s_{j+1} s_i on simplices, i <= j") {
        for (int n = 0; n <= 4; ++n)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= j; ++i) {
                    OrdinalMap lhs = compose(degeneracy_map(n, j), degeneracy_map(n + 1, i));
                    OrdinalMap rhs = compose(degeneracy_map(n, i), degeneracy_map(n + 1, j + 1));
                    REQUIRE(lhs == rhs);
                }
    }
    SECTION("s_j then d_i mixed identities") {
        for (int n = 1; n <= 4; ++n)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i <= n; ++i) {
                    OrdinalMap lhs = compose(degeneracy_map(n - 1, j), face_map(n, i));
                    if (i == j || i == j + 1) {
                        REQUIRE(lhs == ordinal_identity(n - 1));
                    } else if (i < j) {
                        REQUIRE(lhs == compose(face_map(n - 1, i), degeneracy_map(n - 2, j - 1)));
                    } else {
                        REQUIRE(lhs == compose(face_map(n - 1, i - 1), degeneracy_map(n - 2, j)));
                    }
                }
    }
}

TEST_CASE("epi-mono factorization") {
    SECTION("recomposes and has the right classes, all maps up to [4]") {
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n)
                for (const OrdinalMap& a : all_ordinal_maps(m, n)) {
                    EpiMono em = epi_mono_factor(a);
                    REQUIRE(em.surj.is_surjective());
                    REQUIRE(em.inj.is_injective());
                    REQUIRE(compose(em.inj, em.surj) == a);
                }
    }
    SECTION("surjections and injections factor trivially") {
        EpiMono s = epi_mono_factor(degeneracy_map(2, 1));
        REQUIRE(s.inj.is_identity());
        REQUIRE(s.surj == degeneracy_map(2, 1));
        EpiMono d = epi_mono_factor(face_map(3, 2));
        REQUIRE(d.surj.is_identity());
        REQUIRE(d.inj == face_map(3, 2));
    }
}

TEST_CASE("enumeration of ordinal maps") {
    SECTION("hom set sizes match the binomial formula") {
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n)
                REQUIRE(static_cast<long>(all_ordinal_maps(m, n).size()) == binom(m + n + 1, m + 1));
    }
    SECTION("surjection counts match choose(n, n-k)") {
        for (int n = 0; n <= 5; ++n)
            for (int k = 0; k <= n; ++k) {
                auto surjs = all_surjections(n, k);
                REQUIRE(static_cast<long>(surjs.size()) == binom(n, n - k));
                for (const OrdinalMap& s : surjs) REQUIRE(s.is_surjective());
            }
    }
    SECTION("collapse positions biject with surjections") {
        for (int n = 0; n <= 5; ++n)
            for (int k = 0; k <= n; ++k)
                for (const OrdinalMap& s : all_surjections(n, k)) {
                    std::vector<int> pos = collapse_positions(s);
                    REQUIRE(static_cast<int>(pos.size()) == n - k);
                    REQUIRE(surjection_from_collapses(n, pos) == s);
                }
    }
}

TEST_CASE("order-reversing involution") {
    SECTION("is an involution") {
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (const OrdinalMap& a : all_ordinal_maps(m, n)) REQUIRE(reverse(reverse(a)) == a);
    }
    SECTION("swaps face and degeneracy indices end-for-end") {
        for (int n = 1; n <= 4; ++n)
            for (int i = 0; i <= n; ++i) REQUIRE(reverse(face_map(n, i)) == face_map(n, n - i));
        for (int n = 0; n <= 3; ++n)
            for (int i = 0; i <= n; ++i)
                REQUIRE(reverse(degeneracy_map(n, i)) == degeneracy_map(n, n - i));
    }
    SECTION("is contravariant-free: reverses composites covariantly") {
        OrdinalMap a(1, 2, {0, 2});
        OrdinalMap b(2, 3, {0, 0, 3});
        REQUIRE(reverse(compose(b, a)) == compose(reverse(b), reverse(a)));
    }
}
