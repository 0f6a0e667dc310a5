#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mantel/extremal.hpp"
#include "mantel/families.hpp"
#include "mantel/iso.hpp"

using namespace mantel;

TEST_SUITE_BEGIN("families");

namespace {

// Random pattern-free graph grown by greedy insertion in shuffled edge order.
RGraph random_free_graph(int n, int r, const TrianglePattern& p, std::mt19937_64& rng) {
    std::vector<Edge> pool = RGraph::complete(n, r).edges();
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Edge> chosen;
    for (const Edge& e : pool) {
        bool ok = true;
        for (std::size_t a = 0; a < chosen.size() && ok; ++a) {
            for (std::size_t b = a + 1; b < chosen.size() && ok; ++b) {
                if (triple_violates(chosen[a], chosen[b], e, p)) ok = false;
            }
        }
        if (ok && rng() % 4 != 0) chosen.push_back(e);
    }
    return RGraph(n, r, std::move(chosen));
}

Edge random_rset(int r, int universe, std::mt19937_64& rng) {
    std::vector<Vertex> all(universe);
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), rng);
    Edge e(all.begin(), all.begin() + r);
    std::sort(e.begin(), e.end());
    return e;
}

// Isomorphism-based oracle for T_{r,i} containment of a 3-edge triple.
bool single_T_oracle(const Edge& a, const Edge& b, const Edge& c, int r, int i) {
    if (a == b || b == c || a == c) return false;
    std::vector<Vertex> verts;
    for (const Edge* e : {&a, &b, &c}) verts.insert(verts.end(), e->begin(), e->end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> relabel(verts.back() + 1, 0);
    for (std::size_t k = 0; k < verts.size(); ++k) relabel[verts[k]] = static_cast<int>(k) + 1;
    auto map_edge = [&](const Edge& e) {
        Edge f;
        for (Vertex v : e) f.push_back(relabel[v]);
        return f;
    };
    RGraph triple(static_cast<int>(verts.size()), r, {map_edge(a), map_edge(b), map_edge(c)});
    if (triple.size() != 3) return false;
    return is_isomorphic(triple, drop_isolated(gen_T(r, i))).has_value();
}

}  // namespace

TEST_CASE("gen_T matches the displayed edge sets") {
    RGraph t31 = gen_T(3, 1);
    CHECK(t31.n() == 7);
    CHECK(t31.edges() == std::vector<Edge>{{1, 2, 3}, {1, 4, 5}, {2, 3, 4}});

    RGraph t32 = gen_T(3, 2);
    CHECK(t32.edges() == std::vector<Edge>{{1, 2, 3}, {1, 2, 4}, {3, 4, 5}});

    RGraph t42 = gen_T(4, 2);
    CHECK(t42.edges() == std::vector<Edge>{{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 7}});

    CHECK(gen_T(2, 1).edges() == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}});

    CHECK_THROWS_AS(gen_T(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_T(3, 3), std::invalid_argument);
}

TEST_CASE("C-triple predicate") {
    CHECK(is_C_triple({1, 2, 3}, {1, 2, 4}, {2, 3, 4}));        // K_4^{3-}
    CHECK_FALSE(is_C_triple({1, 2, 3}, {1, 4, 5}, {2, 3, 4}));  // |A^B| = 4 > 3
    CHECK(is_C_triple({1, 2}, {1, 3}, {2, 3}));                 // graph triangle
    CHECK_THROWS_AS(is_C_triple({1, 2}, {1, 2, 3}, {2, 3}), std::invalid_argument);
}

TEST_CASE("T-triple predicate") {
    CHECK(is_T_triple({1, 2, 3}, {1, 2, 4}, {2, 3, 4}));
    CHECK_FALSE(is_T_triple({1, 2, 3}, {4, 5, 6}, {7, 8, 9}));
    CHECK(is_T_triple({2, 3, 4}, {1, 2, 3}, {1, 4, 5}));  // roles inside T_{3,1}
}

TEST_CASE("weak-triple predicate") {
    CHECK(is_weak_triple({1, 2, 3}, {1, 4, 5}, {2, 3, 4}));
    // |C & (A^B)| = r equals |A^B|/2 exactly: strictness makes it false
    CHECK_FALSE(is_weak_triple({1, 2, 3}, {4, 5, 6}, {1, 2, 3}));
    CHECK(is_weak_triple({1, 2}, {1, 3}, {2, 3}));
}

TEST_CASE("single-T pattern round trips through the generator") {
    for (int r = 2; r <= 5; ++r) {
        for (int i = 1; i <= r - 1; ++i) {
            RGraph t = gen_T(r, i);
            const auto& es = t.edges();
            CHECK_MESSAGE(is_single_T_triple(es[0], es[1], es[2], i), "r=", r, " i=", i);
            // isomorphic index gives the same verdict
            CHECK(is_single_T_triple(es[0], es[1], es[2], r - i));
        }
    }
    // K_4^{3-} spans 4 vertices, every T_{3,i} spans 5: no match either way
    CHECK_FALSE(is_single_T_triple({1, 2, 3}, {1, 2, 4}, {2, 3, 4}, 1));
    CHECK_FALSE(is_single_T_triple({1, 2, 3}, {1, 2, 4}, {2, 3, 4}, 2));
}

TEST_CASE("single-T pattern agrees with the isomorphism oracle") {
    std::mt19937_64 rng(23);
    for (int r = 2; r <= 4; ++r) {
        for (int trial = 0; trial < 300; ++trial) {
            Edge a = random_rset(r, 2 * r + 1, rng);
            Edge b = random_rset(r, 2 * r + 1, rng);
            Edge c = random_rset(r, 2 * r + 1, rng);
            if (a == b || b == c || a == c) continue;
            for (int i = 1; i <= r - 1; ++i) {
                CHECK_MESSAGE(is_single_T_triple(a, b, c, i) == single_T_oracle(a, b, c, r, i),
                              "r=", r, " i=", i);
            }
        }
    }
}

TEST_CASE("is_free basics") {
    // the extremal object is T-free at every tested size
    for (int n : {3, 4, 5, 6, 7, 8, 9}) {
        CHECK(is_free(gen_turan(n, 3), TrianglePattern::tfam()).free);
    }
    for (int n : {2, 3, 4, 5, 6}) {
        CHECK(is_free(gen_turan(n, 2), TrianglePattern::tfam()).free);
    }

    FreenessResult own = is_free(gen_T(3, 1), TrianglePattern::delta());
    CHECK_FALSE(own.free);
    CHECK(own.witness[0] == Edge{1, 2, 3});
    CHECK(own.witness[1] == Edge{1, 4, 5});
    CHECK(own.witness[2] == Edge{2, 3, 4});
}

TEST_CASE("Fano freeness regression") {
    RGraph fano = gen_sts(7);
    // recorded from the exhaustive triple scan: two lines meet in one point,
    // so neither the C- nor the T-condition can be met
    CHECK(is_free(fano, TrianglePattern::cfam()).free);
    CHECK(is_free(fano, TrianglePattern::tfam()).free);
    CHECK(is_free(fano, TrianglePattern::delta()).free);
    CHECK(is_T_free_via_hom(fano));
}

TEST_CASE("T-freeness via homomorphisms") {
    CHECK(is_T_free_via_hom(RGraph(3, 3, {{1, 2, 3}})));
    CHECK(is_free(RGraph(3, 3, {{1, 2, 3}}), TrianglePattern::tfam()).free);

    RGraph t39 = gen_turan(9, 3);
    CHECK(is_T_free_via_hom(t39));
    CHECK(is_free(t39, TrianglePattern::tfam()).free);

    // blowing up a non-free pattern keeps it non-free (Fact: contrapositive)
    RGraph bad = blowup(drop_isolated(gen_T(3, 1)), {2, 1, 1, 1, 1});
    CHECK_FALSE(is_T_free_via_hom(bad));
    CHECK_FALSE(is_free(bad, TrianglePattern::tfam()).free);
}

TEST_CASE("oracle agreement on random graphs") {
    std::mt19937_64 rng(31);
    std::vector<Edge> pool = RGraph::complete(6, 3).edges();
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Edge> es;
        for (const Edge& e : pool) {
            if (rng() % 3 == 0) es.push_back(e);
        }
        RGraph h(6, 3, std::move(es));
        CHECK(is_free(h, TrianglePattern::tfam()).free == is_T_free_via_hom(h));
    }
}

TEST_CASE("family nesting") {
    // every Delta_r member triple is a T_r triple
    for (int r = 2; r <= 5; ++r) {
        for (int i = 1; i <= (r + 1) / 2; ++i) {
            RGraph t = gen_T(r, i);
            const auto& es = t.edges();
            CHECK(triple_violates(es[0], es[1], es[2], TrianglePattern::tfam()));
            // weakly triangle-free implies Delta_r-free: each T_{r,i} carries
            // a weak triple
            CHECK(triple_violates(es[0], es[1], es[2], TrianglePattern::weak()));
        }
    }
}

TEST_CASE("blowup invariance of T-freeness") {
    std::mt19937_64 rng(37);
    int checked = 0;
    while (checked < 200) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % (7 - r));
        RGraph h = random_free_graph(n, r, TrianglePattern::tfam(), rng);
        REQUIRE(is_free(h, TrianglePattern::tfam()).free);
        std::vector<int> sizes(h.n());
        int total = 0;
        for (int& s : sizes) {
            s = static_cast<int>(rng() % 3);  // zero sizes legal
            total += s;
        }
        if (total == 0) continue;
        RGraph b = blowup(h, sizes);
        CHECK(is_free(b, TrianglePattern::tfam()).free);
        ++checked;
    }
}

TEST_CASE("r = 2: all triangle notions coincide") {
    std::vector<Edge> pool = RGraph::complete(5, 2).edges();
    int total = 1 << pool.size();
    for (int mask = 0; mask < total; ++mask) {
        std::vector<Edge> es;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (mask >> k & 1) es.push_back(pool[k]);
        }
        RGraph h(5, 2, std::move(es));
        bool delta = is_free(h, TrianglePattern::delta()).free;
        CHECK(delta == is_free(h, TrianglePattern::cfam()).free);
        CHECK(delta == is_free(h, TrianglePattern::tfam()).free);
        CHECK(delta == is_free(h, TrianglePattern::weak()).free);
        // independent triangle test
        bool tri_free = true;
        for (int a = 1; a <= 5; ++a) {
            for (int b = a + 1; b <= 5; ++b) {
                for (int c = b + 1; c <= 5; ++c) {
                    if (h.has_edge({a, b}) && h.has_edge({b, c}) && h.has_edge({a, c})) {
                        tri_free = false;
                    }
                }
            }
        }
        CHECK(delta == tri_free);
    }
}

TEST_CASE("links of T-free graphs are T-free one level down") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        int r = 3 + static_cast<int>(rng() % 2);
        int n = r + 2 + static_cast<int>(rng() % 3);
        RGraph h = random_free_graph(n, r, TrianglePattern::tfam(), rng);
        for (Vertex v = 1; v <= h.n(); ++v) {
            CHECK(is_free(link(h, v), TrianglePattern::tfam()).free);
        }
    }
}

TEST_CASE("2-covered T-free graphs are partial Steiner systems") {
    CHECK(is_partial_steiner(gen_sts(7)));
    CHECK(is_partial_steiner(RGraph(3, 3, {{1, 2, 3}})));
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        RGraph h = random_free_graph(n, 3, TrianglePattern::tfam(), rng);
        if (is_2_covered(h)) CHECK(is_partial_steiner(h));
    }
}

TEST_CASE("pattern names") {
    CHECK(TrianglePattern::parse("delta").kind == PatternKind::Delta);
    CHECK(TrianglePattern::parse("cfam").kind == PatternKind::CFamily);
    CHECK(TrianglePattern::parse("tfam").kind == PatternKind::TFamily);
    CHECK(TrianglePattern::parse("weak").kind == PatternKind::Weak);
    TrianglePattern s = TrianglePattern::parse("t:4:3");
    CHECK(s.kind == PatternKind::Single);
    CHECK(s.r == 4);
    CHECK(s.i == 1);  // normalized to the isomorphic low index
    CHECK(s.name() == "t:4:1");
    CHECK_THROWS_AS(TrianglePattern::parse("nope"), std::invalid_argument);
    CHECK_THROWS_AS(TrianglePattern::parse("t:3:9"), std::invalid_argument);
}

TEST_SUITE_END();
