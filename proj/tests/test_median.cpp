#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarsegeom/median_structures.hpp"

using namespace coarsegeom;

TEST_CASE("exact cube median oracle agrees with the slow skeleton median") {
    for (const auto& s : {make_grid(3, 2), make_regular_tree(3, 2)}) {
        auto mu = MedianOracle::exact_cube_median(s);
        REQUIRE(mu.size() == s.num_vertices());
        for (std::size_t a = 0; a < mu.size(); ++a)
            for (std::size_t b = 0; b < mu.size(); ++b)
                for (std::size_t c = 0; c < mu.size(); ++c)
                    CHECK(mu.mu(a, b, c) ==
                          s.median(static_cast<Vertex>(a), static_cast<Vertex>(b),
                                   static_cast<Vertex>(c)));
    }
}

TEST_CASE("median graphs have zero coarse-median defect") {
    for (const auto& s : {make_grid(2, 2), make_regular_tree(3, 2)}) {
        auto mu = MedianOracle::exact_cube_median(s);
        auto d = coarse_median_defect(mu);
        CHECK(d.axiom1_ok);
        CHECK_FALSE(d.axiom1_witness.has_value());
        CHECK(d.C2 == 0);
        CHECK(d.C3 <= 1); // the median map is 1-Lipschitz in each argument
    }
}

TEST_CASE("a corrupted table is caught with a witness") {
    auto s = make_path(3);
    auto good = MedianOracle::exact_cube_median(s);
    auto bad = MedianOracle::from_table(
        s.distance_matrix(), [&](std::size_t a, std::size_t b, std::size_t c) {
            if (a == 0 && b == 0 && c == 3) return std::size_t{3}; // mu(a,a,b) != a
            return good.mu(a, b, c);
        });
    auto d = coarse_median_defect(bad);
    CHECK_FALSE(d.axiom1_ok);
    REQUIRE(d.axiom1_witness.has_value());
}

TEST_CASE("median map and path defects") {
    auto g = make_grid(2, 2);
    auto mu = MedianOracle::exact_cube_median(g);
    SUBCASE("identity map has zero defect") {
        std::vector<std::size_t> id(mu.size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        CHECK(median_map_defect(id, mu, mu) == 0);
    }
    SUBCASE("constant map has zero defect too (medians collapse)") {
        std::vector<std::size_t> cst(mu.size(), 0);
        CHECK(median_map_defect(cst, mu, mu) == 0);
    }
    SUBCASE("size mismatch is rejected") {
        CHECK_THROWS_AS(median_map_defect({0, 1}, mu, mu), validation_error);
    }
    SUBCASE("points on a common geodesic have zero path defect") {
        auto path = g.geodesic(0, static_cast<Vertex>(g.num_vertices() - 1));
        std::vector<std::size_t> p(path.begin(), path.end());
        CHECK(median_path_defect(p, mu) == 0);
    }
    SUBCASE("a backtracking sequence has positive path defect") {
        std::vector<std::size_t> p{0, static_cast<std::size_t>(g.num_vertices() - 1), 0};
        CHECK(median_path_defect(p, mu) > 0);
    }
}

namespace {

// caterpillar: a ray r0..r_m with one extra leaf b_n hanging at depth n;
// h_n climbs the ray to depth n then exits to the leaf
struct Caterpillar {
    CubeSkeleton skel;
    std::vector<std::vector<std::size_t>> h_family; // h_1..h_{m-1}
    std::vector<std::size_t> h;                     // the ray itself
    static Caterpillar build(std::size_t m) {
        std::vector<Edge> edges;
        for (Vertex i = 0; i < m; ++i) edges.push_back({i, static_cast<Vertex>(i + 1)});
        std::vector<Vertex> leaf(m, 0);
        Vertex next = static_cast<Vertex>(m + 1);
        for (std::size_t n = 1; n < m; ++n) {
            leaf[n] = next;
            edges.push_back({static_cast<Vertex>(n), next++});
        }
        Caterpillar c{CubeSkeleton::build(next, std::move(edges)), {}, {}};
        for (std::size_t i = 0; i <= m; ++i) c.h.push_back(i);
        for (std::size_t n = 1; n < m; ++n) {
            std::vector<std::size_t> hn;
            for (std::size_t i = 0; i <= n; ++i) hn.push_back(i);
            hn.push_back(leaf[n]);
            c.h_family.push_back(std::move(hn));
        }
        return c;
    }
};

} // namespace

TEST_CASE("convergence score sees the branch depth exactly") {
    auto c = Caterpillar::build(7);
    auto mu = MedianOracle::exact_cube_median(c.skel);
    auto score = convergence_score(0, c.h_family, c.h, mu);
    REQUIRE(score.v.size() == 6);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(score.v[n - 1] == static_cast<int>(n));
    CHECK(score.liminf_proxy == 4); // min over the second half {4,5,6}
    CHECK(score.truncation_depth == c.h.size());
}

TEST_CASE("median neighbourhood witness matches the score") {
    auto c = Caterpillar::build(7);
    auto mu = MedianOracle::exact_cube_median(c.skel);
    // branch at depth 5 stays 5-deep for tail segments past the branch point
    auto w = median_neighbourhood_witness(0, c.h_family[4], c.h, mu, 5);
    REQUIRE(w.has_value());
    CHECK(w->first == 5);  // h_5 indices 0..5 are the ray prefix, 5 is depth 5
    CHECK(w->second == 5);
    // radius beyond the branch depth is unreachable
    CHECK_FALSE(median_neighbourhood_witness(0, c.h_family[4], c.h, mu, 6).has_value());
}

TEST_CASE("gromov median gap vanishes for exact medians and flags fakes") {
    // d(o, mu(o,a,b)) = (a|b)_o holds in every median graph: mu lies on all
    // three pairwise geodesics
    auto t = make_regular_tree(3, 3);
    CHECK(gromov_median_gap(MedianOracle::exact_cube_median(t), 0) == Rat(0));
    auto g = make_grid(2, 2);
    CHECK(gromov_median_gap(MedianOracle::exact_cube_median(g), 0) == Rat(0));

    // a fake median that ignores its arguments has a positive gap
    auto fake = MedianOracle::from_table(g.distance_matrix(),
                                         [](std::size_t, std::size_t, std::size_t) {
                                             return std::size_t{0};
                                         });
    CHECK(gromov_median_gap(fake, 0) > Rat(0));
}
