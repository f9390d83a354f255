#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "coarsegeom/cube_complex.hpp"

using namespace coarsegeom;

namespace {

// median oracle: in a median graph the median of (x,y,z) is the unique
// vertex minimising the distance sum, with value half the triangle perimeter
std::optional<Vertex> brute_median(const CubeSkeleton& s, Vertex x, Vertex y, Vertex z) {
    const auto& d = s.distance_matrix();
    long long target = (d[x][y] + d[y][z] + d[x][z]);
    std::optional<Vertex> found;
    for (Vertex m = 0; m < s.num_vertices(); ++m)
        if (2 * (d[x][m] + d[y][m] + d[z][m]) == target) {
            if (found) return std::nullopt; // not unique: not a median graph
            found = m;
        }
    return found;
}

} // namespace

TEST_CASE("fixture shapes") {
    auto p = make_path(5);
    CHECK(p.num_vertices() == 6);
    CHECK(p.hyperplanes().size() == 5);

    auto g = make_grid(3, 2);
    CHECK(g.num_vertices() == 12);
    CHECK(g.hyperplanes().size() == 5); // 3 vertical + 2 horizontal
    for (const auto& h : g.hyperplanes())
        CHECK(h.plus_side.count() + h.minus_side.count() == g.num_vertices());

    auto t = make_regular_tree(3, 2);
    CHECK(t.num_vertices() == 10);
    CHECK(t.hyperplanes().size() == 9); // every tree edge is its own hyperplane

    auto tp = make_tree_x_path(t, 4);
    CHECK(tp.num_vertices() == 50);
    CHECK(tp.hyperplanes().size() == 13);
}

TEST_CASE("l1 distance equals BFS distance everywhere") {
    for (const auto& s : {make_grid(3, 3), make_regular_tree(3, 3),
                          make_tree_x_path(make_regular_tree(3, 1), 4)}) {
        for (Vertex x = 0; x < s.num_vertices(); ++x)
            for (Vertex y = 0; y < s.num_vertices(); ++y)
                CHECK(s.l1_distance(x, y) == s.bfs_distance(x, y));
    }
}

TEST_CASE("median agrees with the distance-sum oracle on all triples") {
    for (const auto& s : {make_grid(2, 3), make_regular_tree(3, 2), make_path(7)}) {
        for (Vertex x = 0; x < s.num_vertices(); ++x)
            for (Vertex y = x; y < s.num_vertices(); ++y)
                for (Vertex z = y; z < s.num_vertices(); ++z) {
                    auto m = brute_median(s, x, y, z);
                    REQUIRE(m.has_value());
                    CHECK(s.median(x, y, z) == *m);
                }
    }
}

TEST_CASE("non-median and malformed graphs are rejected") {
    auto code_of = [](std::size_t n, std::vector<Edge> es) {
        try {
            CubeSkeleton::build(n, std::move(es));
            return std::string("(accepted)");
        } catch (const validation_error& e) {
            return e.code;
        }
    };
    CHECK(code_of(3, {{0, 1}, {1, 2}, {0, 2}}) != "(accepted)");       // odd cycle
    CHECK(code_of(4, {{0, 1}, {2, 3}}) != "(accepted)");               // disconnected
    CHECK(code_of(2, {{0, 0}}) != "(accepted)");                       // self-loop
    CHECK(code_of(2, {{0, 1}, {0, 1}}) != "(accepted)");               // multi-edge
    CHECK(code_of(2, {{0, 2}}) != "(accepted)");                       // bad vertex id
    CHECK(code_of(0, {}) != "(accepted)");                             // empty
    // K_{2,3}: bipartite and connected but not median (triple with no median)
    CHECK(code_of(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}) != "(accepted)");
    // 6-cycle: bipartite, every edge class separates, but medians fail
    CHECK(code_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}) != "(accepted)");
}

TEST_CASE("geodesics and hyperplane crossings") {
    auto g = make_grid(3, 3); // 16 vertices, 4x4 lattice
    Vertex far = static_cast<Vertex>(g.num_vertices() - 1);
    auto path = g.geodesic(0, far);
    CHECK(path.front() == 0);
    CHECK(path.back() == far);
    CHECK(g.is_geodesic(path));
    CHECK(path.size() == g.l1_distance(0, far) + 1);

    // a geodesic crosses exactly the separating hyperplanes
    auto sep = g.separating_hyperplanes(0, far);
    CHECK(sep.hyperplanes.size() == g.l1_distance(0, far));
    for (std::uint32_t h = 0; h < g.hyperplanes().size(); ++h) {
        bool separates = std::find(sep.hyperplanes.begin(), sep.hyperplanes.end(), h) !=
                         sep.hyperplanes.end();
        CHECK(g.ray_crosses_hyperplane(path, h) == separates);
    }

    // a non-geodesic walk is flagged
    std::vector<Vertex> walk = path;
    walk.push_back(path[path.size() - 2]);
    walk.push_back(path.back());
    CHECK_FALSE(g.is_geodesic(walk));
    CHECK_THROWS_AS(g.ray_crosses_hyperplane({0, far}, 0), validation_error);
}

TEST_CASE("separator nesting order is strict containment") {
    auto p = make_path(4);
    auto sep = p.separating_hyperplanes(0, 4);
    REQUIRE(sep.hyperplanes.size() == 4);
    // on a path the separators form a chain: exactly one linear extension
    std::size_t comparable = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (sep.precedes[i][j]) {
                ++comparable;
                CHECK_FALSE(sep.precedes[j][i]);
            }
    CHECK(comparable == 6); // all pairs comparable one way
}

TEST_CASE("box product adds distances coordinatewise") {
    auto a = make_path(3);
    auto b = make_regular_tree(3, 1);
    auto prod = box_product(a, b);
    CHECK(prod.num_vertices() == a.num_vertices() * b.num_vertices());
    std::size_t nh = b.num_vertices();
    for (Vertex u = 0; u < a.num_vertices(); ++u)
        for (Vertex v = 0; v < b.num_vertices(); ++v)
            for (Vertex u2 = 0; u2 < a.num_vertices(); ++u2)
                for (Vertex v2 = 0; v2 < b.num_vertices(); ++v2)
                    CHECK(prod.l1_distance(static_cast<Vertex>(u * nh + v),
                                           static_cast<Vertex>(u2 * nh + v2)) ==
                          a.l1_distance(u, u2) + b.l1_distance(v, v2));
}

TEST_CASE("metric space view carries the l1 metric") {
    auto g = make_grid(2, 2);
    auto s = g.to_metric_space(4);
    CHECK(s.size() == g.num_vertices());
    CHECK(s.basepoint() == "v4");
    for (Vertex x = 0; x < g.num_vertices(); ++x)
        for (Vertex y = 0; y < g.num_vertices(); ++y)
            CHECK(s.dist(x, y) == Rat(static_cast<int>(g.l1_distance(x, y))));
}
