#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "coarsegeom/json_io.hpp"
#include "coarsegeom/separation.hpp"
#include "coarsegeom/tree_boundary.hpp"

using namespace coarsegeom;

TEST_CASE("metric space JSON round-trips bit-exactly") {
    std::vector<PointId> pts{"a", "b", "c"};
    std::vector<std::vector<Rat>> d{{Rat(0), Rat(1, 3), Rat(3, 4)},
                                    {Rat(1, 3), Rat(0), Rat(1, 2)},
                                    {Rat(3, 4), Rat(1, 2), Rat(0)}};
    FiniteMetricSpace s(pts, d, "b");
    auto j = to_json(s);
    auto s2 = metric_space_from_json(j);
    CHECK(s2.points() == s.points());
    CHECK(s2.basepoint() == "b");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) CHECK(s2.dist(i, k) == s.dist(i, k));
    CHECK(to_json(s2) == j);
}

TEST_CASE("paths round-trip with exact times") {
    auto g = make_grid(2, 2);
    auto s = g.to_metric_space();
    DiscretePath p{&s, {0, 1, 2}, {Rat(0), Rat(1, 2), Rat(7, 3)}};
    auto j = to_json(p);
    auto p2 = path_from_json(j, s);
    CHECK(p2.points == p.points);
    CHECK(p2.times == p.times);
}

TEST_CASE("skeleton JSON round-trips edges and hyperplanes") {
    auto g = make_grid(3, 2);
    auto j = skeleton_to_json(g);
    auto g2 = skeleton_from_json(j);
    CHECK(g2.num_vertices() == g.num_vertices());
    CHECK(g2.edges() == g.edges());
    CHECK(g2.hyperplanes().size() == g.hyperplanes().size());
    CHECK(skeleton_to_json(g2) == j);

    auto sides = sides_to_json(g);
    CHECK(sides.size() == g.hyperplanes().size());
    auto dot = skeleton_to_dot(g);
    CHECK(dot.find("graph skeleton") != std::string::npos);
    CHECK(dot.find("h0") != std::string::npos);
}

TEST_CASE("family JSON round-trips and rejects bad parents") {
    FamilySpec sp;
    sp.depth = 4;
    sp.randomise = true;
    sp.seed = 9;
    auto f = generate_family(sp);
    auto j = family_to_json(f);
    auto f2 = family_from_json(j);
    CHECK(f2.levels == f.levels);
    CHECK(f2.level == f.level);
    CHECK(f2.ambient.size() == f.ambient.size());
    for (TVertex v = 0; v < f.ambient.size(); ++v) {
        CHECK(f2.ambient.parent(v) == f.ambient.parent(v));
        CHECK(f2.ambient.declared_degree(v) == f.ambient.declared_degree(v));
    }
    CHECK(family_to_json(f2) == j);

    auto bad = j;
    bad["parent"][2] = 5; // child before its parent
    CHECK_THROWS_AS(family_from_json(bad), validation_error);
}

TEST_CASE("phi and d_L artifacts serialise deterministically") {
    FamilySpec a, b;
    a.depth = b.depth = 4;
    a.randomise = b.randomise = true;
    a.seed = 1;
    b.seed = 2;
    auto A = generate_family(a);
    auto B = generate_family(b);
    auto bij = build_phi(A, B);
    auto j1 = phi_to_json(bij);
    auto j2 = phi_to_json(build_phi(A, B));
    CHECK(j1 == j2);
    CHECK(j1.contains("forward"));
    CHECK(j1.contains("pairings"));

    auto dls = build_dl_space(make_grid(2, 2), 1);
    auto jd = dl_to_json(dls);
    CHECK(jd.at("L") == 1);
    CHECK(jd.at("hyperbolicity_bound_ok") == true);
    CHECK(parse_rat(jd.at("delta").get<std::string>()) == dls.delta);
}

TEST_CASE("file helpers report unreadable paths") {
    CHECK_THROWS_AS(load_json_file("/nonexistent/x.json"), validation_error);
}
