#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "coarsegeom/metric_space.hpp"
#include "coarsegeom/tree_boundary.hpp"

using namespace coarsegeom;

namespace {

FamilySpec small_spec(std::uint64_t seed, std::uint32_t depth = 6) {
    FamilySpec sp;
    sp.levels = 2;
    sp.depth = depth;
    sp.width_cap = 48;
    sp.randomise = true;
    sp.seed = seed;
    return sp;
}

std::vector<TVertex> parents_of(const EntwinedFamily& f) {
    std::vector<TVertex> out;
    for (TVertex v = 0; v < f.ambient.size(); ++v) out.push_back(f.ambient.parent(v));
    return out;
}

} // namespace

TEST_CASE("truncated tree bookkeeping") {
    auto t = TruncatedTree::single_root(3);
    auto a = t.add_vertex(0, 3);
    auto b = t.add_vertex(0, 3);
    auto c = t.add_vertex(a, 3);
    CHECK(t.size() == 4);
    CHECK(t.depth_of(c) == 2);
    CHECK(t.is_ancestor(0, c));
    CHECK(t.is_ancestor(a, c));
    CHECK_FALSE(t.is_ancestor(b, c));
    CHECK(t.is_ancestor(c, c));
    CHECK(t.materialised_degree(0) == 2);
    CHECK_FALSE(t.fully_materialised(0)); // declared 3, materialised 2
    t.add_vertex(0, 3);
    CHECK(t.fully_materialised(0));
    CHECK(t.materialised_degree(a) == 2); // parent edge + one child
}

TEST_CASE("generated families are deterministic per seed and verified") {
    auto f1 = generate_family(small_spec(11));
    auto f2 = generate_family(small_spec(11));
    CHECK(parents_of(f1) == parents_of(f2));
    CHECK(f1.level == f2.level);
    auto f3 = generate_family(small_spec(12));
    CHECK((parents_of(f1) != parents_of(f3) || f1.level != f3.level));

    auto flags = f1.verify();
    CHECK(flags.strongly_entwined);
    CHECK(flags.filling);
}

TEST_CASE("auxiliary subtrees grow to the requested open-end count") {
    auto f = generate_family(small_spec(5));
    const auto& rc = f.ambient.children(0);
    std::vector<TVertex> root_children(rc.begin(), rc.end());
    for (std::size_t k = root_children.size(); k <= root_children.size() + 3; ++k) {
        auto aux = find_auxiliary_with_open_ends(f, f.levels, 0, root_children, k);
        CHECK(aux.open_ends.size() == k);
        CHECK(aux.vertices.size() == k + 1); // open ends are all non-root vertices
        auto chk = is_auxiliary(f, f.levels, 0, aux.vertices, root_children);
        CHECK(chk.ok);
    }
    CHECK_THROWS_AS(
        find_auxiliary_with_open_ends(f, f.levels, 0, root_children,
                                      root_children.size() - 1),
        validation_error);
}

TEST_CASE("phi construction verifies and is symmetric") {
    auto A = generate_family(small_spec(21));
    auto B = generate_family(small_spec(22));
    auto ab = build_phi(A, B);
    auto rep = verify_phi(ab);
    CHECK(rep.bijective);
    CHECK(rep.unique_auxiliary);
    CHECK(rep.descendants_ok);
    CHECK(rep.exit_condition_ok);
    CHECK(rep.level_restriction_ok);
    CHECK(rep.all_ok());

    // building in the opposite direction gives the recorded inverse
    auto ba = build_phi(B, A);
    for (TVertex v = 0; v < B.ambient.size(); ++v)
        CHECK(ba.forward[v] == ab.inverse[v]);
    for (TVertex v = 0; v < A.ambient.size(); ++v)
        CHECK(ba.inverse[v] == ab.forward[v]);
}

TEST_CASE("corrupting the bijection is detected") {
    auto A = generate_family(small_spec(31));
    auto B = generate_family(small_spec(32));
    auto bij = build_phi(A, B);
    // find two defined non-root vertices and cross their images
    std::vector<TVertex> defined;
    for (TVertex v = 1; v < A.ambient.size() && defined.size() < 2; ++v)
        if (bij.defined(v) && A.ambient.depth_of(v) >= 2) defined.push_back(v);
    REQUIRE(defined.size() == 2);
    std::swap(bij.forward[defined[0]], bij.forward[defined[1]]);
    CHECK_FALSE(verify_phi(bij).all_ok());
}

TEST_CASE("mismatched family shapes are rejected") {
    auto A = generate_family(small_spec(41));
    FamilySpec deeper = small_spec(42, 4);
    deeper.levels = 3;
    auto C = generate_family(deeper);
    CHECK_THROWS_AS(build_phi(A, C), validation_error);
}

TEST_CASE("boundary image identity holds on eligible shallow vertices") {
    auto A = generate_family(small_spec(51, 7));
    auto B = generate_family(small_spec(52, 7));
    auto bij = build_phi(A, B);
    REQUIRE(verify_phi(bij).all_ok());
    std::size_t eligible = 0;
    for (TVertex v = 0; v < A.ambient.size(); ++v) {
        if (!bij.defined(v) || A.ambient.depth_of(v) > 3) continue;
        auto rep = boundary_image_identity(bij, v);
        if (!rep.eligible) continue;
        ++eligible;
        CHECK(rep.forward_ok);
        CHECK(rep.inverse_ok);
        CHECK(rep.holds());
        CHECK_FALSE(rep.D_v.empty());
        CHECK_FALSE(rep.C_v.empty());
    }
    CHECK(eligible > 0);
}
