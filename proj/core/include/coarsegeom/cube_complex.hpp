#ifndef coarsegeom_cube_complex_hpp
#define coarsegeom_cube_complex_hpp

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coarsegeom/metric_space.hpp"

namespace coarsegeom {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>; // stored with first < second

// Side bitmaps over vertices, one word per 64 vertices.
class VertexSet {
  public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    std::size_t size() const { return n_; }
    std::size_t count() const;
    bool contains(const VertexSet& other) const; // other subset of this
    bool intersects(const VertexSet& other) const;
    const std::vector<std::uint64_t>& words() const { return words_; }
    bool operator==(const VertexSet&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct Hyperplane {
    std::uint32_t id = 0;
    std::vector<std::uint32_t> edge_class; // indices into skeleton edge list
    VertexSet plus_side;                   // the side not containing vertex 0
    VertexSet minus_side;
};

// The 1-skeleton of a finite CAT(0) cube complex: a connected median graph
// with hyperplanes derived by square-equivalence of edges. Immutable.
class CubeSkeleton {
  public:
    // Validates: connected, simple, bipartite, median; each edge class
    // splits the graph into exactly two components.
    static CubeSkeleton build(std::size_t n_vertices, std::vector<Edge> edges);

    std::size_t num_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const std::vector<std::vector<Vertex>>& adjacency() const { return adj_; }

    // true when v lies on the plus side of hyperplane h
    bool side(std::uint32_t h, Vertex v) const { return hyperplanes_[h].plus_side.test(v); }

    // hyperplane index owning an edge (by edge index)
    std::uint32_t hyperplane_of_edge(std::uint32_t e) const { return edge_hp_[e]; }
    std::uint32_t edge_index(Vertex u, Vertex v) const; // throws if absent

    // Number of hyperplanes separating x and y; equals BFS graph distance.
    std::uint32_t l1_distance(Vertex x, Vertex y) const;
    std::uint32_t bfs_distance(Vertex x, Vertex y) const; // independent oracle

    // Unique vertex on pairwise geodesics, via majority side per hyperplane.
    Vertex median(Vertex x, Vertex y, Vertex z) const;

    // All hyperplanes separating x from y plus the strict nesting order
    // "h's x-halfspace strictly contains k's x-halfspace".
    struct SeparatorSet {
        std::vector<std::uint32_t> hyperplanes;
        // order[i][j] = true iff hyperplanes[i] precedes hyperplanes[j]
        std::vector<std::vector<bool>> precedes;
    };
    SeparatorSet separating_hyperplanes(Vertex x, Vertex y) const;

    // Net crossing: some path edge lies in h's class AND h separates the
    // endpoints of the path. Throws on non-adjacent consecutive vertices.
    bool ray_crosses_hyperplane(const std::vector<Vertex>& path, std::uint32_t h) const;

    // true iff the vertex sequence is an edge path realising the l1 distance
    bool is_geodesic(const std::vector<Vertex>& path) const;

    // shortest edge path from x to y (BFS)
    std::vector<Vertex> geodesic(Vertex x, Vertex y) const;

    // Integer distance matrix (BFS all pairs). Cached on first use.
    const std::vector<std::vector<int>>& distance_matrix() const;

    // Metric-space view of the skeleton (l1 metric, basepoint = vertex 0).
    FiniteMetricSpace to_metric_space(Vertex basepoint = 0) const;

  private:
    CubeSkeleton() = default;
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Hyperplane> hyperplanes_;
    std::vector<std::uint32_t> edge_hp_;
    mutable std::vector<std::vector<int>> dist_cache_;
};

// Fixture generators.
CubeSkeleton make_path(std::size_t n_edges);
CubeSkeleton make_grid(std::size_t a, std::size_t b); // a x b squares
// Rooted tree with every interior vertex of the given degree, to given depth.
CubeSkeleton make_regular_tree(std::size_t degree, std::size_t depth);
// Box product of a tree fixture with a path.
CubeSkeleton make_tree_x_path(const CubeSkeleton& tree, std::size_t n_edges);
// Box product of two skeletons (median graphs are closed under box products).
CubeSkeleton box_product(const CubeSkeleton& g, const CubeSkeleton& h);

} // namespace coarsegeom

#endif
