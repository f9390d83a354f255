#ifndef coarsegeom_quasi_ruler_hpp
#define coarsegeom_quasi_ruler_hpp

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coarsegeom/metric_space.hpp"

namespace coarsegeom {

struct RulerCertificate {
    Rat D;
    bool verdict = false;
    // first violating index triple i<j<k of the almost-additivity condition
    std::optional<std::array<std::size_t, 3>> violation;
    // first consecutive index with a jump of size >= D
    std::optional<std::size_t> jump_index;
};

// Exhaustive triple scan: d(p_i,p_j) + d(p_j,p_k) <= d(p_i,p_k) + D for all
// i<j<k, plus every consecutive distance < D.
RulerCertificate check_ruler(const DiscretePath& path, const Rat& D);

struct Reparametrisation {
    Rat K;                         // max(2D+eps, 1/eps)
    Rat C;                         // 2(3D+eps) + 3D + eps + 1/K
    std::vector<std::size_t> anchors; // indices into the path
    std::vector<Rat> times;        // per path point; integers at anchors
};

// Greedy anchor selection (first index with gap > D+eps), integer anchor
// timestamps, linear interpolation between. The (K,C) inequalities are
// re-verified over all anchor pairs before returning.
Reparametrisation reparametrise(const DiscretePath& path, const Rat& D, const Rat& eps);

struct CompletionGraph {
    enum class NodeKind { Base, Subdivision };
    struct Node {
        NodeKind kind;
        std::string label;
        std::size_t base_index = 0; // for Base nodes
    };
    struct WEdge {
        std::size_t u, v;
        Rat w;
    };
    Rat D;
    std::vector<Node> nodes;
    std::vector<WEdge> edges;
    std::vector<std::vector<Rat>> dprime; // exact all-pairs shortest paths
    // certificates
    bool base_bounds_ok = false;   // d <= d' <= max{d, D/2} on base pairs
    bool coarse_surjective_ok = false; // every node within 4D of a base point
};

// Unordered pair of base-point indices, stored (min, max).
using PairKey = std::pair<std::size_t, std::size_t>;

// Geodesic completion: a line of length max{D/2, d(x,y)} per
// pair; lines with d > D are subdivided at kD and tied to ruler points by
// 2D edges. Pairs with d > D must come with a ruler that passes check_ruler.
CompletionGraph geodesic_completion(const FiniteMetricSpace& base,
                                    const std::map<PairKey, DiscretePath>& rulers,
                                    const Rat& D);

struct ProductBoundReport {
    bool conclusive = false; // hypothesis (approximated) met
    std::string note =
        "hypothesis uses the deepest-point Gromov product as a stand-in for the "
        "ideal product";
    bool product_bound_ok = false;  // (x'|y')_o >= min{d(o,x'),d(o,y')} - D - 2delta
    bool distance_bound_ok = false; // d(x',y') <= D + 2delta + |d(o,x')-d(o,y')|
    Rat product_lhs, product_rhs, distance_lhs, distance_rhs;
};

ProductBoundReport check_product_bound(const FiniteMetricSpace& space,
                                       const DiscretePath& gamma,
                                       const DiscretePath& gamma_p, std::size_t o,
                                       const Rat& D, const Rat& delta, std::size_t xp,
                                       std::size_t yp);

} // namespace coarsegeom

#endif
