#ifndef coarsegeom_separation_hpp
#define coarsegeom_separation_hpp

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsegeom/cube_complex.hpp"
#include "coarsegeom/sublinear.hpp"

namespace coarsegeom {

// Transversality: all four side combinations realised by vertices.
bool hyperplanes_cross(const CubeSkeleton& s, std::uint32_t h, std::uint32_t k);

// For disjoint h, k: the side of h containing all of k's carrier.
bool disjoint_side(const CubeSkeleton& s, std::uint32_t h, std::uint32_t k);

// Mutually disjoint and no one separates the other two.
bool is_facing_triple(const CubeSkeleton& s, std::uint32_t h1, std::uint32_t h2,
                      std::uint32_t h3);

struct SeparationReport {
    std::uint32_t h = 0, h_prime = 0;
    bool disjoint = false;
    // max cardinality of a facing-triple-free subset of hyperplanes crossing both
    std::uint32_t degree = 0;
    std::vector<std::uint32_t> witness; // one maximising set, re-verified
    bool well_separated(std::uint32_t L) const { return disjoint && degree <= L; }
};

// Exact, via branch-and-bound on the facing-triple hypergraph of the
// crossing set.
SeparationReport well_separation_degree(const CubeSkeleton& s, std::uint32_t h,
                                        std::uint32_t h_prime);

// Write-once cache of pairwise degrees and disjointness.
class SeparationCache {
  public:
    explicit SeparationCache(const CubeSkeleton& s);
    const SeparationReport& report(std::uint32_t h, std::uint32_t k) const;
    const CubeSkeleton& skeleton() const { return s_; }

  private:
    const CubeSkeleton& s_;
    std::vector<SeparationReport> flat_;
    std::size_t H_;
};

// Largest family of L-well-separated hyperplanes separating x from y.
// Disjoint separators of a pair nest into a chain, and consecutive
// L-well-separation along the chain implies pairwise (crossing sets of a
// nested pair contain the crossing set of the outer pair), so the DAG
// longest path computes both conventions; pairwise mode re-verifies all pairs.
std::uint32_t dl_distance(const SeparationCache& cache, std::uint32_t L, Vertex x, Vertex y,
                          bool pairwise = false,
                          std::vector<std::uint32_t>* family_out = nullptr);

struct DLSpace {
    const CubeSkeleton* base = nullptr;
    std::uint32_t L = 0;
    std::vector<std::vector<int>> dl;
    Rat delta;                              // exhaustive four-point delta
    std::array<std::size_t, 4> delta_witness{};
    bool hyperbolicity_bound_ok = false;    // delta <= 9(L+2)
    std::vector<std::pair<Vertex, Vertex>> zero_distance_pairs; // distinct x,y with dl=0
    bool triangle_ok = false;
};

DLSpace build_dl_space(const CubeSkeleton& s, std::uint32_t L, bool pairwise = false);

struct ChainProfile {
    std::vector<std::uint32_t> chain;  // hyperplane ids, in crossing order
    std::vector<std::size_t> times;    // path indices at which each is crossed
    std::vector<std::uint32_t> degrees; // degree(h_i, h_{i+1})
    std::size_t length() const { return chain.size(); }
};

// Longest chain of disjoint hyperplanes crossed by a geodesic with
// degree(h_i, h_{i+1}) <= c*kappa(t_{i+1}). Throws on non-geodesic input.
ChainProfile chain_profile(const SeparationCache& cache, const std::vector<Vertex>& path,
                           const SublinearFn& k, double c);

struct SurgeryCheck {
    bool hypothesis_ok = false;
    std::string hypothesis_note;
    std::uint32_t l0 = 0;
    Rat gromov_product; // (x_i | x_j)_o in the d_L metric
    Rat bound;          // l0 - 2 - L
    bool holds = false;
};

// Verifies (x_i | x_j)_o >= l0 - 2 - L in the built DLSpace, where l0 is the
// number of chain members separating o from both x_i and x_j. The chain must
// be consecutively L-well-separated; otherwise hypothesis_ok is false.
SurgeryCheck check_chain_surgery(const SeparationCache& cache, const DLSpace& dls,
                                 std::uint32_t L, const std::vector<std::uint32_t>& chain,
                                 Vertex xi, Vertex xj, Vertex o);

} // namespace coarsegeom

#endif
