#ifndef coarsegeom_median_structures_hpp
#define coarsegeom_median_structures_hpp

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarsegeom/cube_complex.hpp"
#include "coarsegeom/metric_space.hpp"

namespace coarsegeom {

// A total ternary map on a finite point set with an integer distance matrix.
// Either the exact cube-complex median or an explicit table.
class MedianOracle {
  public:
    static MedianOracle exact_cube_median(const CubeSkeleton& s);
    static MedianOracle from_table(std::vector<std::vector<int>> dist,
                                   std::function<std::size_t(std::size_t, std::size_t,
                                                             std::size_t)> mu);

    std::size_t size() const { return n_; }
    std::size_t mu(std::size_t a, std::size_t b, std::size_t c) const { return mu_(a, b, c); }
    int dist(std::size_t a, std::size_t b) const { return (*dist_)[a][b]; }
    const std::vector<std::vector<int>>& matrix() const { return *dist_; }

  private:
    std::size_t n_ = 0;
    std::function<std::size_t(std::size_t, std::size_t, std::size_t)> mu_;
    std::shared_ptr<const std::vector<std::vector<int>>> dist_;
};

struct MedianDefect {
    bool axiom1_ok = false; // mu(a,a,b) = a and full permutation symmetry
    std::optional<std::array<std::size_t, 3>> axiom1_witness;
    int C2 = 0; // max d(mu(mu(a,x,b),x,c), mu(a,x,mu(b,x,c)))
    int C3 = 0; // minimal C with d(mu(a,b,c),mu(x,b,c)) <= C d(a,x) + C
};

MedianDefect coarse_median_defect(const MedianOracle& oracle);

// max over triples of d'(f(mu(a,b,c)), mu'(f(a),f(b),f(c)))
int median_map_defect(const std::vector<std::size_t>& f, const MedianOracle& mu,
                      const MedianOracle& mu_p);

// max over time triples of d(path(mid(t,s,r)), mu(path(t),path(s),path(r)))
// for an index-parametrised path in the oracle's space
int median_path_defect(const std::vector<std::size_t>& path, const MedianOracle& mu);

struct ConvergenceScore {
    std::vector<int> v; // v_n = max over (s,t) of d(o, mu(o, h_n(s), h(t)))
    int liminf_proxy = 0; // min of the supplied tail (truncation documented)
    std::size_t truncation_depth = 0;
};

ConvergenceScore convergence_score(std::size_t o,
                                   const std::vector<std::vector<std::size_t>>& h_family,
                                   const std::vector<std::size_t>& h,
                                   const MedianOracle& mu);

// U_r membership for family member n: exists (s0,t0) with
// d(o, mu(o, h_n(s), h(t))) >= r for all s >= s0, t >= t0 (within truncation).
std::optional<std::pair<std::size_t, std::size_t>>
median_neighbourhood_witness(std::size_t o, const std::vector<std::size_t>& h_n,
                             const std::vector<std::size_t>& h, const MedianOracle& mu,
                             int r);

// A = max over (a,b) of |d(o, mu(o,a,b)) - (a|b)_o| (doubled internally to
// stay integral; returned as exact rational).
Rat gromov_median_gap(const MedianOracle& oracle, std::size_t o);

} // namespace coarsegeom

#endif
