#ifndef coarsegeom_metric_space_hpp
#define coarsegeom_metric_space_hpp

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coarsegeom/rational.hpp"

namespace coarsegeom {

// Thrown when an input violates a documented precondition; carries a
// machine-readable code plus a witness for diagnostics.
struct validation_error : std::runtime_error {
    std::string code;
    std::string witness;
    validation_error(std::string code_, const std::string& msg, std::string witness_ = {})
        : std::runtime_error(msg), code(std::move(code_)), witness(std::move(witness_)) {}
};

using PointId = std::string;

// A finite metric space given by an exact symmetric distance matrix and a
// basepoint. Immutable after construction; construction validates the
// metric axioms exhaustively.
class FiniteMetricSpace {
  public:
    FiniteMetricSpace(std::vector<PointId> points,
                      std::vector<std::vector<Rat>> dist,
                      PointId basepoint);

    std::size_t size() const { return points_.size(); }
    const std::vector<PointId>& points() const { return points_; }
    std::size_t index(const PointId& p) const;
    const PointId& basepoint() const { return points_[base_]; }
    std::size_t basepoint_index() const { return base_; }

    const Rat& dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }
    const Rat& dist(const PointId& x, const PointId& y) const {
        return dist_[index(x)][index(y)];
    }
    const std::vector<std::vector<Rat>>& matrix() const { return dist_; }

    // Builds the induced sub-metric-space on the given point indices,
    // keeping the basepoint if present (else the first listed point).
    FiniteMetricSpace subspace(const std::vector<std::size_t>& idx) const;

  private:
    std::vector<PointId> points_;
    std::vector<std::vector<Rat>> dist_;
    std::size_t base_;
};

// (x|y)_o = (d(o,x) + d(o,y) - d(x,y)) / 2, exactly.
Rat gromov_product(const FiniteMetricSpace& s, std::size_t x, std::size_t y, std::size_t o);
Rat gromov_product(const FiniteMetricSpace& s, const PointId& x, const PointId& y,
                   const PointId& o);

struct DeltaResult {
    Rat delta;
    // A quadruple (x, y, z, o) achieving the max defect.
    std::array<std::size_t, 4> witness;
};

// Minimal delta for the four-point condition, exhaustive over all ordered
// quadruples. Exact. Integer distance matrices take a fast scaled-int path.
DeltaResult estimate_delta(const FiniteMetricSpace& s);

// Same scan on a raw integer matrix (distances doubled are not required;
// Gromov products are kept doubled internally). Used for d_L spaces.
DeltaResult estimate_delta_int(const std::vector<std::vector<int>>& d);

// A finite point sequence in a metric space, optionally parametrised.
struct DiscretePath {
    const FiniteMetricSpace* space = nullptr;
    std::vector<std::size_t> points;
    std::vector<Rat> times; // empty or same length as points, strictly increasing

    void validate() const;
    std::size_t size() const { return points.size(); }
};

} // namespace coarsegeom

#endif
