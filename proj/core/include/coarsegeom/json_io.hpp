#ifndef coarsegeom_json_io_hpp
#define coarsegeom_json_io_hpp

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "coarsegeom/cube_complex.hpp"
#include "coarsegeom/metric_space.hpp"
#include "coarsegeom/quasi_ruler.hpp"
#include "coarsegeom/separation.hpp"
#include "coarsegeom/tree_boundary.hpp"

namespace coarsegeom {

using json = nlohmann::json;

// {"points": [...], "dist": [["0","1.5",...],...], "basepoint": id}
json to_json(const FiniteMetricSpace& s);
FiniteMetricSpace metric_space_from_json(const json& j);

// {"space": "inline"|name, "points": [...], "times": [...]?}
json to_json(const DiscretePath& p);
DiscretePath path_from_json(const json& j, const FiniteMetricSpace& space);

// {"vertices": n or [...], "edges": [[u,v],...]}
json skeleton_to_json(const CubeSkeleton& s);
CubeSkeleton skeleton_from_json(const json& j);
// side matrix as bitstrings, one per hyperplane
json sides_to_json(const CubeSkeleton& s);
// DOT with hyperplane classes as edge colours
std::string skeleton_to_dot(const CubeSkeleton& s);

json to_json(const CompletionGraph& g);

json family_to_json(const EntwinedFamily& f);
EntwinedFamily family_from_json(const json& j);

json phi_to_json(const VertexBijection& b);

json dl_to_json(const DLSpace& d);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace coarsegeom

#endif
