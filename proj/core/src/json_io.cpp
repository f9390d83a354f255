#include "coarsegeom/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace coarsegeom {

json to_json(const FiniteMetricSpace& s) {
    json j;
    j["points"] = s.points();
    json rows = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < s.size(); ++k) row.push_back(rat_to_string(s.dist(i, k)));
        rows.push_back(std::move(row));
    }
    j["dist"] = std::move(rows);
    j["basepoint"] = s.basepoint();
    return j;
}

FiniteMetricSpace metric_space_from_json(const json& j) {
    std::vector<PointId> pts = j.at("points").get<std::vector<PointId>>();
    std::vector<std::vector<Rat>> d;
    for (const auto& row : j.at("dist")) {
        std::vector<Rat> r;
        for (const auto& cell : row)
            r.push_back(cell.is_number() ? Rat(cell.get<long long>())
                                         : parse_rat(cell.get<std::string>()));
        d.push_back(std::move(r));
    }
    PointId bp = j.contains("basepoint") ? j.at("basepoint").get<PointId>()
                                         : (pts.empty() ? PointId{} : pts.front());
    return FiniteMetricSpace(std::move(pts), std::move(d), bp);
}

json to_json(const DiscretePath& p) {
    json j;
    json pts = json::array();
    for (auto i : p.points) pts.push_back(p.space->points()[i]);
    j["points"] = std::move(pts);
    if (!p.times.empty()) {
        json ts = json::array();
        for (const auto& t : p.times) ts.push_back(rat_to_string(t));
        j["times"] = std::move(ts);
    }
    return j;
}

DiscretePath path_from_json(const json& j, const FiniteMetricSpace& space) {
    DiscretePath p;
    p.space = &space;
    for (const auto& cell : j.at("points"))
        p.points.push_back(cell.is_number() ? cell.get<std::size_t>()
                                            : space.index(cell.get<std::string>()));
    if (j.contains("times"))
        for (const auto& cell : j.at("times"))
            p.times.push_back(cell.is_number() ? Rat(cell.get<long long>())
                                               : parse_rat(cell.get<std::string>()));
    p.validate();
    return p;
}

json skeleton_to_json(const CubeSkeleton& s) {
    json j;
    j["vertices"] = s.num_vertices();
    json es = json::array();
    for (const auto& [u, v] : s.edges()) es.push_back(json::array({u, v}));
    j["edges"] = std::move(es);
    return j;
}

CubeSkeleton skeleton_from_json(const json& j) {
    std::size_t n;
    const auto& jv = j.at("vertices");
    n = jv.is_number() ? jv.get<std::size_t>() : jv.size();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
    return CubeSkeleton::build(n, std::move(edges));
}

json sides_to_json(const CubeSkeleton& s) {
    json j = json::array();
    for (const auto& h : s.hyperplanes()) {
        std::string bits(s.num_vertices(), '0');
        for (std::size_t v = 0; v < s.num_vertices(); ++v)
            if (h.plus_side.test(v)) bits[v] = '1';
        j.push_back({{"id", h.id}, {"edges", h.edge_class}, {"plus", bits}});
    }
    return j;
}

std::string skeleton_to_dot(const CubeSkeleton& s) {
    static const char* palette[] = {"red",    "blue",   "green",  "orange", "purple",
                                    "brown",  "cyan",   "magenta", "gold",   "gray"};
    std::ostringstream out;
    out << "graph skeleton {\n  node [shape=point];\n";
    for (std::uint32_t e = 0; e < s.edges().size(); ++e) {
        auto [u, v] = s.edges()[e];
        out << "  " << u << " -- " << v << " [color=" << palette[s.hyperplane_of_edge(e) % 10]
            << " label=\"h" << s.hyperplane_of_edge(e) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

json to_json(const CompletionGraph& g) {
    json j;
    j["D"] = rat_to_string(g.D);
    json ns = json::array();
    for (const auto& n : g.nodes)
        ns.push_back({{"kind", n.kind == CompletionGraph::NodeKind::Base ? "base" : "sub"},
                      {"label", n.label}});
    j["nodes"] = std::move(ns);
    json es = json::array();
    for (const auto& e : g.edges) es.push_back({e.u, e.v, rat_to_string(e.w)});
    j["edges"] = std::move(es);
    json rows = json::array();
    for (const auto& row : g.dprime) {
        json r = json::array();
        for (const auto& x : row) r.push_back(rat_to_string(x));
        rows.push_back(std::move(r));
    }
    j["dprime"] = std::move(rows);
    j["base_bounds_ok"] = g.base_bounds_ok;
    j["coarse_surjective_ok"] = g.coarse_surjective_ok;
    return j;
}

json family_to_json(const EntwinedFamily& f) {
    json j;
    j["levels"] = f.levels;
    json parents = json::array(), degrees = json::array(), lvls = json::array();
    for (TVertex v = 0; v < f.ambient.size(); ++v) {
        parents.push_back(v == 0 ? -1 : static_cast<std::int64_t>(f.ambient.parent(v)));
        degrees.push_back(f.ambient.declared_degree(v));
        lvls.push_back(f.level[v]);
    }
    j["parent"] = std::move(parents);
    j["declared_degree"] = std::move(degrees);
    j["level"] = std::move(lvls);
    return j;
}

EntwinedFamily family_from_json(const json& j) {
    EntwinedFamily f;
    f.levels = j.at("levels").get<std::uint32_t>();
    const auto& parents = j.at("parent");
    const auto& degrees = j.at("declared_degree");
    const auto& lvls = j.at("level");
    if (parents.empty() || parents[0].get<std::int64_t>() != -1)
        throw validation_error("bad-tree", "vertex 0 must be the root");
    f.ambient = TruncatedTree::single_root(degrees[0].get<std::uint32_t>());
    f.level = {lvls[0].get<std::uint32_t>()};
    for (std::size_t v = 1; v < parents.size(); ++v) {
        std::int64_t p = parents[v].get<std::int64_t>();
        if (p < 0 || static_cast<std::size_t>(p) >= v)
            throw validation_error("bad-tree", "parents must precede their children",
                                   std::to_string(v));
        f.ambient.add_vertex(static_cast<TVertex>(p), degrees[v].get<std::uint32_t>());
        f.level.push_back(lvls[v].get<std::uint32_t>());
    }
    return f;
}

json phi_to_json(const VertexBijection& b) {
    json j;
    json fwd = json::array();
    for (TVertex v = 0; v < b.forward.size(); ++v)
        fwd.push_back(b.forward[v] == kNoVertex ? -1 : static_cast<std::int64_t>(b.forward[v]));
    j["forward"] = std::move(fwd);
    j["frontier"] = b.frontier;
    json ps = json::array();
    for (const auto& p : b.pairings)
        ps.push_back({{"root", p.S.local_root},
                      {"vertices", p.S.vertices},
                      {"open_ends", p.S.open_ends},
                      {"root_image", p.S_prime.local_root},
                      {"vertices_image", p.S_prime.vertices},
                      {"open_ends_image", p.S_prime.open_ends},
                      {"member", p.member_level}});
    j["pairings"] = std::move(ps);
    return j;
}

json dl_to_json(const DLSpace& d) {
    json j;
    j["L"] = d.L;
    j["dl"] = d.dl;
    j["delta"] = rat_to_string(d.delta);
    j["delta_witness"] = d.delta_witness;
    j["hyperbolicity_bound_ok"] = d.hyperbolicity_bound_ok;
    j["triangle_ok"] = d.triangle_ok;
    json zs = json::array();
    for (auto [x, y] : d.zero_distance_pairs) zs.push_back(json::array({x, y}));
    j["zero_distance_pairs"] = std::move(zs);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("io", "cannot open file", path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw validation_error("io", "cannot open file for writing", path);
    out << j.dump(2) << "\n";
}

} // namespace coarsegeom
