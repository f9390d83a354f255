#include "coarsegeom/cube_complex.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace coarsegeom {

std::size_t VertexSet::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool VertexSet::contains(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((other.words_[i] & ~words_[i]) != 0) return false;
    return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { p[find(a)] = find(b); }
};

struct SigHash {
    std::size_t operator()(const std::vector<std::uint64_t>& s) const {
        std::size_t h = 1469598103934665603ull;
        for (auto w : s) h = (h ^ w) * 1099511628211ull;
        return h;
    }
};

} // namespace

CubeSkeleton CubeSkeleton::build(std::size_t n_vertices, std::vector<Edge> edges) {
    CubeSkeleton s;
    s.n_ = n_vertices;
    if (n_vertices == 0) throw validation_error("empty-graph", "need >= 1 vertex");
    for (auto& e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first == e.second)
            throw validation_error("self-loop", "self loop", std::to_string(e.first));
        if (e.second >= n_vertices)
            throw validation_error("bad-edge", "edge endpoint out of range",
                                   std::to_string(e.second));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw validation_error("multi-edge", "duplicate edge");
    s.edges_ = std::move(edges);
    s.adj_.assign(n_vertices, {});
    for (auto& [u, v] : s.edges_) {
        s.adj_[u].push_back(v);
        s.adj_[v].push_back(u);
    }

    // connected + bipartite in one BFS
    std::vector<int> colour(n_vertices, -1);
    std::queue<Vertex> q;
    q.push(0);
    colour[0] = 0;
    std::size_t seen = 1;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex v : s.adj_[u]) {
            if (colour[v] == -1) {
                colour[v] = colour[u] ^ 1;
                ++seen;
                q.push(v);
            } else if (colour[v] == colour[u]) {
                throw validation_error("odd-cycle", "graph is not bipartite",
                                       std::to_string(u) + "," + std::to_string(v));
            }
        }
    }
    if (seen != n_vertices) throw validation_error("disconnected", "graph is not connected");

    // square-equivalence closure: opposite edges of 4-cycles share a class
    std::map<Edge, std::uint32_t> eidx;
    for (std::uint32_t i = 0; i < s.edges_.size(); ++i) eidx[s.edges_[i]] = i;
    auto lookup = [&](Vertex a, Vertex b) -> std::uint32_t {
        auto it = eidx.find(a < b ? Edge{a, b} : Edge{b, a});
        return it == eidx.end() ? static_cast<std::uint32_t>(-1) : it->second;
    };
    UnionFind uf(s.edges_.size());
    for (std::uint32_t e = 0; e < s.edges_.size(); ++e) {
        auto [a, b] = s.edges_[e];
        for (Vertex c : s.adj_[a]) {
            if (c == b) continue;
            for (Vertex d : s.adj_[b]) {
                if (d == a || d == c) continue;
                std::uint32_t f = lookup(c, d);
                if (f != static_cast<std::uint32_t>(-1)) uf.unite(e, f); // square a-b-d-c
            }
        }
    }
    std::map<std::uint32_t, std::uint32_t> class_of_root;
    s.edge_hp_.assign(s.edges_.size(), 0);
    for (std::uint32_t e = 0; e < s.edges_.size(); ++e) {
        std::uint32_t r = uf.find(e);
        auto [it, fresh] = class_of_root.try_emplace(r, class_of_root.size());
        (void)fresh;
        s.edge_hp_[e] = it->second;
    }
    const std::size_t H = class_of_root.size();
    s.hyperplanes_.resize(H);
    for (std::uint32_t h = 0; h < H; ++h) s.hyperplanes_[h].id = h;
    for (std::uint32_t e = 0; e < s.edges_.size(); ++e)
        s.hyperplanes_[s.edge_hp_[e]].edge_class.push_back(e);

    // each class must split the graph into exactly two components
    for (std::uint32_t h = 0; h < H; ++h) {
        std::vector<char> banned(s.edges_.size(), 0);
        for (auto e : s.hyperplanes_[h].edge_class) banned[e] = 1;
        std::vector<int> comp(n_vertices, -1);
        int ncomp = 0;
        for (Vertex start = 0; start < n_vertices; ++start) {
            if (comp[start] != -1) continue;
            comp[start] = ncomp;
            std::queue<Vertex> bq;
            bq.push(start);
            while (!bq.empty()) {
                Vertex u = bq.front();
                bq.pop();
                for (Vertex v : s.adj_[u]) {
                    if (comp[v] != -1) continue;
                    std::uint32_t e = lookup(u, v);
                    if (banned[e]) continue;
                    comp[v] = ncomp;
                    bq.push(v);
                }
            }
            ++ncomp;
        }
        if (ncomp != 2)
            throw validation_error("not-median",
                                   "an edge class does not split the graph in two",
                                   "class " + std::to_string(h) + " gives " +
                                       std::to_string(ncomp) + " parts");
        // every class edge must cross the split
        for (auto e : s.hyperplanes_[h].edge_class)
            if (comp[s.edges_[e].first] == comp[s.edges_[e].second])
                throw validation_error("not-median", "edge class has an internal edge",
                                       std::to_string(e));
        VertexSet plus(n_vertices), minus(n_vertices);
        for (Vertex v = 0; v < n_vertices; ++v)
            (comp[v] != comp[0] ? plus : minus).set(v);
        s.hyperplanes_[h].plus_side = std::move(plus);
        s.hyperplanes_[h].minus_side = std::move(minus);
    }

    // l1 distance must agree with BFS distance everywhere (isometric
    // hypercube embedding); then every triple's majority signature must be a
    // vertex. Together with the split property this certifies a median graph.
    const auto& dm = s.distance_matrix();
    const std::size_t wp = (H + 63) / 64;
    std::vector<std::uint64_t> sig(n_vertices * wp, 0);
    for (std::uint32_t h = 0; h < H; ++h)
        for (Vertex v = 0; v < n_vertices; ++v)
            if (s.hyperplanes_[h].plus_side.test(v))
                sig[v * wp + (h >> 6)] |= std::uint64_t{1} << (h & 63);
    std::unordered_map<std::vector<std::uint64_t>, Vertex, SigHash> sig_to_v;
    for (Vertex v = 0; v < n_vertices; ++v) {
        std::vector<std::uint64_t> key(sig.begin() + v * wp, sig.begin() + (v + 1) * wp);
        if (!sig_to_v.emplace(std::move(key), v).second)
            throw validation_error("not-median", "two vertices share all hyperplane sides",
                                   std::to_string(v));
    }
    for (Vertex x = 0; x < n_vertices; ++x)
        for (Vertex y = 0; y < n_vertices; ++y) {
            std::uint32_t sep = 0;
            for (std::size_t w = 0; w < wp; ++w)
                sep += std::popcount(sig[x * wp + w] ^ sig[y * wp + w]);
            if (sep != static_cast<std::uint32_t>(dm[x][y]))
                throw validation_error("not-median",
                                       "separating-class count disagrees with graph distance",
                                       std::to_string(x) + "," + std::to_string(y));
        }
    std::vector<std::uint64_t> maj(wp);
    for (Vertex x = 0; x < n_vertices; ++x)
        for (Vertex y = x; y < n_vertices; ++y)
            for (Vertex z = y; z < n_vertices; ++z) {
                for (std::size_t w = 0; w < wp; ++w) {
                    std::uint64_t a = sig[x * wp + w], b = sig[y * wp + w],
                                  c = sig[z * wp + w];
                    maj[w] = (a & b) | (a & c) | (b & c);
                }
                if (!sig_to_v.count(maj))
                    throw validation_error("not-median", "triple has no median vertex",
                                           std::to_string(x) + "," + std::to_string(y) + "," +
                                               std::to_string(z));
            }
    return s;
}

std::uint32_t CubeSkeleton::edge_index(Vertex u, Vertex v) const {
    Edge e = u < v ? Edge{u, v} : Edge{v, u};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e)
        throw validation_error("no-edge", "vertices are not adjacent",
                               std::to_string(u) + "," + std::to_string(v));
    return static_cast<std::uint32_t>(it - edges_.begin());
}

std::uint32_t CubeSkeleton::l1_distance(Vertex x, Vertex y) const {
    std::uint32_t c = 0;
    for (const auto& h : hyperplanes_)
        if (h.plus_side.test(x) != h.plus_side.test(y)) ++c;
    return c;
}

std::uint32_t CubeSkeleton::bfs_distance(Vertex x, Vertex y) const {
    if (x == y) return 0;
    std::vector<std::uint32_t> d(n_, static_cast<std::uint32_t>(-1));
    std::queue<Vertex> q;
    q.push(x);
    d[x] = 0;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex v : adj_[u])
            if (d[v] == static_cast<std::uint32_t>(-1)) {
                d[v] = d[u] + 1;
                if (v == y) return d[v];
                q.push(v);
            }
    }
    throw validation_error("disconnected", "no path found");
}

Vertex CubeSkeleton::median(Vertex x, Vertex y, Vertex z) const {
    // the unique vertex on the majority side of every hyperplane
    for (Vertex m = 0; m < n_; ++m) {
        bool ok = true;
        for (const auto& h : hyperplanes_) {
            int votes = int(h.plus_side.test(x)) + int(h.plus_side.test(y)) +
                        int(h.plus_side.test(z));
            if (h.plus_side.test(m) != (votes >= 2)) {
                ok = false;
                break;
            }
        }
        if (ok) return m;
    }
    throw validation_error("not-median", "no majority vertex for triple",
                           std::to_string(x) + "," + std::to_string(y) + "," +
                               std::to_string(z));
}

CubeSkeleton::SeparatorSet CubeSkeleton::separating_hyperplanes(Vertex x, Vertex y) const {
    SeparatorSet out;
    for (std::uint32_t h = 0; h < hyperplanes_.size(); ++h)
        if (side(h, x) != side(h, y)) out.hyperplanes.push_back(h);
    const std::size_t m = out.hyperplanes.size();
    out.precedes.assign(m, std::vector<bool>(m, false));
    auto x_side = [&](std::uint32_t h) -> const VertexSet& {
        return side(h, x) ? hyperplanes_[h].plus_side : hyperplanes_[h].minus_side;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const VertexSet &a = x_side(out.hyperplanes[i]), &b = x_side(out.hyperplanes[j]);
            out.precedes[i][j] = a.contains(b) && !(a == b);
        }
    return out;
}

bool CubeSkeleton::ray_crosses_hyperplane(const std::vector<Vertex>& path,
                                          std::uint32_t h) const {
    if (path.empty()) throw validation_error("empty-path", "empty path");
    bool uses_class = false;
    for (std::size_t i = 1; i < path.size(); ++i) {
        std::uint32_t e = edge_index(path[i - 1], path[i]); // throws if not adjacent
        if (edge_hp_[e] == h) uses_class = true;
    }
    return uses_class && side(h, path.front()) != side(h, path.back());
}

bool CubeSkeleton::is_geodesic(const std::vector<Vertex>& path) const {
    if (path.empty()) return false;
    for (std::size_t i = 1; i < path.size(); ++i) {
        Edge e = path[i - 1] < path[i] ? Edge{path[i - 1], path[i]}
                                       : Edge{path[i], path[i - 1]};
        if (!std::binary_search(edges_.begin(), edges_.end(), e)) return false;
    }
    return path.size() - 1 == l1_distance(path.front(), path.back());
}

std::vector<Vertex> CubeSkeleton::geodesic(Vertex x, Vertex y) const {
    std::vector<Vertex> prev(n_, static_cast<Vertex>(-1));
    std::vector<char> vis(n_, 0);
    std::queue<Vertex> q;
    q.push(x);
    vis[x] = 1;
    while (!q.empty() && !vis[y]) {
        Vertex u = q.front();
        q.pop();
        for (Vertex v : adj_[u])
            if (!vis[v]) {
                vis[v] = 1;
                prev[v] = u;
                q.push(v);
            }
    }
    std::vector<Vertex> path{y};
    while (path.back() != x) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

const std::vector<std::vector<int>>& CubeSkeleton::distance_matrix() const {
    if (!dist_cache_.empty()) return dist_cache_;
    dist_cache_.assign(n_, std::vector<int>(n_, -1));
    for (Vertex x = 0; x < n_; ++x) {
        auto& d = dist_cache_[x];
        std::queue<Vertex> q;
        q.push(x);
        d[x] = 0;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex v : adj_[u])
                if (d[v] == -1) {
                    d[v] = d[u] + 1;
                    q.push(v);
                }
        }
    }
    return dist_cache_;
}

FiniteMetricSpace CubeSkeleton::to_metric_space(Vertex basepoint) const {
    const auto& dm = distance_matrix();
    std::vector<PointId> pts(n_);
    std::vector<std::vector<Rat>> d(n_, std::vector<Rat>(n_));
    for (Vertex v = 0; v < n_; ++v) pts[v] = "v" + std::to_string(v);
    for (Vertex i = 0; i < n_; ++i)
        for (Vertex j = 0; j < n_; ++j) d[i][j] = dm[i][j];
    return FiniteMetricSpace(std::move(pts), std::move(d), "v" + std::to_string(basepoint));
}

CubeSkeleton make_path(std::size_t n_edges) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n_edges; ++i) e.push_back({i, i + 1});
    return CubeSkeleton::build(n_edges + 1, std::move(e));
}

CubeSkeleton make_grid(std::size_t a, std::size_t b) {
    const std::size_t W = b + 1;
    auto id = [&](std::size_t i, std::size_t j) { return static_cast<Vertex>(i * W + j); };
    std::vector<Edge> e;
    for (std::size_t i = 0; i <= a; ++i)
        for (std::size_t j = 0; j <= b; ++j) {
            if (i < a) e.push_back({id(i, j), id(i + 1, j)});
            if (j < b) e.push_back({id(i, j), id(i, j + 1)});
        }
    return CubeSkeleton::build((a + 1) * W, std::move(e));
}

CubeSkeleton make_regular_tree(std::size_t degree, std::size_t depth) {
    if (degree < 2) throw validation_error("bad-degree", "tree degree must be >= 2");
    std::vector<Edge> e;
    std::vector<Vertex> level{0};
    Vertex next = 1;
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<Vertex> nl;
        for (Vertex v : level) {
            std::size_t kids = (d == 0) ? degree : degree - 1;
            for (std::size_t c = 0; c < kids; ++c) {
                e.push_back({v, next});
                nl.push_back(next++);
            }
        }
        level = std::move(nl);
    }
    return CubeSkeleton::build(next, std::move(e));
}

CubeSkeleton box_product(const CubeSkeleton& g, const CubeSkeleton& h) {
    const std::size_t ng = g.num_vertices(), nh = h.num_vertices();
    auto id = [&](Vertex a, Vertex b) { return static_cast<Vertex>(a * nh + b); };
    std::vector<Edge> e;
    for (auto& [u, v] : g.edges())
        for (Vertex b = 0; b < nh; ++b) e.push_back({id(u, b), id(v, b)});
    for (auto& [u, v] : h.edges())
        for (Vertex a = 0; a < ng; ++a) e.push_back({id(a, u), id(a, v)});
    return CubeSkeleton::build(ng * nh, std::move(e));
}

CubeSkeleton make_tree_x_path(const CubeSkeleton& tree, std::size_t n_edges) {
    return box_product(tree, make_path(n_edges));
}

} // namespace coarsegeom
