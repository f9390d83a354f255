#include "coarsegeom/median_structures.hpp"

#include <algorithm>
#include <unordered_map>

namespace coarsegeom {

MedianOracle MedianOracle::exact_cube_median(const CubeSkeleton& s) {
    const std::size_t n = s.num_vertices();
    const std::size_t H = s.hyperplanes().size();
    const std::size_t wp = (H + 63) / 64;
    // hyperplane-side signature per vertex; median = bitwise majority lookup
    auto sig = std::make_shared<std::vector<std::uint64_t>>(n * wp, 0);
    for (std::uint32_t h = 0; h < H; ++h)
        for (Vertex v = 0; v < n; ++v)
            if (s.side(h, v)) (*sig)[v * wp + (h >> 6)] |= std::uint64_t{1} << (h & 63);
    auto lut = std::make_shared<std::unordered_map<std::uint64_t, std::size_t>>();
    if (wp == 1) {
        lut->reserve(2 * n);
        for (Vertex v = 0; v < n; ++v) lut->emplace((*sig)[v], v);
    }
    MedianOracle m;
    m.n_ = n;
    m.dist_ = std::shared_ptr<const std::vector<std::vector<int>>>(
        std::make_shared<std::vector<std::vector<int>>>(s.distance_matrix()));
    if (wp == 1) {
        m.mu_ = [sig, lut](std::size_t a, std::size_t b, std::size_t c) {
            std::uint64_t x = (*sig)[a], y = (*sig)[b], z = (*sig)[c];
            return lut->at((x & y) | (x & z) | (y & z));
        };
    } else {
        auto skel = std::make_shared<CubeSkeleton>(s);
        m.mu_ = [skel](std::size_t a, std::size_t b, std::size_t c) {
            return static_cast<std::size_t>(skel->median(static_cast<Vertex>(a),
                                                         static_cast<Vertex>(b),
                                                         static_cast<Vertex>(c)));
        };
    }
    return m;
}

MedianOracle MedianOracle::from_table(
    std::vector<std::vector<int>> dist,
    std::function<std::size_t(std::size_t, std::size_t, std::size_t)> mu) {
    MedianOracle m;
    m.n_ = dist.size();
    m.dist_ = std::make_shared<const std::vector<std::vector<int>>>(std::move(dist));
    m.mu_ = std::move(mu);
    return m;
}

MedianDefect coarse_median_defect(const MedianOracle& o) {
    MedianDefect out;
    const std::size_t n = o.size();
    out.axiom1_ok = true;
    for (std::size_t a = 0; a < n && out.axiom1_ok; ++a)
        for (std::size_t b = 0; b < n && out.axiom1_ok; ++b) {
            if (o.mu(a, a, b) != a) {
                out.axiom1_ok = false;
                out.axiom1_witness = {{a, a, b}};
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t m = o.mu(a, b, c);
                if (o.mu(a, c, b) != m || o.mu(b, a, c) != m || o.mu(b, c, a) != m ||
                    o.mu(c, a, b) != m || o.mu(c, b, a) != m) {
                    out.axiom1_ok = false;
                    out.axiom1_witness = {{a, b, c}};
                    break;
                }
            }
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t x = 0; x < n; ++x) {
                    int d2 = o.dist(o.mu(o.mu(a, x, b), x, c), o.mu(a, x, o.mu(b, x, c)));
                    out.C2 = std::max(out.C2, d2);
                    // minimal integer C with d(mu(a,b,c), mu(x,b,c)) <= C(d(a,x)+1)
                    int dm = o.dist(o.mu(a, b, c), o.mu(x, b, c));
                    int dax = o.dist(a, x);
                    out.C3 = std::max(out.C3, (dm + dax) / (dax + 1)); // ceil
                }
    return out;
}

int median_map_defect(const std::vector<std::size_t>& f, const MedianOracle& mu,
                      const MedianOracle& mu_p) {
    if (f.size() != mu.size())
        throw validation_error("bad-map", "map must be defined on every point");
    int worst = 0;
    for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t b = 0; b < f.size(); ++b)
            for (std::size_t c = 0; c < f.size(); ++c)
                worst = std::max(worst,
                                 mu_p.dist(f[mu.mu(a, b, c)], mu_p.mu(f[a], f[b], f[c])));
    return worst;
}

int median_path_defect(const std::vector<std::size_t>& path, const MedianOracle& mu) {
    int worst = 0;
    for (std::size_t t = 0; t < path.size(); ++t)
        for (std::size_t s = 0; s < path.size(); ++s)
            for (std::size_t r = 0; r < path.size(); ++r) {
                std::array<std::size_t, 3> idx{t, s, r};
                std::sort(idx.begin(), idx.end());
                worst = std::max(worst,
                                 mu.dist(path[idx[1]], mu.mu(path[t], path[s], path[r])));
            }
    return worst;
}

ConvergenceScore convergence_score(std::size_t o,
                                   const std::vector<std::vector<std::size_t>>& h_family,
                                   const std::vector<std::size_t>& h,
                                   const MedianOracle& mu) {
    ConvergenceScore out;
    out.truncation_depth = h.size();
    for (const auto& hn : h_family) {
        int v = 0;
        for (auto s : hn)
            for (auto t : h) v = std::max(v, mu.dist(o, mu.mu(o, s, t)));
        out.v.push_back(v);
    }
    if (!out.v.empty()) {
        std::size_t tail = out.v.size() / 2;
        out.liminf_proxy = *std::min_element(out.v.begin() + tail, out.v.end());
    }
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>>
median_neighbourhood_witness(std::size_t o, const std::vector<std::size_t>& h_n,
                             const std::vector<std::size_t>& h, const MedianOracle& mu,
                             int r) {
    for (std::size_t s0 = 0; s0 < h_n.size(); ++s0)
        for (std::size_t t0 = 0; t0 < h.size(); ++t0) {
            bool ok = true;
            for (std::size_t s = s0; s < h_n.size() && ok; ++s)
                for (std::size_t t = t0; t < h.size(); ++t)
                    if (mu.dist(o, mu.mu(o, h_n[s], h[t])) < r) {
                        ok = false;
                        break;
                    }
            if (ok) return std::make_pair(s0, t0);
        }
    return std::nullopt;
}

Rat gromov_median_gap(const MedianOracle& o, std::size_t base) {
    Int worst2 = 0; // doubled gap, stays integral
    for (std::size_t a = 0; a < o.size(); ++a)
        for (std::size_t b = 0; b < o.size(); ++b) {
            long long lhs2 = 2ll * o.dist(base, o.mu(base, a, b));
            long long rhs2 = o.dist(base, a) + o.dist(base, b) - o.dist(a, b);
            Int gap = lhs2 > rhs2 ? Int(lhs2 - rhs2) : Int(rhs2 - lhs2);
            if (gap > worst2) worst2 = gap;
        }
    return Rat(worst2, 2);
}

} // namespace coarsegeom
