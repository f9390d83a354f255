#include "coarsegeom/separation.hpp"

#include <algorithm>
#include <numeric>

namespace coarsegeom {

bool hyperplanes_cross(const CubeSkeleton& s, std::uint32_t h, std::uint32_t k) {
    if (h == k) return false;
    const Hyperplane &a = s.hyperplanes()[h], &b = s.hyperplanes()[k];
    return a.plus_side.intersects(b.plus_side) && a.plus_side.intersects(b.minus_side) &&
           a.minus_side.intersects(b.plus_side) && a.minus_side.intersects(b.minus_side);
}

bool disjoint_side(const CubeSkeleton& s, std::uint32_t h, std::uint32_t k) {
    if (h == k || hyperplanes_cross(s, h, k))
        throw validation_error("not-disjoint", "hyperplanes are not disjoint",
                               std::to_string(h) + "," + std::to_string(k));
    // carrier of k = endpoints of its edge class; for disjoint pairs these all
    // sit on one side of h, so one endpoint decides
    Vertex v = s.edges()[s.hyperplanes()[k].edge_class.front()].first;
    return s.side(h, v);
}

bool is_facing_triple(const CubeSkeleton& s, std::uint32_t h1, std::uint32_t h2,
                      std::uint32_t h3) {
    std::array<std::uint32_t, 3> hs{h1, h2, h3};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (hs[i] == hs[j] || hyperplanes_cross(s, hs[i], hs[j])) return false;
    // none separates the other two: both others on the same side of each
    for (int i = 0; i < 3; ++i) {
        std::uint32_t a = hs[(i + 1) % 3], b = hs[(i + 2) % 3];
        if (disjoint_side(s, hs[i], a) != disjoint_side(s, hs[i], b)) return false;
    }
    return true;
}

namespace {

struct DegreeSearch {
    const CubeSkeleton& s;
    const std::vector<std::uint32_t>& cand;
    std::vector<std::vector<char>> facing2; // facing2[i][j]: some triple uses i,j
    std::vector<std::vector<std::vector<char>>> triple;
    std::vector<std::uint32_t> best, cur;

    explicit DegreeSearch(const CubeSkeleton& s_, const std::vector<std::uint32_t>& c)
        : s(s_), cand(c) {
        const std::size_t m = cand.size();
        triple.assign(m, std::vector<std::vector<char>>(m, std::vector<char>(m, 0)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k)
                    if (is_facing_triple(s, cand[i], cand[j], cand[k]))
                        triple[i][j][k] = 1;
    }

    bool ok_to_add(std::size_t k) {
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = a + 1; b < cur.size(); ++b) {
                std::array<std::size_t, 3> t{cur[a], cur[b], k};
                std::sort(t.begin(), t.end());
                if (triple[t[0]][t[1]][t[2]]) return false;
            }
        return true;
    }

    void go(std::size_t idx) {
        if (cur.size() + (cand.size() - idx) <= best.size()) return; // bound
        if (idx == cand.size()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        if (ok_to_add(idx)) {
            cur.push_back(static_cast<std::uint32_t>(idx));
            go(idx + 1);
            cur.pop_back();
        }
        go(idx + 1);
    }
};

} // namespace

SeparationReport well_separation_degree(const CubeSkeleton& s, std::uint32_t h,
                                        std::uint32_t h_prime) {
    SeparationReport rep;
    rep.h = h;
    rep.h_prime = h_prime;
    rep.disjoint = h != h_prime && !hyperplanes_cross(s, h, h_prime);
    std::vector<std::uint32_t> cand;
    for (std::uint32_t k = 0; k < s.hyperplanes().size(); ++k)
        if (hyperplanes_cross(s, k, h) && hyperplanes_cross(s, k, h_prime))
            cand.push_back(k);
    if (cand.empty()) {
        rep.degree = 0;
        return rep;
    }
    DegreeSearch search(s, cand);
    search.go(0);
    rep.degree = static_cast<std::uint32_t>(search.best.size());
    for (auto i : search.best) rep.witness.push_back(cand[i]);
    // re-verify the witness independently
    for (std::size_t a = 0; a < rep.witness.size(); ++a)
        for (std::size_t b = a + 1; b < rep.witness.size(); ++b)
            for (std::size_t c = b + 1; c < rep.witness.size(); ++c)
                if (is_facing_triple(s, rep.witness[a], rep.witness[b], rep.witness[c]))
                    throw validation_error("internal", "degree witness contains a facing triple");
    return rep;
}

SeparationCache::SeparationCache(const CubeSkeleton& s) : s_(s), H_(s.hyperplanes().size()) {
    flat_.resize(H_ * H_);
    for (std::uint32_t h = 0; h < H_; ++h)
        for (std::uint32_t k = h; k < H_; ++k) {
            flat_[h * H_ + k] = well_separation_degree(s_, h, k);
            if (k != h) {
                flat_[k * H_ + h] = flat_[h * H_ + k];
                std::swap(flat_[k * H_ + h].h, flat_[k * H_ + h].h_prime);
            }
        }
}

const SeparationReport& SeparationCache::report(std::uint32_t h, std::uint32_t k) const {
    return flat_[h * H_ + k];
}

std::uint32_t dl_distance(const SeparationCache& cache, std::uint32_t L, Vertex x, Vertex y,
                          bool pairwise, std::vector<std::uint32_t>* family_out) {
    if (family_out) family_out->clear();
    if (x == y) return 0;
    const CubeSkeleton& s = cache.skeleton();
    auto sep = s.separating_hyperplanes(x, y);
    const std::size_t m = sep.hyperplanes.size();
    // qualifying edges of the nesting DAG
    std::vector<std::vector<std::uint32_t>> succ(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (sep.precedes[i][j] &&
                cache.report(sep.hyperplanes[i], sep.hyperplanes[j]).well_separated(L))
                succ[i].push_back(static_cast<std::uint32_t>(j));
    // longest path; sorting by decreasing x-halfspace size is a topological
    // order, since strict containment forces strictly smaller size
    std::vector<std::size_t> xsize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Hyperplane& hp = s.hyperplanes()[sep.hyperplanes[i]];
        xsize[i] = (s.side(sep.hyperplanes[i], x) ? hp.plus_side : hp.minus_side).count();
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xsize[a] > xsize[b]; });
    std::vector<std::uint32_t> dp(m, 1);
    std::vector<std::int64_t> from(m, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::size_t i = *it;
        for (auto j : succ[i])
            if (dp[j] + 1 > dp[i]) {
                dp[i] = dp[j] + 1;
                from[i] = j;
            }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (dp[i] > dp[best]) best = i;
    std::vector<std::uint32_t> family;
    for (std::int64_t i = static_cast<std::int64_t>(best); i != -1; i = from[i])
        family.push_back(sep.hyperplanes[i]);
    if (pairwise) {
        // nesting makes consecutive qualification imply pairwise; verify
        for (std::size_t a = 0; a < family.size(); ++a)
            for (std::size_t b = a + 1; b < family.size(); ++b)
                if (!cache.report(family[a], family[b]).well_separated(L))
                    throw validation_error("internal",
                                           "consecutive chain fails pairwise re-check",
                                           std::to_string(family[a]) + "," +
                                               std::to_string(family[b]));
    }
    if (family_out) *family_out = family;
    return m == 0 ? 0 : dp[best];
}

DLSpace build_dl_space(const CubeSkeleton& s, std::uint32_t L, bool pairwise) {
    DLSpace out;
    out.base = &s;
    out.L = L;
    SeparationCache cache(s);
    const std::size_t n = s.num_vertices();
    out.dl.assign(n, std::vector<int>(n, 0));
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y) {
            int d = static_cast<int>(dl_distance(cache, L, x, y, pairwise));
            out.dl[x][y] = out.dl[y][x] = d;
            if (d == 0) out.zero_distance_pairs.push_back({x, y});
        }
    out.triangle_ok = true;
    for (std::size_t i = 0; i < n && out.triangle_ok; ++i)
        for (std::size_t j = 0; j < n && out.triangle_ok; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (out.dl[i][j] > out.dl[i][k] + out.dl[k][j]) {
                    out.triangle_ok = false;
                    break;
                }
    auto dr = estimate_delta_int(out.dl);
    out.delta = dr.delta;
    out.delta_witness = dr.witness;
    out.hyperbolicity_bound_ok = out.delta <= Rat(9 * (static_cast<int>(L) + 2));
    return out;
}

ChainProfile chain_profile(const SeparationCache& cache, const std::vector<Vertex>& path,
                           const SublinearFn& k, double c) {
    const CubeSkeleton& s = cache.skeleton();
    ChainProfile out;
    if (path.size() <= 1) return out;
    if (!s.is_geodesic(path))
        throw validation_error("not-geodesic", "chain profile needs a geodesic path");
    std::vector<std::uint32_t> crossed; // hyperplane per edge, in order
    for (std::size_t i = 1; i < path.size(); ++i)
        crossed.push_back(s.hyperplane_of_edge(s.edge_index(path[i - 1], path[i])));
    const std::size_t m = crossed.size();
    // dp over crossing events; t_{i+1} is the edge index of the later event
    std::vector<std::uint32_t> dp(m, 1);
    std::vector<std::int64_t> from(m, -1);
    std::size_t best = 0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (crossed[i] == crossed[j]) continue;
            const auto& rep = cache.report(crossed[i], crossed[j]);
            if (!rep.disjoint) continue;
            if (static_cast<double>(rep.degree) > c * k(static_cast<double>(j + 1))) continue;
            if (dp[i] + 1 > dp[j]) {
                dp[j] = dp[i] + 1;
                from[j] = static_cast<std::int64_t>(i);
            }
        }
        if (dp[j] > dp[best]) best = j;
    }
    std::vector<std::size_t> idx;
    for (std::int64_t i = static_cast<std::int64_t>(best); i != -1; i = from[i])
        idx.push_back(static_cast<std::size_t>(i));
    std::reverse(idx.begin(), idx.end());
    for (auto i : idx) {
        out.chain.push_back(crossed[i]);
        out.times.push_back(i + 1);
    }
    for (std::size_t i = 1; i < out.chain.size(); ++i)
        out.degrees.push_back(cache.report(out.chain[i - 1], out.chain[i]).degree);
    return out;
}

SurgeryCheck check_chain_surgery(const SeparationCache& cache, const DLSpace& dls,
                                 std::uint32_t L, const std::vector<std::uint32_t>& chain,
                                 Vertex xi, Vertex xj, Vertex o) {
    SurgeryCheck out;
    const CubeSkeleton& s = cache.skeleton();
    if (chain.empty()) {
        out.hypothesis_note = "empty chain";
        return out;
    }
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (!cache.report(chain[i - 1], chain[i]).well_separated(L)) {
            out.hypothesis_note = "chain is not consecutively L-well-separated at index " +
                                  std::to_string(i);
            return out;
        }
    std::uint32_t l0 = 0;
    for (auto h : chain)
        if (s.side(h, o) != s.side(h, xi) && s.side(h, o) != s.side(h, xj)) ++l0;
    if (l0 == 0) {
        out.hypothesis_note = "no chain member separates o from both endpoints";
        return out;
    }
    out.hypothesis_ok = true;
    out.l0 = l0;
    Rat dxi = dls.dl[o][xi], dxj = dls.dl[o][xj], dij = dls.dl[xi][xj];
    out.gromov_product = (dxi + dxj - dij) / 2;
    out.bound = Rat(static_cast<int>(l0)) - 2 - Rat(static_cast<int>(L));
    out.holds = out.gromov_product >= out.bound;
    return out;
}

} // namespace coarsegeom
