#include "coarsegeom/quasi_ruler.hpp"

#include <algorithm>

#include "coarsegeom/morse.hpp"

namespace coarsegeom {

RulerCertificate check_ruler(const DiscretePath& path, const Rat& D) {
    path.validate();
    if (D <= 0) throw validation_error("bad-constant", "D must be > 0");
    RulerCertificate cert;
    cert.D = D;
    cert.verdict = true;
    const FiniteMetricSpace& s = *path.space;
    const auto& p = path.points;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (s.dist(p[i - 1], p[i]) >= D) {
            cert.verdict = false;
            cert.jump_index = i;
            break;
        }
    for (std::size_t i = 0; cert.verdict && i < p.size(); ++i)
        for (std::size_t j = i + 1; cert.verdict && j < p.size(); ++j)
            for (std::size_t k = j + 1; k < p.size(); ++k)
                if (s.dist(p[i], p[j]) + s.dist(p[j], p[k]) > s.dist(p[i], p[k]) + D) {
                    cert.verdict = false;
                    cert.violation = {{i, j, k}};
                    break;
                }
    return cert;
}

Reparametrisation reparametrise(const DiscretePath& path, const Rat& D, const Rat& eps) {
    if (eps <= 0) throw validation_error("bad-constant", "eps must be > 0");
    auto cert = check_ruler(path, D);
    if (!cert.verdict) throw validation_error("not-ruler", "path fails the ruler check");
    const FiniteMetricSpace& s = *path.space;
    const auto& p = path.points;

    Reparametrisation out;
    Rat k1 = 2 * D + eps, k2 = 1 / eps;
    out.K = std::max(k1, k2);
    out.C = 2 * (3 * D + eps) + 3 * D + eps + 1 / out.K;

    // greedy anchors: next anchor is the first point further than D+eps from
    // the previous one; everything strictly between stays within D+eps of it
    out.anchors.push_back(0);
    for (std::size_t j = 1; j < p.size(); ++j)
        if (s.dist(p[out.anchors.back()], p[j]) > D + eps) out.anchors.push_back(j);

    out.times.assign(p.size(), Rat(0));
    for (std::size_t m = 0; m < out.anchors.size(); ++m) out.times[out.anchors[m]] = Rat(m);
    for (std::size_t m = 0; m + 1 < out.anchors.size(); ++m) {
        std::size_t a = out.anchors[m], b = out.anchors[m + 1];
        for (std::size_t j = a + 1; j < b; ++j)
            out.times[j] = Rat(m) + Rat(j - a, b - a);
    }
    std::size_t last = out.anchors.back();
    for (std::size_t j = last + 1; j < p.size(); ++j)
        out.times[j] =
            Rat(out.anchors.size() - 1) + Rat(j - last, p.size() - last);

    DiscretePath timed{path.space, path.points, out.times};
    if (auto bad = quasi_geodesic_violation(timed, out.K, out.C))
        throw validation_error("internal", "reparametrisation fails its own (K,C) check",
                               std::to_string(bad->first) + "," + std::to_string(bad->second));
    return out;
}

CompletionGraph geodesic_completion(const FiniteMetricSpace& base,
                                    const std::map<PairKey, DiscretePath>& rulers,
                                    const Rat& D) {
    if (D <= 0) throw validation_error("bad-constant", "D must be > 0");
    CompletionGraph g;
    g.D = D;
    const std::size_t n = base.size();
    for (std::size_t i = 0; i < n; ++i)
        g.nodes.push_back({CompletionGraph::NodeKind::Base, base.points()[i], i});

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            const Rat& d = base.dist(x, y);
            Rat half = D / 2;
            Rat len = std::max(d, half);
            if (d <= D) {
                g.edges.push_back({x, y, len});
                continue;
            }
            auto rit = rulers.find({x, y});
            if (rit == rulers.end())
                throw validation_error("missing-ruler", "pair with d > D needs a ruler",
                                       base.points()[x] + "," + base.points()[y]);
            const DiscretePath& r = rit->second;
            if (r.space != &base || r.points.empty() ||
                !((r.points.front() == x && r.points.back() == y) ||
                  (r.points.front() == y && r.points.back() == x)))
                throw validation_error("bad-ruler", "ruler does not join the pair",
                                       base.points()[x] + "," + base.points()[y]);
            if (!check_ruler(r, D).verdict)
                throw validation_error("bad-ruler", "supplied ruler fails the ruler check",
                                       base.points()[x] + "," + base.points()[y]);
            std::size_t from = r.points.front() == x ? x : y;
            // subdivide the line at kD for 0 < k < d/D - 1/2, tie each
            // subdivision node to a ruler point in [kD - D/2, kD + D/2]
            std::size_t prev = x;
            Rat used = 0;
            for (int k = 1; Rat(k) < d / D - Rat(1, 2); ++k) {
                Rat pos = k * D;
                std::size_t node = g.nodes.size();
                g.nodes.push_back({CompletionGraph::NodeKind::Subdivision,
                                   base.points()[x] + "-" + base.points()[y] + "@" +
                                       rat_to_string(pos),
                                   0});
                g.edges.push_back({prev, node, pos - used});
                std::optional<std::size_t> anchor;
                for (auto pi : r.points) {
                    const Rat& dr = base.dist(from, pi);
                    if (dr >= pos - D / 2 && dr <= pos + D / 2) {
                        anchor = pi;
                        break;
                    }
                }
                if (!anchor)
                    throw validation_error("bad-ruler",
                                           "no ruler point lands in [kD - D/2, kD + D/2]",
                                           rat_to_string(pos));
                g.edges.push_back({node, *anchor, 2 * D});
                prev = node;
                used = pos;
            }
            g.edges.push_back({prev, y, len - used});
        }

    // exact all-pairs shortest paths over the weighted completion graph
    const std::size_t N = g.nodes.size();
    const Rat INF = Rat(Int(1) << 62);
    g.dprime.assign(N, std::vector<Rat>(N, INF));
    for (std::size_t i = 0; i < N; ++i) g.dprime[i][i] = 0;
    for (const auto& e : g.edges) {
        g.dprime[e.u][e.v] = std::min(g.dprime[e.u][e.v], e.w);
        g.dprime[e.v][e.u] = g.dprime[e.u][e.v];
    }
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t i = 0; i < N; ++i) {
            if (g.dprime[i][k] == INF) continue;
            for (std::size_t j = 0; j < N; ++j) {
                Rat via = g.dprime[i][k] + g.dprime[k][j];
                if (via < g.dprime[i][j]) g.dprime[i][j] = via;
            }
        }

    g.base_bounds_ok = true;
    for (std::size_t x = 0; x < n && g.base_bounds_ok; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Rat& d = base.dist(x, y);
            Rat cap = std::max(d, Rat(D / 2));
            if (g.dprime[x][y] < d || g.dprime[x][y] > cap) {
                g.base_bounds_ok = false;
                break;
            }
        }
    g.coarse_surjective_ok = true;
    for (std::size_t v = 0; v < N; ++v) {
        Rat best = INF;
        for (std::size_t x = 0; x < n; ++x) best = std::min(best, g.dprime[v][x]);
        if (best > 4 * D) {
            g.coarse_surjective_ok = false;
            break;
        }
    }
    return g;
}

ProductBoundReport check_product_bound(const FiniteMetricSpace& space,
                                       const DiscretePath& gamma,
                                       const DiscretePath& gamma_p, std::size_t o,
                                       const Rat& D, const Rat& delta, std::size_t xp,
                                       std::size_t yp) {
    gamma.validate();
    gamma_p.validate();
    if (gamma.space != &space || gamma_p.space != &space)
        throw validation_error("space-mismatch", "paths live in another space");
    if (xp >= gamma.size() || yp >= gamma_p.size())
        throw validation_error("bad-index", "point index beyond its path");
    ProductBoundReport rep;
    if (gamma.points.front() != o || gamma_p.points.front() != o) {
        rep.note = "rulers must start at the basepoint; hypothesis not met";
        return rep;
    }
    if (!check_ruler(gamma, D).verdict || !check_ruler(gamma_p, D).verdict) {
        rep.note = "a supplied path fails the ruler check; hypothesis not met";
        return rep;
    }
    std::size_t x1 = gamma.points[xp], y1 = gamma_p.points[yp];
    // ideal-product stand-in: Gromov product of the deepest path points
    Rat standin = gromov_product(space, gamma.points.back(), gamma_p.points.back(), o);
    if (space.dist(o, x1) > standin + D || space.dist(o, y1) > standin + D) {
        rep.note = "pair too deep for the deepest-point product stand-in";
        return rep;
    }
    rep.conclusive = true;
    rep.product_lhs = gromov_product(space, x1, y1, o);
    rep.product_rhs = std::min(space.dist(o, x1), space.dist(o, y1)) - D - 2 * delta;
    rep.product_bound_ok = rep.product_lhs >= rep.product_rhs;
    rep.distance_lhs = space.dist(x1, y1);
    Rat diff = space.dist(o, x1) - space.dist(o, y1);
    rep.distance_rhs = D + 2 * delta + (diff < 0 ? -diff : diff);
    rep.distance_bound_ok = rep.distance_lhs <= rep.distance_rhs;
    return rep;
}

} // namespace coarsegeom
