#include "coarsegeom/morse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coarsegeom {

namespace {

double dist_to_set(const FiniteMetricSpace& s, const std::vector<std::size_t>& Z,
                   std::size_t y) {
    double best = std::numeric_limits<double>::infinity();
    for (auto z : Z) best = std::min(best, to_double(s.dist(y, z)));
    return best;
}

} // namespace

bool in_kappa_neighborhood(const FiniteMetricSpace& s, const std::vector<std::size_t>& Z,
                           std::size_t y, double n, const SublinearFn& k,
                           std::optional<std::size_t> base_override) {
    if (Z.empty()) throw validation_error("empty-set", "Z must be nonempty");
    std::size_t o = base_override.value_or(s.basepoint_index());
    return dist_to_set(s, Z, y) <= n * k(to_double(s.dist(o, y)));
}

double fellow_travel_constant(const DiscretePath& a, const DiscretePath& b,
                              const SublinearFn& k) {
    a.validate();
    b.validate();
    if (a.space != b.space)
        throw validation_error("space-mismatch", "paths live in different spaces");
    const FiniteMetricSpace& s = *a.space;
    const std::size_t o = s.basepoint_index();
    double n = 0.0;
    auto one_side = [&](const DiscretePath& p, const DiscretePath& q) {
        for (auto y : p.points) {
            double d = dist_to_set(s, q.points, y);
            if (d == 0.0) continue;
            double kv = k(to_double(s.dist(o, y)));
            if (kv <= 0.0) return std::numeric_limits<double>::infinity();
            n = std::max(n, d / kv);
        }
        return n;
    };
    double n1 = one_side(a, b);
    double n2 = one_side(b, a);
    return std::max(n1, n2);
}

std::optional<std::pair<std::size_t, std::size_t>>
quasi_geodesic_violation(const DiscretePath& p, const Rat& K, const Rat& C) {
    p.validate();
    if (p.times.empty())
        throw validation_error("bad-times", "quasi-geodesic check needs a parametrised path");
    if (K <= 0) throw validation_error("bad-constant", "K must be > 0");
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            Rat dt = p.times[j] - p.times[i];
            const Rat& d = p.space->dist(p.points[i], p.points[j]);
            if (d > K * dt + C) return std::make_pair(i, j);
            if (d < dt / K - C) return std::make_pair(i, j);
        }
    return std::nullopt;
}

MorseGaugeReport morse_gauge_on_witnesses(const FiniteMetricSpace& s,
                                          const std::vector<std::size_t>& Z,
                                          const std::vector<QuasiGeodesicWitness>& witnesses,
                                          const SublinearFn& k) {
    if (Z.empty()) throw validation_error("empty-set", "Z must be nonempty");
    MorseGaugeReport rep;
    const std::size_t o = s.basepoint_index();
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
        const auto& qg = witnesses[w];
        if (qg.path.space != &s)
            throw validation_error("space-mismatch", "witness path lives in another space",
                                   std::to_string(w));
        if (auto bad = quasi_geodesic_violation(qg.path, qg.K, qg.C))
            throw validation_error("not-quasi-geodesic",
                                   "witness violates its declared (K,C) inequalities",
                                   std::to_string(w) + ":" + std::to_string(bad->first) + "," +
                                       std::to_string(bad->second));
        double& n = rep.required_n[{qg.K, qg.C}];
        for (auto y : qg.path.points) {
            double d = dist_to_set(s, Z, y);
            if (d == 0.0) continue;
            double kv = k(to_double(s.dist(o, y)));
            n = (kv <= 0.0) ? std::numeric_limits<double>::infinity() : std::max(n, d / kv);
        }
    }
    return rep;
}

} // namespace coarsegeom
