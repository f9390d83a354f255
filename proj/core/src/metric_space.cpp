#include "coarsegeom/metric_space.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace coarsegeom {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal: " + s);
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head.empty()) head = "0";
    Int ip(head);
    Int frac = tail.empty() ? Int(0) : Int(tail);
    Int scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Rat r = Rat(ip) + (neg ? -Rat(frac, scale) : Rat(frac, scale));
    return r;
}

std::string rat_to_string(const Rat& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    // terminating decimal iff den = 2^a 5^b
    Int d = den;
    int a = 0, b = 0;
    while (d % 2 == 0) { d /= 2; ++a; }
    while (d % 5 == 0) { d /= 5; ++b; }
    if (d != 1) return num.str() + "/" + den.str();
    int digits = std::max(a, b);
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int scaled = num * scale / den; // exact by construction
    bool neg = scaled < 0;
    std::string body = Int(boost::multiprecision::abs(scaled)).str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    return (neg ? "-" : "") + body;
}

std::optional<long long> scaled_int(const Rat& r, const Int& scale) {
    Rat scaled = r * Rat(scale);
    if (boost::multiprecision::denominator(scaled) != 1) return std::nullopt;
    Int n = boost::multiprecision::numerator(scaled);
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        return std::nullopt;
    return static_cast<long long>(n);
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<PointId> points,
                                     std::vector<std::vector<Rat>> dist, PointId basepoint)
    : points_(std::move(points)), dist_(std::move(dist)) {
    const std::size_t n = points_.size();
    if (n == 0) throw validation_error("empty-space", "a metric space needs >= 1 point");
    if (dist_.size() != n)
        throw validation_error("bad-matrix", "distance matrix row count mismatch");
    for (auto& row : dist_)
        if (row.size() != n)
            throw validation_error("bad-matrix", "distance matrix column count mismatch");
    {
        std::unordered_map<std::string, int> seen;
        for (auto& p : points_)
            if (++seen[p] > 1)
                throw validation_error("duplicate-point", "duplicate point id", p);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_[i][i] != 0)
            throw validation_error("nonzero-diagonal", "dist(x,x) != 0", points_[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist_[i][j] != dist_[j][i])
                throw validation_error("asymmetric", "dist not symmetric",
                                       points_[i] + "," + points_[j]);
            if (dist_[i][j] <= 0)
                throw validation_error("degenerate", "dist(x,y) must be > 0 for x != y",
                                       points_[i] + "," + points_[j]);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist_[i][j] > dist_[i][k] + dist_[k][j])
                    throw validation_error("triangle", "triangle inequality fails",
                                           points_[i] + "," + points_[j] + "," + points_[k]);
    auto it = std::find(points_.begin(), points_.end(), basepoint);
    if (it == points_.end())
        throw validation_error("unknown-point", "basepoint not in space", basepoint);
    base_ = static_cast<std::size_t>(it - points_.begin());
}

std::size_t FiniteMetricSpace::index(const PointId& p) const {
    auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end()) throw validation_error("unknown-point", "unknown point id", p);
    return static_cast<std::size_t>(it - points_.begin());
}

FiniteMetricSpace FiniteMetricSpace::subspace(const std::vector<std::size_t>& idx) const {
    std::vector<PointId> pts;
    std::vector<std::vector<Rat>> d(idx.size(), std::vector<Rat>(idx.size()));
    for (auto i : idx) pts.push_back(points_[i]);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) d[a][b] = dist_[idx[a]][idx[b]];
    PointId bp = pts.front();
    for (auto i : idx)
        if (i == base_) bp = points_[base_];
    return FiniteMetricSpace(std::move(pts), std::move(d), bp);
}

Rat gromov_product(const FiniteMetricSpace& s, std::size_t x, std::size_t y, std::size_t o) {
    return (s.dist(o, x) + s.dist(o, y) - s.dist(x, y)) / 2;
}

Rat gromov_product(const FiniteMetricSpace& s, const PointId& x, const PointId& y,
                   const PointId& o) {
    return gromov_product(s, s.index(x), s.index(y), s.index(o));
}

namespace {

// Four-point scan on doubled integer Gromov products. P[o][x][y] is not
// materialised; per basepoint we build an n^2 table, then the n^3 inner scan.
DeltaResult delta_scan_ll(const std::vector<std::vector<long long>>& d, const Int& scale) {
    const std::size_t n = d.size();
    DeltaResult res{Rat(0), {0, 0, 0, 0}};
    long long best = 0;
    std::array<std::size_t, 4> witness{0, 0, 0, 0};
    std::vector<long long> P(n * n);
    for (std::size_t o = 0; o < n; ++o) {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                P[x * n + y] = d[o][x] + d[o][y] - d[x][y]; // doubled product
        for (std::size_t x = 0; x < n; ++x) {
            const long long* Px = P.data() + x * n;
            for (std::size_t y = 0; y < n; ++y) {
                const long long pxy = Px[y];
                const long long* Py = P.data() + y * n;
                long long m = std::numeric_limits<long long>::min();
                std::size_t mz = 0;
                for (std::size_t z = 0; z < n; ++z) {
                    long long v = std::min(Px[z], Py[z]);
                    if (v > m) { m = v; mz = z; }
                }
                if (m - pxy > best) {
                    best = m - pxy;
                    witness = {x, y, mz, o};
                }
            }
        }
    }
    res.delta = Rat(Int(best), 2 * scale);
    res.witness = witness;
    return res;
}

} // namespace

DeltaResult estimate_delta(const FiniteMetricSpace& s) {
    const std::size_t n = s.size();
    // common scale so every distance becomes an integer
    Int scale = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int den = boost::multiprecision::denominator(s.dist(i, j));
            scale = boost::multiprecision::lcm(scale, den);
        }
    std::vector<std::vector<long long>> d(n, std::vector<long long>(n, 0));
    bool fits = true;
    for (std::size_t i = 0; i < n && fits; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto v = scaled_int(s.dist(i, j), scale);
            if (!v || *v > (std::numeric_limits<long long>::max() >> 3)) { fits = false; break; }
            d[i][j] = *v;
        }
    if (fits) return delta_scan_ll(d, scale);

    // exact rational fallback
    DeltaResult res{Rat(0), {0, 0, 0, 0}};
    for (std::size_t o = 0; o < n; ++o)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                Rat pxy = gromov_product(s, x, y, o);
                for (std::size_t z = 0; z < n; ++z) {
                    Rat v = std::min(gromov_product(s, x, z, o), gromov_product(s, z, y, o)) - pxy;
                    if (v > res.delta) {
                        res.delta = v;
                        res.witness = {x, y, z, o};
                    }
                }
            }
    return res;
}

DeltaResult estimate_delta_int(const std::vector<std::vector<int>>& d) {
    std::vector<std::vector<long long>> dd(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) dd[i].assign(d[i].begin(), d[i].end());
    return delta_scan_ll(dd, 1);
}

void DiscretePath::validate() const {
    if (!space) throw validation_error("no-space", "path has no space");
    if (points.empty()) throw validation_error("empty-path", "path has no points");
    for (auto p : points)
        if (p >= space->size()) throw validation_error("unknown-point", "path point out of range");
    if (!times.empty()) {
        if (times.size() != points.size())
            throw validation_error("bad-times", "|times| != |points|");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (times[i] <= times[i - 1])
                throw validation_error("bad-times", "times not strictly increasing");
    }
}

} // namespace coarsegeom
