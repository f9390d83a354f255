#ifndef coarsegeom_morse_hpp
#define coarsegeom_morse_hpp

#include <map>
#include <utility>
#include <vector>

#include "coarsegeom/metric_space.hpp"
#include "coarsegeom/sublinear.hpp"

namespace coarsegeom {

// d(y, Z) <= n * kappa(d(o, y)), with o the space basepoint unless overridden.
bool in_kappa_neighborhood(const FiniteMetricSpace& s, const std::vector<std::size_t>& Z,
                           std::size_t y, double n, const SublinearFn& k,
                           std::optional<std::size_t> base_override = {});

// Smallest n with a's points in N_kappa(b, n) and vice versa. 0 only when each
// path's points lie on the other.
double fellow_travel_constant(const DiscretePath& a, const DiscretePath& b,
                              const SublinearFn& k);

struct QuasiGeodesicWitness {
    DiscretePath path;
    Rat K;
    Rat C;
};

struct MorseGaugeReport {
    // per (K, C) class: smallest n covering all witness points of the class
    std::map<std::pair<Rat, Rat>, double> required_n;
    // lower-bound certificate only; quantification over all quasi-geodesics
    // is out of scope and every report says so
    std::string note =
        "lower-bound certificate on supplied witnesses; not a proof of Morseness";
    // normalisation mu_Z(K,C) = max{K, C, mu_Z(K,C)} is noted, not applied
    bool max_normalisation_applied = false;
};

// Verifies each witness against its declared (K, C) inequalities (exact, using
// the declared times) and aggregates per-class covering constants.
// Throws validation_error with the violating index pair when a witness fails.
MorseGaugeReport morse_gauge_on_witnesses(const FiniteMetricSpace& s,
                                          const std::vector<std::size_t>& Z,
                                          const std::vector<QuasiGeodesicWitness>& witnesses,
                                          const SublinearFn& k);

// Exact (K, C)-quasi-geodesic check over all index pairs of a parametrised
// path: |t-s|/K - C <= d <= K|t-s| + C. Returns violating pair if any.
std::optional<std::pair<std::size_t, std::size_t>>
quasi_geodesic_violation(const DiscretePath& p, const Rat& K, const Rat& C);

} // namespace coarsegeom

#endif
