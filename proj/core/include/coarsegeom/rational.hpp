#ifndef coarsegeom_rational_hpp
#define coarsegeom_rational_hpp

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace coarsegeom {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Parses "3", "-1.25" or "7/3". Throws std::invalid_argument on garbage.
Rat parse_rat(const std::string& s);

// Emits a finite decimal string when the denominator is of the form 2^a 5^b,
// otherwise an exact "p/q" fraction string. parse_rat round-trips both.
std::string rat_to_string(const Rat& r);

inline double to_double(const Rat& r) { return static_cast<double>(r); }

// Exact integer representation q*r, if r*q is integral for the scale q.
std::optional<long long> scaled_int(const Rat& r, const Int& scale);

} // namespace coarsegeom

#endif
