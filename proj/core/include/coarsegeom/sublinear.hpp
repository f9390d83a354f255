#ifndef coarsegeom_sublinear_hpp
#define coarsegeom_sublinear_hpp

#include <string>

#include "coarsegeom/rational.hpp"

namespace coarsegeom {

// A member of a closed family of monotone increasing, concave, sublinear
// functions. Constructor-validated on a geometric grid t in {0,1,2,4,...,2^20}:
// monotone, second difference <= 0, kappa(t)/t decreasing.
class SublinearFn {
  public:
    enum class Kind { Constant, Log, Power };

    static SublinearFn constant(Rat c);
    // t -> a*ln(1+t) + b
    static SublinearFn log(Rat a, Rat b);
    // t -> a*t^p + b, 0 < p < 1
    static SublinearFn power(Rat a, Rat p, Rat b);

    // Parses "const:1", "log:1,1" or "pow:1,0.5,0".
    static SublinearFn parse(const std::string& spec);

    double operator()(double t) const;
    double operator()(const Rat& t) const { return (*this)(to_double(t)); }

    Kind kind() const { return kind_; }
    std::string to_string() const;

  private:
    SublinearFn(Kind k, Rat a, Rat p, Rat b);
    void check_grid() const;
    Kind kind_;
    Rat a_, p_, b_;
};

} // namespace coarsegeom

#endif
