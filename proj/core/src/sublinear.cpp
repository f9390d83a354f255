#include "coarsegeom/sublinear.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "coarsegeom/metric_space.hpp"

namespace coarsegeom {

SublinearFn::SublinearFn(Kind k, Rat a, Rat p, Rat b)
    : kind_(k), a_(std::move(a)), p_(std::move(p)), b_(std::move(b)) {
    check_grid();
}

SublinearFn SublinearFn::constant(Rat c) {
    return SublinearFn(Kind::Constant, Rat(0), Rat(0), std::move(c));
}

SublinearFn SublinearFn::log(Rat a, Rat b) {
    return SublinearFn(Kind::Log, std::move(a), Rat(0), std::move(b));
}

SublinearFn SublinearFn::power(Rat a, Rat p, Rat b) {
    if (p <= 0 || p >= 1)
        throw validation_error("bad-exponent", "power exponent must be in (0,1)",
                               rat_to_string(p));
    return SublinearFn(Kind::Power, std::move(a), std::move(p), std::move(b));
}

double SublinearFn::operator()(double t) const {
    switch (kind_) {
    case Kind::Constant: return to_double(b_);
    case Kind::Log: return to_double(a_) * std::log1p(t) + to_double(b_);
    case Kind::Power: return to_double(a_) * std::pow(t, to_double(p_)) + to_double(b_);
    }
    return 0.0;
}

void SublinearFn::check_grid() const {
    if (kind_ != Kind::Constant && a_ < 0)
        throw validation_error("bad-coefficient", "leading coefficient must be >= 0",
                               rat_to_string(a_));
    std::vector<double> ts{0.0, 1.0};
    for (double t = 2.0; t <= (1 << 20); t *= 2) ts.push_back(t);
    const double tol = 1e-9;
    double prev = (*this)(ts[0]);
    if (prev < 0)
        throw validation_error("negative", "function must be nonnegative at 0");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        double cur = (*this)(ts[i]);
        if (cur + tol < prev)
            throw validation_error("not-monotone", "function decreases on the grid",
                                   std::to_string(ts[i]));
        prev = cur;
    }
    // concavity via slopes over consecutive grid intervals
    for (std::size_t i = 2; i < ts.size(); ++i) {
        double s1 = ((*this)(ts[i - 1]) - (*this)(ts[i - 2])) / (ts[i - 1] - ts[i - 2]);
        double s2 = ((*this)(ts[i]) - (*this)(ts[i - 1])) / (ts[i] - ts[i - 1]);
        if (s2 > s1 + tol)
            throw validation_error("not-concave", "chord slopes increase on the grid",
                                   std::to_string(ts[i]));
    }
    for (std::size_t i = 2; i < ts.size(); ++i) {
        double r1 = (*this)(ts[i - 1]) / ts[i - 1];
        double r2 = (*this)(ts[i]) / ts[i];
        if (r2 > r1 + tol)
            throw validation_error("not-sublinear", "kappa(t)/t increases on the grid",
                                   std::to_string(ts[i]));
    }
}

SublinearFn SublinearFn::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw validation_error("bad-spec", "expected kind:params", spec);
    std::string kind = spec.substr(0, colon);
    std::vector<Rat> args;
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(parse_rat(tok));
    if (kind == "const" && args.size() == 1) return constant(args[0]);
    if (kind == "log" && args.size() == 2) return log(args[0], args[1]);
    if (kind == "pow" && args.size() == 3) return power(args[0], args[1], args[2]);
    throw validation_error("bad-spec", "unknown kind or wrong arity", spec);
}

std::string SublinearFn::to_string() const {
    switch (kind_) {
    case Kind::Constant: return "const:" + rat_to_string(b_);
    case Kind::Log: return "log:" + rat_to_string(a_) + "," + rat_to_string(b_);
    case Kind::Power:
        return "pow:" + rat_to_string(a_) + "," + rat_to_string(p_) + "," + rat_to_string(b_);
    }
    return "";
}

} // namespace coarsegeom
