#ifndef KONE_TOLERANCES_HPP
#define KONE_TOLERANCES_HPP

#include <stdexcept>
#include <string>

namespace kone {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

class NonPositivePairing : public Error {
public:
    using Error::Error;
};

/// Numerical thresholds shared by all predicates.
///
/// eig_gap       relative tolerance for eigenvalue coincidence
/// lp_feas       LP feasibility tolerance (residual of a unit right-hand side)
/// member_margin relative margin of the interior-membership test
/// sign_eps      an inner product of unit vectors counts as negative below -sign_eps
/// dedup_angle   two rays closer than this angle are the same ray
struct Tolerances {
    double eig_gap = 1e-9;
    double lp_feas = 1e-9;
    double member_margin = 1e-8;
    double sign_eps = 1e-10;
    double dedup_angle = 1e-8;

    void validate() const
    {
        auto check = [](double v, const char* name) {
            if (!(v > 0.0)) {
                throw Error(std::string("tolerance '") + name + "' must be strictly positive");
            }
        };
        check(eig_gap, "eig_gap");
        check(lp_feas, "lp_feas");
        check(member_margin, "member_margin");
        check(sign_eps, "sign_eps");
        check(dedup_angle, "dedup_angle");
    }
};

} // namespace kone

#endif
