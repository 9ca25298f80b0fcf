#pragma once

#include <cmath>

#include "qtp/errors.hpp"

namespace qtp {

// Natural units hbar = c = 1: momenta/masses in inverse length, times and
// distances in length.

inline double omega(double k, double m) { return std::sqrt(k * k + m * m); }

inline double velocity(double k, double m) {
    if (k == 0.0 && m == 0.0)
        throw DomainError("velocity(k=0, m=0) is undefined");
    return k / omega(k, m);
}

struct Kinematics {
    double mass = 0.0;
    double omega(double k) const { return qtp::omega(k, mass); }
    double velocity(double k) const { return qtp::velocity(k, mass); }
};

}  // namespace qtp
