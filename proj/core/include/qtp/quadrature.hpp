#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qtp/grid.hpp"

namespace qtp {

using complexd = std::complex<double>;

// Result of an oscillatory-integral evaluation. tail_ok is false when the
// integrand has not decayed below the relative threshold at the grid edges;
// callers decide whether that is fatal.
struct IntegralResult {
    complexd value{0.0, 0.0};
    bool tail_ok = true;
};

// Composite trapezoid sum of a tabulated complex integrand with fixed
// left-to-right accumulation (bit-reproducible for a fixed grid).
IntegralResult oscillatory_integral(const Eigen::VectorXcd& f, const Grid& grid,
                                    double tail_threshold = 1e-10);

// Plain trapezoid for real samples, same accumulation policy.
double trapezoid(const Eigen::VectorXd& f, const Grid& grid);

// Integral of max(0, f) with the kink cells split at the linearly
// interpolated sign change. Needed for the q-measures: without the split the
// O(h^2) kink error oscillates as parameters sweep.
double positive_part_integral(const Eigen::VectorXd& f, const Grid& grid);

}  // namespace qtp
