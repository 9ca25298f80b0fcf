#pragma once

#include <Eigen/Dense>

#include "qtp/errors.hpp"

namespace qtp {

// Uniform 1D grid with composite trapezoid weights.
// Sum of weights equals (max - min) exactly up to rounding.
struct Grid {
    double min = 0.0;
    double max = 1.0;
    int count = 2;

    Grid() = default;
    Grid(double lo, double hi, int n) : min(lo), max(hi), count(n) {
        if (!(hi > lo) || n < 2) throw GridError("Grid: need max > min and count >= 2");
    }

    double step() const { return (max - min) / (count - 1); }
    double node(int i) const { return min + i * step(); }
    double weight(int i) const {
        const double h = step();
        return (i == 0 || i == count - 1) ? 0.5 * h : h;
    }

    Eigen::VectorXd nodes() const {
        Eigen::VectorXd x(count);
        for (int i = 0; i < count; ++i) x[i] = node(i);
        return x;
    }
    Eigen::VectorXd weights() const {
        Eigen::VectorXd w(count);
        for (int i = 0; i < count; ++i) w[i] = weight(i);
        return w;
    }

    bool operator==(const Grid& o) const {
        return min == o.min && max == o.max && count == o.count;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

using MomentumGrid = Grid;
using TimeGrid = Grid;

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (a != b) throw GridError(std::string("grid mismatch in ") + what);
}

// Reject momentum grids too coarse to resolve the phase k*x - w_k*t.
// Literal rule: dk * (|x| + v_max * max|t|) < pi/4.
void check_oscillation_resolution(const Grid& kgrid, double x, double v_max, double t_abs_max);

}  // namespace qtp
