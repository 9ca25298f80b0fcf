#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qtp/states.hpp"

namespace qtp {

// w(t) = P1(t)^2 - P2(t,t); a positive value certifies that the pair
// statistics cannot come from a measurement-independent classical process.
// Valid in the eps ~ 0 regime: w = (1/4)[|A1|^4 + |A2|^4 - 6 |A1|^2 |A2|^2].
// Throws ConstructionError when |eps| >= 1e-3 (nonorthogonal branches).
SampledDensity1D w_of_t(const Eigen::VectorXcd& A1, const Eigen::VectorXcd& A2,
                        const TimeGrid& tgrid, complexd eps);

struct GThetaSamples {
    TimeGrid tgrid;           // common grid for both time arguments
    Eigen::MatrixXd G;        // P2(t1,t2) - sqrt(P2(t1,t1) P2(t2,t2))
    Eigen::MatrixXd Theta;    // (1/2)(th11 + th22 - th12 - th21), th_ij = arg A_i(t_j)
};

// G(t1,t2) and Theta(t1,t2) from the two branch amplitudes on a common grid.
// P2 is computed from the amplitudes directly, so no small-eps assumption.
GThetaSamples g_of_t1t2(const Eigen::VectorXcd& A1, const Eigen::VectorXcd& A2,
                        const TimeGrid& tgrid, complexd eps);

// eta = exp[a v_p dt / (2 sigma^2)] (Gaussian stationary-phase regime).
double eta_gaussian(double a, double sigma, double v_p, double dt);

// Q2^(1) = int dt max{0, P1(t)^2 - P2(t,t)}. The integrand's sign changes are
// resolved inside crossing cells (linear root), so small violation tails are
// not lost to the grid.
double q1_measure(const SampledDensity1D& P1, const SampledDensity2D& P2);

// Q2^(2) = int dt1 dt2 max{0, P2(t1,t2) - sqrt(P2(t1,t1) P2(t2,t2))}.
double q2_measure(const SampledDensity2D& P2);

// Integrate out one slot of a 2D density (trapezoid). keep = 1 leaves a
// density on grid1, keep = 2 on grid2.
SampledDensity1D marginalize(const SampledDensity2D& P2, int keep);

// delta(P~, P) = (1/2) int dt |P~ - P| on a common grid.
double kolmogorov_distance(const SampledDensity1D& ptilde, const SampledDensity1D& p);

// w_{1,i}: distance between the marginal of P2 with slot i integrated out
// and the given one-point density.
double kolmogorov_distance(const SampledDensity2D& pnext, const SampledDensity1D& pn,
                           int integrated_slot);

// w_n = (1/n) sum_i w_{n,i};  W = sup over the computed levels.
double kolmogorov_level(const std::vector<double>& w_ni);
double hierarchy_supremum(const std::vector<double>& w_n);

// Upper bound w1 <= (1/2) Tr |rho_ns - rho_tilde|.
inline double trace_distance_bound(const DensityMatrix& rho_ns,
                                   const DensityMatrix& rho_tilde) {
    return trace_distance(rho_ns, rho_tilde);
}

// Locate a sign change of f on [lo, hi] by bisection; rel_tol is relative to
// the bracket width. Throws DomainError when f(lo) and f(hi) agree in sign.
double find_sign_change(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol = 1e-3);

}  // namespace qtp
