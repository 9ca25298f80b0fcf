#pragma once

#include <Eigen/Dense>

#include "qtp/grid.hpp"
#include "qtp/kernels.hpp"

namespace qtp {

// Scattering-modified detector kernel
//   R'(k, w) = integral dp/omega_p R1(k - p, w - omega_p),
// pretabulated on a rectangular (k, w) grid with
// bilinear interpolation. Only massive particles: the dp/omega_p measure is
// divergent at p = 0 for m = 0.
class ScatteredKernel {
  public:
    ScatteredKernel(Grid kgrid, Grid wgrid, Eigen::MatrixXd table)
        : kgrid_(kgrid), wgrid_(wgrid), table_(std::move(table)) {}

    double operator()(double k, double w) const;

    const Grid& momentum_grid() const { return kgrid_; }
    const Grid& energy_grid() const { return wgrid_; }
    const Eigen::MatrixXd& table() const { return table_; }

  private:
    Grid kgrid_, wgrid_;
    Eigen::MatrixXd table_;  // table_(i, j) = R'(k_i, w_j)
};

// Single-point evaluation by direct p-quadrature with support-aware limits
// (the integrand of the exponential/KL kernels jumps to zero at the edge of
// the timelike region; we bisect the edge and integrate the smooth pieces).
double scatter_prime_point(const DetectorKernel& kernel, double m, double k, double w,
                           int p_nodes = 2048);

ScatteredKernel kernel_scatter_prime(const DetectorKernel& kernel, double m,
                                     const Grid& kgrid, const Grid& wgrid,
                                     int p_nodes = 2048);

// N_alpha(x) = integral_0^{x-1} dy exp(-alpha y)/sqrt((x-y)^2 - 1), via the
// cosh substitution that removes the endpoint singularity. x > 1 required.
double n_alpha(double alpha, double x);

// Point-like model on-shell values: exact and m*tau >> 1 asymptotic forms.
double pointlike_scatter_on_shell(double B, double tau, double k, double m);
inline double pointlike_scatter_asymptotic(double B, double tau, double k) {
    return B / (tau * k);
}

}  // namespace qtp
