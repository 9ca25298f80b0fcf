#pragma once

#include <Eigen/Dense>

#include "qtp/grid.hpp"
#include "qtp/kernels.hpp"

namespace qtp {

// L(k, k') = R(½(k+k'), ½(w_k+w_k')) / sqrt(R(k,w_k) R(k',w_k')),
// tabulated on a momentum grid. Real symmetric for all implemented kernels;
// L(k,k) = 1 by construction.
struct LocalizationOperator {
    Grid grid;
    Eigen::MatrixXd L;
    bool maximum_localization = false;  // true when L is all-ones to 1e-12
};

// Throws ConstructionError if R(k, omega_k) = 0 at any grid node.
LocalizationOperator localization_from_kernel(const DetectorKernel& kernel, double m,
                                              const Grid& grid);

// Point-like scattering localization: L(k,k') = (k+k')/(2 sqrt(kk')) >= 1.
double pointlike_localization(double k, double kp);

}  // namespace qtp
