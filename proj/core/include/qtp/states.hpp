#pragma once

#include <functional>

#include <Eigen/Dense>

#include "qtp/grid.hpp"
#include "qtp/wavepacket.hpp"

namespace qtp {

// One-particle density matrix rho(k, k') tabulated on a momentum grid.
// Trace and inner products are quadrature-weighted: Tr rho = sum_i w_i rho_ii.
struct DensityMatrix {
    Grid grid;
    Eigen::MatrixXcd rho;

    double trace() const;
    void normalize();  // divide by trace; throws if trace <= 0

    // Eigenvalues of W^{1/2} rho W^{1/2} (the discretization of the integral
    // operator's spectrum); used for positivity checks and trace norms.
    Eigen::VectorXd weighted_eigenvalues() const;
    double min_eigenvalue() const;

    static DensityMatrix pure(const Wavepacket& w);
};

using OneParticleState = DensityMatrix;

// rho~(k,k') = C rho(k,k') sqrt(alpha(k) alpha(k')), C fixed by unit trace.
// Throws ConstructionError when the total absorption vanishes.
DensityMatrix postselect_state(const DensityMatrix& rho,
                               const std::function<double(double)>& alpha);

// (1/2) Tr |rho_a - rho_b| in the quadrature-weighted sense.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Symmetrized (bosonic) two-particle pure state built from two packets.
struct TwoParticleSymmetricState {
    Wavepacket phi1, phi2;
    complexd eps;  // overlap(phi1, phi2)

    TwoParticleSymmetricState(Wavepacket a, Wavepacket b)
        : phi1(std::move(a)), phi2(std::move(b)), eps(overlap(phi1, phi2)) {}
};

// Probability densities tabulated on time grids. Values below -1e-12 relative
// to the peak are a numerical failure; small negatives are clipped to zero
// and counted.
struct SampledDensity1D {
    Grid tgrid;
    Eigen::VectorXd values;
    int clipped = 0;
    double most_negative = 0.0;

    double mass() const;
    void normalize();
};

struct SampledDensity2D {
    Grid grid1, grid2;
    Eigen::MatrixXd values;  // values(i, j) = P(t1_i, t2_j)
    int clipped = 0;
    double most_negative = 0.0;

    double mass() const;
};

// Shared clipping policy; rel_tol is measured against the peak value.
// Throws NumericsError when a negative exceeds the tolerance.
void clip_negatives(Eigen::Ref<Eigen::MatrixXd> values, int& clipped,
                    double& most_negative, double rel_tol = 1e-12,
                    const char* what = "density");

}  // namespace qtp
