#pragma once

#include <optional>

#include <Eigen/Dense>

#include "qtp/kernels.hpp"
#include "qtp/localization.hpp"
#include "qtp/states.hpp"

namespace qtp {

// How the denominator alpha2 * R1'(k, omega_k) of the reduction operator is
// evaluated.
//   Numeric    — as the q-grid trapezoid sum of the same integrand that
//                discretizes int dq S(k,q;k,q); the normalization identity
//                int dq S(k,q;k,q) = 1 then holds on the grid to rounding.
//   Asymptotic — point-like large-m*tau regime, R1' = B/(tau k) and constant
//                alpha2; this is the mode in which the closed-form diagonal
//                (tau k / omega_q) e^{-tau (omega_k - omega_q)} is exact.
enum class DenominatorMode { Numeric, Asymptotic };

struct ReductionOptions {
    DenominatorMode mode = DenominatorMode::Numeric;
    // When set, the second detector has a constant absorption coefficient
    // (then L1* = L1); otherwise alpha2 comes from kernel2 on shell.
    std::optional<double> constant_alpha2;
};

// Reduction operator S(k,q; k',q') on (incoming kgrid) x (outgoing qgrid),
// stored as a real matrix with row index (i,j) over incoming pairs and
// column index (a,b) over outgoing pairs.
class ReductionOperator {
  public:
    ReductionOperator(Grid kgrid, Grid qgrid, double m, Eigen::MatrixXd S2,
                      Eigen::VectorXd denom)
        : kgrid_(kgrid), qgrid_(qgrid), mass_(m), S2_(std::move(S2)),
          denom_(std::move(denom)) {}

    const Grid& incoming_grid() const { return kgrid_; }
    const Grid& outgoing_grid() const { return qgrid_; }
    double mass() const { return mass_; }
    const Eigen::MatrixXd& matrix() const { return S2_; }
    const Eigen::VectorXd& denominator() const { return denom_; }

    double S(int i, int a, int j, int b) const {
        return S2_(i * static_cast<long>(kgrid_.count) + j,
                   a * static_cast<long>(qgrid_.count) + b);
    }

    // sigma_k slice: sigma(q,q') = S(k,q; k,q'), a (Nq x Nq) density matrix.
    DensityMatrix sigma(int k_index) const;

    // int dq S(k,q; k,q) per incoming node (the normalization check).
    Eigen::VectorXd diagonal_norms() const;

    // L1*(k,k') = Tr_2 S = sum_a w_a S(k,q_a; k',q_a).
    Eigen::MatrixXd partial_trace() const;

  private:
    Grid kgrid_, qgrid_;
    double mass_;
    Eigen::MatrixXd S2_;
    Eigen::VectorXd denom_;
};

// kernel2 supplies alpha2(q) unless options.constant_alpha2 is set.
// Throws ConstructionError on zero denominators / zero second-detector
// coupling, and for the Kallen-Lehmann first kernel (no on-shell scattering).
ReductionOperator build_reduction_operator(const DetectorKernel& kernel1,
                                           const DetectorKernel& kernel2, double m,
                                           const Grid& kgrid, const Grid& qgrid,
                                           const ReductionOptions& options = {});

// Joint density P2(t, tau) for first detection at t and second detection a
// delay tau later; tau > 0 enforced by the tau grid.
// L2 tabulated on the outgoing grid; pass the identity for maximum
// localization. rho must be the alpha_{1,2} post-selected state.
SampledDensity2D p2_scatter(const DensityMatrix& rho_tilde, const ReductionOperator& S,
                            const Eigen::MatrixXd& L2, double x, double r,
                            const TimeGrid& tgrid, const TimeGrid& taugrid);

// P1(t) for the scattering chain: the arrival density with L1* = Tr_2 S. By the
// energy delta this equals the full-line tau marginal of P2(t, tau).
SampledDensity1D p1_time_scatter(const DensityMatrix& rho_tilde,
                                 const ReductionOperator& S, double x,
                                 const TimeGrid& tgrid);

// rho_1^{(x,t)}: conditional post-detection state; throws on P1(t) ~ 0.
DensityMatrix reduced_state(const DensityMatrix& rho_tilde, const ReductionOperator& S,
                            double x, double t);

// rho_1^{ns} = sum_k w_k rho~(k,k) sigma_k.
DensityMatrix nonselective_state(const DensityMatrix& rho_tilde,
                                 const ReductionOperator& S);

// P(tau|t) = P2(t, tau)/P1(t), sliced at the grid node nearest t.
SampledDensity1D conditional_density(const SampledDensity2D& P2,
                                     const SampledDensity1D& P1, double t);

}  // namespace qtp
