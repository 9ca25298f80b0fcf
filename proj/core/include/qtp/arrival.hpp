#pragma once

#include <Eigen/Dense>

#include "qtp/amplitude.hpp"
#include "qtp/localization.hpp"
#include "qtp/states.hpp"

namespace qtp {

// P1(t) = (1/2pi) sum_{kk'} w_k w_k' sqrt(v_k v_k') rho~(k,k') L(k,k')
//         e^{i(k-k')x - i(omega_k - omega_k')t}.
// L must be tabulated on the state's grid. Not normalized: for a good time
// window the mass comes out 1 on its own (that is a tested contract).
SampledDensity1D p1_time(const DensityMatrix& rho, const Eigen::MatrixXd& L, double x,
                         double m, const TimeGrid& tgrid);
SampledDensity1D p1_time(const DensityMatrix& rho, const LocalizationOperator& L,
                         double x, double m, const TimeGrid& tgrid);

// Maximum-localization pure state: P1 = |A(t)|^2.
SampledDensity1D p1_time_pure(const Wavepacket& phi, double x, double m,
                              const TimeGrid& tgrid);

// One detection for the symmetric two-particle state (maximum localization):
// P1 = [|A1|^2 + |A2|^2 + eps* A1 A2* + eps A1* A2] / (2 (1 + |eps|^2)).
SampledDensity1D p1_time_pair(const TwoParticleSymmetricState& state, double x,
                              double m, const TimeGrid& tgrid);

// Joint arrival density for the symmetric pair, maximum localization:
// P2(t1,t2) = |A1(t1)A2(t2) + A1(t2)A2(t1)|^2 / (2 (1 + |eps|^2)).
// Exactly exchange-symmetric on the grid when tgrid1 == tgrid2.
SampledDensity2D p2_time_symmetric(const TwoParticleSymmetricState& state, double x1,
                                   double x2, double m, const TimeGrid& tgrid1,
                                   const TimeGrid& tgrid2);

}  // namespace qtp
