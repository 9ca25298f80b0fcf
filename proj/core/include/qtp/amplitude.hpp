#pragma once

#include <Eigen/Dense>

#include "qtp/grid.hpp"
#include "qtp/wavepacket.hpp"

namespace qtp {

// Detection amplitude at position x:
//   A(t) = (1/sqrt(2 pi)) integral dk phi(k) sqrt(v_k) e^{i k x - i omega_k t}.
// The 1/sqrt(2 pi) makes int dt |A|^2 = 1 for positive-momentum packets with
// maximum localization, so P1(t) = |A(t)|^2 for a pure state.
complexd amplitude(const Wavepacket& phi, double x, double t, double m);

// Same amplitude over a whole time grid, using a per-node phase recurrence
// (refreshed periodically) instead of one transcendental per (k, t) pair.
// Checks the oscillation-resolution rule for the grid extents.
Eigen::VectorXcd arrival_amplitude(const Wavepacket& phi, double x, double m,
                                   const TimeGrid& tgrid);

// Stationary-phase approximation around k = p (Gaussian packets):
//   A_sp(t) = sqrt(v_p) e^{-i (omega_p - p v_p) t} phitilde(x - v_p t),
// phitilde the position-space packet. Valid for sigma*p >> 1.
complexd amplitude_stationary_phase(const Wavepacket& phi, double x, double t, double m);

}  // namespace qtp
