#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qtp/grid.hpp"
#include "qtp/quadrature.hpp"

namespace qtp {

// Single-particle momentum-space amplitude phi(k), tabulated on a momentum
// grid and normalized so that the trapezoid sum of |phi|^2 is exactly 1.
struct Wavepacket {
    Grid grid;
    Eigen::VectorXcd amp;     // phi(k) at the grid nodes
    double center_momentum = 0.0;
    double width = 1.0;       // position-space sigma
    double displacement = 0.0;

    double norm_squared() const;  // quadrature of |phi|^2
};

// Gaussian wavepacket family:
//   phi(k) = (2 sigma^2/pi)^{1/4} exp(-sigma^2 (k-p)^2) exp(-i k a),
// i.e. position width sigma, momentum width 1/(2 sigma), displaced by a.
// Throws GridError if the analytic tail mass outside the grid exceeds 1e-6
// or the mass at k <= 0 exceeds 1e-8.
Wavepacket gaussian_wavepacket(double p, double sigma, double a, const Grid& grid);

// c1 * phi1 + c2 * phi2, renormalized. Used for bimodal (cat) states.
Wavepacket superpose(const Wavepacket& w1, const Wavepacket& w2,
                     complexd c1, complexd c2);

// epsilon = integral dk phi1(k) phi2*(k); throws GridError on grid mismatch.
complexd overlap(const Wavepacket& w1, const Wavepacket& w2);

}  // namespace qtp
