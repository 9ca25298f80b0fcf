#include "qtp/amplitude.hpp"

#include <cmath>

#include "qtp/kinematics.hpp"
#include "qtp/quadrature.hpp"

namespace qtp {

namespace {

const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);

double grid_vmax(const Grid& g, double m) {
    // |v| is monotone in |k|
    const double kmax = std::max(std::abs(g.min), std::abs(g.max));
    if (kmax == 0.0) return 0.0;
    return std::abs(kmax) / omega(kmax, m);
}

}  // namespace

complexd amplitude(const Wavepacket& phi, double x, double t, double m) {
    const Grid& g = phi.grid;
    check_oscillation_resolution(g, x, grid_vmax(g, m), std::abs(t));
    complexd acc{0.0, 0.0};
    for (int i = 0; i < g.count; ++i) {
        const double k = g.node(i);
        if (k == 0.0 && m == 0.0) continue;  // zero-weight origin node
        const double w = omega(k, m);
        const complexd sqv = std::sqrt(complexd(k / w, 0.0));
        acc += g.weight(i) * phi.amp[i] * sqv * std::polar(1.0, k * x - w * t);
    }
    return inv_sqrt_2pi * acc;
}

Eigen::VectorXcd arrival_amplitude(const Wavepacket& phi, double x, double m,
                                   const TimeGrid& tgrid) {
    const Grid& g = phi.grid;
    const double t_abs_max = std::max(std::abs(tgrid.min), std::abs(tgrid.max));
    check_oscillation_resolution(g, x, grid_vmax(g, m), t_abs_max);

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(tgrid.count);
    const double dt = tgrid.step();
    for (int i = 0; i < g.count; ++i) {
        const double k = g.node(i);
        if (k == 0.0 && m == 0.0) continue;
        const double w = omega(k, m);
        const complexd sqv = std::sqrt(complexd(k / w, 0.0));
        const complexd coeff = inv_sqrt_2pi * g.weight(i) * phi.amp[i] * sqv;
        const complexd step = std::polar(1.0, -w * dt);
        complexd z = std::polar(1.0, k * x - w * tgrid.min);
        for (int j = 0; j < tgrid.count; ++j) {
            if (j != 0 && j % 512 == 0)  // cap recurrence drift
                z = std::polar(1.0, k * x - w * tgrid.node(j));
            out[j] += coeff * z;
            z *= step;
        }
    }
    return out;
}

complexd amplitude_stationary_phase(const Wavepacket& phi, double x, double t,
                                    double m) {
    const double p = phi.center_momentum;
    const double sigma = phi.width;
    const double a = phi.displacement;
    const double wp = omega(p, m);
    const double vp = p / wp;
    const double y = x - vp * t - a;
    const double mag = std::sqrt(vp) * std::pow(2.0 * M_PI * sigma * sigma, -0.25) *
                       std::exp(-y * y / (4.0 * sigma * sigma));
    // packet phase p*(x - vp t - a) plus the zeroth-order phase p*vp*t - wp*t
    const double phase = p * y + (p * vp - wp) * t;
    return mag * std::polar(1.0, phase);
}

}  // namespace qtp
