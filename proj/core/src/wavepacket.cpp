#include "qtp/wavepacket.hpp"

#include <cmath>
#include <sstream>

namespace qtp {

namespace {

// Mass of the analytic |phi|^2 Gaussian (std 1/(2 sigma) about p) outside
// [lo, hi], and below zero. erfc keeps this accurate in the far tails.
double gauss_mass_outside(double p, double sigma, double lo, double hi) {
    const double s = 1.0 / (2.0 * sigma);          // momentum-space std
    const double z_lo = (p - lo) / (s * std::sqrt(2.0));
    const double z_hi = (hi - p) / (s * std::sqrt(2.0));
    return 0.5 * std::erfc(z_lo) + 0.5 * std::erfc(z_hi);
}

}  // namespace

double Wavepacket::norm_squared() const {
    double acc = 0.0;
    for (int i = 0; i < grid.count; ++i) acc += grid.weight(i) * std::norm(amp[i]);
    return acc;
}

Wavepacket gaussian_wavepacket(double p, double sigma, double a, const Grid& grid) {
    if (!(p > 0.0)) throw DomainError("gaussian_wavepacket: need p > 0");
    if (!(sigma > 0.0)) throw DomainError("gaussian_wavepacket: need sigma > 0");

    const double tail = gauss_mass_outside(p, sigma, grid.min, grid.max);
    if (tail > 1e-6) {
        std::ostringstream os;
        os << "gaussian_wavepacket: grid [" << grid.min << ", " << grid.max
           << "] too narrow for p=" << p << ", sigma=" << sigma
           << " (tail mass " << tail << " > 1e-6)";
        throw GridError(os.str());
    }
    const double negative_mass =
        0.5 * std::erfc(p * 2.0 * sigma / std::sqrt(2.0));
    if (negative_mass > 1e-8)
        throw GridError("gaussian_wavepacket: support not confined to k > 0");

    Wavepacket w;
    w.grid = grid;
    w.center_momentum = p;
    w.width = sigma;
    w.displacement = a;
    w.amp.resize(grid.count);
    const double norm = std::pow(2.0 * sigma * sigma / M_PI, 0.25);
    for (int i = 0; i < grid.count; ++i) {
        const double k = grid.node(i);
        const double d = k - p;
        const double mag = norm * std::exp(-sigma * sigma * d * d);
        w.amp[i] = mag * std::exp(complexd(0.0, -k * a));
    }
    // Renormalize on the grid so downstream quadratures see exactly unit mass.
    w.amp /= std::sqrt(w.norm_squared());
    return w;
}

Wavepacket superpose(const Wavepacket& w1, const Wavepacket& w2,
                     complexd c1, complexd c2) {
    require_same_grid(w1.grid, w2.grid, "superpose");
    Wavepacket w;
    w.grid = w1.grid;
    w.center_momentum = w1.center_momentum;
    w.width = w1.width;
    w.displacement = 0.0;
    w.amp = c1 * w1.amp + c2 * w2.amp;
    const double n2 = w.norm_squared();
    if (n2 <= 0.0) throw ConstructionError("superpose: zero state");
    w.amp /= std::sqrt(n2);
    return w;
}

complexd overlap(const Wavepacket& w1, const Wavepacket& w2) {
    require_same_grid(w1.grid, w2.grid, "overlap");
    complexd acc{0.0, 0.0};
    for (int i = 0; i < w1.grid.count; ++i)
        acc += w1.grid.weight(i) * w1.amp[i] * std::conj(w2.amp[i]);
    return acc;
}

}  // namespace qtp
