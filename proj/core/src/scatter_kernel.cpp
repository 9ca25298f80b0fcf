#include "qtp/scatter_kernel.hpp"

#include <cmath>

namespace qtp {

namespace {

// Integrate f over [a, b] with n trapezoid nodes (n >= 2).
template <class F>
double trapz(F&& f, double a, double b, int n) {
    if (!(b > a)) return 0.0;
    const double h = (b - a) / (n - 1);
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n - 1; ++i) acc += f(a + i * h);
    return acc * h;
}

// Support edge of w - omega_p - |k - p| >= 0: the function is increasing for
// p < k and decreasing for p > k, so the support is a single interval.
struct SupportInterval {
    bool empty = true;
    double lo = 0.0, hi = 0.0, kink = 0.0;  // kink = p where |k - p| flips
};

SupportInterval timelike_support(double m, double k, double w) {
    auto f = [&](double p) { return w - omega(p, m) - std::abs(k - p); };
    SupportInterval s;
    const double p_peak = std::max(k, 0.0);
    if (f(p_peak) < 0.0) return s;  // no momentum transfer is timelike
    s.empty = false;
    s.kink = p_peak;

    // left edge in [0, p_peak]
    if (f(0.0) >= 0.0) {
        s.lo = 0.0;
    } else {
        double a = 0.0, b = p_peak;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            (f(mid) < 0.0 ? a : b) = mid;
        }
        s.lo = 0.5 * (a + b);
    }
    // right edge in [p_peak, inf): bracket then bisect
    double b = std::max(p_peak, 1.0);
    while (f(b) >= 0.0) b *= 2.0;
    double a = p_peak;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        (f(mid) >= 0.0 ? a : b) = mid;
    }
    s.hi = 0.5 * (a + b);
    return s;
}

}  // namespace

double scatter_prime_point(const DetectorKernel& kernel, double m, double k, double w,
                           int p_nodes) {
    if (!(m > 0.0))
        throw DomainError("scatter_prime_point: dp/omega_p measure needs m > 0");
    if (w <= m) return 0.0;  // no energy left for the spectator particle

    auto integrand = [&](double p) { return kernel(k - p, w - omega(p, m)) / omega(p, m); };

    if (kernel.is_pointlike()) {
        // support: omega_p <= w, i.e. p in [0, sqrt(w^2 - m^2)]
        const double p_max = std::sqrt(w * w - m * m);
        return trapz(integrand, 0.0, p_max, p_nodes);
    }
    const SupportInterval s = timelike_support(m, k, w);
    if (s.empty) return 0.0;
    // split at the |k - p| kink so each piece is smooth
    const double kink = std::min(std::max(s.kink, s.lo), s.hi);
    return trapz(integrand, s.lo, kink, p_nodes) +
           trapz(integrand, kink, s.hi, p_nodes);
}

ScatteredKernel kernel_scatter_prime(const DetectorKernel& kernel, double m,
                                     const Grid& kgrid, const Grid& wgrid,
                                     int p_nodes) {
    if (kernel.is_kallen_lehmann())
        throw ConstructionError(
            "kernel_scatter_prime: the particle-excitation (Kallen-Lehmann) model "
            "does not support scattering-based measurements (spectral density "
            "vanishes at negative argument on shell)");
    Eigen::MatrixXd table(kgrid.count, wgrid.count);
    for (int i = 0; i < kgrid.count; ++i)
        for (int j = 0; j < wgrid.count; ++j)
            table(i, j) = scatter_prime_point(kernel, m, kgrid.node(i), wgrid.node(j),
                                              p_nodes);
    return ScatteredKernel(kgrid, wgrid, std::move(table));
}

double ScatteredKernel::operator()(double k, double w) const {
    auto clampf = [](double v, double lo, double hi) {
        return v < lo ? lo : (v > hi ? hi : v);
    };
    const double fk = clampf((k - kgrid_.min) / kgrid_.step(), 0.0, kgrid_.count - 1.0);
    const double fw = clampf((w - wgrid_.min) / wgrid_.step(), 0.0, wgrid_.count - 1.0);
    const int i = std::min(static_cast<int>(fk), kgrid_.count - 2);
    const int j = std::min(static_cast<int>(fw), wgrid_.count - 2);
    const double u = fk - i, v = fw - j;
    return (1 - u) * (1 - v) * table_(i, j) + u * (1 - v) * table_(i + 1, j) +
           (1 - u) * v * table_(i, j + 1) + u * v * table_(i + 1, j + 1);
}

double n_alpha(double alpha, double x) {
    if (alpha < 0.0) throw DomainError("n_alpha: need alpha >= 0");
    if (!(x > 1.0)) throw DomainError("n_alpha: need x > 1");
    // y = x - cosh u maps the integral to int_0^{arcosh x} exp(-alpha(x - cosh u)) du
    const double U = std::acosh(x);
    const int n = 8192;
    auto f = [&](double u) { return std::exp(-alpha * (x - std::cosh(u))); };
    return trapz(f, 0.0, U, n);
}

double pointlike_scatter_on_shell(double B, double tau, double k, double m) {
    if (!(k > 0.0)) throw DomainError("pointlike_scatter_on_shell: need k > 0");
    if (!(m > 0.0)) throw DomainError("pointlike_scatter_on_shell: need m > 0");
    return B * n_alpha(m * tau, omega(k, m) / m);
}

}  // namespace qtp
