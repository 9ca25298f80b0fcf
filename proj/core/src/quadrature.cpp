#include "qtp/quadrature.hpp"

#include <cmath>

namespace qtp {

IntegralResult oscillatory_integral(const Eigen::VectorXcd& f, const Grid& grid,
                                    double tail_threshold) {
    if (f.size() != grid.count)
        throw GridError("oscillatory_integral: integrand length does not match grid");

    double peak = 0.0;
    for (int i = 0; i < grid.count; ++i) peak = std::max(peak, std::abs(f[i]));

    IntegralResult r;
    if (peak == 0.0) return r;

    complexd acc{0.0, 0.0};
    for (int i = 0; i < grid.count; ++i) acc += grid.weight(i) * f[i];
    r.value = acc;
    r.tail_ok = std::abs(f[0]) <= tail_threshold * peak &&
                std::abs(f[grid.count - 1]) <= tail_threshold * peak;
    return r;
}

double trapezoid(const Eigen::VectorXd& f, const Grid& grid) {
    if (f.size() != grid.count)
        throw GridError("trapezoid: integrand length does not match grid");
    double acc = 0.0;
    for (int i = 0; i < grid.count; ++i) acc += grid.weight(i) * f[i];
    return acc;
}

double positive_part_integral(const Eigen::VectorXd& f, const Grid& grid) {
    if (f.size() != grid.count)
        throw GridError("positive_part_integral: integrand length does not match grid");
    const double h = grid.step();
    double acc = 0.0;
    for (int i = 0; i + 1 < grid.count; ++i) {
        const double a = f[i], b = f[i + 1];
        if (a >= 0.0 && b >= 0.0) {
            acc += 0.5 * h * (a + b);
        } else if (a <= 0.0 && b <= 0.0) {
            // nothing
        } else if (a > 0.0) {
            // positive triangle on the left of the root
            const double s = a / (a - b);  // root position as a fraction of h
            acc += 0.5 * h * s * a;
        } else {
            const double s = a / (a - b);
            acc += 0.5 * h * (1.0 - s) * b;
        }
    }
    return acc;
}

}  // namespace qtp
