#include "qtp/localization.hpp"

#include <cmath>
#include <sstream>

namespace qtp {

LocalizationOperator localization_from_kernel(const DetectorKernel& kernel, double m,
                                              const Grid& grid) {
    const int n = grid.count;
    Eigen::VectorXd on_shell(n);
    for (int i = 0; i < n; ++i) {
        const double k = grid.node(i);
        on_shell[i] = kernel(k, omega(k, m));
        if (!(on_shell[i] > 0.0)) {
            std::ostringstream os;
            os << "localization_from_kernel: R(k, omega_k) = 0 at k = " << k;
            throw ConstructionError(os.str());
        }
    }

    LocalizationOperator out;
    out.grid = grid;
    out.L.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const double ki = grid.node(i);
        const double wi = omega(ki, m);
        for (int j = 0; j <= i; ++j) {
            const double kj = grid.node(j);
            const double wj = omega(kj, m);
            const double val = kernel(0.5 * (ki + kj), 0.5 * (wi + wj)) /
                               std::sqrt(on_shell[i] * on_shell[j]);
            out.L(i, j) = val;
            out.L(j, i) = val;
        }
    }
    out.maximum_localization = (out.L.array() - 1.0).abs().maxCoeff() < 1e-12;
    return out;
}

double pointlike_localization(double k, double kp) {
    if (!(k > 0.0) || !(kp > 0.0))
        throw DomainError("pointlike_localization: need k, k' > 0");
    return (k + kp) / (2.0 * std::sqrt(k * kp));
}

}  // namespace qtp
