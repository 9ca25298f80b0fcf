#include "qtp/kernels.hpp"

#include <cmath>

namespace qtp {

double DetectorKernel::operator()(double k, double w) const {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ExponentialKernel>) {
                if (w < 0.0 || std::abs(k) > w) return 0.0;
                return m.A * std::exp(-m.gamma1 * std::abs(k) - m.gamma0 * w);
            } else if constexpr (std::is_same_v<T, KallenLehmannKernel>) {
                if (w < 0.0 || std::abs(k) > w) return 0.0;
                return m.rho(w * w - k * k);
            } else {
                (void)k;  // point-like: no k dependence
                if (w < 0.0) return 0.0;
                return m.B * std::exp(-w * m.tau);
            }
        },
        v_);
}

DetectorKernel kernel_exponential(double A, double gamma0, double gamma1) {
    if (!(A > 0.0) || gamma0 < 0.0 || gamma1 < 0.0)
        throw DomainError("kernel_exponential: need A > 0 and gammas >= 0");
    return DetectorKernel(ExponentialKernel{A, gamma0, gamma1});
}

DetectorKernel kernel_kallen_lehmann(double mu0_sq, double bump_width,
                                     double amplitude) {
    if (!(bump_width > 0.0) || !(amplitude > 0.0) || mu0_sq < 0.0)
        throw DomainError("kernel_kallen_lehmann: bad spectral-density parameters");
    return DetectorKernel(KallenLehmannKernel{mu0_sq, bump_width, amplitude});
}

DetectorKernel kernel_pointlike(double B, double tau) {
    if (!(B > 0.0) || !(tau > 0.0))
        throw DomainError("kernel_pointlike: need B > 0 and tau > 0");
    return DetectorKernel(PointlikeLorentzianKernel{B, tau});
}

double absorption_coefficient(const DetectorKernel& kernel, double k, double m) {
    if (!(k > 0.0)) throw DomainError("absorption_coefficient: need k > 0");
    return kernel(k, omega(k, m)) / (2.0 * k);
}

}  // namespace qtp
