#pragma once

#include <variant>

#include "qtp/errors.hpp"
#include "qtp/kinematics.hpp"

namespace qtp {

// Exponential kernel (maximum localization):
//   R(k, w) = A exp(-gamma1 |k| - gamma0 w) for |k| <= w, else 0.
struct ExponentialKernel {
    double A = 1.0;
    double gamma0 = 0.0;
    double gamma1 = 0.0;
};

// Particle-excitation model: R(k, w) = rho(w^2 - k^2) with a
// single Gaussian bump spectral density, zero at negative argument.
struct KallenLehmannKernel {
    double mu0_sq = 1.0;
    double bump_width = 0.1;
    double amplitude = 1.0;

    double rho(double mu_sq) const {
        if (mu_sq < 0.0) return 0.0;
        const double d = mu_sq - mu0_sq;
        return amplitude * std::exp(-d * d / (2.0 * bump_width * bump_width));
    }
};

// Point-like detector with Lorentzian response:
//   R(w) = B exp(-w tau) for w >= 0, independent of k. The timelike-support
//   cut |k| <= w does not apply to this model.
struct PointlikeLorentzianKernel {
    double B = 1.0;
    double tau = 1.0;
};

class DetectorKernel {
  public:
    using Variant =
        std::variant<ExponentialKernel, KallenLehmannKernel, PointlikeLorentzianKernel>;

    explicit DetectorKernel(Variant v) : v_(std::move(v)) {}

    // R(k, w) >= 0; zero off-support.
    double operator()(double k, double w) const;

    bool is_pointlike() const {
        return std::holds_alternative<PointlikeLorentzianKernel>(v_);
    }
    bool is_exponential() const { return std::holds_alternative<ExponentialKernel>(v_); }
    bool is_kallen_lehmann() const {
        return std::holds_alternative<KallenLehmannKernel>(v_);
    }
    const Variant& variant() const { return v_; }

  private:
    Variant v_;
};

DetectorKernel kernel_exponential(double A, double gamma0, double gamma1);
DetectorKernel kernel_kallen_lehmann(double mu0_sq, double bump_width, double amplitude);
DetectorKernel kernel_pointlike(double B, double tau);

// alpha(k) = R(k, omega_k) / (2k); throws DomainError for k <= 0.
double absorption_coefficient(const DetectorKernel& kernel, double k, double m);

}  // namespace qtp
