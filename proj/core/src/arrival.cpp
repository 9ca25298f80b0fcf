#include "qtp/arrival.hpp"

#include <cmath>

#include "qtp/kinematics.hpp"

namespace qtp {

namespace {

double grid_vmax(const Grid& g, double m) {
    const double kmax = std::max(std::abs(g.min), std::abs(g.max));
    return kmax == 0.0 ? 0.0 : kmax / omega(kmax, m);
}

}  // namespace

SampledDensity1D p1_time(const DensityMatrix& rho, const Eigen::MatrixXd& L, double x,
                         double m, const TimeGrid& tgrid) {
    const Grid& g = rho.grid;
    if (L.rows() != g.count || L.cols() != g.count)
        throw GridError("p1_time: localization operator does not match the state grid");
    const double t_abs_max = std::max(std::abs(tgrid.min), std::abs(tgrid.max));
    check_oscillation_resolution(g, x, grid_vmax(g, m), t_abs_max);

    const int n = g.count;
    // fold weights, velocities and L into one Hermitian matrix
    Eigen::VectorXd c(n);
    Eigen::VectorXd wk(n);
    for (int i = 0; i < n; ++i) {
        const double k = g.node(i);
        wk[i] = omega(k, m);
        c[i] = g.weight(i) * std::sqrt(std::max(k, 0.0) / wk[i]);
    }
    Eigen::MatrixXcd B =
        (rho.rho.array() * L.array()).matrix();
    B = c.asDiagonal() * B * c.asDiagonal();

    SampledDensity1D out;
    out.tgrid = tgrid;
    out.values.resize(tgrid.count);
    Eigen::VectorXcd z(n);
    for (int j = 0; j < tgrid.count; ++j) {
        const double t = tgrid.node(j);
        for (int i = 0; i < n; ++i)
            z[i] = std::polar(1.0, g.node(i) * x - wk[i] * t);
        const complexd q = z.dot(B * z);  // z^H B z, real for Hermitian B
        out.values[j] = q.real() / (2.0 * M_PI);
    }
    clip_negatives(out.values, out.clipped, out.most_negative, 1e-12, "p1_time");
    return out;
}

SampledDensity1D p1_time(const DensityMatrix& rho, const LocalizationOperator& L,
                         double x, double m, const TimeGrid& tgrid) {
    require_same_grid(rho.grid, L.grid, "p1_time");
    return p1_time(rho, L.L, x, m, tgrid);
}

SampledDensity1D p1_time_pure(const Wavepacket& phi, double x, double m,
                              const TimeGrid& tgrid) {
    const Eigen::VectorXcd A = arrival_amplitude(phi, x, m, tgrid);
    SampledDensity1D out;
    out.tgrid = tgrid;
    out.values = A.cwiseAbs2();
    return out;
}

SampledDensity1D p1_time_pair(const TwoParticleSymmetricState& state, double x,
                              double m, const TimeGrid& tgrid) {
    const Eigen::VectorXcd A1 = arrival_amplitude(state.phi1, x, m, tgrid);
    const Eigen::VectorXcd A2 = arrival_amplitude(state.phi2, x, m, tgrid);
    const complexd eps = state.eps;
    const double norm = 2.0 * (1.0 + std::norm(eps));

    SampledDensity1D out;
    out.tgrid = tgrid;
    out.values.resize(tgrid.count);
    for (int j = 0; j < tgrid.count; ++j) {
        const complexd cross = std::conj(eps) * A1[j] * std::conj(A2[j]);
        out.values[j] =
            (std::norm(A1[j]) + std::norm(A2[j]) + 2.0 * cross.real()) / norm;
    }
    clip_negatives(out.values, out.clipped, out.most_negative, 1e-12, "p1_time_pair");
    return out;
}

SampledDensity2D p2_time_symmetric(const TwoParticleSymmetricState& state, double x1,
                                   double x2, double m, const TimeGrid& tgrid1,
                                   const TimeGrid& tgrid2) {
    // A_i at each detector position; the common case x1 == x2 reuses nothing
    // but stays simple.
    const Eigen::VectorXcd A1_at1 = arrival_amplitude(state.phi1, x1, m, tgrid1);
    const Eigen::VectorXcd A2_at1 = arrival_amplitude(state.phi2, x1, m, tgrid1);
    const Eigen::VectorXcd A1_at2 = arrival_amplitude(state.phi1, x2, m, tgrid2);
    const Eigen::VectorXcd A2_at2 = arrival_amplitude(state.phi2, x2, m, tgrid2);
    const double norm = 2.0 * (1.0 + std::norm(state.eps));

    SampledDensity2D out;
    out.grid1 = tgrid1;
    out.grid2 = tgrid2;
    out.values.resize(tgrid1.count, tgrid2.count);
    for (int j = 0; j < tgrid2.count; ++j)
        for (int i = 0; i < tgrid1.count; ++i) {
            const complexd s = A1_at1[i] * A2_at2[j] + A1_at2[j] * A2_at1[i];
            out.values(i, j) = std::norm(s) / norm;
        }
    return out;
}

}  // namespace qtp
