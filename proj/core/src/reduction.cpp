#include "qtp/reduction.hpp"

#include <cmath>

#include "qtp/arrival.hpp"
#include "qtp/kinematics.hpp"

namespace qtp {

namespace {

double grid_vmax(const Grid& g, double m) {
    const double kmax = std::max(std::abs(g.min), std::abs(g.max));
    return kmax == 0.0 ? 0.0 : kmax / omega(kmax, m);
}

// A(t) as a flattened (i, j) vector: w_i w_j sqrt(v_i v_j) rho(i,j)
// z_i conj(z_j) / (2 pi), with z_i = e^{i(k_i x - omega_i t)}.
Eigen::VectorXcd flattened_state_phase(const DensityMatrix& rho, double x, double t,
                                       double m) {
    const Grid& g = rho.grid;
    const int n = g.count;
    Eigen::VectorXcd zc(n);
    for (int i = 0; i < n; ++i) {
        const double k = g.node(i);
        const double w = omega(k, m);
        zc[i] = g.weight(i) * std::sqrt(std::max(k, 0.0) / w) *
                std::polar(1.0, k * x - w * t);
    }
    Eigen::MatrixXcd A = (zc * zc.adjoint()).cwiseProduct(rho.rho) / (2.0 * M_PI);
    return Eigen::Map<Eigen::VectorXcd>(A.data(), static_cast<long>(n) * n);
}

}  // namespace

DensityMatrix ReductionOperator::sigma(int k_index) const {
    const int nq = qgrid_.count;
    DensityMatrix out;
    out.grid = qgrid_;
    out.rho.resize(nq, nq);
    const long row = k_index * static_cast<long>(kgrid_.count) + k_index;
    for (int a = 0; a < nq; ++a)
        for (int b = 0; b < nq; ++b)
            out.rho(a, b) = S2_(row, a * static_cast<long>(nq) + b);
    return out;
}

Eigen::VectorXd ReductionOperator::diagonal_norms() const {
    const int nk = kgrid_.count, nq = qgrid_.count;
    Eigen::VectorXd out(nk);
    for (int i = 0; i < nk; ++i) {
        const long row = i * static_cast<long>(nk) + i;
        double acc = 0.0;
        for (int a = 0; a < nq; ++a)
            acc += qgrid_.weight(a) * S2_(row, a * static_cast<long>(nq) + a);
        out[i] = acc;
    }
    return out;
}

Eigen::MatrixXd ReductionOperator::partial_trace() const {
    const int nk = kgrid_.count, nq = qgrid_.count;
    Eigen::MatrixXd L(nk, nk);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nk; ++j) {
            const long row = i * static_cast<long>(nk) + j;
            double acc = 0.0;
            for (int a = 0; a < nq; ++a)
                acc += qgrid_.weight(a) * S2_(row, a * static_cast<long>(nq) + a);
            L(i, j) = acc;
        }
    return L;
}

ReductionOperator build_reduction_operator(const DetectorKernel& kernel1,
                                           const DetectorKernel& kernel2, double m,
                                           const Grid& kgrid, const Grid& qgrid,
                                           const ReductionOptions& options) {
    if (kernel1.is_kallen_lehmann())
        throw ConstructionError(
            "build_reduction_operator: the particle-excitation model does not work "
            "for scattering-based measurements");
    if (!(kgrid.min > 0.0) || !(qgrid.min > 0.0))
        throw ConstructionError("build_reduction_operator: grids must be positive-momentum");

    const int nk = kgrid.count, nq = qgrid.count;

    Eigen::VectorXd alpha2(nq);
    for (int a = 0; a < nq; ++a)
        alpha2[a] = options.constant_alpha2
                        ? *options.constant_alpha2
                        : absorption_coefficient(kernel2, qgrid.node(a), m);
    if (alpha2.maxCoeff() <= 0.0)
        throw ConstructionError(
            "build_reduction_operator: second-detector coupling is zero; "
            "conditioning on a second detection is undefined");

    Eigen::VectorXd wk(nk), wq(nq);
    for (int i = 0; i < nk; ++i) wk[i] = omega(kgrid.node(i), m);
    for (int a = 0; a < nq; ++a) wq[a] = omega(qgrid.node(a), m);

    Eigen::VectorXd denom(nk);
    if (options.mode == DenominatorMode::Asymptotic) {
        if (!kernel1.is_pointlike() || !options.constant_alpha2)
            throw ConstructionError(
                "build_reduction_operator: asymptotic mode needs a point-like first "
                "kernel and constant alpha2");
        const auto& pl = std::get<PointlikeLorentzianKernel>(kernel1.variant());
        for (int i = 0; i < nk; ++i)
            denom[i] = *options.constant_alpha2 * pl.B / (pl.tau * kgrid.node(i));
    } else {
        for (int i = 0; i < nk; ++i) {
            double acc = 0.0;
            for (int a = 0; a < nq; ++a)
                acc += qgrid.weight(a) * alpha2[a] *
                       kernel1(kgrid.node(i) - qgrid.node(a), wk[i] - wq[a]) / wq[a];
            denom[i] = acc;
        }
    }
    for (int i = 0; i < nk; ++i)
        if (!(denom[i] > 0.0))
            throw ConstructionError(
                "build_reduction_operator: alpha2 * R1' vanishes on the incoming grid");

    Eigen::VectorXd g(nq), dinv(nk);
    for (int a = 0; a < nq; ++a) g[a] = std::sqrt(alpha2[a] / wq[a]);
    for (int i = 0; i < nk; ++i) dinv[i] = 1.0 / std::sqrt(denom[i]);

    Eigen::MatrixXd S2(static_cast<long>(nk) * nk, static_cast<long>(nq) * nq);
    for (int i = 0; i < nk; ++i) {
        const double ki = kgrid.node(i);
        for (int j = 0; j < nk; ++j) {
            const double kj = kgrid.node(j);
            const long row = i * static_cast<long>(nk) + j;
            const double dd = dinv[i] * dinv[j];
            for (int a = 0; a < nq; ++a) {
                const double qa = qgrid.node(a);
                for (int b = 0; b < nq; ++b) {
                    const double qb = qgrid.node(b);
                    const double num =
                        kernel1(0.5 * (ki + kj - qa - qb),
                                0.5 * (wk[i] + wk[j] - wq[a] - wq[b]));
                    S2(row, a * static_cast<long>(nq) + b) = num * g[a] * g[b] * dd;
                }
            }
        }
    }
    return ReductionOperator(kgrid, qgrid, m, std::move(S2), std::move(denom));
}

SampledDensity2D p2_scatter(const DensityMatrix& rho_tilde, const ReductionOperator& S,
                            const Eigen::MatrixXd& L2, double x, double r,
                            const TimeGrid& tgrid, const TimeGrid& taugrid) {
    require_same_grid(rho_tilde.grid, S.incoming_grid(), "p2_scatter");
    const Grid& kg = S.incoming_grid();
    const Grid& qg = S.outgoing_grid();
    const double m = S.mass();
    if (L2.rows() != qg.count || L2.cols() != qg.count)
        throw GridError("p2_scatter: L2 does not match the outgoing grid");
    if (taugrid.min < 0.0)
        throw DomainError("p2_scatter: the second detection is ordered, tau > 0");

    check_oscillation_resolution(kg, x, grid_vmax(kg, m),
                                 std::max(std::abs(tgrid.min), std::abs(tgrid.max)));
    check_oscillation_resolution(qg, r, grid_vmax(qg, m), taugrid.max);

    const int nk = kg.count, nq = qg.count;
    const int nt = tgrid.count, ntau = taugrid.count;

    // incoming side: rows of A over t
    Eigen::MatrixXcd Amat(nt, static_cast<long>(nk) * nk);
    for (int it = 0; it < nt; ++it)
        Amat.row(it) = flattened_state_phase(rho_tilde, x, tgrid.node(it), m).transpose();

    // outgoing side: S contracted against the rank-one tau phases
    Eigen::VectorXcd c(nq);
    Eigen::MatrixXcd Mmat(static_cast<long>(nk) * nk, ntau);
    Eigen::VectorXd wq(nq);
    for (int a = 0; a < nq; ++a) wq[a] = omega(qg.node(a), m);
    for (int itau = 0; itau < ntau; ++itau) {
        const double tau = taugrid.node(itau);
        for (int a = 0; a < nq; ++a) {
            const double q = qg.node(a);
            c[a] = qg.weight(a) * std::sqrt(q / wq[a]) *
                   std::polar(1.0, q * r - wq[a] * tau);
        }
        Eigen::MatrixXcd outer = (c * c.adjoint()).cwiseProduct(L2) / (2.0 * M_PI);
        Eigen::Map<Eigen::VectorXcd> v(outer.data(), static_cast<long>(nq) * nq);
        Mmat.col(itau) = S.matrix() * v.real().matrix().eval() +
                         complexd(0.0, 1.0) * (S.matrix() * v.imag().matrix().eval());
    }

    SampledDensity2D out;
    out.grid1 = tgrid;
    out.grid2 = taugrid;
    out.values = (Amat * Mmat).real();
    clip_negatives(out.values, out.clipped, out.most_negative, 1e-10, "p2_scatter");
    return out;
}

SampledDensity1D p1_time_scatter(const DensityMatrix& rho_tilde,
                                 const ReductionOperator& S, double x,
                                 const TimeGrid& tgrid) {
    require_same_grid(rho_tilde.grid, S.incoming_grid(), "p1_time_scatter");
    return p1_time(rho_tilde, S.partial_trace(), x, S.mass(), tgrid);
}

DensityMatrix reduced_state(const DensityMatrix& rho_tilde, const ReductionOperator& S,
                            double x, double t) {
    require_same_grid(rho_tilde.grid, S.incoming_grid(), "reduced_state");
    check_oscillation_resolution(S.incoming_grid(), x,
                                 velocity(S.incoming_grid().max, S.mass()),
                                 std::abs(t));
    const Grid& qg = S.outgoing_grid();
    const int nk = S.incoming_grid().count, nq = qg.count;

    const Eigen::VectorXcd A = flattened_state_phase(rho_tilde, x, t, S.mass());
    const Eigen::MatrixXd L1star = S.partial_trace();
    const Eigen::Map<const Eigen::VectorXd> l1(L1star.data(),
                                               static_cast<long>(nk) * nk);
    // L1star is stored column-major but is symmetric, so the flat dot works.
    const double P1 = (A.real().dot(l1));
    if (!(P1 > 1e-10))
        throw ConstructionError("reduced_state: conditioning on P1(t) ~ 0");

    Eigen::VectorXcd u =
        (S.matrix().transpose() * A.real().matrix().eval()).cast<complexd>();
    u -= complexd(0.0, 1.0) * (S.matrix().transpose() * A.imag().matrix().eval());

    DensityMatrix out;
    out.grid = qg;
    out.rho.resize(nq, nq);
    for (int a = 0; a < nq; ++a)
        for (int b = 0; b < nq; ++b)
            out.rho(a, b) = u[a * static_cast<long>(nq) + b] / P1;
    out.rho = 0.5 * (out.rho + out.rho.adjoint().eval());  // scrub rounding
    return out;
}

DensityMatrix nonselective_state(const DensityMatrix& rho_tilde,
                                 const ReductionOperator& S) {
    require_same_grid(rho_tilde.grid, S.incoming_grid(), "nonselective_state");
    const Grid& kg = S.incoming_grid();
    const Grid& qg = S.outgoing_grid();
    const int nk = kg.count, nq = qg.count;

    DensityMatrix out;
    out.grid = qg;
    out.rho = Eigen::MatrixXcd::Zero(nq, nq);
    for (int i = 0; i < nk; ++i) {
        const double wgt = kg.weight(i) * rho_tilde.rho(i, i).real();
        const long row = i * static_cast<long>(nk) + i;
        for (int a = 0; a < nq; ++a)
            for (int b = 0; b < nq; ++b)
                out.rho(a, b) += wgt * S.matrix()(row, a * static_cast<long>(nq) + b);
    }
    return out;
}

SampledDensity1D conditional_density(const SampledDensity2D& P2,
                                     const SampledDensity1D& P1, double t) {
    require_same_grid(P2.grid1, P1.tgrid, "conditional_density");
    int i0 = static_cast<int>(std::lround((t - P2.grid1.min) / P2.grid1.step()));
    i0 = std::max(0, std::min(P2.grid1.count - 1, i0));
    const double p1 = P1.values[i0];
    if (!(p1 > 1e-8))
        throw ConstructionError("conditional_density: P1(t) below the conditioning threshold");
    SampledDensity1D out;
    out.tgrid = P2.grid2;
    out.values = P2.values.row(i0).transpose() / p1;
    return out;
}

}  // namespace qtp
