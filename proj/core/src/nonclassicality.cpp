#include "qtp/nonclassicality.hpp"

#include <cmath>

#include "qtp/quadrature.hpp"

namespace qtp {

SampledDensity1D w_of_t(const Eigen::VectorXcd& A1, const Eigen::VectorXcd& A2,
                        const TimeGrid& tgrid, complexd eps) {
    if (std::abs(eps) >= 1e-3)
        throw ConstructionError(
            "w_of_t: branches are not orthogonal (|eps| >= 1e-3); the closed form "
            "does not apply");
    if (A1.size() != tgrid.count || A2.size() != tgrid.count)
        throw GridError("w_of_t: amplitude samples do not match the time grid");
    SampledDensity1D out;
    out.tgrid = tgrid;
    out.values.resize(tgrid.count);
    for (int i = 0; i < tgrid.count; ++i) {
        const double a = std::norm(A1[i]);
        const double b = std::norm(A2[i]);
        out.values[i] = 0.25 * (a * a + b * b - 6.0 * a * b);
    }
    return out;
}

GThetaSamples g_of_t1t2(const Eigen::VectorXcd& A1, const Eigen::VectorXcd& A2,
                        const TimeGrid& tgrid, complexd eps) {
    if (A1.size() != tgrid.count || A2.size() != tgrid.count)
        throw GridError("g_of_t1t2: amplitude samples do not match the time grid");
    const int n = tgrid.count;
    const double norm = 2.0 * (1.0 + std::norm(eps));

    Eigen::VectorXd diag(n);
    for (int i = 0; i < n; ++i)
        diag[i] = std::norm(A1[i] * A2[i] + A1[i] * A2[i]) / norm;

    GThetaSamples out;
    out.tgrid = tgrid;
    out.G.resize(n, n);
    out.Theta.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double p2 =
                std::norm(A1[i] * A2[j] + A1[j] * A2[i]) / norm;
            out.G(i, j) = p2 - std::sqrt(diag[i] * diag[j]);
            out.Theta(i, j) = 0.5 * (std::arg(A1[i]) + std::arg(A2[j]) -
                                     std::arg(A1[j]) - std::arg(A2[i]));
        }
    return out;
}

double eta_gaussian(double a, double sigma, double v_p, double dt) {
    return std::exp(a * v_p * dt / (2.0 * sigma * sigma));
}

double q1_measure(const SampledDensity1D& P1, const SampledDensity2D& P2) {
    require_same_grid(P1.tgrid, P2.grid1, "q1_measure");
    require_same_grid(P1.tgrid, P2.grid2, "q1_measure");
    Eigen::VectorXd f(P1.tgrid.count);
    for (int i = 0; i < P1.tgrid.count; ++i)
        f[i] = P1.values[i] * P1.values[i] - P2.values(i, i);
    return positive_part_integral(f, P1.tgrid);
}

double q2_measure(const SampledDensity2D& P2) {
    require_same_grid(P2.grid1, P2.grid2, "q2_measure");
    const Grid& g = P2.grid1;
    const int n = g.count;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double wj = g.weight(j);
        const double djj = P2.values(j, j);
        for (int i = 0; i < n; ++i) {
            const double excess =
                P2.values(i, j) - std::sqrt(P2.values(i, i) * djj);
            if (excess > 0.0) acc += g.weight(i) * wj * excess;
        }
    }
    return acc;
}

SampledDensity1D marginalize(const SampledDensity2D& P2, int keep) {
    if (keep != 1 && keep != 2)
        throw DomainError("marginalize: keep must be 1 or 2");
    SampledDensity1D out;
    if (keep == 1) {
        out.tgrid = P2.grid1;
        out.values.resize(P2.grid1.count);
        for (int i = 0; i < P2.grid1.count; ++i)
            out.values[i] = trapezoid(P2.values.row(i).transpose(), P2.grid2);
    } else {
        out.tgrid = P2.grid2;
        out.values.resize(P2.grid2.count);
        for (int j = 0; j < P2.grid2.count; ++j)
            out.values[j] = trapezoid(P2.values.col(j), P2.grid1);
    }
    return out;
}

double kolmogorov_distance(const SampledDensity1D& ptilde, const SampledDensity1D& p) {
    require_same_grid(ptilde.tgrid, p.tgrid, "kolmogorov_distance");
    return 0.5 * trapezoid((ptilde.values - p.values).cwiseAbs(), p.tgrid);
}

double kolmogorov_distance(const SampledDensity2D& pnext, const SampledDensity1D& pn,
                           int integrated_slot) {
    if (integrated_slot != 1 && integrated_slot != 2)
        throw DomainError("kolmogorov_distance: slot must be 1 or 2");
    return kolmogorov_distance(marginalize(pnext, integrated_slot == 1 ? 2 : 1), pn);
}

double kolmogorov_level(const std::vector<double>& w_ni) {
    if (w_ni.empty()) throw DomainError("kolmogorov_level: empty marginal list");
    double acc = 0.0;
    for (double w : w_ni) acc += w;
    return acc / static_cast<double>(w_ni.size());
}

double hierarchy_supremum(const std::vector<double>& w_n) {
    if (w_n.empty()) throw DomainError("hierarchy_supremum: empty level list");
    double best = w_n.front();
    for (double w : w_n) best = std::max(best, w);
    return best;
}

double find_sign_change(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw DomainError("find_sign_change: no sign change on the bracket");
    const double width = hi - lo;
    while (hi - lo > rel_tol * width) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qtp
