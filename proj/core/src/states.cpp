#include "qtp/states.hpp"

#include <cmath>
#include <sstream>

namespace qtp {

double DensityMatrix::trace() const {
    double acc = 0.0;
    for (int i = 0; i < grid.count; ++i) acc += grid.weight(i) * rho(i, i).real();
    return acc;
}

void DensityMatrix::normalize() {
    const double tr = trace();
    if (!(tr > 0.0)) throw ConstructionError("DensityMatrix::normalize: trace <= 0");
    rho /= tr;
}

Eigen::VectorXd DensityMatrix::weighted_eigenvalues() const {
    const int n = grid.count;
    Eigen::VectorXd sqw(n);
    for (int i = 0; i < n; ++i) sqw[i] = std::sqrt(grid.weight(i));
    Eigen::MatrixXcd B = sqw.asDiagonal() * rho * sqw.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const { return weighted_eigenvalues().minCoeff(); }

DensityMatrix DensityMatrix::pure(const Wavepacket& w) {
    DensityMatrix d;
    d.grid = w.grid;
    d.rho = w.amp * w.amp.adjoint();
    return d;
}

DensityMatrix postselect_state(const DensityMatrix& rho,
                               const std::function<double(double)>& alpha) {
    const int n = rho.grid.count;
    Eigen::VectorXd sqa(n);
    for (int i = 0; i < n; ++i) {
        const double a = alpha(rho.grid.node(i));
        if (a < 0.0) throw DomainError("postselect_state: alpha(k) < 0");
        sqa[i] = std::sqrt(a);
    }
    DensityMatrix out;
    out.grid = rho.grid;
    out.rho = sqa.asDiagonal() * rho.rho * sqa.asDiagonal();
    const double tr = out.trace();
    if (!(tr > 0.0))
        throw ConstructionError("postselect_state: total absorption is zero");
    out.rho /= tr;
    return out;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_grid(a.grid, b.grid, "trace_distance");
    DensityMatrix diff;
    diff.grid = a.grid;
    diff.rho = a.rho - b.rho;
    return 0.5 * diff.weighted_eigenvalues().cwiseAbs().sum();
}

double SampledDensity1D::mass() const {
    double acc = 0.0;
    for (int i = 0; i < tgrid.count; ++i) acc += tgrid.weight(i) * values[i];
    return acc;
}

void SampledDensity1D::normalize() {
    const double m = mass();
    if (!(m > 0.0)) throw NumericsError("SampledDensity1D::normalize: zero mass");
    values /= m;
}

double SampledDensity2D::mass() const {
    double acc = 0.0;
    for (int i = 0; i < grid1.count; ++i) {
        double row = 0.0;
        for (int j = 0; j < grid2.count; ++j) row += grid2.weight(j) * values(i, j);
        acc += grid1.weight(i) * row;
    }
    return acc;
}

void clip_negatives(Eigen::Ref<Eigen::MatrixXd> values, int& clipped,
                    double& most_negative, double rel_tol, const char* what) {
    const double peak = values.maxCoeff();
    const double floor = -rel_tol * std::max(peak, 0.0);
    most_negative = 0.0;
    clipped = 0;
    for (Eigen::Index j = 0; j < values.cols(); ++j)
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            double& v = values(i, j);
            if (v < 0.0) {
                most_negative = std::min(most_negative, v);
                if (v < floor) {
                    std::ostringstream os;
                    os << what << ": negative value " << v << " below clipping floor "
                       << floor << " (quadrature failure)";
                    throw NumericsError(os.str());
                }
                v = 0.0;
                ++clipped;
            }
        }
}

}  // namespace qtp
