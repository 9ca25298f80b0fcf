#include "qtp/hierarchy.hpp"

#include <cmath>
#include <sstream>

namespace qtp {

namespace {

// Clamp tiny negative contraction values; anything genuinely negative is a
// modelling error and gets reported with its outcome label.
void check_nonnegative(Eigen::Ref<Eigen::VectorXd> v, const char* what) {
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    std::ostringstream bad;
    int nbad = 0;
    for (long i = 0; i < v.size(); ++i) {
        if (v[i] < -1e-12 * scale) {
            if (nbad++ < 8) bad << ' ' << i << " -> " << v[i];
        } else if (v[i] < 0.0) {
            v[i] = 0.0;
        }
    }
    if (nbad > 0)
        throw ConstructionError(std::string(what) +
                                ": negative outcome probabilities at" + bad.str());
}

}  // namespace

void HierarchyTensor::validate(double herm_tol) const {
    if (G2.rows() != dim() || G2.cols() != dim())
        throw ConstructionError("HierarchyTensor: G2 does not match the G1 dimension");
    const double scale = std::max(1.0, G2.norm());
    if ((G2 - G2.adjoint()).norm() > herm_tol * scale)
        throw ConstructionError("HierarchyTensor: G2 is not Hermitian");
}

Eigen::VectorXcd DetectorResponse::aggregate() const {
    if (response.empty()) throw DomainError("DetectorResponse: empty outcome set");
    Eigen::VectorXcd D = response.front();
    for (size_t z = 1; z < response.size(); ++z) {
        if (response[z].size() != D.size())
            throw ConstructionError("DetectorResponse: ragged response vectors");
        D += response[z];
    }
    return D;
}

Eigen::VectorXd probabilities_from_tensor(const HierarchyTensor& G,
                                          const DetectorResponse& R, int level) {
    G.validate();
    const int Z = R.outcomes();
    if (Z == 0) throw DomainError("probabilities_from_tensor: empty outcome set");
    if (level == 1) {
        Eigen::VectorXd P(Z);
        for (int z = 0; z < Z; ++z) P[z] = G.G1.dot(R.response[z]).real();
        check_nonnegative(P, "probabilities_from_tensor");
        const double total = P.sum();
        if (!(total > 0.0))
            throw ConstructionError("probabilities_from_tensor: zero total detection");
        return P / total;  // C1 = 1/total
    }
    if (level == 2) {
        const Eigen::MatrixXd P2 = probabilities_from_tensor2(G, R);
        return Eigen::Map<const Eigen::VectorXd>(P2.data(), P2.size());
    }
    throw DomainError("probabilities_from_tensor: level must be 1 or 2");
}

Eigen::MatrixXd probabilities_from_tensor2(const HierarchyTensor& G,
                                           const DetectorResponse& R) {
    G.validate();
    const int Z = R.outcomes();
    if (Z == 0) throw DomainError("probabilities_from_tensor2: empty outcome set");
    Eigen::MatrixXd P(Z, Z);
    for (int z2 = 0; z2 < Z; ++z2) {
        const Eigen::VectorXcd col = G.G2 * R.response[z2];
        for (int z1 = 0; z1 < Z; ++z1)
            P(z1, z2) = R.response[z1].dot(col).real();
    }
    Eigen::Map<Eigen::VectorXd> flat(P.data(), P.size());
    check_nonnegative(flat, "probabilities_from_tensor2");
    const double total = flat.sum();
    if (!(total > 0.0))
        throw ConstructionError("probabilities_from_tensor2: zero total detection");
    return P / total;  // C2 = 1/total
}

Eigen::MatrixXd raw_level2_contraction(const HierarchyTensor& G,
                                       const DetectorResponse& R) {
    G.validate();
    const int Z = R.outcomes();
    if (Z == 0) throw DomainError("raw_level2_contraction: empty outcome set");
    Eigen::MatrixXd V(Z, Z);
    for (int z2 = 0; z2 < Z; ++z2) {
        const Eigen::VectorXcd col = G.G2 * R.response[z2];
        for (int z1 = 0; z1 < Z; ++z1) V(z1, z2) = R.response[z1].dot(col).real();
    }
    return V;
}

double cauchy_schwarz_excess(const Eigen::MatrixXd& V) {
    if (V.rows() != V.cols())
        throw GridError("cauchy_schwarz_excess: square matrix expected");
    double worst = 0.0;
    for (long j = 0; j < V.cols(); ++j)
        for (long i = 0; i < V.rows(); ++i) {
            const double bound =
                std::sqrt(std::max(V(i, i), 0.0) * std::max(V(j, j), 0.0));
            worst = std::max(worst, V(i, j) - bound);
        }
    return worst;
}

KolmogorovCondition kolmogorov_condition_check(const HierarchyTensor& G,
                                               const DetectorResponse& R) {
    G.validate();
    const Eigen::VectorXcd D = R.aggregate();
    const Eigen::VectorXcd g = G.G2.transpose() * D;            // G_{BA} D^B
    const Eigen::MatrixXcd asym = 0.5 * (G.G2 - G.G2.transpose());
    const double asym_norm = (asym * D).norm();

    const double ng = g.norm();
    const double n1 = G.norm1();
    if (!(ng > 0.0) || !(n1 > 0.0))
        throw DomainError("kolmogorov_condition_check: degenerate vector norm");
    return {asym_norm, (g.dot(G.G1)).real() / (ng * n1)};
}

double negativity_witness(const Eigen::MatrixXcd& G2) {
    const double scale = std::max(1.0, G2.norm());
    if ((G2 - G2.adjoint()).norm() > 1e-10 * scale)
        throw ConstructionError("negativity_witness: G2 is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G2,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void ClassicalProcess::validate() const {
    if (rho.size() == 0 || F.size() == 0)
        throw ConstructionError("ClassicalProcess: empty process");
    if (F.cols() != rho.size())
        throw ConstructionError("ClassicalProcess: F columns must index hidden states");
    if (rho.minCoeff() < 0.0 || F.minCoeff() < 0.0)
        throw ConstructionError("ClassicalProcess: negative weights");
    if (std::abs(rho.sum() - 1.0) > 1e-12)
        throw ConstructionError("ClassicalProcess: rho is not normalized");
}

SampledHierarchy synthetic_classical_hierarchy(const ClassicalProcess& process, int n) {
    process.validate();
    if (n < 1 || n > 3)
        throw DomainError("synthetic_classical_hierarchy: n must be in 1..3");
    const int Z = static_cast<int>(process.F.rows());
    const int X = static_cast<int>(process.rho.size());

    SampledHierarchy out;
    out.P1 = process.F * process.rho;
    if (n >= 2)
        out.P2 = process.F * process.rho.asDiagonal() * process.F.transpose();
    if (n >= 3) {
        out.P3.setZero(static_cast<long>(Z) * Z * Z);
        for (int xi = 0; xi < X; ++xi) {
            const double r = process.rho[xi];
            if (r == 0.0) continue;
            for (int z1 = 0; z1 < Z; ++z1)
                for (int z2 = 0; z2 < Z; ++z2)
                    for (int z3 = 0; z3 < Z; ++z3)
                        out.P3[(static_cast<long>(z1) * Z + z2) * Z + z3] +=
                            r * process.F(z1, xi) * process.F(z2, xi) *
                            process.F(z3, xi);
        }
    }
    return out;
}

double discrete_q1(const Eigen::VectorXd& P1, const Eigen::MatrixXd& P2) {
    if (P2.rows() != P1.size() || P2.cols() != P1.size())
        throw GridError("discrete_q1: level sizes disagree");
    double acc = 0.0;
    for (long z = 0; z < P1.size(); ++z)
        acc += std::max(0.0, P1[z] * P1[z] - P2(z, z));
    return acc;
}

double discrete_q2(const Eigen::MatrixXd& P2) {
    if (P2.rows() != P2.cols()) throw GridError("discrete_q2: P2 must be square");
    double acc = 0.0;
    for (long j = 0; j < P2.cols(); ++j)
        for (long i = 0; i < P2.rows(); ++i)
            acc += std::max(0.0, P2(i, j) - std::sqrt(P2(i, i) * P2(j, j)));
    return acc;
}

double additivity_defect(const Eigen::VectorXd& P1, const Eigen::MatrixXd& P2) {
    if (P2.rows() != P1.size() || P2.cols() != P1.size())
        throw GridError("additivity_defect: level sizes disagree");
    const double d1 = (P2.rowwise().sum() - P1).cwiseAbs().maxCoeff();
    const double d2 = (P2.colwise().sum().transpose() - P1).cwiseAbs().maxCoeff();
    return std::max(d1, d2);
}

double additivity_defect3(const Eigen::MatrixXd& P2, const Eigen::VectorXd& P3) {
    const int Z = static_cast<int>(P2.rows());
    if (P2.cols() != Z || P3.size() != static_cast<long>(Z) * Z * Z)
        throw GridError("additivity_defect3: level sizes disagree");
    double worst = 0.0;
    for (int slot = 0; slot < 3; ++slot) {
        Eigen::MatrixXd marg = Eigen::MatrixXd::Zero(Z, Z);
        for (int z1 = 0; z1 < Z; ++z1)
            for (int z2 = 0; z2 < Z; ++z2)
                for (int z3 = 0; z3 < Z; ++z3) {
                    const double v = P3[(static_cast<long>(z1) * Z + z2) * Z + z3];
                    if (slot == 0)
                        marg(z2, z3) += v;
                    else if (slot == 1)
                        marg(z1, z3) += v;
                    else
                        marg(z1, z2) += v;
                }
        worst = std::max(worst, (marg - P2).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace qtp
