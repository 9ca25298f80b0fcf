#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qtp/errors.hpp"
#include "qtp/states.hpp"

namespace qtp {

// Finite-dimensional stand-ins for the abstract detection-theory objects:
// index A runs over a dimension-D space, outcomes z over a finite set.

struct HierarchyTensor {
    Eigen::VectorXcd G1;   // level-1 vector G_A
    Eigen::MatrixXcd G2;   // level-2 matrix G_{AB}, Hermitian

    int dim() const { return static_cast<int>(G1.size()); }
    double norm1() const { return G1.norm(); }
    double norm2() const { return G2.norm(); }  // Hilbert-Schmidt

    // Throws ConstructionError when G2 is not Hermitian or dimensions clash.
    void validate(double herm_tol = 1e-12) const;
};

struct DetectorResponse {
    // response[z] is the vector R^A(z); all share the tensor dimension.
    std::vector<Eigen::VectorXcd> response;

    int outcomes() const { return static_cast<int>(response.size()); }
    Eigen::VectorXcd aggregate() const;  // D^A = sum_z R^A(z)
};

// P1(z) = C1 G_A R^A(z) or P2(z1,z2) = C2 G_{AB} R^A(z1) R^B(z2), normalized.
// Contractions must come out real non-negative (up to rounding); otherwise a
// ConstructionError lists the offending outcomes.
Eigen::VectorXd probabilities_from_tensor(const HierarchyTensor& G,
                                          const DetectorResponse& R, int level);
Eigen::MatrixXd probabilities_from_tensor2(const HierarchyTensor& G,
                                           const DetectorResponse& R);

// Unnormalized level-2 contraction Re[R(z1)^H G2 R(z2)] with no sign check:
// off-diagonal entries may be negative even for positive-semidefinite G2, and
// a negative entry satisfies Cauchy-Schwarz trivially. The diagonal is >= 0
// whenever G2 is positive semidefinite.
Eigen::MatrixXd raw_level2_contraction(const HierarchyTensor& G,
                                       const DetectorResponse& R);

// max over pairs of V(z1,z2) - sqrt(V(z1,z1) V(z2,z2)), clamped at zero;
// negative diagonals count as zero under the root.
double cauchy_schwarz_excess(const Eigen::MatrixXd& V);

struct KolmogorovCondition {
    double antisymmetric_norm;  // || G_[AB] D^B ||
    double cos_theta;           // angle between G_{BA} D^B and G_A
};

// Exact Kolmogorov-consistency check: the condition holds iff the antisymmetric part
// annihilates D and G_{BA} D^B is parallel to G_A (cos theta = 1).
// Throws DomainError when either vector norm degenerates.
KolmogorovCondition kolmogorov_condition_check(const HierarchyTensor& G,
                                               const DetectorResponse& R);

// Smallest eigenvalue of the Hermitian G_{AB}; a negative value is the
// necessary-condition witness for Cauchy-Schwarz violation.
double negativity_witness(const Eigen::MatrixXcd& G2);

// A measurement-independent classical process on a finite sample space:
// P_n(z1..zn) = sum_xi rho(xi) F_{z1}(xi) ... F_{zn}(xi), the same response
// family F reused in every slot.
struct ClassicalProcess {
    Eigen::VectorXd rho;  // distribution over hidden states xi
    Eigen::MatrixXd F;    // F(z, xi) >= 0, row per outcome

    void validate() const;  // normalization, positivity, shapes
};

// Levels 1..n (n <= 3) of the process hierarchy. Level 3 is returned
// flattened as P3[(z1 * Z + z2) * Z + z3].
struct SampledHierarchy {
    Eigen::VectorXd P1;
    Eigen::MatrixXd P2;
    Eigen::VectorXd P3;  // empty when n < 3
};

SampledHierarchy synthetic_classical_hierarchy(const ClassicalProcess& process, int n);

// Discrete analogues of the quantum measures, used to falsify: they vanish on
// every measurement-independent hierarchy.
double discrete_q1(const Eigen::VectorXd& P1, const Eigen::MatrixXd& P2);
double discrete_q2(const Eigen::MatrixXd& P2);

// Additivity defect of a discrete hierarchy: max_i |sum_z2 P2(z1,z2) - P1(z1)|
// style sup-norm over both slots.
double additivity_defect(const Eigen::VectorXd& P1, const Eigen::MatrixXd& P2);
double additivity_defect3(const Eigen::MatrixXd& P2, const Eigen::VectorXd& P3);

}  // namespace qtp
