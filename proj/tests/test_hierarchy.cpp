#include <doctest.h>

#include <cmath>
#include <random>

#include "qtp/hierarchy.hpp"

using namespace qtp;

namespace {

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1p-53; }

Eigen::VectorXcd random_cvec(std::mt19937_64& rng, int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = complexd(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
    return v;
}

DetectorResponse positive_response(std::mt19937_64& rng, int n, int outcomes) {
    DetectorResponse R;
    for (int z = 0; z < outcomes; ++z) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v[i] = complexd(uniform01(rng) + 0.05, 0.0);
        R.response.push_back(v);
    }
    return R;
}

ClassicalProcess random_process(std::mt19937_64& rng, int dim, int outcomes) {
    ClassicalProcess pr;
    pr.rho.resize(dim);
    for (int i = 0; i < dim; ++i) pr.rho[i] = uniform01(rng) + 1e-3;
    pr.rho /= pr.rho.sum();
    pr.F.resize(outcomes, dim);
    for (int z = 0; z < outcomes; ++z)
        for (int i = 0; i < dim; ++i) pr.F(z, i) = uniform01(rng) + 1e-3;
    for (int i = 0; i < dim; ++i) pr.F.col(i) /= pr.F.col(i).sum();
    return pr;
}

}  // namespace

TEST_CASE("tensor validation") {
    HierarchyTensor G;
    G.G1 = Eigen::VectorXcd::Ones(3);
    G.G2 = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_NOTHROW(G.validate());
    G.G2(0, 1) = complexd(0.5, 0.5);  // breaks Hermiticity
    CHECK_THROWS_AS(G.validate(), ConstructionError);
    G.G2 = Eigen::MatrixXcd::Identity(2, 2);  // dimension clash
    CHECK_THROWS_AS(G.validate(), ConstructionError);
}

TEST_CASE("rank-one tensor factorizes the pair probabilities") {
    std::mt19937_64 rng(7);
    const int n = 5;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = complexd(uniform01(rng) + 0.1, 0.0);
    HierarchyTensor G;
    G.G1 = v;
    G.G2 = v * v.adjoint();
    G.validate();
    const DetectorResponse R = positive_response(rng, n, 4);

    const Eigen::VectorXd P1 = probabilities_from_tensor(G, R, 1);
    CHECK(P1.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(P1.minCoeff() >= 0.0);
    const Eigen::MatrixXd P2 = probabilities_from_tensor2(G, R);
    CHECK(P2.sum() == doctest::Approx(1.0).epsilon(1e-14));
    for (int z1 = 0; z1 < 4; ++z1)
        for (int z2 = 0; z2 < 4; ++z2)
            CHECK(P2(z1, z2) == doctest::Approx(P1[z1] * P1[z2]).epsilon(1e-12));
    // measurement independence in the discrete measures
    CHECK(discrete_q1(P1, P2) <= 1e-14);
    CHECK(discrete_q2(P2) <= 1e-14);
}

TEST_CASE("raw level-2 contraction against explicit loops") {
    std::mt19937_64 rng(11);
    const int n = 4, outcomes = 3;
    const Eigen::MatrixXcd M = [&] {
        Eigen::MatrixXcd A(n, n);
        for (int i = 0; i < n; ++i) A.row(i) = random_cvec(rng, n).transpose();
        return A;
    }();
    HierarchyTensor G;
    G.G1 = random_cvec(rng, n);
    G.G2 = 0.5 * (M + M.adjoint());
    DetectorResponse R;
    for (int z = 0; z < outcomes; ++z) R.response.push_back(random_cvec(rng, n));

    const Eigen::MatrixXd V = raw_level2_contraction(G, R);
    for (int z1 = 0; z1 < outcomes; ++z1)
        for (int z2 = 0; z2 < outcomes; ++z2) {
            complexd acc{0.0, 0.0};
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    acc += std::conj(R.response[z1][a]) * G.G2(a, b) *
                           R.response[z2][b];
            CHECK(V(z1, z2) == doctest::Approx(acc.real()).epsilon(1e-12));
        }
}

TEST_CASE("cauchy-schwarz excess") {
    // PSD contraction matrices never violate the inequality
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const int z = 2 + static_cast<int>(uniform01(rng) * 4);
        Eigen::MatrixXd M(z, z);
        for (int i = 0; i < z; ++i)
            for (int j = 0; j < z; ++j) M(i, j) = uniform01(rng) - 0.5;
        const Eigen::MatrixXd V = M * M.transpose();
        CHECK(cauchy_schwarz_excess(V) == 0.0);
    }
    // a handcrafted violation is reported with the right magnitude
    Eigen::MatrixXd V(2, 2);
    V << 1.0, 2.0, 2.0, 1.0;
    CHECK(cauchy_schwarz_excess(V) == doctest::Approx(1.0));
    // negative diagonals count as zero under the root
    V << -1.0, 0.5, 0.5, 1.0;
    CHECK(cauchy_schwarz_excess(V) == doctest::Approx(0.5));
    // scalar case is trivially consistent
    Eigen::MatrixXd one(1, 1);
    one << 0.7;
    CHECK(cauchy_schwarz_excess(one) == 0.0);
}

TEST_CASE("kolmogorov condition check") {
    std::mt19937_64 rng(17);
    const int n = 6, outcomes = 4;
    const DetectorResponse R = positive_response(rng, n, outcomes);
    const Eigen::VectorXcd D = R.aggregate();

    SUBCASE("consistent rank-one tensor passes exactly") {
        Eigen::VectorXcd g1(n);
        for (int i = 0; i < n; ++i) g1[i] = complexd(uniform01(rng) + 0.1, 0.0);
        HierarchyTensor G;
        G.G1 = g1;
        G.G2 = (g1 * g1.transpose()) / (g1.transpose() * D)(0);
        const KolmogorovCondition kc = kolmogorov_condition_check(G, R);
        CHECK(kc.antisymmetric_norm < 1e-12);
        CHECK(kc.cos_theta == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("symmetric tensors have no antisymmetric part") {
        Eigen::MatrixXd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = uniform01(rng) - 0.5;
        HierarchyTensor G;
        G.G1 = random_cvec(rng, n);
        G.G2 = (M + M.transpose()).cast<complexd>();  // real symmetric
        const KolmogorovCondition kc = kolmogorov_condition_check(G, R);
        CHECK(kc.antisymmetric_norm < 1e-12);
    }
    SUBCASE("cos theta matches brute force and is scale invariant") {
        Eigen::MatrixXcd M(n, n);
        for (int i = 0; i < n; ++i) M.row(i) = random_cvec(rng, n).transpose();
        HierarchyTensor G;
        G.G1 = random_cvec(rng, n);
        G.G2 = 0.5 * (M + M.adjoint());
        const KolmogorovCondition kc = kolmogorov_condition_check(G, R);
        const Eigen::VectorXcd g = G.G2.transpose() * D;
        const double expect = (g.dot(G.G1)).real() / (g.norm() * G.G1.norm());
        CHECK(kc.cos_theta == doctest::Approx(expect).epsilon(1e-12));
        HierarchyTensor Gs = G;
        Gs.G2 *= 3.7;
        CHECK(kolmogorov_condition_check(Gs, R).cos_theta ==
              doctest::Approx(kc.cos_theta).epsilon(1e-12));
    }
}

TEST_CASE("negativity witness") {
    CHECK(negativity_witness(Eigen::MatrixXcd::Identity(4, 4)) ==
          doctest::Approx(1.0));
    Eigen::MatrixXcd D2 = Eigen::MatrixXcd::Zero(2, 2);
    D2(0, 0) = 1.0;
    D2(1, 1) = -0.3;
    CHECK(negativity_witness(D2) == doctest::Approx(-0.3));
    D2(0, 1) = complexd(0.2, 0.1);  // not Hermitian
    CHECK_THROWS_AS(negativity_witness(D2), ConstructionError);
}

TEST_CASE("classical process validation") {
    ClassicalProcess pr;
    pr.rho = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
    pr.F = Eigen::MatrixXd::Constant(2, 3, 0.5);
    CHECK_NOTHROW(pr.validate());
    pr.F(0, 0) = -0.1;
    CHECK_THROWS_AS(pr.validate(), ConstructionError);
    pr.F(0, 0) = 0.5;
    pr.rho[0] = 0.9;  // not normalized
    CHECK_THROWS_AS(pr.validate(), ConstructionError);
}

TEST_CASE("deterministic sharp process") {
    // point-mass hidden state, sharp response: all defects vanish exactly
    const int dim = 4, outcomes = 4;
    ClassicalProcess pr;
    pr.rho = Eigen::VectorXd::Zero(dim);
    pr.rho[2] = 1.0;
    pr.F = Eigen::MatrixXd::Identity(outcomes, dim);
    pr.validate();
    const SampledHierarchy H = synthetic_classical_hierarchy(pr, 3);
    CHECK(H.P1[2] == 1.0);
    CHECK(H.P2(2, 2) == 1.0);
    CHECK(H.P2.sum() == doctest::Approx(1.0));
    CHECK(H.P3[(2 * outcomes + 2) * outcomes + 2] == 1.0);
    CHECK(additivity_defect(H.P1, H.P2) == 0.0);
    CHECK(additivity_defect3(H.P2, H.P3) == 0.0);
    CHECK(discrete_q1(H.P1, H.P2) == 0.0);
    CHECK(discrete_q2(H.P2) == 0.0);
}

TEST_CASE("sharp responses bunch: P2(z,z) >= P1(z)^2") {
    std::mt19937_64 rng(19);
    ClassicalProcess pr;
    pr.rho.resize(5);
    for (int i = 0; i < 5; ++i) pr.rho[i] = uniform01(rng) + 0.01;
    pr.rho /= pr.rho.sum();
    pr.F = Eigen::MatrixXd::Zero(3, 5);
    for (int i = 0; i < 5; ++i) pr.F(i % 3, i) = 1.0;  // sharp assignment
    pr.validate();
    const SampledHierarchy H = synthetic_classical_hierarchy(pr, 2);
    for (int z = 0; z < 3; ++z) CHECK(H.P2(z, z) >= H.P1[z] * H.P1[z] - 1e-15);
}

TEST_CASE("random classical hierarchies are exactly measurement independent") {
    std::mt19937_64 rng(20260824);
    for (int dim = 1; dim <= 6; ++dim)
        for (int outcomes = 2; outcomes <= 4; ++outcomes)
            for (int rep = 0; rep < 20; ++rep) {
                const ClassicalProcess pr = random_process(rng, dim, outcomes);
                pr.validate();
                const SampledHierarchy H = synthetic_classical_hierarchy(pr, 3);
                CHECK(H.P1.sum() == doctest::Approx(1.0).epsilon(1e-13));
                CHECK(additivity_defect(H.P1, H.P2) <= 1e-12);
                CHECK(additivity_defect3(H.P2, H.P3) <= 1e-12);
                CHECK(discrete_q1(H.P1, H.P2) <= 1e-12);
                CHECK(discrete_q2(H.P2) <= 1e-12);
            }
}
