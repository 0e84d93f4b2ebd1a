#include <doctest.h>

#include <cmath>
#include <random>

#include "specflow/linalg.hpp"
#include "test_util.hpp"

using namespace specflow;
using namespace specflow::testing;

namespace {

CMatrix poly_of_matrix(const Poly& p, const CMatrix& A) {
    CMatrix acc(A.n());
    CMatrix power = CMatrix::identity(A.n());
    for (int k = 0; k <= p.degree(); ++k) {
        acc = acc + power * p.coeff(k);
        if (k < p.degree()) power = power * A;
    }
    return acc;
}

}  // namespace

TEST_CASE("characteristic polynomial fixtures") {
    const CMatrix ones(2, {1.0, 1.0, 1.0, 1.0});
    const Poly c1 = char_poly(ones);  // x^2 - 2x (trace 2, det 0)
    CHECK(std::abs(c1.coeff(2) - 1.0) < 1e-12);
    CHECK(std::abs(c1.coeff(1) + 2.0) < 1e-12);
    CHECK(std::abs(c1.coeff(0)) < 1e-12);

    const Poly c2 = char_poly(CMatrix::identity(2));  // (x-1)^2
    CHECK(std::abs(c2.coeff(0) - 1.0) < 1e-12);
    CHECK(std::abs(c2.coeff(1) + 2.0) < 1e-12);

    const CMatrix comp(2, {0.0, 1.0, -1.0, -1.0});
    const Poly c3 = char_poly(comp);  // x^2 + x + 1
    CHECK(std::abs(c3.coeff(0) - 1.0) < 1e-12);
    CHECK(std::abs(c3.coeff(1) - 1.0) < 1e-12);
}

TEST_CASE("Cayley-Hamilton residual on random matrices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 7;  // up to 8
        const CMatrix A = random_matrix(rng, n);
        const Poly c = char_poly(A);
        const double res = poly_of_matrix(c, A).frobenius();
        CHECK(res <= 1e-8 * std::pow(std::max(1.0, A.frobenius()), n));
    }
}

TEST_CASE("minimal polynomial fixtures") {
    // Jordan pair: (x-1)^2 (x-2).
    const CMatrix A(3, {1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0});
    const Poly m = minimal_poly(A);
    REQUIRE(m.degree() == 3);
    const Poly expect = Poly::from_roots({1.0, 1.0, 2.0});
    CHECK((m - expect).max_coeff_modulus() < 1e-8);

    const Poly mi = minimal_poly(CMatrix::identity(3));
    REQUIRE(mi.degree() == 1);
    CHECK(std::abs(mi.coeff(0) + 1.0) < 1e-10);

    // Companion of (x-1)(x^2+1): nonderogatory.
    const CMatrix C(3, {0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, -1.0, 1.0});
    const Poly mc = minimal_poly(C);
    REQUIRE(mc.degree() == 3);
    const Poly expc =
        Poly::from_roots({1.0, Complex(0, 1), Complex(0, -1)});
    CHECK((mc - expc).max_coeff_modulus() < 1e-8);
}

TEST_CASE("minimal polynomial divides the characteristic polynomial") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + trial % 6;
        CMatrix A = random_matrix(rng, n);
        if (trial % 3 == 0) {
            // Derogatory block: repeat an eigenvalue in two blocks.
            A = CMatrix(n);
            for (int i = 0; i < n; ++i) A.at(i, i) = (i < 2) ? 0.5 : 0.1 * i;
            A.refresh_real_flag();
        }
        const Poly c = char_poly(A);
        const Poly m = minimal_poly(A);
        const auto d = c.divide(m);
        CHECK(d.remainder.max_coeff_modulus() <=
              1e-8 * std::max(1.0, c.max_coeff_modulus()));
        const double res = poly_of_matrix(m, A).frobenius();
        CHECK(res <= 1e-8 * std::pow(std::max(1.0, A.frobenius()), m.degree()));
    }
}

TEST_CASE("moments") {
    // Hamiltonian fixture: u^T J A^k u for k = 0..3 is (0, 0, 0, -4).
    const CMatrix A = hamiltonian_A();
    const CMatrix J = hamiltonian_J();
    const CVector u = hamiltonian_u();
    CVector v = vec_scale(J.apply(u), -1.0);
    const auto mom = moments(A, u, v, 3);
    CHECK(std::abs(mom[0]) < 1e-14);
    CHECK(std::abs(mom[1]) < 1e-14);
    CHECK(std::abs(mom[2]) < 1e-14);
    CHECK(std::abs(mom[3] + 4.0) < 1e-12);

    // Nilpotent Jordan block, u = e3, v = e1: (0, 0, 1).
    const auto sys = jordan_system(3);
    const auto momj = moments(sys.A, sys.u, sys.v, 2);
    CHECK(std::abs(momj[0]) < 1e-15);
    CHECK(std::abs(momj[1]) < 1e-15);
    CHECK(std::abs(momj[2] - 1.0) < 1e-15);

    // Zero u gives all zeros.
    const auto momz = moments(A, CVector(4, 0.0), v, 5);
    for (const auto& m : momz) CHECK(std::abs(m) == 0.0);

    CHECK_THROWS(moments(A, CVector(3, 1.0), v, 2));
}

TEST_CASE("moments agree with the resolvent Laurent expansion") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 5;
        const CMatrix A = random_matrix(rng, n);
        const CVector u = random_unit_vector(rng, n);
        const CVector v = random_unit_vector(rng, n);
        const double na = A.frobenius();
        if (na == 0.0) continue;
        const int K = 12;
        const auto mom = moments(A, u, v, K);
        const Complex z = 2.0 * na * std::polar(1.0, 0.7);
        Complex series = 0.0;
        Complex zp = z;
        for (int k = 0; k <= K; ++k) {
            series += mom[k] / zp;
            zp *= z;
        }
        const Complex direct = resolvent_moment(A, z, u, v, 1);
        // Truncation tail: |u||v| sum_{k>K} (|A|/|z|)^k / |z|.
        const double bound = 1.0 / (std::pow(2.0, K + 1) * na) * 2.0;
        CHECK(std::abs(direct - series) <= 10.0 * bound);
    }
}

TEST_CASE("eigenvalue oracle") {
    // Diagonal fixture.
    CMatrix D(3);
    D.at(0, 0) = 1.0;
    D.at(1, 1) = 2.0;
    D.at(2, 2) = 3.0;
    D.refresh_real_flag();
    const auto eig = eig_oracle(D);
    REQUIRE(eig.size() == 3);
    CHECK(std::abs(eig[0].value - 1.0) < 1e-10);
    CHECK(std::abs(eig[1].value - 2.0) < 1e-10);
    CHECK(std::abs(eig[2].value - 3.0) < 1e-10);

    // Entrywise positive fixture at tau = 3: eigenvalues 1 +- 2.
    const auto sys = nonneg2_system();
    const auto e2 = eig_oracle(sys.perturbed_matrix(3.0));
    REQUIRE(e2.size() == 2);
    CHECK(std::abs(e2[0].value + 1.0) < 1e-10);
    CHECK(std::abs(e2[1].value - 3.0) < 1e-10);
    // Their moduli are sqrt(1+tau) +- 1 = 3 and 1.
    CHECK(std::abs(std::abs(e2[0].value) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(e2[1].value) - 3.0) < 1e-10);

    // Frozen-pair fixture at tau = 0.5: {1, 2, 1.5}.
    const auto sys2 = frozen_pair_system();
    const auto e3 = eig_oracle(sys2.perturbed_matrix(0.5));
    const auto vals = flatten(e3);
    CHECK(brute_hausdorff(vals, {1.0, 2.0, 1.5}) < 1e-9);

    CHECK_THROWS(eig_oracle(CMatrix(40)));
}
