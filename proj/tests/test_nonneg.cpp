#include <doctest.h>

#include <cmath>
#include <random>

#include "specflow/linalg.hpp"
#include "specflow/nonneg.hpp"
#include "test_util.hpp"

using namespace specflow;
using namespace specflow::testing;

namespace {

CMatrix cyclic_permutation(int n) {
    CMatrix P(n);
    for (int i = 0; i < n; ++i) P.at(i, (i + 1) % n) = 1.0;
    P.refresh_real_flag();
    return P;
}

CMatrix random_irreducible(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (;;) {
        CMatrix A(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                A.at(i, j) = unif(rng) < 0.4 ? Complex(0.2 + unif(rng)) : 0.0;
        A.refresh_real_flag();
        if (is_irreducible(A)) return A;
    }
}

}  // namespace

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(CMatrix(2, {1.0, 1.0, 1.0, 1.0})));
    CHECK_FALSE(is_irreducible(CMatrix(2, {1.0, 1.0, 0.0, 1.0})));
    CHECK(is_irreducible(cyclic_permutation(4)));
    CHECK_THROWS(is_irreducible(CMatrix(2, {1.0, -1.0, 1.0, 1.0})));
}

TEST_CASE("shortest cycle through an edge") {
    const CMatrix ones(2, {1.0, 1.0, 1.0, 1.0});
    CHECK(shortest_cycle_through_edge(ones, 0, 1) == 2);

    // Self-loop: length 1 regardless of the rest.
    CHECK(shortest_cycle_through_edge(ones, 1, 1) == 1);

    // 4-cycle, inserted edge already present: full length 4.
    CHECK(shortest_cycle_through_edge(cyclic_permutation(4), 0, 1) == 4);

    // 4-cycle with a new chord (0 -> 2): cycle 0->2->3->0 has length 3.
    CHECK(shortest_cycle_through_edge(cyclic_permutation(4), 0, 2) == 3);
}

TEST_CASE("imprimitivity index") {
    CHECK(imprimitivity_index_with_edge(CMatrix(2, {1.0, 1.0, 1.0, 1.0}), 0, 1) == 1);
    CHECK(imprimitivity_index_with_edge(cyclic_permutation(4), 0, 1) == 4);
    // The chord breaks the 4-periodicity: gcd(4, 3) = 1.
    CHECK(imprimitivity_index_with_edge(cyclic_permutation(4), 0, 2) == 1);
}

TEST_CASE("divergence count fixtures") {
    const CMatrix ones(2, {1.0, 1.0, 1.0, 1.0});
    const auto d1 = divergence_count(ones, 0, 1);
    CHECK(d1.l == 2);
    CHECK(d1.index == 1);
    CHECK(d1.kappa == 1);
    CHECK(d1.check);

    const auto d2 = divergence_count(cyclic_permutation(4), 0, 1);
    CHECK(d2.l == 4);
    CHECK(d2.index == 4);
    CHECK(d2.check);

    // Entrywise positive: l is 1 on the diagonal, else 2.
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    CMatrix P(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) P.at(i, j) = unif(rng);
    P.refresh_real_flag();
    CHECK(divergence_count(P, 1, 1).l == 1);
    CHECK(divergence_count(P, 0, 2).l == 2);

    CHECK_THROWS(divergence_count(CMatrix(2, {1.0, 1.0, 0.0, 1.0}), 0, 1));
}

TEST_CASE("graph count agrees with the moment index on random matrices") {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> pick(0, 7);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 7;
        const CMatrix A = random_irreducible(rng, n);
        const int i0 = pick(rng) % n;
        const int j0 = pick(rng) % n;
        const auto d = divergence_count(A, i0, j0);
        CHECK(d.kappa + 1 == d.l);
        CHECK(d.l % d.index == 0);
        CHECK(d.check);
    }
}

TEST_CASE("empirical count of diverging eigenvalues at large tau") {
    std::mt19937 rng(505);
    std::uniform_int_distribution<int> pick(0, 17);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 3 + trial % 4;
        const CMatrix A = random_irreducible(rng, n);
        const int i0 = pick(rng) % n;
        const int j0 = pick(rng) % n;
        const auto d = divergence_count(A, i0, j0);
        const double tau = 1e8;
        CVector u(n, 0.0), v(n, 0.0);
        u[i0] = 1.0;
        v[j0] = 1.0;
        const CMatrix B = A + rank_one(u, v) * Complex(tau);
        int big = 0;
        for (const auto& r : eig_oracle(B))
            if (std::abs(r.value) > std::pow(tau, 1.0 / (d.l + 1)))
                big += r.multiplicity;
        CHECK(big == d.l);
    }
}
