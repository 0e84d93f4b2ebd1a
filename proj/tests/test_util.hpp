#pragma once

#include <random>

#include "specflow/perturbation.hpp"

namespace specflow::testing {

// The worked examples used across the test suite.

// 2x2 ray example: m_A = x^2 + x + 1, p_uv = x + 1,
// critical points (0, t=1) and (-2, t=3).
inline RankOneSystem ray2_system() {
    CMatrix A(2, {0.0, 1.0, -1.0, -1.0});
    return RankOneSystem(A, {0.0, 1.0}, {1.0, 1.0});
}

// 3x3 companion example: m_A = (x - 1)(x^2 + 1), p_uv = x^2 - x + 1,
// critical points 0 (t=1) and 1 +- i sqrt(2) (t = 4/sqrt(3)).
inline RankOneSystem companion3_system() {
    CMatrix A(3, {0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, -1.0, 1.0});
    return RankOneSystem(A, {0.0, 0.0, 1.0}, {1.0, -1.0, 1.0});
}

// 3x3 frozen-pair example: u = v = e1 on a Jordan pair; B(tau) keeps
// eigenvalues 1 and 2 frozen, the third moves as tau + 1.
inline RankOneSystem frozen_pair_system() {
    CMatrix A(3, {1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0});
    return RankOneSystem(A, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
}

// 2x2 nonnegative example: both eigenvalues 1 +- sqrt(1 + tau) diverge.
inline RankOneSystem nonneg2_system() {
    CMatrix A(2, {1.0, 1.0, 1.0, 1.0});
    return RankOneSystem(A, {1.0, 0.0}, {0.0, 1.0});
}

// Nilpotent Jordan block driven to the n-th roots of tau.
inline RankOneSystem jordan_system(int n) {
    CMatrix A(n);
    for (int i = 0; i + 1 < n; ++i) A.at(i, i + 1) = 1.0;
    A.refresh_real_flag();
    CVector u(n, 0.0), v(n, 0.0);
    u[n - 1] = 1.0;
    v[0] = 1.0;
    return RankOneSystem(A, u, v);
}

// 4x4 Hamiltonian example: moments (0, 0, 0, -4), p_uv constant -4.
inline CMatrix hamiltonian_J() {
    return CMatrix(4, {0.0, 0.0, 0.0, 1.0,   //
                       0.0, 0.0, -1.0, 0.0,  //
                       0.0, 1.0, 0.0, 0.0,   //
                       -1.0, 0.0, 0.0, 0.0});
}

inline CMatrix hamiltonian_A() {
    return CMatrix(4, {1.0, 1.0, 0.0, 0.0,   //
                       0.0, 1.0, 0.0, 0.0,   //
                       0.0, 0.0, -1.0, 1.0,  //
                       0.0, 0.0, 0.0, -1.0});
}

inline CVector hamiltonian_u() { return {0.0, 1.0, 1.0, 1.0}; }

inline Complex rand_complex(std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    return {unif(rng), unif(rng)};
}

inline CMatrix random_matrix(std::mt19937& rng, int n, bool real = false) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    CMatrix A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A.at(i, j) = real ? Complex(unif(rng), 0.0) : rand_complex(rng);
    A.refresh_real_flag();
    return A;
}

inline CVector random_unit_vector(std::mt19937& rng, int n, bool real = false) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v[i] = real ? Complex(unif(rng), 0.0) : rand_complex(rng);
    const double nv = vec_norm(v);
    for (auto& e : v) e /= nv;
    return v;
}

inline std::vector<Complex> flatten(const std::vector<RootCluster>& cl) {
    std::vector<Complex> out;
    for (const auto& c : cl)
        for (int i = 0; i < c.multiplicity; ++i) out.push_back(c.value);
    return out;
}

// Independent distance oracle for point sets (plain double loop).
inline double brute_hausdorff(const std::vector<Complex>& a,
                              const std::vector<Complex>& b) {
    double h = 0.0;
    for (const auto& x : a) {
        double best = 1e300;
        for (const auto& y : b) best = std::min(best, std::abs(x - y));
        h = std::max(h, best);
    }
    for (const auto& y : b) {
        double best = 1e300;
        for (const auto& x : a) best = std::min(best, std::abs(y - x));
        h = std::max(h, best);
    }
    return h;
}

}  // namespace specflow::testing
