#pragma once

#include "specflow/system.hpp"

namespace specflow {

/// Builds the structure-compatible rank one family for A and u: the second
/// vector is derived from the certificate (v = H* u, or v = -J u), so the
/// perturbation is u u* H respectively u u^T J. Throws when A violates the
/// structure relation or the certificate is malformed.
RankOneSystem make_structured_system(const CMatrix& A, const CVector& u,
                                     const StructureContext& ctx);

enum class AxisClaim { two_real, two_imaginary, real_and_imaginary, unspecified };

/// Divergence forecast for a Hamiltonian family: kappa is odd, kappa + 1
/// eigenvalues diverge, and the sign of u^T J A^kappa u fixes on which side
/// of the real tau axis the real/imaginary pairs escape.
struct HamiltonianForecast {
    int kappa = 1;
    int count = 2;            // kappa + 1, always even
    double moment_sign = 0.0; // sign of u^T J A^kappa u
    AxisClaim positive_tau = AxisClaim::unspecified;
    AxisClaim negative_tau = AxisClaim::unspecified;
};

HamiltonianForecast hamiltonian_forecast(const RankOneSystem& sys);

struct SymmetryRow {
    Complex tau;
    bool conj_checked = false;
    double conj_error = 0.0;  // Hausdorff(S, conj S), real systems/real tau
    bool neg_checked = false;
    double neg_error = 0.0;   // Hausdorff(S, -S), Hamiltonian systems
};

struct SymmetryReport {
    std::vector<SymmetryRow> rows;
    double max_conj_error = 0.0;
    double max_neg_error = 0.0;
    bool pass = true;
};

/// Spectral symmetry checks at the given parameter samples: conjugation
/// symmetry for real systems at real tau, negation symmetry for
/// Hamiltonian systems.
SymmetryReport verify_symmetry(const RankOneSystem& sys,
                               const std::vector<Complex>& tau_samples);

}  // namespace specflow
