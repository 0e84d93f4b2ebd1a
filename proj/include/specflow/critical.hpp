#pragma once

#include <optional>

#include "specflow/perturbation.hpp"

namespace specflow {

/// Numerator of Q' before cancellation: p_uv' mA - p_uv mA'.
Poly q0_poly(const Poly& mA, const Poly& puv);
Poly q0_poly(const SpectralPortrait& p);

/// Genuine zeros of Q': roots of q0 that survive cancellation against the
/// squared denominator. A root cluster of multiplicity rho at distance
/// cancel_tol of a root of mA with multiplicity mu survives iff
/// rho - 2 mu >= 1; the surviving order sets kappa_local = rho - 2 mu + 1.
std::vector<CriticalPoint> critical_points(const Poly& q0, const Poly& mA,
                                           const QFunction& Q);
std::vector<CriticalPoint> critical_points(const SpectralPortrait& p);

enum class DefinabilityMode { real_ray, unit_circle };

struct DefinabilityVerdict {
    bool definable = true;
    // Witness of the obstruction when not definable.
    Complex z;
    double t = 0.0;
    Complex tau;
    bool frozen_obstruction = false;  // an accidental frozen eigenvalue
};

/// Global one-valued eigenvalue definition test. real_ray: no accidental
/// frozen eigenvalues and Q(z_j) off the real axis for every critical z_j.
/// unit_circle: no accidental frozen eigenvalues and |Q(z_j)| away from 1.
DefinabilityVerdict definability(const SpectralPortrait& p,
                                 DefinabilityMode mode);

struct RealWitness {
    double x = 0.0;    // real critical point of Q
    double tau = 0.0;  // 1/Q(x)
    // Persistence probe: nearby witness after a relative random real
    // perturbation of (A, u, v).
    bool probed = false;
    bool persists = false;
    double x_perturbed = 0.0;
    double tau_perturbed = 0.0;
};

struct WitnessOptions {
    bool probe = true;
    double rel_perturbation = 1e-3;
    unsigned seed = 20240901;
};

/// For real (A, u, v): a real x with Q'(x) = 0, Q''(x) != 0 off the
/// spectrum of A, returned with tau = 1/Q(x). Such a point obstructs any
/// global analytic eigenvalue definition over real parameters.
std::optional<RealWitness> real_obstruction_witness(
    const RankOneSystem& sys, const WitnessOptions& opts = {});

}  // namespace specflow
