#include "specflow/structured.hpp"

#include <cmath>
#include <stdexcept>

#include "specflow/asymptotics.hpp"
#include "specflow/flow.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

RankOneSystem make_structured_system(const CMatrix& A, const CVector& u,
                                     const StructureContext& ctx) {
    const CMatrix& G = ctx.G;
    if (G.n() != A.n())
        throw std::invalid_argument("structure matrix dimension mismatch");
    const double gnorm = G.frobenius();

    if (ctx.kind == StructureKind::h_selfadjoint) {
        if ((G - G.conj_transpose()).frobenius() > tol::structure * gnorm)
            throw std::invalid_argument("H must be Hermitian");
    } else {
        if (!G.is_real()) throw std::invalid_argument("J must be real");
        if ((G + G.transpose()).frobenius() > tol::structure * gnorm)
            throw std::invalid_argument("J must be skew-symmetric");
        if (!A.is_real())
            throw std::invalid_argument("Hamiltonian systems require real A");
    }
    if (std::abs(LUFactor(G).det()) <= 1e-10)
        throw std::invalid_argument("structure matrix must be nonsingular");

    const double rel = tol::structure * std::max(1e-300, A.frobenius() * gnorm);
    if (ctx.kind == StructureKind::h_selfadjoint) {
        const double res = (G * A - A.conj_transpose() * G).frobenius();
        if (res > rel)
            throw std::invalid_argument("A is not H-selfadjoint: |HA - A*H| too large");
    } else {
        const double res = (G * A + A.transpose() * G).frobenius();
        if (res > rel)
            throw std::invalid_argument("A is not J-Hamiltonian: |JA + A^T J| too large");
    }

    CVector v;
    if (ctx.kind == StructureKind::h_selfadjoint) {
        v = G.conj_transpose().apply(u);  // u v* = u u* H
    } else {
        v = vec_scale(G.apply(u), -1.0);  // u v^T = u u^T J
    }
    if (vec_norm(v) == 0.0)
        throw std::invalid_argument("derived vector is zero (u in ker G)");
    return RankOneSystem(A, u, v, ctx);
}

HamiltonianForecast hamiltonian_forecast(const RankOneSystem& sys) {
    if (!sys.structure ||
        sys.structure->kind != StructureKind::j_hamiltonian)
        throw std::invalid_argument("forecast requires a Hamiltonian context");

    const AsymptoticModel model = detect_kappa(sys);
    if (model.degenerate)
        throw std::domain_error("degenerate family: no diverging eigenvalues");
    if (model.kappa % 2 == 0)
        throw std::runtime_error(
            "even leading moment index contradicts the Hamiltonian structure");

    HamiltonianForecast f;
    f.kappa = model.kappa;
    f.count = model.kappa + 1;
    // v = -Ju makes v^T A^k u equal u^T J A^k u, which is real.
    f.moment_sign = std::real(model.lead) >= 0.0 ? 1.0 : -1.0;

    if (f.kappa == 1) {
        if (f.moment_sign > 0.0) {
            f.positive_tau = AxisClaim::two_real;
            f.negative_tau = AxisClaim::two_imaginary;
        } else {
            f.positive_tau = AxisClaim::two_imaginary;
            f.negative_tau = AxisClaim::two_real;
        }
    } else {
        if (f.moment_sign > 0.0) {
            f.positive_tau = AxisClaim::real_and_imaginary;
            f.negative_tau = AxisClaim::unspecified;
        } else {
            f.positive_tau = AxisClaim::unspecified;
            f.negative_tau = AxisClaim::real_and_imaginary;
        }
    }
    return f;
}

SymmetryReport verify_symmetry(const RankOneSystem& sys,
                               const std::vector<Complex>& tau_samples) {
    if (!sys.structure && !sys.is_real())
        throw std::invalid_argument(
            "verify_symmetry expects a structured or real system");

    const SpectralPortrait p = make_portrait(sys);
    SymmetryReport rep;
    const bool hamiltonian =
        sys.structure && sys.structure->kind == StructureKind::j_hamiltonian;

    for (const auto& tau : tau_samples) {
        SymmetryRow row;
        row.tau = tau;
        const auto spec = spectrum(p, tau);
        std::vector<Complex> s;
        double maxmod = 0.0;
        for (const auto& r : spec)
            for (int i = 0; i < r.multiplicity; ++i) {
                s.push_back(r.value);
                maxmod = std::max(maxmod, std::abs(r.value));
            }
        const bool real_tau = std::abs(std::imag(tau)) <= 1e-12 * (1.0 + std::abs(tau));

        if (sys.is_real() && real_tau) {
            std::vector<Complex> sc;
            for (const auto& z : s) sc.push_back(std::conj(z));
            row.conj_checked = true;
            row.conj_error = hausdorff(s, sc);
            rep.max_conj_error = std::max(rep.max_conj_error, row.conj_error);
        }
        if (hamiltonian && real_tau) {
            std::vector<Complex> sn;
            for (const auto& z : s) sn.push_back(-z);
            row.neg_checked = true;
            row.neg_error = hausdorff(s, sn);
            rep.max_neg_error = std::max(rep.max_neg_error, row.neg_error);
        }
        const double bound = 1e-6 * (1.0 + maxmod);
        if ((row.conj_checked && row.conj_error > bound) ||
            (row.neg_checked && row.neg_error > bound))
            rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace specflow
