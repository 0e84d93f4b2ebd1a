#include "specflow/critical.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "specflow/tolerances.hpp"

namespace specflow {

Poly q0_poly(const Poly& mA, const Poly& puv) {
    if (puv.is_zero()) return Poly();
    return puv.derivative() * mA - puv * mA.derivative();
}

Poly q0_poly(const SpectralPortrait& p) { return q0_poly(p.mA, p.puv); }

std::vector<CriticalPoint> critical_points(const Poly& q0, const Poly& mA,
                                           const QFunction& Q) {
    std::vector<CriticalPoint> out;
    if (q0.degree() < 1) return out;

    const auto q0_roots = q0.roots();
    std::vector<RootCluster> mA_roots;
    if (mA.degree() >= 1) mA_roots = mA.roots();

    for (const auto& cl : q0_roots) {
        const double ctol = tol::cancel * (1.0 + std::abs(cl.value));
        int mu = 0;
        for (const auto& pole : mA_roots)
            if (std::abs(pole.value - cl.value) <= ctol) mu = pole.multiplicity;
        const int order = cl.multiplicity - 2 * mu;  // order of Q' at the root
        if (order < 1) continue;

        CriticalPoint cp;
        cp.z = cl.value;
        cp.kappa_local = order + 1;

        // Newton polish on Q' (simple zeros only; multiple zeros already
        // come from the derivative refinement inside roots()).
        if (order == 1 && Q.distance_to_pole(cp.z) > 10.0 * ctol) {
            for (int k = 0; k < 4; ++k) {
                const auto d = Q.eval_derivs(cp.z, 2);
                if (std::abs(d[2]) < 1e-300) break;
                const Complex step = d[1] / d[2];
                if (!std::isfinite(std::abs(step)) || std::abs(step) > 1.0)
                    break;
                cp.z -= step;
                if (std::abs(step) < 1e-16 * (1.0 + std::abs(cp.z))) break;
            }
        }

        const Complex qv = Q.eval_derivs(cp.z, 0)[0];
        if (std::abs(qv) < 1e-14) {
            cp.finite_tau = false;
            cp.t = t_infinite;
            cp.tau = Complex(t_infinite, 0.0);
        } else {
            cp.tau = 1.0 / qv;
            cp.t = std::abs(cp.tau);
        }
        out.push_back(cp);
    }
    std::sort(out.begin(), out.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) {
                  return a.t < b.t;
              });
    return out;
}

std::vector<CriticalPoint> critical_points(const SpectralPortrait& p) {
    return critical_points(q0_poly(p), p.mA, p.Q);
}

DefinabilityVerdict definability(const SpectralPortrait& p,
                                 DefinabilityMode mode) {
    DefinabilityVerdict v;
    for (const auto& f : p.frozen) {
        if (f.kind == FrozenKind::accidental) {
            v.definable = false;
            v.frozen_obstruction = true;
            v.z = f.value;
            v.t = 0.0;
            v.tau = 0.0;
            return v;
        }
    }
    // critical points come sorted by t; the first violation is the witness.
    for (const auto& cp : p.critical) {
        const Complex qz =
            cp.finite_tau ? 1.0 / cp.tau : Complex(0.0, 0.0);
        const double dt = tol::definability * (1.0 + std::abs(qz));
        bool violates = false;
        if (mode == DefinabilityMode::real_ray) {
            violates = std::abs(std::imag(qz)) <= dt;
        } else {
            violates = std::abs(std::abs(qz) - 1.0) <= dt;
        }
        if (violates) {
            v.definable = false;
            v.z = cp.z;
            v.t = cp.t;
            v.tau = cp.tau;
            return v;
        }
    }
    return v;
}

namespace {

std::optional<std::pair<double, double>> find_real_witness(
    const RankOneSystem& sys) {
    const SpectralPortrait p = make_portrait(sys);
    if (p.q0.degree() < 1) return std::nullopt;

    const double im_tol = 1e-8;
    std::optional<std::pair<double, double>> best;
    for (const auto& cp : p.critical) {
        if (std::abs(std::imag(cp.z)) > im_tol * (1.0 + std::abs(cp.z)))
            continue;
        if (cp.kappa_local != 2) continue;  // need Q''(x) != 0
        if (!cp.finite_tau) continue;
        if (p.Q.distance_to_pole(cp.z) <= p.pole_tol()) continue;
        const double x = std::real(cp.z);
        const double tau = std::real(cp.tau);
        if (!best || std::abs(tau) < std::abs(best->second))
            best = std::make_pair(x, tau);
    }
    return best;
}

}  // namespace

std::optional<RealWitness> real_obstruction_witness(
    const RankOneSystem& sys, const WitnessOptions& opts) {
    if (!sys.is_real())
        throw std::invalid_argument(
            "real_obstruction_witness requires real A, u, v");

    const auto base = find_real_witness(sys);
    if (!base) return std::nullopt;

    RealWitness w;
    w.x = base->first;
    w.tau = base->second;

    if (opts.probe) {
        w.probed = true;
        std::mt19937 rng(opts.seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        CMatrix A2 = sys.A;
        const double sa = sys.A.frobenius();
        for (int i = 0; i < A2.n(); ++i)
            for (int j = 0; j < A2.n(); ++j)
                A2.at(i, j) += opts.rel_perturbation * sa * unif(rng);
        A2.refresh_real_flag();
        CVector u2 = sys.u, v2 = sys.v;
        const double su = vec_norm(sys.u), sv = vec_norm(sys.v);
        for (auto& e : u2) e += opts.rel_perturbation * su * unif(rng);
        for (auto& e : v2) e += opts.rel_perturbation * sv * unif(rng);

        try {
            const RankOneSystem pert(A2, u2, v2);
            const SpectralPortrait pp = make_portrait(pert);
            w.persists = false;
            for (const auto& cp : pp.critical) {
                if (std::abs(std::imag(cp.z)) > 1e-8 * (1.0 + std::abs(cp.z)))
                    continue;
                if (!cp.finite_tau || cp.kappa_local != 2) continue;
                const double dx = std::abs(std::real(cp.z) - w.x);
                const double dtau = std::abs(std::real(cp.tau) - w.tau);
                if (std::hypot(dx, dtau) <= 1e-1 * (1.0 + std::abs(w.tau))) {
                    w.persists = true;
                    w.x_perturbed = std::real(cp.z);
                    w.tau_perturbed = std::real(cp.tau);
                    break;
                }
            }
        } catch (const std::exception&) {
            w.persists = false;
        }
    }
    return w;
}

}  // namespace specflow
