#include "specflow/verify.hpp"

#include <cmath>
#include <random>

#include "specflow/asymptotics.hpp"
#include "specflow/critical.hpp"
#include "specflow/flow.hpp"
#include "specflow/structured.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

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

std::vector<Complex> flatten(const std::vector<RootCluster>& cl) {
    std::vector<Complex> out;
    for (const auto& c : cl)
        for (int i = 0; i < c.multiplicity; ++i) out.push_back(c.value);
    return out;
}

void push(VerificationReport& rep, VerificationCheck c) {
    if (!c.skipped && !c.pass) rep.all_pass = false;
    rep.checks.push_back(std::move(c));
}

}  // namespace

VerificationReport run_verification(const RankOneSystem& sys, unsigned seed) {
    VerificationReport rep;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto rand_tau = [&]() { return 10.0 * Complex(unif(rng), unif(rng)); };

    const SpectralPortrait p = make_portrait(sys);
    const int n = sys.n();
    const int l = p.l();
    const double normA = sys.A.frobenius();
    const bool oracle_ok = n <= tol::oracle_nmax;
    rep.oracle_skipped = !oracle_ok;

    {
        VerificationCheck c;
        c.name = "cayley_hamilton_residual";
        c.bound = 1e-8 * std::pow(std::max(1.0, normA), n);
        c.measured = poly_of_matrix(p.charA, sys.A).frobenius();
        c.pass = c.measured <= c.bound;
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "minimal_poly_annihilates";
        c.bound = 1e-8 * std::pow(std::max(1.0, normA), l);
        c.measured = poly_of_matrix(p.mA, sys.A).frobenius();
        c.pass = c.measured <= c.bound;
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "minimal_divides_characteristic";
        const auto d = p.charA.divide(p.mA);
        c.bound = 1e-8 * std::max(1.0, p.charA.max_coeff_modulus());
        c.measured = d.remainder.max_coeff_modulus();
        c.pass = c.measured <= c.bound;
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "puv_crosscheck";
        try {
            compute_puv(sys);
            c.pass = true;
        } catch (const std::exception& e) {
            c.pass = false;
            c.note = e.what();
        }
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "spectrum_matches_oracle";
        if (!oracle_ok) {
            c.skipped = true;
            c.note = "n exceeds the oracle cap; skipped";
        } else {
            double worst = 0.0, worst_bound = 0.0;
            for (int k = 0; k < 20; ++k) {
                const Complex tau = rand_tau();
                const auto ours = flatten(spectrum(p, tau));
                const auto oracle = flatten(eig_oracle(sys.perturbed_matrix(tau)));
                const double h = hausdorff(ours, oracle);
                const double b = 1e-6 * (1.0 + std::abs(tau));
                if (h / b > worst / std::max(worst_bound, 1e-300)) {
                    worst = h;
                    worst_bound = b;
                }
            }
            c.measured = worst;
            c.bound = worst_bound;
            c.pass = worst <= worst_bound;
        }
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "pb_roots_inside_oracle";
        if (!oracle_ok) {
            c.skipped = true;
        } else {
            double worst = 0.0;
            for (int k = 0; k < 5; ++k) {
                const Complex tau = rand_tau();
                const auto oracle = flatten(eig_oracle(sys.perturbed_matrix(tau)));
                for (const auto& r : perturbed_poly(p, tau).roots()) {
                    double best = 1e300;
                    for (const auto& z : oracle)
                        best = std::min(best, std::abs(r.value - z));
                    worst = std::max(worst, best);
                }
            }
            c.measured = worst;
            c.bound = 1e-6;
            c.pass = worst <= c.bound;
        }
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "critical_points_residual";
        c.bound = 1e-6;
        double worst = 0.0;
        for (const auto& cp : p.critical)
            worst = std::max(worst, std::abs(p.Q.eval_derivs(cp.z, 1)[1]));
        c.measured = worst;
        c.pass = worst <= c.bound;
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "double_eigenvalue_link";
        double worst = 0.0;
        int tested = 0;
        for (const auto& cp : p.critical) {
            if (cp.kappa_local != 2 || !cp.finite_tau) continue;
            const Poly pb = perturbed_poly(p, cp.tau);
            int nearby = 0;
            double dist = 1e300;
            for (const auto& r : pb.roots()) {
                const double d = std::abs(r.value - cp.z);
                if (d < 1e-5 * (1.0 + std::abs(cp.z))) nearby += r.multiplicity;
                dist = std::min(dist, d);
            }
            worst = std::max(worst, nearby >= 2 ? 0.0 : dist);
            ++tested;
        }
        c.measured = worst;
        c.bound = 1e-5;
        c.pass = worst <= c.bound;
        if (tested == 0) c.note = "no simple critical points";
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "moments_laurent_crosscheck";
        if (normA == 0.0) {
            c.skipped = true;
            c.note = "zero matrix";
        } else {
            const int K = l + 6;
            const auto mom = moments(sys.A, sys.u, sys.v, K);
            const Complex z = 2.0 * normA * std::polar(1.0, 0.9);
            Complex series = 0.0;
            Complex zp = z;
            for (int k = 0; k <= K; ++k) {
                series += mom[k] / zp;
                zp *= z;
            }
            const Complex direct = resolvent_moment(sys.A, z, sys.u, sys.v, 1);
            c.measured = std::abs(direct - series);
            c.bound = 10.0 * vec_norm(sys.u) * vec_norm(sys.v) /
                      (std::pow(2.0, K + 1) * normA) * 2.0;
            c.pass = c.measured <= c.bound;
        }
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "trajectory_residual";
        const auto traj = trace_ray(p, 0.37, 0.4, 2.5, 60);
        const double coeff_scale = std::max(1.0, p.mA.max_coeff_modulus());
        double worst = 0.0;
        for (size_t s = 0; s < traj.params.size(); ++s) {
            const Complex tau = traj.params[s] * std::polar(1.0, 0.37);
            const Poly pb = perturbed_poly(p, tau);
            for (const auto& z : traj.samples[s])
                worst = std::max(worst, std::abs(pb.eval(z)) /
                                            (coeff_scale *
                                             std::pow(1.0 + std::abs(z), l)));
        }
        c.measured = worst;
        c.bound = 1e-8;
        c.pass = worst <= c.bound;
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "levelset_residual";
        double t = 1.0;
        for (const auto& cp : p.critical)
            if (cp.finite_tau) t = std::max(t, 0.5 * cp.t);
        const auto ls = level_set(p, t, 160);
        double worst = 0.0;
        int points = 0;
        for (const auto& line : ls.polylines) {
            for (const auto& z : line) {
                const double m = std::abs(p.mA.eval(z));
                const double q = ls.t * std::abs(p.puv.eval(z));
                if (m + q == 0.0) continue;
                worst = std::max(worst, std::abs(m - q) / (m + q));
                ++points;
            }
        }
        c.measured = worst;
        c.bound = 1e-6;
        c.pass = worst <= c.bound;
        if (points == 0) {
            c.skipped = true;
            c.note = "no curve in the window at the probe level";
        }
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "coverage_probe";
        const Window w = default_window(p);
        std::uniform_real_distribution<double> ux(w.x0, w.x1);
        std::uniform_real_distribution<double> uy(w.y0, w.y1);
        int located = 0, tested = 0, attempts = 0;
        while (tested < 12 && attempts++ < 200) {
            const Complex z(ux(rng), uy(rng));
            bool excluded = false;
            for (const auto& e : p.eigsA)
                if (std::abs(e.value - z) < 1e-3) excluded = true;
            if (p.puv.degree() >= 1)
                for (const auto& r : p.puv.roots())
                    if (std::abs(r.value - z) < 1e-3) excluded = true;
            if (excluded) continue;
            const auto res = coverage_probe(p, z, 256);
            if (res.category != CoverageCategory::on_level) continue;
            ++tested;
            if (res.located) ++located;
        }
        c.measured = tested - located;
        c.bound = 0.0;
        c.pass = located == tested && tested > 0;
        push(rep, c);
    }
    if (sys.is_real() || sys.structure) {
        VerificationCheck c;
        c.name = "spectral_symmetry";
        if (!oracle_ok) {
            c.skipped = true;
        } else {
            const auto symrep = verify_symmetry(sys, {0.5, 2.0, 7.0});
            c.measured = std::max(symrep.max_conj_error, symrep.max_neg_error);
            c.bound = 1e-6;
            c.pass = symrep.pass;
        }
        push(rep, c);
    }
    {
        VerificationCheck c;
        c.name = "frozen_eigenvalues_stay";
        if (p.frozen.empty()) {
            c.skipped = true;
            c.note = "no frozen eigenvalues";
        } else {
            double worst = 0.0;
            for (int k = 0; k < 3; ++k) {
                const Complex tau = rand_tau();
                const auto spec = flatten(spectrum(p, tau));
                for (const auto& f : p.frozen) {
                    double best = 1e300;
                    for (const auto& z : spec)
                        best = std::min(best, std::abs(z - f.value));
                    worst = std::max(worst, best);
                }
            }
            c.measured = worst;
            c.bound = 1e-6 * (1.0 + normA);
            c.pass = worst <= c.bound;
        }
        push(rep, c);
    }
    return rep;
}

}  // namespace specflow
