// Acceptance suite: reproduces the worked examples and global properties
// end to end, one pass/fail line per criterion. Exit code 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "specflow/asymptotics.hpp"
#include "specflow/critical.hpp"
#include "specflow/flow.hpp"
#include "specflow/nonneg.hpp"
#include "specflow/structured.hpp"
#include "test_util.hpp"

using namespace specflow;
using namespace specflow::testing;

namespace {

int failures = 0;

void report(int id, const char* label, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
                label, detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

double coeff_err(const Poly& p, const std::vector<Complex>& expect) {
    double worst = 0.0;
    const int top = std::max(p.degree(), static_cast<int>(expect.size()) - 1);
    for (int i = 0; i <= top; ++i) {
        const Complex want =
            i < static_cast<int>(expect.size()) ? expect[i] : Complex(0.0);
        worst = std::max(worst, std::abs(p.coeff(i) - want));
    }
    return worst;
}

// 1. Ray example: polynomials and critical data to 1e-9.
void criterion_1() {
    const auto p = make_portrait(ray2_system());
    double err = coeff_err(p.mA, {1.0, 1.0, 1.0});
    err = std::max(err, coeff_err(p.puv, {1.0, 1.0}));
    err = std::max(err, coeff_err(p.q0, {0.0, -2.0, -1.0}));
    bool ok = err <= 1e-9 && p.critical.size() == 2;
    if (p.critical.size() == 2) {
        err = std::max(err, std::abs(p.critical[0].z));
        err = std::max(err, std::abs(p.critical[0].t - 1.0));
        err = std::max(err, std::abs(p.critical[1].z + 2.0));
        err = std::max(err, std::abs(p.critical[1].t - 3.0));
        ok = err <= 1e-9;
    }
    report(1, "2x2 ray example: m_A, p_uv, q0, critical points", ok,
           "max error " + fmt(err) + " vs 1e-9");
}

// 2. Companion example: critical set to 1e-8, collapse at tau = -1.
void criterion_2() {
    const auto p = make_portrait(companion3_system());
    const double t2 = 4.0 / std::sqrt(3.0);
    bool ok = p.critical.size() == 3;
    double err = 0.0;
    if (ok) {
        err = std::max(err, std::abs(p.critical[0].z));
        err = std::max(err, std::abs(p.critical[0].t - 1.0));
        const double s2 = std::sqrt(2.0);
        double e1 = 1e300, e2 = 1e300;
        for (int i = 1; i < 3; ++i) {
            e1 = std::min(e1, std::abs(p.critical[i].z - Complex(1.0, s2)));
            e2 = std::min(e2, std::abs(p.critical[i].z - Complex(1.0, -s2)));
            err = std::max(err, std::abs(p.critical[i].t - t2));
        }
        err = std::max({err, e1, e2});
        ok = err <= 1e-8;
    }
    const double perr =
        coeff_err(perturbed_poly(p, -1.0), {0.0, 0.0, 0.0, 1.0});
    ok = ok && perr <= 1e-9;
    report(2, "3x3 companion example: critical set and cubic collapse", ok,
           "critical error " + fmt(err) + " vs 1e-8, collapse coeff error " +
               fmt(perr) + " vs 1e-9");
}

// 3. Frozen pair: spectrum {1, 2, tau+1} at 20 random tau; both frozen
// eigenvalues classified accidental.
void criterion_3() {
    const auto p = make_portrait(frozen_pair_system());
    std::mt19937 rng(333);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Complex tau = 5.0 * Complex(unif(rng), unif(rng));
        const auto spec = flatten(spectrum(p, tau));
        worst = std::max(worst,
                         brute_hausdorff(spec, {1.0, 2.0, tau + 1.0}));
    }
    int accidental = 0;
    for (const auto& f : p.frozen)
        if (f.kind == FrozenKind::accidental &&
            (std::abs(f.value - 1.0) < 1e-6 || std::abs(f.value - 2.0) < 1e-6))
            ++accidental;
    const bool ok = worst <= 1e-8 && accidental == 2;
    report(3, "frozen pair: spectrum {1, 2, tau+1} and classification", ok,
           "spectrum error " + fmt(worst) + " vs 1e-8, accidental " +
               std::to_string(accidental) + "/2");
}

// 4. Entrywise positive example: oracle eigenvalues 1 +- sqrt(1+tau),
// divergence count 2, unbounded error slope -1/2 +- 0.05.
void criterion_4() {
    const auto sys = nonneg2_system();
    double worst = 0.0;
    for (double tau : {1.0, 10.0, 1000.0}) {
        const auto oracle = flatten(eig_oracle(sys.perturbed_matrix(tau)));
        const double r = std::sqrt(1.0 + tau);
        worst = std::max(worst, brute_hausdorff(oracle, {1.0 + r, 1.0 - r}));
    }
    const auto d = divergence_count(sys.A, 0, 1);

    const auto p = make_portrait(sys);
    auto model = detect_kappa(sys);
    model.bounded = bounded_branches(p, model);
    const auto rep = validate_asymptotics(p, model, {1e2, 1e4, 1e6});
    const bool slope_ok =
        rep.slopes_defined && std::abs(rep.slope_unbounded + 0.5) <= 0.05;
    const bool ok = worst <= 1e-8 && d.l == 2 && slope_ok;
    report(4, "positive 2x2: oracle roots, count l=2, slope -1/2", ok,
           "eig error " + fmt(worst) + " vs 1e-8, l=" + std::to_string(d.l) +
               ", slope " + fmt(rep.slope_unbounded));
}

// 5. Hamiltonian example: moments, constant p_uv, forecast count 4,
// fourth-root radius band, negation symmetry.
void criterion_5() {
    const StructureContext ctx{StructureKind::j_hamiltonian, hamiltonian_J()};
    const auto sys = make_structured_system(hamiltonian_A(), hamiltonian_u(), ctx);
    const auto mom = moments(sys.A, sys.u, sys.v, 3);
    double merr = std::max({std::abs(mom[0]), std::abs(mom[1]), std::abs(mom[2]),
                            std::abs(mom[3] + 4.0)});
    const Poly puv = compute_puv(sys);
    const double perr = coeff_err(puv, {-4.0});
    const auto f = hamiltonian_forecast(sys);

    const double radius = std::pow(4.0 * 125000.0, 0.25);
    bool band_ok = true;
    double neg_err = 0.0;
    for (double tau : {125000.0, -125000.0}) {
        const auto oracle = flatten(eig_oracle(sys.perturbed_matrix(tau)));
        for (const auto& z : oracle)
            band_ok = band_ok && std::abs(z) >= 0.8 * radius &&
                      std::abs(z) <= 1.2 * radius;
        std::vector<Complex> neg;
        for (const auto& z : oracle) neg.push_back(-z);
        neg_err = std::max(neg_err, brute_hausdorff(oracle, neg));
    }
    const bool ok = merr <= 1e-10 && perr <= 1e-8 && f.count == 4 && band_ok &&
                    neg_err <= 1e-6;
    report(5, "Hamiltonian 4x4: moments, p_uv = -4, 4 branches, symmetry", ok,
           "moment err " + fmt(merr) + ", p_uv err " + fmt(perr) + ", count " +
               std::to_string(f.count) + ", negation err " + fmt(neg_err));
}

// 6. Nilpotent 4-block: 4-cycle monodromy and fourth roots of t.
void criterion_6() {
    const auto sys = jordan_system(4);
    const auto p = make_portrait(sys);
    const auto traj = sweep_circle(p, 1.0, 400);
    const auto cyc = permutation_cycles(traj.monodromy);
    const bool mono_ok = cyc.size() == 1 && cyc[0] == 4;

    double worst = 0.0;
    for (double t : {0.5, 1.0, 7.0}) {
        const auto spec = flatten(spectrum(p, t));
        std::vector<Complex> expect;
        const double r = std::pow(t, 0.25);
        for (int k = 0; k < 4; ++k)
            expect.push_back(std::polar(r, 2.0 * 3.14159265358979323846 * k / 4));
        worst = std::max(worst, brute_hausdorff(spec, expect) / r);
    }
    const bool ok = mono_ok && worst <= 1e-8;
    report(6, "nilpotent 4-block: 4-cycle monodromy, fourth roots", ok,
           "cycle " + std::to_string(cyc.empty() ? 0 : cyc[0]) +
               ", relative root error " + fmt(worst) + " vs 1e-8");
}

// 7. Oracle equivalence on 100 random systems x 10 parameters.
void criterion_7() {
    std::mt19937 rng(7777);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst_ratio = 0.0;
    for (int s = 0; s < 100; ++s) {
        const int n = 2 + s % 5;  // n <= 6
        const RankOneSystem sys(random_matrix(rng, n),
                                random_unit_vector(rng, n),
                                random_unit_vector(rng, n));
        const auto p = make_portrait(sys);
        for (int k = 0; k < 10; ++k) {
            const Complex tau = 10.0 * Complex(unif(rng), unif(rng));
            const auto ours = flatten(spectrum(p, tau));
            const auto oracle = flatten(eig_oracle(sys.perturbed_matrix(tau)));
            const double h = brute_hausdorff(ours, oracle);
            worst_ratio = std::max(worst_ratio, h / (1e-6 * (1.0 + std::abs(tau))));
        }
    }
    report(7, "oracle equivalence on 100 random systems x 10 tau",
           worst_ratio <= 1.0,
           "worst error / bound = " + fmt(worst_ratio));
}

// 8. Coverage identity: random points classified and located on their
// level curve within one grid cell at resolution 512.
void criterion_8() {
    std::mt19937 rng(888);
    std::vector<RankOneSystem> systems{ray2_system(), companion3_system()};
    systems.push_back(RankOneSystem(random_matrix(rng, 4),
                                    random_unit_vector(rng, 4),
                                    random_unit_vector(rng, 4)));
    int located = 0, total = 0;
    double worst_cells = 0.0;
    for (const auto& sys : systems) {
        const auto p = make_portrait(sys);
        const Window w = default_window(p);
        std::uniform_real_distribution<double> ux(w.x0, w.x1);
        std::uniform_real_distribution<double> uy(w.y0, w.y1);
        // Points closer than two grid cells to an eigenvalue or a root of
        // p_uv sit on level components below the grid resolution; the
        // identity is tested away from them (and they are classified into
        // the other two categories anyway when within 1e-6).
        const double guard = 2.0 * w.width() / 512.0;
        int count = 0;
        while (count < 100) {
            const Complex z(ux(rng), uy(rng));
            bool excluded = false;
            for (const auto& e : p.eigsA)
                if (std::abs(e.value - z) < guard) excluded = true;
            if (p.puv.degree() >= 1)
                for (const auto& r : p.puv.roots())
                    if (std::abs(r.value - z) < guard) excluded = true;
            if (excluded) continue;
            ++count;
            ++total;
            const auto res = coverage_probe(p, z, 512);
            if (res.category == CoverageCategory::on_level && res.located) {
                ++located;
                if (res.cell > 0.0)
                    worst_cells = std::max(worst_cells, res.distance / res.cell);
            }
        }
    }
    report(8, "coverage identity: 100 points/system on their level sets",
           located == total,
           std::to_string(located) + "/" + std::to_string(total) +
               " located, worst distance " + fmt(worst_cells) + " cells");
}

// 9. Right-angle collision on the ray example at (z, t) = (0, 1).
void criterion_9() {
    const auto p = make_portrait(ray2_system());
    const auto angles = corner_tangent_angles(p, 0.0, 1.0, 1e-3);
    bool ok = angles.size() == 4;
    double worst = 0.0;
    if (ok) {
        for (size_t i = 0; i + 1 < angles.size(); ++i) {
            const double d =
                (angles[i + 1] - angles[i]) * 180.0 / 3.14159265358979323846;
            worst = std::max(worst, std::abs(d - 90.0));
        }
        ok = worst <= 2.0;
    }
    report(9, "level curves cross at right angles at the double point", ok,
           std::to_string(angles.size()) + " tangents, max deviation " +
               fmt(worst) + " deg vs 2 deg");
}

// 10. Definability: a small complex rotation of v makes the ray example
// definable with well-separated branches; the real system is obstructed
// with witness (0, 1).
void criterion_10() {
    std::mt19937 rng(1010);
    std::uniform_real_distribution<double> dtheta(0.01, 0.1);
    const double theta = dtheta(rng);

    auto base = ray2_system();
    CVector v = base.v;
    for (auto& e : v) e *= std::polar(1.0, theta);
    const RankOneSystem rotated(base.A, base.u, v);
    const auto pr = make_portrait(rotated);
    const auto verdict = definability(pr, DefinabilityMode::real_ray);

    double min_sep = 1e300;
    const auto traj = trace_ray(pr, 0.0, 0.1, 10.0, 400);
    for (const auto& sample : traj.samples)
        for (size_t i = 0; i < sample.size(); ++i)
            for (size_t j = i + 1; j < sample.size(); ++j)
                min_sep = std::min(min_sep, std::abs(sample[i] - sample[j]));

    const auto p0 = make_portrait(base);
    const auto verdict0 = definability(p0, DefinabilityMode::real_ray);
    const bool witness_ok = !verdict0.definable &&
                            std::abs(verdict0.z) < 1e-8 &&
                            std::abs(verdict0.t - 1.0) < 1e-8;

    const bool ok = verdict.definable && min_sep > 1e-4 && witness_ok;
    report(10, "definability after rotation; obstruction witness (0, 1)", ok,
           "rotated definable=" + std::string(verdict.definable ? "yes" : "no") +
               ", min separation " + fmt(min_sep) + ", witness " +
               (witness_ok ? "(0, 1)" : "wrong"));
}

// 11. Bounded-branch coefficient with the corrected sign: prediction
// -1 + 1/tau vs measured branch -1 + 1/(tau+1), error <= 2 tau^-2; the
// raw resolvent moment carries the opposite sign.
void criterion_11() {
    const auto sys = ray2_system();
    const auto p = make_portrait(sys);
    auto model = detect_kappa(sys);
    model.bounded = bounded_branches(p, model);
    bool ok = model.bounded.size() == 1;
    double worst_ratio = 0.0;
    Complex beta, raw_moment;
    if (ok) {
        const auto& b = model.bounded.front();
        beta = b.beta;
        raw_moment = resolvent_moment(sys.A, b.zeta, sys.u, sys.v, b.k + 1);
        // Taylor route beta = +1; the raw resolvent moment is -1. They
        // differ by (-1)^k, and only beta predicts the branch correctly.
        ok = std::abs(beta - 1.0) < 1e-9 &&
             std::abs(raw_moment + 1.0) < 1e-9 &&
             std::abs(beta - std::pow(-1.0, b.k) * raw_moment) < 1e-9;
        for (double tau : {1e3, 1e4, 1e5}) {
            const auto pred = b.predict(tau);
            const auto oracle = flatten(eig_oracle(sys.perturbed_matrix(tau)));
            double measured = 1e300;
            Complex lam;
            for (const auto& z : oracle)
                if (std::abs(z - b.zeta) < measured) {
                    measured = std::abs(z - b.zeta);
                    lam = z;
                }
            const double err = std::abs(pred[0] - lam);
            worst_ratio = std::max(worst_ratio, err / (2.0 / (tau * tau)));
        }
        ok = ok && worst_ratio <= 1.0;
    }
    std::printf("     note: Taylor coefficient %+.6g vs raw resolvent moment "
                "%+.6g (sign differs, Taylor route used)\n",
                std::real(beta), std::real(raw_moment));
    report(11, "bounded branch -1 + 1/tau, error <= 2/tau^2, sign resolved",
           ok, "worst error / bound = " + fmt(worst_ratio));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("================\n%s (%d failure%s)\n",
                failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}
