#include "specflow/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specflow/critical.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

QFunction::QFunction(const Poly& numerator, const Poly& denominator,
                     double common_tol) {
    num_ = numerator;
    den_ = denominator;
    if (den_.is_zero())
        throw std::invalid_argument("Q: zero denominator");

    if (!num_.is_zero() && num_.degree() >= 0 && den_.degree() >= 1) {
        const auto dr = den_.roots();
        std::vector<RootCluster> nr;
        if (num_.degree() >= 1) nr = num_.roots();
        for (const auto& pole : dr) {
            int navail = 0;
            Complex at = pole.value;
            for (const auto& z : nr) {
                if (std::abs(z.value - pole.value) <= common_tol) {
                    navail = z.multiplicity;
                    at = 0.5 * (z.value + pole.value);
                    break;
                }
            }
            const int strip = std::min(navail, pole.multiplicity);
            if (strip > 0) {
                num_ = num_.deflate_root(at, strip);
                den_ = den_.deflate_root(at, strip);
            }
        }
    }
    if (den_.degree() >= 1) poles_ = den_.roots();
    pole_guard_ = common_tol;
}

double QFunction::distance_to_pole(Complex z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : poles_) d = std::min(d, std::abs(z - p.value));
    return d;
}

std::vector<Complex> QFunction::eval_derivs(Complex z, int order) const {
    if (distance_to_pole(z) <= pole_guard_)
        throw std::domain_error("Q evaluated at a pole");
    const auto N = num_.taylor_at(z, order + 1);
    const auto D = den_.taylor_at(z, order + 1);
    if (std::abs(D[0]) == 0.0)
        throw std::domain_error("Q evaluated at a pole");
    // Power-series division, then scale back to derivatives.
    std::vector<Complex> q(order + 1);
    for (int k = 0; k <= order; ++k) {
        Complex s = N[k];
        for (int i = 0; i < k; ++i) s -= q[i] * D[k - i];
        q[k] = s / D[0];
    }
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        q[k] *= fact;
        fact *= static_cast<double>(k + 1);
    }
    return q;
}

double SpectralPortrait::freeze_tol() const {
    return tol::freeze * (1.0 + sys.A.frobenius());
}

double SpectralPortrait::pole_tol() const {
    return tol::pole * (1.0 + sys.A.frobenius());
}

Poly compute_puv(const RankOneSystem& sys) {
    const Poly mA = minimal_poly(sys.A);
    const int l = mA.degree();

    // Moment route: coefficient of lambda^i collects m_{i+1+j} v* A^j u.
    const auto mom = moments(sys.A, sys.u, sys.v, std::max(0, l - 1));
    std::vector<Complex> c(std::max(1, l), 0.0);
    for (int i = 0; i <= l - 1; ++i) {
        Complex s = 0.0;
        for (int j = 0; i + 1 + j <= l; ++j) s += mA.coeff(i + 1 + j) * mom[j];
        c[i] = s;
    }
    Poly puv(std::move(c));

    // Cross-check against mA(z) v*(zI - A)^{-1} u sampled on a circle well
    // outside the spectrum. Disagreement signals ill-conditioning.
    const double R = 2.0 * (1.0 + sys.A.frobenius());
    const int samples = l + 1;
    double max_diff = 0.0, max_mag = 1.0;
    for (int s = 0; s < samples; ++s) {
        const double ang = 2.0 * 3.14159265358979323846 * (s + 0.37) / samples;
        const Complex z = R * Complex(std::cos(ang), std::sin(ang));
        const Complex direct = mA.eval(z) * resolvent_moment(sys.A, z, sys.u, sys.v, 1);
        const Complex from_moments = puv.eval(z);
        max_diff = std::max(max_diff, std::abs(direct - from_moments));
        max_mag = std::max({max_mag, std::abs(direct), std::abs(from_moments)});
    }
    if (max_diff > tol::puv_crosscheck * max_mag * 100.0)
        throw std::runtime_error(
            "p_uv cross-check failed: moment formula and resolvent samples "
            "disagree (ill-conditioned system)");
    return puv;
}

namespace {

std::vector<EigenvalueInfo> eigenvalue_table(const Poly& charA,
                                             const Poly& mA) {
    std::vector<EigenvalueInfo> out;
    const auto ce = charA.roots();
    std::vector<RootCluster> me;
    if (mA.degree() >= 1) me = mA.roots();
    for (const auto& c : ce) {
        EigenvalueInfo info;
        info.value = c.value;
        info.char_mult = c.multiplicity;
        info.min_mult = 0;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : me) {
            const double d = std::abs(m.value - c.value);
            if (d < best) {
                best = d;
                if (d <= tol::cluster * std::max(1.0, std::abs(c.value)) * 100.0)
                    info.min_mult = m.multiplicity;
            }
        }
        out.push_back(info);
    }
    return out;
}

}  // namespace

SpectralPortrait make_portrait(const RankOneSystem& sys) {
    SpectralPortrait p{sys,  Poly(), Poly(), Poly(), Poly(),
                       Poly(), QFunction(), {},    {},     {}};
    p.charA = char_poly(sys.A);
    p.mA = minimal_poly(sys.A);
    p.puv = compute_puv(sys);
    p.cofactor = p.charA.divide(p.mA).quotient.monic();
    p.eigsA = eigenvalue_table(p.charA, p.mA);
    p.Q = QFunction(p.puv, p.mA, p.freeze_tol());
    p.frozen = {};

    // Structural: more than one Jordan block, i.e. char mult > min mult.
    for (const auto& e : p.eigsA)
        if (e.char_mult > e.min_mult)
            p.frozen.push_back({e.value, FrozenKind::structural, false});

    // Accidental: common roots of mA and p_uv not already structural.
    for (const auto& r : common_roots(p.mA, p.puv, p.freeze_tol())) {
        bool structural = false;
        for (const auto& f : p.frozen)
            if (f.kind == FrozenKind::structural &&
                std::abs(f.value - r) <= p.freeze_tol())
                structural = true;
        if (structural) continue;
        FrozenEigenvalue f{r, FrozenKind::accidental, false};
        f.q_pole_lost = p.Q.distance_to_pole(r) > p.pole_tol();
        p.frozen.push_back(f);
    }

    p.q0 = q0_poly(p.mA, p.puv);
    p.critical = critical_points(p.q0, p.mA, p.Q);
    return p;
}

std::vector<Complex> q_eval(const RankOneSystem& sys, Complex z, int order) {
    const Poly mA = minimal_poly(sys.A);
    const Poly puv = compute_puv(sys);
    const QFunction Q(puv, mA, tol::freeze * (1.0 + sys.A.frobenius()));
    return Q.eval_derivs(z, order);
}

Poly perturbed_poly(const SpectralPortrait& p, Complex tau) {
    return p.mA - p.puv * tau;
}

Poly perturbed_poly(const RankOneSystem& sys, Complex tau) {
    return minimal_poly(sys.A) - compute_puv(sys) * tau;
}

std::vector<RootCluster> spectrum(const SpectralPortrait& p, Complex tau) {
    std::vector<Complex> pts;
    const Poly pb = perturbed_poly(p, tau);
    if (pb.degree() >= 1)
        for (const auto& z : pb.roots_flat()) pts.push_back(z);
    if (p.cofactor.degree() >= 1)
        for (const auto& z : p.cofactor.roots_flat()) pts.push_back(z);
    return cluster_points(std::move(pts), tol::cluster);
}

std::vector<RootCluster> spectrum(const RankOneSystem& sys, Complex tau) {
    return spectrum(make_portrait(sys), tau);
}

std::vector<FrozenEigenvalue> classify_frozen(const RankOneSystem& sys) {
    return make_portrait(sys).frozen;
}

int multiplicity_at(const SpectralPortrait& p, Complex tau0, Complex lambda0) {
    for (const auto& e : p.eigsA)
        if (std::abs(e.value - lambda0) <= p.pole_tol())
            throw std::domain_error(
                "multiplicity_at: lambda0 too close to the spectrum of A");
    if (std::abs(tau0) == 0.0) return 0;  // away from sigma(A), tau = 0 is empty

    const int max_order = p.l() + 1;
    const auto q = p.Q.eval_derivs(lambda0, max_order);
    const double tl = tol::multiplicity * std::max(1.0, std::abs(q[0]));
    if (std::abs(q[0] - 1.0 / tau0) > tl) return 0;
    int kappa = 1;
    while (kappa <= max_order - 1 && std::abs(q[kappa]) <= tl) ++kappa;
    return kappa;
}

int multiplicity_at(const RankOneSystem& sys, Complex tau0, Complex lambda0) {
    return multiplicity_at(make_portrait(sys), tau0, lambda0);
}

RankOneSystem companion_collapse_system(const std::vector<Complex>& a) {
    const int n = static_cast<int>(a.size());
    if (n < 1) throw std::invalid_argument("empty coefficient list");
    for (const auto& ai : a)
        if (std::abs(ai) == 0.0)
            throw std::invalid_argument(
                "companion collapse requires nonzero coefficients");
    CMatrix A(n);
    for (int i = 0; i + 1 < n; ++i) A.at(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) A.at(n - 1, j) = a[j];
    A.refresh_real_flag();
    CVector u(n, 0.0), v(n, 0.0);
    u[n - 1] = 1.0;
    // u v* must subtract the companion's bottom row at tau = 1.
    for (int j = 0; j < n; ++j) v[j] = -std::conj(a[j]);
    return RankOneSystem(std::move(A), std::move(u), std::move(v));
}

}  // namespace specflow
