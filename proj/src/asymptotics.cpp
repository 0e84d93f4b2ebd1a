#include "specflow/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specflow/assignment.hpp"
#include "specflow/flow.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

double BoundedBranch::radius_at(double abs_tau) const {
    if (frozen || std::abs(beta) == 0.0) return 0.0;
    return std::pow(abs_tau * std::abs(beta), -1.0 / k);
}

std::vector<Complex> BoundedBranch::predict(Complex tau) const {
    std::vector<Complex> out;
    if (frozen) {
        out.assign(k, zeta);
        return out;
    }
    const Complex base = principal_root(1.0 / (tau * beta), k);
    for (int m = 0; m < k; ++m) {
        const double ang = 2.0 * std::numbers::pi * m / k;
        out.push_back(zeta + base * Complex(std::cos(ang), std::sin(ang)));
    }
    return out;
}

AsymptoticModel detect_kappa(const RankOneSystem& sys) {
    AsymptoticModel model;
    const Poly mA = minimal_poly(sys.A);
    const int l = mA.degree();
    const auto mom = moments(sys.A, sys.u, sys.v, l);

    const double normA = sys.A.frobenius();
    const double uvscale = vec_norm(sys.u) * vec_norm(sys.v);
    int kappa = -1;
    double scale_k = uvscale;  // |A|^k |u| |v|
    for (int k = 0; k <= l - 1; ++k) {
        if (std::abs(mom[k]) > tol::moment * std::max(scale_k, 1e-300)) {
            kappa = k;
            break;
        }
        scale_k *= normA;
    }
    if (kappa < 0) {
        model.degenerate = true;
        return model;
    }
    model.kappa = kappa;
    model.lead = mom[kappa];
    model.c_minus1 = principal_root(model.lead, kappa + 1);
    model.c0 = mom[kappa + 1] / (static_cast<double>(kappa + 1) * mom[kappa]);
    model.tau_min = 10.0 * std::pow(1.0 + normA, kappa + 1);
    return model;
}

std::vector<Complex> unbounded_branches(const AsymptoticModel& model,
                                        Complex tau) {
    if (model.degenerate)
        throw std::domain_error("degenerate model has no diverging branches");
    if (std::abs(tau) < model.tau_min)
        throw std::domain_error("unbounded_branches: |tau| below the model floor");
    const int m = model.kappa + 1;
    const Complex base = model.c_minus1 * principal_root(tau, m);
    std::vector<Complex> out;
    for (int j = 0; j < m; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / m;
        out.push_back(base * Complex(std::cos(ang), std::sin(ang)) + model.c0);
    }
    return out;
}

std::vector<BoundedBranch> bounded_branches(const SpectralPortrait& p,
                                            const AsymptoticModel& model) {
    if (model.degenerate || p.puv.degree() < 1) return {};
    std::vector<BoundedBranch> out;
    for (const auto& root : p.puv.roots()) {
        BoundedBranch b;
        b.zeta = root.value;
        b.k = root.multiplicity;
        bool frozen = false;
        for (const auto& e : p.eigsA)
            if (std::abs(e.value - b.zeta) <= p.pole_tol()) frozen = true;
        b.frozen = frozen;
        if (!frozen) {
            const auto q = p.Q.eval_derivs(b.zeta, b.k);
            double fact = 1.0;
            for (int j = 2; j <= b.k; ++j) fact *= j;
            b.beta = q[b.k] / fact;
        }
        out.push_back(b);
    }
    return out;
}

namespace {

struct Predictions {
    std::vector<Complex> values;
    std::vector<int> cls;  // 0 unbounded, 1 bounded, 2 frozen
};

Predictions predictions_at(const SpectralPortrait& p,
                           const AsymptoticModel& model, Complex tau) {
    Predictions pr;
    const int m = model.kappa + 1;
    const Complex base = model.c_minus1 * principal_root(tau, m);
    for (int j = 0; j < m; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / m;
        pr.values.push_back(base * Complex(std::cos(ang), std::sin(ang)) +
                            model.c0);
        pr.cls.push_back(0);
    }
    for (const auto& b : model.bounded) {
        for (const auto& z : b.predict(tau)) {
            pr.values.push_back(z);
            pr.cls.push_back(b.frozen ? 2 : 1);
        }
    }
    if (p.cofactor.degree() >= 1) {
        for (const auto& z : p.cofactor.roots_flat()) {
            pr.values.push_back(z);
            pr.cls.push_back(2);
        }
    }
    return pr;
}

double fit_slope(const std::vector<double>& logx,
                 const std::vector<double>& logy) {
    const int n = static_cast<int>(logx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += logx[i];
        sy += logy[i];
        sxx += logx[i] * logx[i];
        sxy += logx[i] * logy[i];
    }
    const double den = n * sxx - sx * sx;
    if (std::abs(den) < 1e-300) return 0.0;
    return (n * sxy - sx * sy) / den;
}

}  // namespace

Complex fit_unbounded_correction(const SpectralPortrait& p,
                                 const AsymptoticModel& model,
                                 const std::vector<Complex>& tau_grid) {
    if (model.degenerate) return 0.0;
    const int m = model.kappa + 1;
    Complex num = 0.0;
    double den = 0.0;
    for (const auto& tau : tau_grid) {
        const auto oracle = eig_oracle(p.sys.perturbed_matrix(tau));
        std::vector<Complex> ov;
        for (const auto& r : oracle)
            for (int i = 0; i < r.multiplicity; ++i) ov.push_back(r.value);
        const Complex broot = principal_root(tau, m);
        for (int j = 0; j < m; ++j) {
            const double ang = 2.0 * std::numbers::pi * j / m;
            const Complex s = model.c_minus1 * broot *
                              Complex(std::cos(ang), std::sin(ang));
            const Complex pred = s + model.c0;
            double best = std::numeric_limits<double>::infinity();
            Complex lam = pred;
            for (const auto& z : ov) {
                if (std::abs(z - pred) < best) {
                    best = std::abs(z - pred);
                    lam = z;
                }
            }
            if (std::abs(s) == 0.0) continue;
            const Complex basis = 1.0 / s;  // next Puiseux term ~ c1 / s
            num += (lam - pred) * std::conj(basis);
            den += std::norm(basis);
        }
    }
    return den > 0.0 ? num / den : Complex(0.0);
}

AsymptoticsReport validate_asymptotics(const SpectralPortrait& p,
                                       const AsymptoticModel& model,
                                       const std::vector<Complex>& tau_grid) {
    if (p.sys.n() > tol::oracle_nmax)
        throw std::invalid_argument("validation needs the oracle: n too large");
    AsymptoticsReport rep;
    rep.degenerate = model.degenerate;

    if (model.degenerate) {
        double worst = 0.0;
        std::vector<Complex> base;
        for (const auto& e : p.eigsA)
            for (int i = 0; i < e.char_mult; ++i) base.push_back(e.value);
        for (const auto& tau : tau_grid) {
            const auto oracle = eig_oracle(p.sys.perturbed_matrix(tau));
            std::vector<Complex> ov;
            for (const auto& r : oracle)
                for (int i = 0; i < r.multiplicity; ++i) ov.push_back(r.value);
            worst = std::max(worst, hausdorff(base, ov));
        }
        rep.constant_spectrum_error = worst;
        rep.slopes_defined = false;
        return rep;
    }

    int max_k = 1;
    for (const auto& b : model.bounded) max_k = std::max(max_k, b.k);
    const double slope_bound =
        -1.0 / std::max(model.kappa + 1, max_k) + 0.1;

    std::vector<double> lx, ly_unb, ly_all;
    for (const auto& tau : tau_grid) {
        const auto pr = predictions_at(p, model, tau);
        const auto oracle = eig_oracle(p.sys.perturbed_matrix(tau));
        std::vector<Complex> ov;
        for (const auto& r : oracle)
            for (int i = 0; i < r.multiplicity; ++i) ov.push_back(r.value);
        if (ov.size() != pr.values.size()) {
            rep.matched = false;
            continue;
        }
        const auto match = match_points(pr.values, ov);
        AsymptoticsRow row;
        row.tau = tau;
        for (size_t i = 0; i < pr.values.size(); ++i) {
            const double err = std::abs(pr.values[i] - ov[match[i]]);
            row.err_max = std::max(row.err_max, err);
            if (pr.cls[i] == 0) row.err_unbounded = std::max(row.err_unbounded, err);
            if (pr.cls[i] == 1) row.err_bounded = std::max(row.err_bounded, err);
            if (pr.cls[i] == 2) row.err_frozen = std::max(row.err_frozen, err);
        }
        rep.rows.push_back(row);
        if (row.err_unbounded > 1e-13 && row.err_max > 1e-13) {
            lx.push_back(std::log(std::abs(tau)));
            ly_unb.push_back(std::log(row.err_unbounded));
            ly_all.push_back(std::log(row.err_max));
        }
    }

    if (lx.size() >= 2) {
        rep.slopes_defined = true;
        rep.slope_unbounded = fit_slope(lx, ly_unb);
        rep.slope_overall = fit_slope(lx, ly_all);
        rep.slope_ok = rep.slope_overall <= slope_bound;
    } else {
        rep.slopes_defined = false;
        rep.slope_ok = true;  // errors at the floor: predictions are exact
    }
    return rep;
}

}  // namespace specflow
