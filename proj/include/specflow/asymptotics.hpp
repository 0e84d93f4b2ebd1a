#pragma once

#include "specflow/perturbation.hpp"

namespace specflow {

/// Large-parameter behavior near one root zeta of p_uv: the k eigenvalues
/// converging to it lie at distance |tau beta|^{-1/k}, where beta is the
/// first nonzero Taylor coefficient of Q at zeta. Roots that are
/// accidentally frozen eigenvalues carry no radius law.
struct BoundedBranch {
    Complex zeta;
    int k = 1;
    Complex beta;
    bool frozen = false;

    double radius_at(double abs_tau) const;
    std::vector<Complex> predict(Complex tau) const;
};

/// Large-parameter model of one system: kappa + 1 branches diverge like
/// c_minus1 tau^{1/(kappa+1)} + c0, the rest converge to roots of p_uv.
/// Degenerate systems (all moments vanish) have a constant spectrum.
struct AsymptoticModel {
    int kappa = 0;
    Complex lead;      // v* A^kappa u
    Complex c_minus1;  // principal (kappa+1)-th root of lead
    Complex c0;
    bool degenerate = false;
    std::vector<BoundedBranch> bounded;
    double tau_min = 0.0;  // validity floor for unbounded predictions
};

/// kappa, the leading moment, and the unbounded-branch coefficients.
AsymptoticModel detect_kappa(const RankOneSystem& sys);

/// The kappa + 1 predicted positions of the diverging eigenvalues.
std::vector<Complex> unbounded_branches(const AsymptoticModel& model,
                                        Complex tau);

/// One branch per distinct root of p_uv.
std::vector<BoundedBranch> bounded_branches(const SpectralPortrait& p,
                                            const AsymptoticModel& model);

/// Least-squares fit of the next unbounded-branch coefficient from oracle
/// residuals on a tau grid.
Complex fit_unbounded_correction(const SpectralPortrait& p,
                                 const AsymptoticModel& model,
                                 const std::vector<Complex>& tau_grid);

struct AsymptoticsRow {
    Complex tau;
    double err_unbounded = 0.0;
    double err_bounded = 0.0;
    double err_frozen = 0.0;
    double err_max = 0.0;
};

struct AsymptoticsReport {
    bool degenerate = false;
    double constant_spectrum_error = 0.0;  // degenerate case only
    std::vector<AsymptoticsRow> rows;
    double slope_unbounded = 0.0;
    double slope_overall = 0.0;
    bool slopes_defined = false;  // false when errors hit the noise floor
    bool slope_ok = true;         // slope <= -1/max(kappa+1, max k_j) + 0.1
    bool matched = true;
};

/// Matches oracle eigenvalues against the model's predictions on each grid
/// point and estimates empirical convergence orders.
AsymptoticsReport validate_asymptotics(const SpectralPortrait& p,
                                       const AsymptoticModel& model,
                                       const std::vector<Complex>& tau_grid);

}  // namespace specflow
