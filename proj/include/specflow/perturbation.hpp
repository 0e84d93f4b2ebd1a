#pragma once

#include <limits>
#include <vector>

#include "specflow/linalg.hpp"
#include "specflow/system.hpp"

namespace specflow {

/// The rational function Q = num/den kept in reduced form: common roots of
/// numerator and denominator are deflated at construction, so Q evaluates
/// cleanly at accidentally frozen eigenvalues. Remaining roots of the
/// denominator are genuine poles.
class QFunction {
  public:
    QFunction() = default;
    QFunction(const Poly& numerator, const Poly& denominator,
              double common_tol);

    /// (Q(z), Q'(z), ..., Q^(order)(z)). Throws when z is within
    /// `pole_guard` of a pole.
    std::vector<Complex> eval_derivs(Complex z, int order) const;
    Complex operator()(Complex z) const { return eval_derivs(z, 0)[0]; }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const std::vector<RootCluster>& poles() const { return poles_; }
    double pole_guard() const { return pole_guard_; }

    double distance_to_pole(Complex z) const;

  private:
    Poly num_;
    Poly den_;
    std::vector<RootCluster> poles_;
    double pole_guard_ = 0.0;
};

struct EigenvalueInfo {
    Complex value;
    int char_mult = 0;  // multiplicity in det(lambda I - A)
    int min_mult = 0;   // multiplicity in the minimal polynomial
};

enum class FrozenKind { structural, accidental };

struct FrozenEigenvalue {
    Complex value;
    FrozenKind kind;
    // Accidental frozen eigenvalues at which Q keeps no pole; local branch
    // behavior there is not governed by Q and trajectory seeds avoid them.
    bool q_pole_lost = false;
};

/// A zero of Q' paired with the parameter at which two (or more) eigenvalue
/// branches meet there: tau = 1/Q(z), t = |tau|. kappa_local is the
/// algebraic multiplicity of z as an eigenvalue of the family at tau, i.e.
/// 1 + (order of the zero of Q' at z). Zeros of Q get t = +infinity.
struct CriticalPoint {
    Complex z;
    double t = 0.0;
    Complex tau;
    int kappa_local = 2;
    bool finite_tau = true;
};

/// Global spectral data of one system: minimal polynomial, perturbation
/// polynomial, the reduced Q, the eigenvalue table of A, frozen
/// classification, and the critical points of Q.
struct SpectralPortrait {
    RankOneSystem sys;
    Poly charA;       // det(lambda I - A), monic
    Poly mA;          // minimal polynomial, monic, degree l
    Poly puv;
    Poly q0;          // p_uv' mA - p_uv mA'
    Poly cofactor;    // charA / mA (structurally frozen part)
    QFunction Q;
    std::vector<EigenvalueInfo> eigsA;
    std::vector<FrozenEigenvalue> frozen;
    std::vector<CriticalPoint> critical;

    int l() const { return mA.degree(); }
    double freeze_tol() const;
    double pole_tol() const;
};

/// p_uv by the moment formula, cross-checked against resolvent samples of
/// mA(z) Q(z). Throws when the two routes disagree beyond the relative
/// tolerance (ill-conditioned input).
Poly compute_puv(const RankOneSystem& sys);

/// Full portrait: polynomials, frozen classification, critical points.
SpectralPortrait make_portrait(const RankOneSystem& sys);

/// (Q(z), ..., Q^(order)(z)) for the system's Q.
std::vector<Complex> q_eval(const RankOneSystem& sys, Complex z, int order);

/// mA - tau * p_uv, whose roots are the moving spectrum.
Poly perturbed_poly(const SpectralPortrait& p, Complex tau);
Poly perturbed_poly(const RankOneSystem& sys, Complex tau);

/// Eigenvalues of A + tau u v* with multiplicities: the roots of the
/// perturbed polynomial joined with the structurally frozen part.
std::vector<RootCluster> spectrum(const SpectralPortrait& p, Complex tau);
std::vector<RootCluster> spectrum(const RankOneSystem& sys, Complex tau);

std::vector<FrozenEigenvalue> classify_frozen(const RankOneSystem& sys);

/// Algebraic multiplicity of lambda0 as an eigenvalue of A + tau0 u v*,
/// for lambda0 away from the spectrum of A; 0 when it is no eigenvalue.
int multiplicity_at(const SpectralPortrait& p, Complex tau0, Complex lambda0);
int multiplicity_at(const RankOneSystem& sys, Complex tau0, Complex lambda0);

/// Companion-form system whose perturbation at tau = 1 collapses the whole
/// spectrum onto a single nilpotent Jordan block.
RankOneSystem companion_collapse_system(const std::vector<Complex>& a);

inline constexpr double t_infinite = std::numeric_limits<double>::infinity();

}  // namespace specflow
