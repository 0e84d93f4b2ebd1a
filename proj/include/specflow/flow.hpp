#pragma once

#include "specflow/perturbation.hpp"

namespace specflow {

struct TrajectoryEvent {
    double param = 0.0;  // t along rays, theta along circles
    Complex tau;
    Complex z;
    int critical_index = -1;  // into portrait.critical; -1 for runtime hits
    bool frozen_pathology = false;
};

/// Eigenvalue branches along one path in the parameter plane. samples[s][b]
/// is branch b at params[s]; branch slots keep their identity along the
/// path (consecutive samples are matched by optimal assignment). The branch
/// count equals deg p_B, constant along the path.
struct Trajectory {
    enum class Path { ray, circle };
    Path path = Path::ray;
    double fixed = 0.0;  // theta for rays, t for circles
    std::vector<double> params;
    std::vector<std::vector<Complex>> samples;
    std::vector<int> branch_ids;
    std::vector<TrajectoryEvent> events;
    // Circles only: branch b ends at the start position of branch
    // monodromy[b] after one full turn.
    std::vector<int> monodromy;

    int branches() const {
        return samples.empty() ? 0 : static_cast<int>(samples.front().size());
    }
};

/// Branches of tau = t e^{i theta} over t in [t0, t1].
Trajectory trace_ray(const SpectralPortrait& p, double theta, double t0,
                     double t1, int steps = 400);

/// Branches of tau = t e^{i theta} over theta in [0, 2 pi], with the
/// monodromy permutation.
Trajectory sweep_circle(const SpectralPortrait& p, double t, int steps = 400);

/// Cycle lengths of a permutation (helper for monodromy assertions).
std::vector<int> permutation_cycles(const std::vector<int>& perm);

struct Window {
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
    bool contains(Complex z) const {
        return std::real(z) >= x0 && std::real(z) <= x1 &&
               std::imag(z) >= y0 && std::imag(z) <= y1;
    }
    double width() const { return x1 - x0; }
};

/// Square window holding all bounded spectral components: half-width
/// 2 + 2 max(|sigma(A)|, |roots p_uv|) around their centroid.
Window default_window(const SpectralPortrait& p);

/// Curve {z : |Q(z)| = 1/t} extracted by marching squares with bisection
/// refinement on cell edges.
struct LevelSet {
    double t = 0.0;
    std::vector<std::vector<Complex>> polylines;
    std::vector<bool> closed;
    std::vector<Complex> singular_points;  // critical points on the curve
};

LevelSet level_set(const SpectralPortrait& p, double t, const Window& window,
                   int resolution);
LevelSet level_set(const SpectralPortrait& p, double t, int resolution = 256);

/// Hausdorff distance between two nonempty finite point sets.
double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b);

enum class CoverageCategory { in_sigma_a, in_q_zero, on_level };

struct CoverageResult {
    CoverageCategory category = CoverageCategory::on_level;
    double t = 0.0;        // level containing z (on_level only)
    bool located = false;  // z found on the extracted level set
    double distance = 0.0; // to the nearest extracted point
    double cell = 0.0;     // grid cell size used
};

/// Classifies z as an eigenvalue of A, a zero of Q, or a point of the level
/// curve at t = 1/|Q(z)|; in the last case the extracted curve is checked
/// to pass within one grid cell of z.
CoverageResult coverage_probe(const SpectralPortrait& p, Complex z,
                              int resolution = 512);

/// Directions (radians, sorted) in which the level-t curve leaves z0,
/// found by sign changes on a circle of the given radius around z0.
std::vector<double> corner_tangent_angles(const SpectralPortrait& p,
                                          Complex z0, double t,
                                          double radius);

}  // namespace specflow
