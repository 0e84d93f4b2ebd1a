#pragma once

// Central numerical tolerances. All scale-aware tolerances are expressed as
// relative factors; the call sites multiply in the appropriate scale.

namespace specflow::tol {

// Polynomial coefficient trimming, relative to the largest coefficient.
inline constexpr double trim = 1e-12;

// Root clustering: roots closer than cluster * max(1, |root|) are merged.
inline constexpr double cluster = 1e-6;

// Rank drop threshold (relative singular value) in the minimal polynomial
// Krylov search.
inline constexpr double minpoly_rank = 1e-10;

// Residual bound factor for accepting a minimal polynomial candidate.
inline constexpr double minpoly_residual = 1e-8;

// Largest dimension the brute-force eigenvalue oracle accepts.
inline constexpr int oracle_nmax = 32;

// Frozen-eigenvalue detection and pole proximity, times (1 + |A|_F).
inline constexpr double freeze = 1e-8;
inline constexpr double pole = 1e-8;

// Derivative test in multiplicity detection, times max(1, |Q(z)|).
inline constexpr double multiplicity = 1e-6;

// Moment cutoff in kappa detection, times |A|_F^k |u| |v|.
inline constexpr double moment = 1e-10;

// Imaginary-part / modulus test in definability verdicts,
// times (1 + |Q(z)|).
inline constexpr double definability = 1e-8;

// Matching q0 roots against poles, times (1 + |z|).
inline constexpr double cancel = 1e-6;

// Relative agreement required between the two p_uv construction routes.
inline constexpr double puv_crosscheck = 1e-8;

// Path tracking: two branches closer than this collide.
inline constexpr double collision = 1e-6;

// Half-width of the parameter band around a critical radius inside which
// trajectories switch to the local square-root model.
inline constexpr double crit_band = 1e-4;

// Relative residual for points emitted by the level-set extractor.
inline constexpr double levelset = 1e-8;

// Entry positivity threshold for graph edges, relative to the max entry.
inline constexpr double nonneg_edge = 1e-12;

// Entries with |imag| below this make a matrix real.
inline constexpr double real_entry = 1e-14;

// Structure relation residual, times |A|_F |G|_F.
inline constexpr double structure = 1e-10;

}  // namespace specflow::tol
