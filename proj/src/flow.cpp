#include "specflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include "specflow/assignment.hpp"
#include "specflow/parallel.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct PathSpec {
    // tau(s) and d tau / d s for the path parameter s.
    std::function<Complex(double)> tau;
    std::function<Complex(double)> dtau;
};

Complex branch_velocity(const SpectralPortrait& p, Complex lambda, Complex tau,
                        Complex dtau_ds) {
    const Complex den =
        p.mA.derivative().eval(lambda) - tau * p.puv.derivative().eval(lambda);
    if (std::abs(den) < 1e-300) return 0.0;
    return dtau_ds * p.puv.eval(lambda) / den;
}

bool newton_correct(const Poly& pb, const Poly& dpb, Complex& z) {
    for (int it = 0; it < 30; ++it) {
        const Complex f = pb.eval(z);
        const Complex df = dpb.eval(z);
        if (std::abs(df) < 1e-300) return false;
        const Complex step = f / df;
        if (!std::isfinite(std::abs(step))) return false;
        z -= step;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z))) return true;
    }
    return false;
}

// One tracking engine serves rays and circles.
Trajectory track(const SpectralPortrait& p, Trajectory::Path kind,
                 double fixed, double s0, double s1, int steps) {
    if (steps < 2) steps = 2;
    Trajectory traj;
    traj.path = kind;
    traj.fixed = fixed;

    PathSpec path;
    if (kind == Trajectory::Path::ray) {
        const Complex dir(std::cos(fixed), std::sin(fixed));
        path.tau = [dir](double s) { return s * dir; };
        path.dtau = [dir](double) { return dir; };
    } else {
        const double t = fixed;
        path.tau = [t](double s) { return t * Complex(std::cos(s), std::sin(s)); };
        path.dtau = [t](double s) {
            return Complex(0.0, 1.0) * t * Complex(std::cos(s), std::sin(s));
        };
    }

    auto root_set = [&](Complex tau) {
        const Poly pb = perturbed_poly(p, tau);
        std::vector<Complex> r = pb.roots_flat();
        std::sort(r.begin(), r.end(), [](Complex a, Complex b) {
            if (std::real(a) != std::real(b)) return std::real(a) < std::real(b);
            return std::imag(a) < std::imag(b);
        });
        return r;
    };

    std::vector<Complex> cur = root_set(path.tau(s0));
    const int nb = static_cast<int>(cur.size());
    traj.branch_ids.resize(nb);
    for (int i = 0; i < nb; ++i) traj.branch_ids[i] = i;
    traj.params.push_back(s0);
    traj.samples.push_back(cur);

    // Anticipated collisions: critical points whose tau lies on this path.
    struct Crossing {
        double s;
        int index;
    };
    std::vector<Crossing> crossings;
    for (size_t ci = 0; ci < p.critical.size(); ++ci) {
        const auto& cp = p.critical[ci];
        if (!cp.finite_tau) continue;
        if (kind == Trajectory::Path::ray) {
            double dphi = std::arg(cp.tau) - fixed;
            dphi = std::remainder(dphi, two_pi);
            if (std::abs(dphi) <= 1e-9 && cp.t >= std::min(s0, s1) &&
                cp.t <= std::max(s0, s1))
                crossings.push_back({cp.t, static_cast<int>(ci)});
        } else {
            if (std::abs(cp.t - fixed) <=
                tol::crit_band * std::max(1.0, fixed)) {
                double th = std::arg(cp.tau);
                if (th < 0.0) th += two_pi;
                crossings.push_back({th, static_cast<int>(ci)});
            }
        }
    }
    for (const auto& c : crossings) {
        TrajectoryEvent ev;
        ev.param = c.s;
        ev.tau = p.critical[c.index].tau;
        ev.z = p.critical[c.index].z;
        ev.critical_index = c.index;
        traj.events.push_back(ev);
    }

    const int max_effective = 1 << 14;
    int used = 0;
    const double h0 = (s1 - s0) / steps;
    double s = s0;
    double h = h0;
    std::vector<double> pending;  // step targets, uniform grid
    for (int k = 1; k <= steps; ++k) pending.push_back(s0 + k * h0);
    size_t pi = 0;

    double prev_min_gap = std::numeric_limits<double>::infinity();

    while (pi < pending.size() && used < max_effective) {
        double target = pending[pi];
        h = target - s;

        // Predict with a classical 4th-order step on d lambda / d s.
        std::vector<Complex> pred(nb);
        for (int b = 0; b < nb; ++b) {
            const Complex z = cur[b];
            const Complex k1 = branch_velocity(p, z, path.tau(s), path.dtau(s));
            const Complex k2 = branch_velocity(p, z + 0.5 * h * k1,
                                               path.tau(s + 0.5 * h),
                                               path.dtau(s + 0.5 * h));
            const Complex k3 = branch_velocity(p, z + 0.5 * h * k2,
                                               path.tau(s + 0.5 * h),
                                               path.dtau(s + 0.5 * h));
            const Complex k4 = branch_velocity(p, z + h * k3, path.tau(target),
                                               path.dtau(target));
            pred[b] = z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }

        const Complex tau_next = path.tau(target);

        // Inside a collision band the velocity field degenerates; the
        // colliding branches follow the local fractional-power model
        // (lambda - z_j)^kappa = kappa! (1/tau - 1/tau_j) / Q^(kappa)(z_j).
        for (const auto& c : crossings) {
            if (std::abs(target - c.s) >
                std::max(tol::crit_band, 2.0 * std::abs(h)))
                continue;
            const auto& cp = p.critical[c.index];
            const int kl = cp.kappa_local;
            if (kl < 2 || !cp.finite_tau || kl > nb) continue;
            const auto q = p.Q.eval_derivs(cp.z, kl);
            if (std::abs(q[kl]) < 1e-300 || std::abs(tau_next) < 1e-300)
                continue;
            double fact = 1.0;
            for (int j = 2; j <= kl; ++j) fact *= j;
            const Complex base = principal_root(
                fact * (1.0 / tau_next - 1.0 / cp.tau) / q[kl], kl);
            std::vector<Complex> cand;
            for (int m = 0; m < kl; ++m)
                cand.push_back(cp.z + base * std::polar(1.0, two_pi * m / kl));
            // The kl branches nearest the critical point take the model
            // positions, each matched to its closest candidate.
            std::vector<int> order(nb);
            for (int b = 0; b < nb; ++b) order[b] = b;
            std::sort(order.begin(), order.end(), [&](int a, int b2) {
                return std::abs(cur[a] - cp.z) < std::abs(cur[b2] - cp.z);
            });
            std::vector<char> taken(cand.size(), 0);
            for (int m = 0; m < kl; ++m) {
                const int b = order[m];
                int pick = -1;
                double best = 1e300;
                for (size_t ci2 = 0; ci2 < cand.size(); ++ci2) {
                    if (taken[ci2]) continue;
                    const double d = std::abs(pred[b] - cand[ci2]);
                    if (d < best) {
                        best = d;
                        pick = static_cast<int>(ci2);
                    }
                }
                if (pick >= 0) {
                    taken[pick] = 1;
                    pred[b] = cand[pick];
                }
            }
        }

        const Poly pb = perturbed_poly(p, tau_next);
        const Poly dpb = pb.derivative();

        bool newton_ok = true;
        std::vector<Complex> corrected = pred;
        for (int b = 0; b < nb; ++b)
            if (!newton_correct(pb, dpb, corrected[b])) newton_ok = false;

        // Ground truth root multiset; assignment keeps the labels stable
        // and repairs branches Newton lost or merged.
        const std::vector<Complex> truth = root_set(tau_next);
        const auto match =
            match_points(newton_ok ? corrected : pred, truth);
        std::vector<Complex> next(nb);
        for (int b = 0; b < nb; ++b) next[b] = truth[match[b]];

        // Large deviation between prediction and matched truth means the
        // step skipped structure: halve, unless inside a collision band.
        double dev = 0.0;
        for (int b = 0; b < nb; ++b)
            dev = std::max(dev, std::abs(pred[b] - next[b]) /
                                    (1.0 + std::abs(next[b])));
        bool near_crossing = false;
        for (const auto& c : crossings)
            if (std::abs(target - c.s) <=
                std::max(tol::crit_band, 2.0 * std::abs(h)))
                near_crossing = true;
        if ((!newton_ok || dev > 0.05) && !near_crossing &&
            std::abs(h) > std::abs(h0) / 64.0 && used + 1 < max_effective) {
            pending.insert(pending.begin() + pi, s + 0.5 * h);
            ++used;
            continue;
        }

        // Runtime collision detection, edge-triggered.
        double min_gap = std::numeric_limits<double>::infinity();
        int gi = 0, gj = 0;
        for (int i = 0; i < nb; ++i)
            for (int j = i + 1; j < nb; ++j) {
                const double d = std::abs(next[i] - next[j]);
                if (d < min_gap) {
                    min_gap = d;
                    gi = i;
                    gj = j;
                }
            }
        if (nb > 1) {
            const Complex zc = 0.5 * (next[gi] + next[gj]);
            const double scale = 1.0 + std::abs(zc);
            // A close pass of an accidentally frozen eigenvalue is a
            // pathology Q cannot see; use a wider band for those.
            bool near_frozen = false;
            for (const auto& f : p.frozen)
                if (f.kind == FrozenKind::accidental &&
                    std::abs(f.value - zc) <= 1e-3 * scale)
                    near_frozen = true;
            const double ctol = near_frozen ? 1e-3 * scale
                                            : tol::collision * scale;
            if (min_gap <= ctol && prev_min_gap > ctol) {
                bool known = false;
                for (const auto& ev : traj.events) {
                    double dp = ev.param - target;
                    if (kind == Trajectory::Path::circle)
                        dp = std::remainder(dp, two_pi);
                    if (std::abs(ev.z - zc) < 1e-3 * scale &&
                        std::abs(dp) < 2.0 * std::abs(h) + tol::crit_band)
                        known = true;
                }
                if (!known) {
                    TrajectoryEvent ev;
                    ev.param = target;
                    ev.tau = tau_next;
                    ev.z = zc;
                    ev.critical_index = -1;
                    ev.frozen_pathology = near_frozen;
                    traj.events.push_back(ev);
                }
            }
            prev_min_gap = min_gap;
        }

        s = target;
        cur = std::move(next);
        traj.params.push_back(s);
        traj.samples.push_back(cur);
        ++pi;
        ++used;
    }

    if (kind == Trajectory::Path::circle && !traj.samples.empty()) {
        const auto m = match_points(traj.samples.back(), traj.samples.front());
        traj.monodromy = m;
    }
    std::sort(traj.events.begin(), traj.events.end(),
              [](const TrajectoryEvent& a, const TrajectoryEvent& b) {
                  return a.param < b.param;
              });
    return traj;
}

}  // namespace

Trajectory trace_ray(const SpectralPortrait& p, double theta, double t0,
                     double t1, int steps) {
    if (t0 <= 0.0 || t1 <= 0.0)
        throw std::invalid_argument("trace_ray requires positive radii");
    return track(p, Trajectory::Path::ray, theta, t0, t1, steps);
}

Trajectory sweep_circle(const SpectralPortrait& p, double t, int steps) {
    if (t <= 0.0)
        throw std::invalid_argument("sweep_circle requires a positive radius");
    return track(p, Trajectory::Path::circle, t, 0.0, two_pi, steps);
}

std::vector<int> permutation_cycles(const std::vector<int>& perm) {
    std::vector<int> lengths;
    std::vector<char> seen(perm.size(), 0);
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<size_t>(perm[j]);
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

Window default_window(const SpectralPortrait& p) {
    std::vector<Complex> pts;
    for (const auto& e : p.eigsA) pts.push_back(e.value);
    if (p.puv.degree() >= 1)
        for (const auto& r : p.puv.roots()) pts.push_back(r.value);
    if (pts.empty()) pts.push_back(0.0);
    Complex centroid = 0.0;
    double maxmod = 0.0;
    for (const auto& z : pts) {
        centroid += z;
        maxmod = std::max(maxmod, std::abs(z));
    }
    centroid /= static_cast<double>(pts.size());
    const double half = 2.0 + 2.0 * maxmod;
    Window w;
    w.x0 = std::real(centroid) - half;
    w.x1 = std::real(centroid) + half;
    w.y0 = std::imag(centroid) - half;
    w.y1 = std::imag(centroid) + half;
    return w;
}

namespace {

// |mA_red(z)| - t |puv_red(z)|; the level curve is its zero set.
double level_fn(const QFunction& Q, double t, Complex z) {
    return std::abs(Q.den().eval(z)) - t * std::abs(Q.num().eval(z));
}

Complex refine_edge(const QFunction& Q, double t, Complex a, Complex b,
                    double fa) {
    // Bisection: fa and f(b) have opposite signs.
    Complex lo = a, hi = b;
    double flo = fa;
    for (int it = 0; it < 80; ++it) {
        const Complex mid = 0.5 * (lo + hi);
        const double fm = level_fn(Q, t, mid);
        const double scale = std::abs(Q.den().eval(mid)) +
                             t * std::abs(Q.num().eval(mid));
        if (std::abs(fm) <= tol::levelset * std::max(1e-300, scale)) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (std::abs(hi - lo) < 1e-15 * (1.0 + std::abs(mid))) return mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

LevelSet level_set(const SpectralPortrait& p, double t, const Window& window,
                   int resolution) {
    if (t <= 0.0) throw std::invalid_argument("level_set requires t > 0");
    if (resolution < 2) resolution = 2;
    LevelSet out;
    out.t = t;

    const int N = resolution;
    const double dx = (window.x1 - window.x0) / N;
    const double dy = (window.y1 - window.y0) / N;

    std::vector<double> F(static_cast<size_t>(N + 1) * (N + 1));
    parallel_for(0, N + 1, [&](int iy) {
        const double y = window.y0 + iy * dy;
        for (int ix = 0; ix <= N; ++ix) {
            const double x = window.x0 + ix * dx;
            F[static_cast<size_t>(iy) * (N + 1) + ix] =
                level_fn(p.Q, t, Complex(x, y));
        }
    });
    auto fval = [&](int ix, int iy) {
        return F[static_cast<size_t>(iy) * (N + 1) + ix];
    };
    auto node = [&](int ix, int iy) {
        return Complex(window.x0 + ix * dx, window.y0 + iy * dy);
    };

    // Edge keys: horizontal edge (ix,iy)-(ix+1,iy) and vertical edge
    // (ix,iy)-(ix,iy+1).
    auto hkey = [&](int ix, int iy) {
        return static_cast<long long>(iy) * (N + 1) + ix;
    };
    auto vkey = [&](int ix, int iy) {
        return static_cast<long long>(N + 1) * (N + 1) +
               static_cast<long long>(iy) * (N + 1) + ix;
    };

    std::map<long long, Complex> edge_point;
    auto crossing = [&](long long key, int ax, int ay, int bx, int by)
        -> long long {
        auto it = edge_point.find(key);
        if (it == edge_point.end()) {
            const Complex pt = refine_edge(p.Q, t, node(ax, ay), node(bx, by),
                                           fval(ax, ay));
            edge_point.emplace(key, pt);
        }
        return key;
    };

    std::vector<std::pair<long long, long long>> segments;
    for (int iy = 0; iy < N; ++iy) {
        for (int ix = 0; ix < N; ++ix) {
            const double f00 = fval(ix, iy), f10 = fval(ix + 1, iy);
            const double f11 = fval(ix + 1, iy + 1), f01 = fval(ix, iy + 1);
            const bool b0 = f00 < 0.0, b1 = f10 < 0.0, b2 = f11 < 0.0,
                       b3 = f01 < 0.0;
            if (b0 == b1 && b1 == b2 && b2 == b3) continue;

            std::vector<long long> cross;
            if (b0 != b1)
                cross.push_back(crossing(hkey(ix, iy), ix, iy, ix + 1, iy));
            if (b1 != b2)
                cross.push_back(
                    crossing(vkey(ix + 1, iy), ix + 1, iy, ix + 1, iy + 1));
            if (b3 != b2)
                cross.push_back(
                    crossing(hkey(ix, iy + 1), ix, iy + 1, ix + 1, iy + 1));
            if (b0 != b3)
                cross.push_back(crossing(vkey(ix, iy), ix, iy, ix, iy + 1));

            if (cross.size() == 2) {
                segments.emplace_back(cross[0], cross[1]);
            } else if (cross.size() == 4) {
                // Saddle cell: the center sample picks the pairing.
                // cross order: bottom, right, top, left.
                const double fc = level_fn(
                    p.Q, t,
                    node(ix, iy) + Complex(0.5 * dx, 0.5 * dy));
                if ((fc < 0.0) == b0) {
                    segments.emplace_back(cross[0], cross[1]);  // bottom-right
                    segments.emplace_back(cross[2], cross[3]);  // top-left
                } else {
                    segments.emplace_back(cross[3], cross[0]);  // left-bottom
                    segments.emplace_back(cross[1], cross[2]);  // right-top
                }
            }
        }
    }

    // Chain segments into polylines through shared edge crossings.
    std::map<long long, std::vector<int>> adj;
    for (int si = 0; si < static_cast<int>(segments.size()); ++si) {
        adj[segments[si].first].push_back(si);
        adj[segments[si].second].push_back(si);
    }
    std::vector<char> used(segments.size(), 0);
    auto walk = [&](int start_seg, long long start_edge) {
        std::vector<Complex> line;
        long long cur = start_edge;
        int seg = start_seg;
        line.push_back(edge_point[cur]);
        while (true) {
            used[seg] = 1;
            const long long nxt = (segments[seg].first == cur)
                                      ? segments[seg].second
                                      : segments[seg].first;
            line.push_back(edge_point[nxt]);
            cur = nxt;
            int next_seg = -1;
            for (int cand : adj[cur])
                if (!used[cand]) next_seg = cand;
            if (next_seg < 0) break;
            seg = next_seg;
        }
        const bool closed =
            line.size() > 2 && std::abs(line.front() - line.back()) <
                                   1e-12 * (1.0 + std::abs(line.front()));
        out.polylines.push_back(std::move(line));
        out.closed.push_back(closed);
    };
    // Open chains first (their ends touch the window boundary or a dead end).
    for (const auto& [edge, segs] : adj) {
        if (segs.size() != 1) continue;
        if (!used[segs[0]]) walk(segs[0], edge);
    }
    for (int si = 0; si < static_cast<int>(segments.size()); ++si)
        if (!used[si]) walk(si, segments[si].first);

    for (const auto& cp : p.critical) {
        if (!cp.finite_tau) continue;
        if (std::abs(cp.t - t) <= tol::crit_band * std::max(1.0, t) &&
            window.contains(cp.z))
            out.singular_points.push_back(cp.z);
    }
    return out;
}

LevelSet level_set(const SpectralPortrait& p, double t, int resolution) {
    return level_set(p, t, default_window(p), resolution);
}

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff requires nonempty sets");
    double h = 0.0;
    for (const auto& x : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y : b) best = std::min(best, std::abs(x - y));
        h = std::max(h, best);
    }
    for (const auto& y : b) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& x : a) best = std::min(best, std::abs(y - x));
        h = std::max(h, best);
    }
    return h;
}

CoverageResult coverage_probe(const SpectralPortrait& p, Complex z,
                              int resolution) {
    CoverageResult res;
    const double near = 1e-6 * std::max(1.0, std::abs(z));
    for (const auto& e : p.eigsA) {
        if (std::abs(e.value - z) <= near) {
            res.category = CoverageCategory::in_sigma_a;
            return res;
        }
    }
    if (p.Q.num().degree() >= 1) {
        for (const auto& r : p.Q.num().roots()) {
            if (std::abs(r.value - z) <= near) {
                res.category = CoverageCategory::in_q_zero;
                return res;
            }
        }
    }
    res.category = CoverageCategory::on_level;
    const Complex qz = p.Q.eval_derivs(z, 0)[0];
    if (std::abs(qz) == 0.0) {
        res.category = CoverageCategory::in_q_zero;
        return res;
    }
    res.t = 1.0 / std::abs(qz);

    Window w = default_window(p);
    // Grow the window if the probe point sits outside it.
    const double margin = 0.05 * w.width();
    w.x0 = std::min(w.x0, std::real(z) - margin);
    w.x1 = std::max(w.x1, std::real(z) + margin);
    w.y0 = std::min(w.y0, std::imag(z) - margin);
    w.y1 = std::max(w.y1, std::imag(z) + margin);
    const double side = std::max(w.x1 - w.x0, w.y1 - w.y0);
    w.x1 = w.x0 + side;
    w.y1 = w.y0 + side;

    const LevelSet ls = level_set(p, res.t, w, resolution);
    res.cell = side / resolution;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : ls.polylines)
        for (const auto& pt : line) best = std::min(best, std::abs(pt - z));
    res.distance = best;
    res.located = best <= std::sqrt(2.0) * res.cell;
    return res;
}

std::vector<double> corner_tangent_angles(const SpectralPortrait& p,
                                          Complex z0, double t,
                                          double radius) {
    const int M = 2880;
    std::vector<double> vals(M);
    for (int i = 0; i < M; ++i) {
        const double a = two_pi * i / M;
        vals[i] = level_fn(p.Q, t, z0 + radius * Complex(std::cos(a), std::sin(a)));
    }
    std::vector<double> angles;
    for (int i = 0; i < M; ++i) {
        const double f0 = vals[i];
        const double f1 = vals[(i + 1) % M];
        if ((f0 < 0.0) == (f1 < 0.0)) continue;
        double lo = two_pi * i / M;
        double hi = two_pi * (i + 1) / M;
        double flo = f0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = level_fn(
                p.Q, t, z0 + radius * Complex(std::cos(mid), std::sin(mid)));
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        angles.push_back(std::fmod(0.5 * (lo + hi), two_pi));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

}  // namespace specflow
