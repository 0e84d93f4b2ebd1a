#include "specflow/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "specflow/tolerances.hpp"

namespace specflow {

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

Poly::Poly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {
    trim();
}

void Poly::trim() {
    double maxc = 0.0;
    for (const auto& c : coeffs_) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) {
        coeffs_.clear();
        return;
    }
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= tol::trim * maxc)
        coeffs_.pop_back();
}

Poly Poly::from_roots(const std::vector<Complex>& roots, Complex lead) {
    std::vector<Complex> c{lead};
    for (const auto& r : roots) {
        c.push_back(0.0);
        for (int i = static_cast<int>(c.size()) - 1; i > 0; --i)
            c[i] = c[i - 1] - r * c[i];
        c[0] *= -r;
    }
    return Poly(std::move(c));
}

Complex Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[i];
}

Complex Poly::leading() const {
    return coeffs_.empty() ? Complex(0.0) : coeffs_.back();
}

double Poly::max_coeff_modulus() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex Poly::eval(Complex z) const {
    Complex y = 0.0;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
        y = y * z + coeffs_[i];
    return y;
}

std::vector<Complex> Poly::taylor_at(Complex z, int count) const {
    std::vector<Complex> out(count, Complex(0.0));
    std::vector<Complex> work = coeffs_;
    for (int k = 0; k < count && !work.empty(); ++k) {
        // Synthetic division by (lambda - z): remainder is the Taylor
        // coefficient, quotient feeds the next round.
        Complex carry = work.back();
        for (int i = static_cast<int>(work.size()) - 2; i >= 0; --i) {
            Complex tmp = work[i];
            work[i] = carry;
            carry = tmp + z * carry;
        }
        out[k] = carry;
        work.pop_back();
    }
    return out;
}

Poly Poly::derivative(int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    std::vector<Complex> c = coeffs_;
    for (int k = 0; k < order; ++k) {
        if (c.size() <= 1) return Poly();
        std::vector<Complex> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i)
            d[i - 1] = c[i] * static_cast<double>(i);
        c = std::move(d);
    }
    return Poly(std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (1.0 / leading());
}

Poly Poly::operator+(const Poly& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<int>(i)) + rhs.coeff(static_cast<int>(i));
    return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<int>(i)) - rhs.coeff(static_cast<int>(i));
    return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& rhs) const {
    if (is_zero() || rhs.is_zero()) return Poly();
    std::vector<Complex> c(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Poly(std::move(c));
}

Poly Poly::operator*(Complex s) const {
    std::vector<Complex> c = coeffs_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
}

PolyDivResult Poly::divide(const Poly& divisor) const {
    if (divisor.is_zero())
        throw std::invalid_argument("polynomial division by zero");
    if (degree() < divisor.degree()) return {Poly(), *this};
    std::vector<Complex> rem = coeffs_;
    const int dq = degree() - divisor.degree();
    std::vector<Complex> quot(dq + 1, 0.0);
    const Complex lead = divisor.leading();
    for (int k = dq; k >= 0; --k) {
        Complex q = rem[k + divisor.degree()] / lead;
        quot[k] = q;
        for (int j = 0; j <= divisor.degree(); ++j)
            rem[k + j] -= q * divisor.coeff(j);
    }
    rem.resize(divisor.degree() > 0 ? divisor.degree() : 0);
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::deflate_root(Complex r, int times) const {
    std::vector<Complex> c = coeffs_;
    for (int k = 0; k < times; ++k) {
        if (c.size() <= 1) return Poly();
        std::vector<Complex> q(c.size() - 1);
        Complex carry = c.back();
        for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
            q[i] = carry;
            carry = c[i] + r * carry;
        }
        c = std::move(q);
    }
    return Poly(std::move(c));
}

namespace {

// Aberth-Ehrlich simultaneous iteration. Expects degree >= 1 and a nonzero
// trailing coefficient (zero roots are stripped by the caller).
std::vector<Complex> aberth(const Poly& p) {
    const int d = p.degree();
    const Poly dp = p.derivative();

    if (d == 1) return {-p.coeff(0) / p.coeff(1)};
    if (d == 2) {
        // Stable quadratic formula.
        const Complex a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        const Complex disc = std::sqrt(b * b - 4.0 * a * c);
        const Complex q =
            -0.5 * (b + (std::real(std::conj(b) * disc) >= 0.0 ? disc : -disc));
        Complex r1 = q / a;
        Complex r2 = (std::abs(q) > 0.0) ? c / q : -b / a - r1;
        return {r1, r2};
    }

    // Initial guesses on a circle inside the Cauchy bound, with a random
    // angular offset so symmetric configurations do not trap the iteration.
    double bound = 0.0;
    for (int i = 0; i < d; ++i)
        bound = std::max(bound, std::abs(p.coeff(i) / p.leading()));
    const double radius = 0.5 + 0.7 * (1.0 + bound);
    std::mt19937 rng(0x5eedu + static_cast<unsigned>(d));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double phase0 = 2.0 * std::numbers::pi * unif(rng);
    std::vector<Complex> z(d);
    for (int i = 0; i < d; ++i) {
        const double ang = phase0 + 2.0 * std::numbers::pi * (i + 0.3 * unif(rng)) / d;
        z[i] = radius * Complex(std::cos(ang), std::sin(ang));
    }

    const int max_iter = 400;
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < d; ++i) {
            const Complex pv = p.eval(z[i]);
            if (std::abs(pv) == 0.0) continue;
            const Complex dv = dp.eval(z[i]);
            Complex ratio;
            if (std::abs(dv) > 0.0) {
                ratio = pv / dv;
            } else {
                ratio = 0.05 * (1.0 + std::abs(z[i]));
            }
            Complex sum = 0.0;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300)
                    diff = Complex(1e-12, 1e-12);
                sum += 1.0 / diff;
            }
            const Complex denom = 1.0 - ratio * sum;
            Complex step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
            if (!std::isfinite(std::abs(step)))
                step = 0.1 * (1.0 + std::abs(z[i]));
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-15) break;
    }

    // A few Newton polishing steps away from near-critical points.
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < 3; ++k) {
            const Complex pv = p.eval(z[i]);
            const Complex dv = dp.eval(z[i]);
            if (std::abs(dv) < 1e-14 * (1.0 + std::abs(pv))) break;
            const Complex step = pv / dv;
            if (!std::isfinite(std::abs(step)) || std::abs(step) > 1.0) break;
            z[i] -= step;
        }
    }
    return z;
}

}  // namespace

std::vector<RootCluster> cluster_points(std::vector<Complex> pts,
                                        double tol_rel) {
    std::vector<RootCluster> clusters;
    for (const auto& pt : pts) {
        bool merged = false;
        for (auto& c : clusters) {
            const double tol = tol_rel * std::max(1.0, std::abs(c.value));
            if (std::abs(pt - c.value) <= tol) {
                // Running mean keeps the center stable as members join.
                c.value = (c.value * static_cast<double>(c.multiplicity) + pt) /
                          static_cast<double>(c.multiplicity + 1);
                c.multiplicity += 1;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({pt, 1});
    }
    // Second pass merges clusters whose means drifted together.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < clusters.size() && !changed; ++i) {
            for (size_t j = i + 1; j < clusters.size() && !changed; ++j) {
                const double tol =
                    tol_rel * std::max(1.0, std::abs(clusters[i].value));
                if (std::abs(clusters[i].value - clusters[j].value) <= tol) {
                    const double wi = clusters[i].multiplicity;
                    const double wj = clusters[j].multiplicity;
                    clusters[i].value =
                        (clusters[i].value * wi + clusters[j].value * wj) /
                        (wi + wj);
                    clusters[i].multiplicity += clusters[j].multiplicity;
                    clusters.erase(clusters.begin() + j);
                    changed = true;
                }
            }
        }
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const RootCluster& a, const RootCluster& b) {
                  if (std::real(a.value) != std::real(b.value))
                      return std::real(a.value) < std::real(b.value);
                  return std::imag(a.value) < std::imag(b.value);
              });
    return clusters;
}

std::vector<RootCluster> Poly::roots() const {
    if (degree() < 1)
        throw std::invalid_argument("roots: polynomial degree must be >= 1");

    // Strip exact-ish zero roots first; they come out exactly rather than
    // as a cluster of small perturbed values.
    const double maxc = max_coeff_modulus();
    int zero_mult = 0;
    std::vector<Complex> c = coeffs_;
    while (static_cast<int>(c.size()) > 1 &&
           std::abs(c.front()) <= 100.0 * tol::trim * maxc) {
        c.erase(c.begin());
        ++zero_mult;
    }

    std::vector<Complex> raw;
    Poly reduced(std::move(c));
    if (reduced.degree() >= 1) raw = aberth(reduced);
    for (int k = 0; k < zero_mult; ++k) raw.push_back(0.0);

    auto clusters = cluster_points(std::move(raw), tol::cluster);

    // Refine multiple roots on the appropriate derivative, where they are
    // simple again; this recovers accuracy lost to root clustering.
    for (auto& cl : clusters) {
        if (cl.multiplicity < 2) continue;
        const Poly dm = derivative(cl.multiplicity - 1);
        const Poly dm1 = dm.derivative();
        Complex z = cl.value;
        for (int k = 0; k < 5; ++k) {
            const Complex f = dm.eval(z);
            const Complex df = dm1.eval(z);
            if (std::abs(df) < 1e-300) break;
            const Complex step = f / df;
            if (!std::isfinite(std::abs(step))) break;
            z -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
        }
        if (std::abs(z - cl.value) <=
            tol::cluster * std::max(1.0, std::abs(cl.value)))
            cl.value = z;
    }
    return clusters;
}

std::vector<Complex> Poly::roots_flat() const {
    std::vector<Complex> out;
    for (const auto& c : roots())
        for (int k = 0; k < c.multiplicity; ++k) out.push_back(c.value);
    return out;
}

Complex principal_root(Complex z, int k) {
    if (k == 1) return z;
    if (std::abs(z) == 0.0) return 0.0;
    return std::exp(std::log(z) / static_cast<double>(k));
}

std::vector<Complex> common_roots(const Poly& p, const Poly& q, double tol) {
    std::vector<Complex> out;
    if (p.degree() < 1 || q.degree() < 1) return out;
    const auto rp = p.roots();
    const auto rq = q.roots();
    for (const auto& r : rp) {
        for (const auto& s : rq) {
            if (std::abs(r.value - s.value) <= tol) {
                out.push_back(r.value);
                break;
            }
        }
    }
    return out;
}

}  // namespace specflow
