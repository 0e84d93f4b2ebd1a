#include "specflow/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "specflow/tolerances.hpp"

namespace specflow {

namespace {

double scale_of(const CMatrix& A) {
    const double f = A.frobenius();
    return f > 0.0 ? f : 1.0;
}

}  // namespace

Poly char_poly(const CMatrix& A) {
    const int n = A.n();
    const double s = scale_of(A);
    const CMatrix As = A * Complex(1.0 / s);

    // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr M_1,
    // M_k = A (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k) / k.
    std::vector<Complex> c(n + 1, 0.0);
    c[n] = 1.0;
    CMatrix M = As;
    for (int k = 1; k <= n; ++k) {
        c[n - k] = -M.trace() / static_cast<double>(k);
        if (k < n) {
            CMatrix shifted = M;
            for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k];
            M = As * shifted;
        }
    }
    // Undo the scaling: coefficient of lambda^k picks up s^(n-k).
    double f = 1.0;
    for (int k = n - 1; k >= 0; --k) {
        f *= s;
        c[k] *= f;
    }
    return Poly(std::move(c));
}

Poly minimal_poly(const CMatrix& A) {
    const int n = A.n();
    const double s = scale_of(A);
    const CMatrix As = A * Complex(1.0 / s);

    // Columns are vectorized powers of the scaled matrix.
    const size_t nn = static_cast<size_t>(n) * n;
    std::vector<CMatrix> powers;
    powers.push_back(CMatrix::identity(n));
    for (int k = 1; k <= n; ++k) powers.push_back(powers.back() * As);

    Eigen::MatrixXcd K(nn, n + 1);
    for (int k = 0; k <= n; ++k)
        for (size_t i = 0; i < nn; ++i) K(i, k) = powers[k].entries()[i];

    int deg = n;
    for (int k = 1; k <= n; ++k) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K.leftCols(k + 1));
        const auto& sv = svd.singularValues();
        if (sv(k) <= tol::minpoly_rank * sv(0)) {
            deg = k;
            break;
        }
    }

    for (; deg <= n; ++deg) {
        // Least-squares monic combination A^deg = sum_{j<deg} x_j A^j.
        Eigen::MatrixXcd B = K.leftCols(deg);
        Eigen::VectorXcd rhs = K.col(deg);
        Eigen::VectorXcd x = B.colPivHouseholderQr().solve(rhs);

        std::vector<Complex> coeffs(deg + 1);
        coeffs[deg] = 1.0;
        for (int j = 0; j < deg; ++j) coeffs[j] = -x(j);

        // Residual check on the scaled matrix; powers there are O(1).
        CMatrix R = powers[deg];
        for (int j = 0; j < deg; ++j) R = R - powers[j] * x(j);
        double pow_scale = 0.0;
        for (int j = 0; j <= deg; ++j)
            pow_scale = std::max(pow_scale, powers[j].frobenius());
        if (R.frobenius() <= tol::minpoly_residual * pow_scale || deg == n) {
            // Undo the scaling.
            double f = 1.0;
            for (int k = deg - 1; k >= 0; --k) {
                f *= s;
                coeffs[k] *= f;
            }
            return Poly(std::move(coeffs));
        }
    }
    return char_poly(A);  // unreachable: deg == n always accepts
}

std::vector<Complex> moments(const CMatrix& A, const CVector& u,
                             const CVector& v, int kmax) {
    if (static_cast<int>(u.size()) != A.n() ||
        static_cast<int>(v.size()) != A.n())
        throw std::invalid_argument("dimension mismatch in moments");
    if (kmax < 0) throw std::invalid_argument("kmax must be >= 0");
    std::vector<Complex> out;
    out.reserve(kmax + 1);
    CVector w = u;
    for (int k = 0; k <= kmax; ++k) {
        out.push_back(inner(v, w));
        if (k < kmax) w = A.apply(w);
    }
    return out;
}

Complex resolvent_moment(const CMatrix& A, Complex zeta, const CVector& u,
                         const CVector& v, int power) {
    if (power < 1) throw std::invalid_argument("power must be >= 1");
    CMatrix M = A * Complex(-1.0);
    for (int i = 0; i < A.n(); ++i) M.at(i, i) += zeta;
    LUFactor lu(M);
    if (lu.singular())
        throw std::runtime_error("resolvent evaluated at an eigenvalue");
    CVector w = u;
    for (int k = 0; k < power; ++k) w = lu.solve(w);
    return inner(v, w);
}

namespace {

// Logarithmic derivative d/dz log det(zI - A) = tr((zI - A)^{-1}).
// Returns false when zI - A is numerically singular (z is an eigenvalue).
bool resolvent_trace(const CMatrix& A, Complex z, Complex& tr) {
    CMatrix M = A * Complex(-1.0);
    for (int i = 0; i < A.n(); ++i) M.at(i, i) += z;
    LUFactor lu(M);
    if (lu.singular()) return false;
    tr = 0.0;
    CVector e(A.n(), 0.0);
    for (int i = 0; i < A.n(); ++i) {
        e[i] = 1.0;
        tr += lu.solve(e)[i];
        e[i] = 0.0;
    }
    return std::isfinite(std::abs(tr));
}

}  // namespace

std::vector<RootCluster> eig_oracle(const CMatrix& A) {
    if (A.n() > tol::oracle_nmax)
        throw std::invalid_argument(
            "eig_oracle: dimension exceeds the desk-scale cap");
    if (A.n() == 1) return {{A.at(0, 0), 1}};

    // Characteristic-polynomial roots start the iteration; they lose
    // relative accuracy on small eigenvalues when the eigenvalue moduli
    // span many decades. The Aberth iteration on det(zI - A) itself,
    // evaluated through an LU factorization, restores it.
    //
    // The polynomial is taken from the norm-scaled matrix: its
    // coefficients stay below binom(n, k), so the monic lead survives
    // trimming and no root escapes to infinity.
    const double s = A.frobenius() > 0.0 ? A.frobenius() : 1.0;
    std::vector<Complex> z;
    {
        const Poly cs = char_poly(A * Complex(1.0 / s));
        if (cs.degree() >= 1) z = cs.roots_flat();
        for (auto& r : z) r *= s;
    }
    while (static_cast<int>(z.size()) < A.n())
        z.push_back(Complex(0.9, 0.43) * s *
                    static_cast<double>(z.size() + 1));
    // Coincident starting points would move in lockstep and converge to
    // the same eigenvalue; spread them.
    const int n = static_cast<int>(z.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) <= 1e-12 * (1.0 + std::abs(z[i])))
                z[j] += std::polar(1e-6 * (1.0 + std::abs(z[j])),
                                   6.2831853 * (j + 1) / n);
    // Bad starting points may sit orders of magnitude from any eigenvalue
    // and approach with ratio (1 - 1/n) per sweep; the budget covers that.
    const int max_sweeps = 100 + 60 * n;
    for (int iter = 0; iter < max_sweeps; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex tr;
            if (!resolvent_trace(A, z[i], tr)) continue;  // already exact
            if (std::abs(tr) < 1e-300) continue;
            const Complex ratio = 1.0 / tr;  // det / det'
            Complex repulsion = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex diff = z[i] - z[j];
                if (std::abs(diff) > 1e-300) repulsion += 1.0 / diff;
            }
            const Complex denom = 1.0 - ratio * repulsion;
            Complex step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
            const double cap = 0.5 * (1.0 + std::abs(z[i]));
            if (!std::isfinite(std::abs(step))) continue;
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            z[i] -= step;
            max_step = std::max(max_step,
                                std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-15) break;
    }
    return cluster_points(std::move(z), tol::cluster);
}

}  // namespace specflow
