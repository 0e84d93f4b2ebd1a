#include "specflow/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

#include "specflow/tolerances.hpp"

namespace specflow {

CMatrix::CMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
    if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
}

CMatrix::CMatrix(int n, std::vector<Complex> entries)
    : n_(n), a_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (a_.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("entry count does not match dimension");
    refresh_real_flag();
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

void CMatrix::refresh_real_flag() {
    is_real_ = true;
    for (const auto& x : a_) {
        if (std::abs(std::imag(x)) >= tol::real_entry) {
            is_real_ = false;
            break;
        }
    }
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("dimension mismatch");
    CMatrix out(n_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
    out.refresh_real_flag();
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("dimension mismatch");
    CMatrix out(n_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    out.refresh_real_flag();
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("dimension mismatch");
    CMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < n_; ++k) {
            const Complex aik = at(i, k);
            if (aik == Complex(0.0)) continue;
            for (int j = 0; j < n_; ++j) out.at(i, j) += aik * rhs.at(k, j);
        }
    }
    out.refresh_real_flag();
    return out;
}

CMatrix CMatrix::operator*(Complex s) const {
    CMatrix out(n_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
    out.refresh_real_flag();
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out.at(j, i) = at(i, j);
    out.refresh_real_flag();
    return out;
}

CMatrix CMatrix::conj_transpose() const {
    CMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out.at(j, i) = std::conj(at(i, j));
    out.refresh_real_flag();
    return out;
}

CVector CMatrix::apply(const CVector& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("dimension mismatch");
    CVector y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n_; ++j) s += at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

Complex CMatrix::trace() const {
    Complex s = 0.0;
    for (int i = 0; i < n_; ++i) s += at(i, i);
    return s;
}

double CMatrix::trace_real_part() const { return std::real(trace()); }

CMatrix rank_one(const CVector& u, const CVector& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("dimension mismatch");
    const int n = static_cast<int>(u.size());
    CMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = u[i] * std::conj(v[j]);
    out.refresh_real_flag();
    return out;
}

Complex inner(const CVector& v, const CVector& x) {
    if (v.size() != x.size())
        throw std::invalid_argument("dimension mismatch");
    Complex s = 0.0;
    for (size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * x[i];
    return s;
}

double vec_norm(const CVector& x) {
    double s = 0.0;
    for (const auto& e : x) s += std::norm(e);
    return std::sqrt(s);
}

CVector vec_scale(const CVector& x, Complex s) {
    CVector y = x;
    for (auto& e : y) e *= s;
    return y;
}

CVector vec_sub(const CVector& a, const CVector& b) {
    CVector y = a;
    for (size_t i = 0; i < y.size(); ++i) y[i] -= b[i];
    return y;
}

bool vec_is_real(const CVector& x) {
    for (const auto& e : x)
        if (std::abs(std::imag(e)) >= tol::real_entry) return false;
    return true;
}

LUFactor::LUFactor(const CMatrix& m) : n_(m.n()), lu_(m.entries()), piv_(m.n()) {
    for (int i = 0; i < n_; ++i) piv_[i] = i;
    auto el = [&](int i, int j) -> Complex& {
        return lu_[static_cast<size_t>(i) * n_ + j];
    };
    for (int k = 0; k < n_; ++k) {
        int p = k;
        double best = std::abs(el(k, k));
        for (int i = k + 1; i < n_; ++i) {
            const double v = std::abs(el(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) {
            singular_ = true;
            continue;
        }
        if (p != k) {
            for (int j = 0; j < n_; ++j) std::swap(el(p, j), el(k, j));
            std::swap(piv_[p], piv_[k]);
            sign_ = -sign_;
        }
        for (int i = k + 1; i < n_; ++i) {
            el(i, k) /= el(k, k);
            const Complex f = el(i, k);
            if (f == Complex(0.0)) continue;
            for (int j = k + 1; j < n_; ++j) el(i, j) -= f * el(k, j);
        }
    }
}

Complex LUFactor::det() const {
    if (singular_) return 0.0;
    Complex d = static_cast<double>(sign_);
    for (int i = 0; i < n_; ++i) d *= lu_[static_cast<size_t>(i) * n_ + i];
    return d;
}

CVector LUFactor::solve(const CVector& rhs) const {
    if (singular_) throw std::runtime_error("singular matrix in solve");
    if (static_cast<int>(rhs.size()) != n_)
        throw std::invalid_argument("dimension mismatch");
    CVector y(n_);
    for (int i = 0; i < n_; ++i) y[i] = rhs[piv_[i]];
    auto el = [&](int i, int j) -> Complex {
        return lu_[static_cast<size_t>(i) * n_ + j];
    };
    for (int i = 1; i < n_; ++i)
        for (int j = 0; j < i; ++j) y[i] -= el(i, j) * y[j];
    for (int i = n_ - 1; i >= 0; --i) {
        for (int j = i + 1; j < n_; ++j) y[i] -= el(i, j) * y[j];
        y[i] /= el(i, i);
    }
    return y;
}

}  // namespace specflow
