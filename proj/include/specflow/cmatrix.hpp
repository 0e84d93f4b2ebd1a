#pragma once

#include <vector>

#include "specflow/poly.hpp"

namespace specflow {

using CVector = std::vector<Complex>;

/// Dense square complex matrix, row-major. The is_real flag is computed at
/// construction: set when every entry has |imag| below 1e-14.
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(int n);
    CMatrix(int n, std::vector<Complex> entries);

    static CMatrix identity(int n);

    int n() const { return n_; }
    bool is_real() const { return is_real_; }

    Complex& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    Complex at(int i, int j) const {
        return a_[static_cast<size_t>(i) * n_ + j];
    }
    const std::vector<Complex>& entries() const { return a_; }

    /// Recompute the is_real flag after in-place edits via at().
    void refresh_real_flag();

    CMatrix operator+(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;
    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator*(Complex s) const;
    CMatrix transpose() const;
    CMatrix conj_transpose() const;

    CVector apply(const CVector& x) const;
    double frobenius() const;
    double trace_real_part() const;
    Complex trace() const;

  private:
    int n_ = 0;
    std::vector<Complex> a_;
    bool is_real_ = true;
};

/// Rank one matrix u v* (outer product against the conjugated second factor).
CMatrix rank_one(const CVector& u, const CVector& v);

/// v* x  =  sum conj(v_i) x_i.
Complex inner(const CVector& v, const CVector& x);

double vec_norm(const CVector& x);
CVector vec_scale(const CVector& x, Complex s);
CVector vec_sub(const CVector& a, const CVector& b);
bool vec_is_real(const CVector& x);

/// LU factorization with partial pivoting, for resolvent solves and
/// determinants at desk scale.
class LUFactor {
  public:
    explicit LUFactor(const CMatrix& m);

    bool singular() const { return singular_; }
    Complex det() const;
    CVector solve(const CVector& rhs) const;

  private:
    int n_;
    std::vector<Complex> lu_;
    std::vector<int> piv_;
    bool singular_ = false;
    int sign_ = 1;
};

}  // namespace specflow
