#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace specflow {

using Complex = std::complex<double>;

/// A root together with the number of coincident roots clustered into it.
struct RootCluster {
    Complex value;
    int multiplicity = 1;
};

struct PolyDivResult;

/// Dense univariate polynomial with complex coefficients stored in
/// ascending degree order.
///
/// Trailing coefficients whose modulus falls below trim * (largest
/// coefficient modulus) are dropped when the polynomial is built, so the
/// leading coefficient is always significant. The zero polynomial is the
/// empty coefficient sequence and has degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs);
    Poly(std::initializer_list<Complex> coeffs);

    /// Monic polynomial with the given roots (leading coefficient `lead`).
    static Poly from_roots(const std::vector<Complex>& roots,
                           Complex lead = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of lambda^i; zero beyond the stored range.
    Complex coeff(int i) const;
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex leading() const;
    double max_coeff_modulus() const;

    Complex eval(Complex z) const;

    /// First `count` Taylor coefficients of the polynomial at z, computed
    /// by repeated synthetic division. taylor_at(z, m)[k] = p^(k)(z) / k!.
    std::vector<Complex> taylor_at(Complex z, int count) const;

    Poly derivative(int order = 1) const;
    Poly monic() const;

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly operator*(Complex s) const;

    /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
    PolyDivResult divide(const Poly& divisor) const;

    /// Divide out (lambda - r)^times, discarding remainders.
    Poly deflate_root(Complex r, int times = 1) const;

    /// All complex roots, clustered into multiplicity estimates. The sum of
    /// multiplicities equals the degree. Requires degree >= 1.
    std::vector<RootCluster> roots() const;

    /// Roots listed with repetition according to multiplicity.
    std::vector<Complex> roots_flat() const;

  private:
    std::vector<Complex> coeffs_;

    void trim();
};

struct PolyDivResult {
    Poly quotient;
    Poly remainder;
};

/// Greedy clustering of points within cluster_tol * max(1, |point|).
std::vector<RootCluster> cluster_points(std::vector<Complex> pts,
                                        double tol_rel);

/// Principal branch of z^(1/k), argument taken in (-pi, pi].
Complex principal_root(Complex z, int k);

/// Roots of p that lie within `tol` of some root of q. Each common root is
/// reported once, at the position of the p-root cluster.
std::vector<Complex> common_roots(const Poly& p, const Poly& q, double tol);

}  // namespace specflow
