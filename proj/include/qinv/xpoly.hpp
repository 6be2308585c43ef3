#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qinv/algebra.hpp"

namespace qinv {

// Per-site variable slots of a covariant polynomial. The y set only appears
// in the middle of a transvection.
enum Var : int { X0 = 0, X1 = 1, Y0 = 2, Y1 = 3 };
inline constexpr int kVarsPerSite = 4;

// exps[4*site + var]
using Exponents = std::vector<std::uint16_t>;

// Polynomial in x^{(j)}_0, x^{(j)}_1 (and y^{(j)}_0, y^{(j)}_1) with numeric
// coefficients, i.e. a covariant with its amplitude parts already evaluated.
class XPolynomial {
public:
    explicit XPolynomial(int n);

    static XPolynomial constant(int n, Complex c);

    int sites() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Exponents, Complex>& terms() const { return terms_; }

    void add_term(Exponents exps, Complex c);
    Complex coefficient(const Exponents& exps) const;

    // Total degree (x and y together) at each site; throws if some term
    // disagrees, i.e. the polynomial is not homogeneous per site.
    std::vector<int> site_degrees() const;
    bool is_site_homogeneous() const;

    friend XPolynomial operator*(const XPolynomial& a, const XPolynomial& b);

private:
    int n_;
    std::map<Exponents, Complex> terms_;
};

// Exponent table with x-exponents (x0, x1) per site and no y variables.
Exponents x_exponents(const std::vector<std::pair<int, int>>& per_site);

}  // namespace qinv
