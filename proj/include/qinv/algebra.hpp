#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qinv/multi_index.hpp"

namespace qinv {

using Complex = std::complex<double>;

struct AlgebraOptions {
    // |a_{0...0}| must be at least this fraction of max|a| for inverse and log.
    double singular_threshold = 1e-12;
};

// Element of the commutative algebra generated by e_1..e_n with e_i^d = 0.
// The coefficient of e_1^{i_1}...e_n^{i_n} is the amplitude of |i_1...i_n>,
// so the same object is an unnormalised n-qudit state.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(int n, int d);
    AlgebraElement(int n, int d, std::vector<Complex> coeffs);

    static AlgebraElement identity(int n, int d);
    static AlgebraElement basis(const MultiIndex& index);

    int sites() const { return n_; }
    int dim() const { return d_; }
    std::size_t size() const { return coeffs_.size(); }

    Complex operator[](std::size_t linear) const { return coeffs_[linear]; }
    Complex at(const MultiIndex& index) const;
    Complex constant() const { return coeffs_.front(); }
    std::span<const Complex> coefficients() const { return coeffs_; }

    AlgebraElement with(std::size_t linear, Complex value) const;

    double max_abs() const;
    double norm_squared() const;

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(Complex s);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
    friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }

private:
    void check_same_shape(const AlgebraElement& rhs) const;

    int n_ = 0;
    int d_ = 2;
    std::vector<Complex> coeffs_;
};

AlgebraElement algebra_product(const AlgebraElement& lhs, const AlgebraElement& rhs);
AlgebraElement algebra_inverse(const AlgebraElement& x, const AlgebraOptions& options = {});
AlgebraElement algebra_log(const AlgebraElement& x, const AlgebraOptions& options = {});
AlgebraElement algebra_exp(const AlgebraElement& x);

// Evaluates sum_k series[k] * r^k where r is x without its constant term.
AlgebraElement nilpotent_series(const AlgebraElement& x, std::span<const Complex> series);

// Places a |sites|-site element onto the listed sites of an n-site register;
// all other sites carry digit 0 (the generators are absent).
AlgebraElement embed_sites(const AlgebraElement& local, std::span<const int> sites, int n);

// Kronecker product, lhs on the leading sites.
AlgebraElement tensor_product(const AlgebraElement& lhs, const AlgebraElement& rhs);

// Applies a d x d matrix (row-major) at one site:
// a'_{..j..} = sum_k g_{jk} a_{..k..}.
AlgebraElement apply_local(const AlgebraElement& x, int site, std::span<const Complex> matrix);

double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b);

}  // namespace qinv
