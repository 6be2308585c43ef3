#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qinv/algebra.hpp"
#include "qinv/multi_index.hpp"

namespace qinv {

// Amplitude factors a_v of a monomial, as sorted n-qubit linear indices v.
using Monomial = std::vector<std::uint32_t>;

// Homogeneous polynomial in the amplitudes a_{i_1...i_n} of an n-qubit state.
class APolynomial {
public:
    explicit APolynomial(int n, std::optional<int> degree = std::nullopt);

    static APolynomial amplitude(const MultiIndex& index);

    int sites() const { return n_; }
    std::optional<int> degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Monomial, Complex>& terms() const { return terms_; }

    // Adds c * prod(factors); factors are sorted here. Merged terms that cancel
    // exactly are removed.
    void add_term(Monomial factors, Complex c);

    Complex evaluate(const AlgebraElement& state) const;

    std::string str() const;

    APolynomial& operator+=(const APolynomial& rhs);
    APolynomial& operator-=(const APolynomial& rhs);
    APolynomial& operator*=(Complex s);
    friend APolynomial operator+(APolynomial a, const APolynomial& b) { return a += b; }
    friend APolynomial operator-(APolynomial a, const APolynomial& b) { return a -= b; }
    friend APolynomial operator*(Complex s, APolynomial a) { return a *= s; }
    friend bool operator==(const APolynomial& a, const APolynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

private:
    int n_;
    std::optional<int> degree_;
    std::map<Monomial, Complex> terms_;
};

// Numeric value of p at a qubit state.
Complex evaluate_apoly(const APolynomial& p, const AlgebraElement& state);

// Coefficient of x^k in prod_q (1 + x S_site) over the factors of each
// monomial, where S_site flips digit `site` from 0 to 1 and kills factors
// already at 1. k > degree gives the zero polynomial.
APolynomial apply_raising(const APolynomial& p, int site, int k);

// Sets digit `site` of every factor to 0.
APolynomial apply_lowering(const APolynomial& p, int site);

}  // namespace qinv
