#pragma once

#include <string_view>
#include <vector>

#include "qinv/algebra.hpp"
#include "qinv/xpoly.hpp"

namespace qinv {

// f = sum a_{i_1...i_n} x^{(1)}_{i_1} ... x^{(n)}_{i_n}
XPolynomial fundamental_form(const AlgebraElement& state);

// (p, q)^mask: q is rewritten in y, multiplied by p, hit with
// Omega_i = d/dx0 d/dy1 - d/dx1 d/dy0 at every site with mask[i] = 1,
// then y -> x. No normalisation constants are applied.
XPolynomial transvectant(const XPolynomial& p, const XPolynomial& q, const std::vector<int>& mask);

// Derivative inner product <p|p> = sum |c|^2 prod_j (exponent)!.
double covariant_norm(const XPolynomial& p);

// iota_{1^k 0^{n-k}} = (f, ... (f, (f,f)^{110..0})^{0010..0} ...)^{0..010^{n-k}}, 2 <= k <= n.
XPolynomial iota_chain(const AlgebraElement& state, int k);

// Cayley hyperdeterminant as the literal epsilon contraction
// a_{ijk} a_{i'j'm} a_{npk'} a_{n'p'm'} eps_{ii'} eps_{jj'} eps_{kk'} eps_{mm'} eps_{nn'} eps_{pp'}.
Complex hyperdeterminant(const AlgebraElement& state);

enum class CovariantFamily { G, H };

// G: pattern of 0/1 with an even number (>= 2) of ones; g = (f,f)^pattern.
// H: pattern of 0/2 with exactly three 2's at sites p1<p2<p3;
//    h = (f,(f,(f,f)^{p1,p2})^{p3})^{p1,p2,p3}, zeros being lifted positions.
XPolynomial family_covariant(const AlgebraElement& state, CovariantFamily family, std::string_view pattern);

// <p|p> of the family covariant.
double family_covariants(const AlgebraElement& state, CovariantFamily family, std::string_view pattern);

// All valid patterns of a family for n sites, in descending string order.
std::vector<std::string> family_patterns(CovariantFamily family, int n);

}  // namespace qinv
