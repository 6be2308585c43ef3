#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qinv/algebra.hpp"
#include "qinv/invariants.hpp"

namespace qinv {

// Hermitian 2^n x 2^n matrix; rows and columns use the same big-endian
// site order as state amplitudes.
class DensityMatrix {
public:
    DensityMatrix(int n, Eigen::MatrixXcd entries);

    static DensityMatrix from_pure(const AlgebraElement& state);

    int sites() const { return n_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    Complex trace() const { return m_.trace(); }

private:
    int n_;
    Eigen::MatrixXcd m_;
};

// Keeps the listed sites (0-based, any order, stored ascending).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

// Mixed-state form of I_index: each monomial prod a_{i^r} prod conj(a_{j^s})
// becomes (1/theta!) sum_sigma prod_r rho[i^r][j^{sigma(r)}]. theta = 1 gives tr rho.
double mixed_hatI(const DensityMatrix& rho, const InvariantIndex& index);

// rho_c = sum_pi (-1)^{|pi|-1} (|pi|-1)! (x)_j rho_{pi_j}, factors in site order.
Eigen::MatrixXcd zhou_cumulant_operator(const DensityMatrix& rho);

// Sum of |eigenvalues| of a Hermitian matrix; |lambda| < 1e-12 counts as 0.
double trace_norm(const Eigen::MatrixXcd& hermitian);

// 1/2 tr|(tr_{0-sites} |psi><psi|)_c|.
double zhou_M(const AlgebraElement& state, const InvariantIndex& index);

}  // namespace qinv
