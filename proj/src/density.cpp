#include "qinv/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "qinv/error.hpp"
#include "qinv/partition.hpp"

namespace qinv {

namespace {

// Bits of `full` at `sites` (ascending) packed big-endian into a |sites|-qubit index.
std::size_t gather(std::size_t full, std::span<const int> sites, int n) {
    std::size_t out = 0;
    for (int s : sites) out = (out << 1) | ((full >> (n - 1 - s)) & 1u);
    return out;
}

// Ryser's formula for the permanent of a k x k matrix.
Complex permanent(const Eigen::MatrixXcd& a) {
    const auto k = static_cast<int>(a.rows());
    Complex total{};
    for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << k); ++subset) {
        Complex prod = 1.0;
        for (int i = 0; i < k; ++i) {
            Complex row{};
            for (int j = 0; j < k; ++j) {
                if (subset & (std::uint32_t{1} << j)) row += a(i, j);
            }
            prod *= row;
        }
        const int bits = std::popcount(subset);
        total += ((k - bits) % 2 == 0 ? 1.0 : -1.0) * prod;
    }
    return total;
}

}  // namespace

DensityMatrix::DensityMatrix(int n, Eigen::MatrixXcd entries) : n_(n), m_(std::move(entries)) {
    if (n < 1 || n > 12) throw DomainError("density matrices support 1..12 qubits");
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (m_.rows() != dim || m_.cols() != dim) {
        throw ShapeError("density matrix must be " + std::to_string(dim) + " x " + std::to_string(dim));
    }
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw DomainError("density matrix is not Hermitian");
    }
}

DensityMatrix DensityMatrix::from_pure(const AlgebraElement& state) {
    if (state.dim() != 2) throw UnsupportedDimension("density matrices are built for qubit states");
    const auto c = state.coefficients();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = c[i];
    return DensityMatrix(state.sites(), v * v.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const int n = rho.sites();
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty()) throw DomainError("partial_trace: keep set is empty");
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.front() < 0 || kept.back() >= n) {
        throw DomainError("partial_trace: invalid site in keep set");
    }
    std::vector<int> traced;
    for (int s = 0; s < n; ++s) {
        if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
    }
    const int m = static_cast<int>(kept.size());
    const std::size_t kept_dim = std::size_t{1} << m;
    const std::size_t traced_dim = std::size_t{1} << traced.size();

    // full[s * traced_dim + t] = register index with kept bits s and traced bits t.
    std::vector<std::size_t> full(kept_dim * traced_dim);
    for (std::size_t s = 0; s < kept_dim; ++s) {
        for (std::size_t t = 0; t < traced_dim; ++t) {
            std::size_t v = 0;
            for (int j = 0; j < m; ++j) {
                if ((s >> (m - 1 - j)) & 1u) v |= std::size_t{1} << (n - 1 - kept[static_cast<std::size_t>(j)]);
            }
            const int tn = static_cast<int>(traced.size());
            for (int j = 0; j < tn; ++j) {
                if ((t >> (tn - 1 - j)) & 1u) v |= std::size_t{1} << (n - 1 - traced[static_cast<std::size_t>(j)]);
            }
            full[s * traced_dim + t] = v;
        }
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept_dim),
                                                  static_cast<Eigen::Index>(kept_dim));
    for (std::size_t a = 0; a < kept_dim; ++a) {
        for (std::size_t b = 0; b < kept_dim; ++b) {
            Complex acc{};
            for (std::size_t t = 0; t < traced_dim; ++t) {
                acc += rho(static_cast<Eigen::Index>(full[a * traced_dim + t]),
                           static_cast<Eigen::Index>(full[b * traced_dim + t]));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    return DensityMatrix(m, std::move(out));
}

double mixed_hatI(const DensityMatrix& rho, const InvariantIndex& index) {
    if (index.sites() != rho.sites()) {
        throw ShapeError("index over " + std::to_string(index.sites()) + " sites applied to a " +
                         std::to_string(rho.sites()) + "-qubit density matrix");
    }
    if (index.theta() == 1) return rho.trace().real();

    const int theta = index.theta();
    double factorial = 1.0;
    for (int k = 2; k <= theta; ++k) factorial *= k;

    Eigen::MatrixXcd block(theta, theta);
    double total = 0.0;
    for (const auto& term : closed_form(index).terms()) {
        Complex acc{};
        for (const auto& [rows, c_row] : term.poly.terms()) {
            for (const auto& [cols, c_col] : term.poly.terms()) {
                for (int r = 0; r < theta; ++r) {
                    for (int s = 0; s < theta; ++s) {
                        block(r, s) = rho(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)]),
                                          static_cast<Eigen::Index>(cols[static_cast<std::size_t>(s)]));
                    }
                }
                acc += c_row * std::conj(c_col) * permanent(block);
            }
        }
        total += term.weight * acc.real();
    }
    return std::max(0.0, total / factorial);
}

Eigen::MatrixXcd zhou_cumulant_operator(const DensityMatrix& rho) {
    const int n = rho.sites();
    const std::size_t dim = std::size_t{1} << n;
    const auto edim = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(edim, edim);

    std::map<std::vector<int>, Eigen::MatrixXcd> marginals;
    auto marginal = [&](const std::vector<int>& block) -> const Eigen::MatrixXcd& {
        auto it = marginals.find(block);
        if (it == marginals.end()) it = marginals.emplace(block, partial_trace(rho, block).matrix()).first;
        return it->second;
    };

    std::vector<double> weight(static_cast<std::size_t>(n) + 1);
    double f = 1.0;
    for (int k = 1; k <= n; ++k) {
        weight[static_cast<std::size_t>(k)] = ((k - 1) % 2 == 0 ? 1.0 : -1.0) * f;
        f *= k;
    }

    for (const SetPartition& pi : enumerate_partitions(n)) {
        const double coef = weight[pi.size()];
        std::vector<const Eigen::MatrixXcd*> factors;
        std::vector<std::vector<std::size_t>> local(pi.size(), std::vector<std::size_t>(dim));
        for (std::size_t b = 0; b < pi.size(); ++b) {
            factors.push_back(&marginal(pi.blocks()[b]));
            for (std::size_t i = 0; i < dim; ++i) local[b][i] = gather(i, pi.blocks()[b], n);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                Complex prod = coef;
                for (std::size_t b = 0; b < pi.size(); ++b) {
                    prod *= (*factors[b])(static_cast<Eigen::Index>(local[b][i]),
                                          static_cast<Eigen::Index>(local[b][j]));
                }
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += prod;
            }
        }
    }
    const double scale = std::max(1.0, out.cwiseAbs().maxCoeff());
    if ((out - out.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw Error("cumulant operator is not Hermitian");
    }
    return out;
}

double trace_norm(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    double total = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = std::abs(solver.eigenvalues()(i));
        if (lambda >= 1e-12) total += lambda;
    }
    return total;
}

double zhou_M(const AlgebraElement& state, const InvariantIndex& index) {
    if (state.dim() != 2) throw UnsupportedDimension("zhou_M requires a qubit state");
    if (index.sites() != state.sites()) throw ShapeError("index length differs from site count");
    if (index.theta() < 2) throw DomainError("zhou_M needs at least two kept sites");
    std::vector<int> keep;
    for (int s = 0; s < index.sites(); ++s) {
        if (index[s]) keep.push_back(s);
    }
    const DensityMatrix reduced = partial_trace(DensityMatrix::from_pure(state), keep);
    return 0.5 * trace_norm(zhou_cumulant_operator(reduced));
}

}  // namespace qinv
