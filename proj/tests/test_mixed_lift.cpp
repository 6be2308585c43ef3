#include <doctest.h>

#include <cmath>

#include "qinv/density.hpp"
#include "qinv/error.hpp"
#include "qinv/haar.hpp"
#include "qinv/state_io.hpp"

using namespace qinv;

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

Eigen::MatrixXcd reduced(const DensityMatrix& rho, std::vector<int> keep) { return partial_trace(rho, keep).matrix(); }

const InvariantIndex i11 = InvariantIndex::parse("11");
const InvariantIndex i111 = InvariantIndex::parse("111");

}  // namespace

TEST_CASE("density matrix checks") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(DensityMatrix(1, m), DomainError);
    CHECK_THROWS_AS(DensityMatrix(2, Eigen::MatrixXcd::Identity(2, 2)), ShapeError);
    CHECK_THROWS_AS(DensityMatrix::from_pure(AlgebraElement::identity(2, 3)), UnsupportedDimension);
}

TEST_CASE("partial trace") {
    const DensityMatrix bell = DensityMatrix::from_pure(generate_state(StateKind::Bell, 2, 0));
    CHECK((reduced(bell, {0}) - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);

    const DensityMatrix ghz = DensityMatrix::from_pure(generate_state(StateKind::Ghz, 3, 0));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK((reduced(ghz, {0, 1}) - expected).norm() < 1e-15);

    const AlgebraElement psi = random_state(2, 1);
    const DensityMatrix prod = DensityMatrix::from_pure(tensor_product(AlgebraElement::identity(1, 2), psi));
    CHECK((reduced(prod, {1, 2}) - DensityMatrix::from_pure(psi).matrix()).norm() < 1e-15);

    const DensityMatrix r = DensityMatrix::from_pure(random_state(4, 2));
    CHECK(std::abs(partial_trace(r, std::vector<int>{1, 3}).trace() - r.trace()) < 1e-14);
    // Keep order does not matter; storage is ascending.
    CHECK((reduced(r, {3, 1}) - reduced(r, {1, 3})).norm() == 0.0);
    CHECK_THROWS_AS(partial_trace(r, std::vector<int>{}), DomainError);
    CHECK_THROWS_AS(partial_trace(r, std::vector<int>{4}), DomainError);
}

TEST_CASE("mixed form on pure states") {
    const DensityMatrix bell = DensityMatrix::from_pure(generate_state(StateKind::Bell, 2, 0));
    CHECK(mixed_hatI(bell, i11) == doctest::Approx(0.25).epsilon(1e-12));
    for (int n = 2; n <= 4; ++n) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const AlgebraElement psi = random_state(n, 10 + s);
            const DensityMatrix rho = DensityMatrix::from_pure(psi);
            for (const auto& idx : cumulant_family(n).indices) {
                CHECK(std::abs(mixed_hatI(rho, idx) - invariant_I(psi, idx)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("tracing out one zero site reproduces the invariant") {
    const DensityMatrix ghz = DensityMatrix::from_pure(generate_state(StateKind::Ghz, 3, 0));
    CHECK(mixed_hatI(partial_trace(ghz, std::vector<int>{0, 1}), i11) == doctest::Approx(0.125).epsilon(1e-12));
    for (std::uint64_t s = 0; s < 5; ++s) {
        const AlgebraElement psi = random_state(4, 20 + s);
        const DensityMatrix rho = DensityMatrix::from_pure(psi);
        for (const auto& idx : higher_indices(4)) {
            for (int z = 0; z < 4; ++z) {
                if (idx[z] != 0) continue;
                std::vector<int> keep, bits;
                for (int k = 0; k < 4; ++k) {
                    if (k == z) continue;
                    keep.push_back(k);
                    bits.push_back(idx[k]);
                }
                const double lifted = mixed_hatI(partial_trace(rho, keep), InvariantIndex(bits));
                CHECK(std::abs(lifted - invariant_I(psi, idx)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("tracing out two sites at once is not a lift") {
    // Purification of I/4 by two Bell pairs on sites (1,3) and (2,4).
    AlgebraElement purification(4, 2);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) purification = purification.with(8 * a + 4 * b + 2 * a + b, 0.5);
    }
    const DensityMatrix mixed(2, 0.25 * Eigen::MatrixXcd::Identity(4, 4));
    CHECK(mixed_hatI(mixed, i11) == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(invariant_I(purification, InvariantIndex::parse("1100")) < 1e-15);
    // The one-site-at-a-time chain still agrees.
    const DensityMatrix rho = DensityMatrix::from_pure(purification);
    CHECK(mixed_hatI(partial_trace(rho, std::vector<int>{0, 1, 2}), InvariantIndex::parse("110")) < 1e-15);
}

TEST_CASE("cumulant operator") {
    const AlgebraElement a = random_state(1, 30), b = random_state(2, 31);
    const DensityMatrix prod = DensityMatrix::from_pure(tensor_product(a, b));
    CHECK(zhou_cumulant_operator(prod).cwiseAbs().maxCoeff() < 1e-15);

    const DensityMatrix bell = DensityMatrix::from_pure(generate_state(StateKind::Bell, 2, 0));
    CHECK((zhou_cumulant_operator(bell) - (bell.matrix() - 0.25 * Eigen::MatrixXcd::Identity(4, 4))).norm() < 1e-15);

    const DensityMatrix rho = DensityMatrix::from_pure(random_state(3, 32));
    const Eigen::MatrixXcd r1 = reduced(rho, {0}), r2 = reduced(rho, {1}), r3 = reduced(rho, {2});
    const Eigen::MatrixXcd r12 = reduced(rho, {0, 1}), r23 = reduced(rho, {1, 2});
    // rho_2 (x) rho_13 in site order: build from rho_13 with site 2 inserted in the middle.
    const Eigen::MatrixXcd r13 = reduced(rho, {0, 2});
    Eigen::MatrixXcd mid = Eigen::MatrixXcd::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            mid(i, j) = r2((i >> 1) & 1, (j >> 1) & 1) * r13(((i >> 2) << 1) | (i & 1), ((j >> 2) << 1) | (j & 1));
        }
    }
    const Eigen::MatrixXcd expected =
        rho.matrix() - (kron(r1, r23) + mid + kron(r12, r3)) + 2.0 * kron(kron(r1, r2), r3);
    CHECK((zhou_cumulant_operator(rho) - expected).norm() < 1e-14);
}

TEST_CASE("trace norm") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = -0.5;
    m(2, 2) = 1e-13;
    CHECK(trace_norm(m) == doctest::Approx(2.5));
}

TEST_CASE("Zhou M") {
    const AlgebraElement bell = generate_state(StateKind::Bell, 2, 0);
    CHECK(std::abs(zhou_M(bell, i11) - 0.75) < 1e-12);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const AlgebraElement psi = random_state(2, 40 + s);
        const double i = invariant_I(psi, i11);
        CHECK(std::abs(zhou_M(psi, i11) - (i + std::sqrt(i))) <= 1e-8);
    }
    // By hand: GHZ cumulant operator has eigenvalues +-1/4 (twice each) and 0.
    CHECK(std::abs(zhou_M(generate_state(StateKind::Ghz, 3, 0), i111) - 0.5) < 1e-12);
    const AlgebraElement prod = generate_state(StateKind::Separable, 3, 41);
    CHECK(zhou_M(prod, i111) < 1e-10);
    CHECK(zhou_M(prod, InvariantIndex::parse("101")) < 1e-10);
    CHECK_THROWS_AS(zhou_M(bell, InvariantIndex::parse("10")), DomainError);
}

TEST_CASE("Zhou M is invariant under local unitaries") {
    SplitMix64 rng(50);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const AlgebraElement psi = random_state(3, 51 + s);
        std::vector<SU2Matrix> g{sample_su2(rng), sample_su2(rng), sample_su2(rng)};
        const AlgebraElement moved = apply_local_unitaries(psi, g);
        CHECK(std::abs(zhou_M(psi, i111) - zhou_M(moved, i111)) < 1e-9);
        CHECK(std::abs(zhou_M(psi, InvariantIndex::parse("110")) - zhou_M(moved, InvariantIndex::parse("110"))) < 1e-9);
    }
}

TEST_CASE("GHZ family relation holds with the full trace norm") {
    // 6 I sqrt(1 - 4I) + 2 sqrt(I + I^2 - 4 I^3) equals tr|rho_c| = 2M on a|000> + b|111>.
    for (double p : {0.05, 0.2, 0.5, 0.9}) {
        AlgebraElement psi(3, 2);
        psi = psi.with(0, std::sqrt(p)).with(7, std::sqrt(1.0 - p));
        const double i = invariant_I(psi, i111);
        const double rhs = 6.0 * i * std::sqrt(std::max(0.0, 1.0 - 4.0 * i)) + 2.0 * std::sqrt(i + i * i - 4.0 * i * i * i);
        CHECK(std::abs(2.0 * zhou_M(psi, i111) - rhs) < 1e-10);
    }
}
