#include <doctest.h>

#include <cmath>

#include "qinv/cumulant.hpp"
#include "qinv/error.hpp"
#include "qinv/haar.hpp"
#include "qinv/invariants.hpp"
#include "qinv/state_io.hpp"
#include "qinv/transvectant.hpp"

using namespace qinv;

namespace {

Complex a(const AlgebraElement& psi, const char* bits) { return psi.at(MultiIndex::parse(bits)); }

Exponents xs(std::vector<std::pair<int, int>> per_site) { return x_exponents(per_site); }

Complex displayed_G(const AlgebraElement& p) {
    return a(p, "0000") * a(p, "1111") -
           (a(p, "1000") * a(p, "0111") + a(p, "0100") * a(p, "1011") + a(p, "0010") * a(p, "1101") +
            a(p, "0001") * a(p, "1110")) +
           (a(p, "1100") * a(p, "0011") + a(p, "1010") * a(p, "0101") + a(p, "1001") * a(p, "0110"));
}

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

TEST_CASE("fundamental form") {
    const XPolynomial f0 = fundamental_form(AlgebraElement::identity(2, 2));
    CHECK(f0.size() == 1);
    CHECK(f0.coefficient(xs({{1, 0}, {1, 0}})) == Complex{1.0});

    AlgebraElement bell(2, 2);
    bell = bell.with(0, 1.0).with(3, 1.0);
    const XPolynomial fb = fundamental_form(bell);
    CHECK(fb.size() == 2);
    CHECK(fb.coefficient(xs({{0, 1}, {0, 1}})) == Complex{1.0});

    const AlgebraElement psi = random_state(2, 1);
    const XPolynomial f = fundamental_form(psi);
    CHECK(f.coefficient(xs({{0, 1}, {1, 0}})) == a(psi, "10"));
    CHECK(f.site_degrees() == std::vector<int>{1, 1});
    CHECK_THROWS_AS(fundamental_form(AlgebraElement::identity(2, 3)), UnsupportedDimension);
}

TEST_CASE("transvectant of two-qubit forms") {
    const AlgebraElement psi = random_state(2, 2);
    const XPolynomial f = fundamental_form(psi);
    const XPolynomial p = transvectant(f, f, {1, 1});
    const Complex d11 = a(psi, "00") * a(psi, "11") - a(psi, "10") * a(psi, "01");
    CHECK(p.size() == 1);
    CHECK(std::abs(p.coefficient(xs({{0, 0}, {0, 0}})) - 2.0 * d11) < 1e-15);
    // All-zero mask is the plain product.
    const XPolynomial q = transvectant(f, f, {0, 0});
    const XPolynomial ff = f * f;
    CHECK(q.terms() == ff.terms());
}

TEST_CASE("three-qubit 110 transvectant carries the raising multiplet") {
    const AlgebraElement psi = random_state(3, 3);
    const XPolynomial p = transvectant(fundamental_form(psi), fundamental_form(psi), {1, 1, 0});
    const APolynomial d = cumulant_poly(MultiIndex::parse("110"));
    CHECK(std::abs(p.coefficient(xs({{0, 0}, {0, 0}, {2, 0}})) - 2.0 * evaluate_apoly(d, psi)) < 1e-14);
    CHECK(std::abs(p.coefficient(xs({{0, 0}, {0, 0}, {1, 1}})) -
                   2.0 * evaluate_apoly(apply_raising(d, 2, 1), psi)) < 1e-14);
    CHECK(std::abs(p.coefficient(xs({{0, 0}, {0, 0}, {0, 2}})) -
                   2.0 * evaluate_apoly(apply_raising(d, 2, 2), psi)) < 1e-14);
    CHECK(p.site_degrees() == std::vector<int>{0, 0, 2});
}

TEST_CASE("derivative inner product") {
    CHECK(covariant_norm(XPolynomial::constant(1, {3.0, 4.0})) == doctest::Approx(25.0));
    XPolynomial p(1);
    p.add_term(xs({{1, 1}}), {0.0, 2.0});
    CHECK(covariant_norm(p) == doctest::Approx(4.0));
    XPolynomial q(1);
    q.add_term(xs({{2, 0}}), 1.5);
    CHECK(covariant_norm(q) == doctest::Approx(2.0 * 2.25));
}

TEST_CASE("iota chains") {
    const AlgebraElement psi = random_state(2, 4);
    const Complex d11 = a(psi, "00") * a(psi, "11") - a(psi, "10") * a(psi, "01");
    const XPolynomial i2 = iota_chain(psi, 2);
    CHECK(std::abs(i2.coefficient(xs({{0, 0}, {0, 0}})) - 2.0 * d11) < 1e-15);
    CHECK(iota_chain(random_state(3, 5), 2).site_degrees() == std::vector<int>{0, 0, 2});
    CHECK_THROWS(iota_chain(psi, 1));
    CHECK_THROWS(iota_chain(psi, 3));

    const int pairs[][2] = {{2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {4, 4}};
    for (const auto& [n, k] : pairs) {
        std::vector<int> bits(static_cast<std::size_t>(n), 0);
        std::fill(bits.begin(), bits.begin() + k, 1);
        const InvariantIndex idx(bits);
        const double xi = 4.0 * std::pow(factorial(k - 2), k) * std::pow(factorial(k), n - k);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const AlgebraElement r = random_state(n, 10 * n + k + 100 * s);
            CHECK(covariant_norm(iota_chain(r, k)) / invariant_I(r, idx) == doctest::Approx(xi).epsilon(1e-10));
        }
    }
}

TEST_CASE("hyperdeterminant") {
    CHECK(std::abs(hyperdeterminant(generate_state(StateKind::Ghz, 3, 0)) - Complex{-0.5}) < 1e-12);
    CHECK(std::abs(hyperdeterminant(AlgebraElement::identity(3, 2))) < 1e-15);
    CHECK(std::abs(hyperdeterminant(generate_state(StateKind::W, 3, 0))) < 1e-12);
    CHECK_THROWS(hyperdeterminant(random_state(4, 1)));
    CHECK(family_covariants(generate_state(StateKind::Ghz, 3, 0), CovariantFamily::H, "222") ==
          doctest::Approx(4.0 * 0.25));
}

TEST_CASE("H chain is proportional to |Det|^2") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const AlgebraElement psi = random_state(3, 20 + s);
        const double ratio = family_covariants(psi, CovariantFamily::H, "222") / std::norm(hyperdeterminant(psi));
        CHECK(ratio == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("G family") {
    CHECK(family_covariants(AlgebraElement::identity(4, 2), CovariantFamily::G, "1111") == 0.0);
    const AlgebraElement ghz4 = generate_state(StateKind::Ghz, 4, 0);
    CHECK(family_covariants(ghz4, CovariantFamily::G, "1111") == doctest::Approx(1.0));
    for (std::uint64_t s = 0; s < 5; ++s) {
        const AlgebraElement psi = random_state(4, 30 + s);
        const XPolynomial g = family_covariant(psi, CovariantFamily::G, "1111");
        CHECK(std::abs(g.coefficient(xs({{0, 0}, {0, 0}, {0, 0}, {0, 0}})) - 2.0 * displayed_G(psi)) < 1e-14);
    }
    CHECK(family_patterns(CovariantFamily::G, 4).size() == 7);
    CHECK(family_patterns(CovariantFamily::G, 4).front() == "1111");
    CHECK(family_patterns(CovariantFamily::H, 4).size() == 4);
    CHECK_THROWS_AS(family_covariants(ghz4, CovariantFamily::G, "1110"), DomainError);
    CHECK_THROWS_AS(family_covariants(ghz4, CovariantFamily::G, "111"), ShapeError);
    CHECK_THROWS_AS(family_covariants(ghz4, CovariantFamily::H, "2201"), ParseError);
}

TEST_CASE("H lift on a padded state") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const AlgebraElement psi = random_state(3, 40 + s);
        const AlgebraElement big = tensor_product(psi, AlgebraElement::identity(1, 2));
        const double ratio = family_covariants(big, CovariantFamily::H, "2220") /
                             family_covariants(psi, CovariantFamily::H, "222");
        CHECK(ratio == doctest::Approx(24.0).epsilon(1e-10));
    }
}

TEST_CASE("covariant norms are local-unitary invariant") {
    SplitMix64 rng(50);
    for (std::uint64_t s = 0; s < 3; ++s) {
        const AlgebraElement psi = random_state(4, 51 + s);
        std::vector<SU2Matrix> g;
        for (int k = 0; k < 4; ++k) g.push_back(sample_su2(rng));
        const AlgebraElement moved = apply_local_unitaries(psi, g, std::polar(1.0, 0.3));
        for (const auto& pat : family_patterns(CovariantFamily::G, 4)) {
            const double x = family_covariants(psi, CovariantFamily::G, pat);
            CHECK(std::abs(x - family_covariants(moved, CovariantFamily::G, pat)) < 1e-9 * std::max(1.0, x));
        }
        for (const auto& pat : family_patterns(CovariantFamily::H, 4)) {
            const double x = family_covariants(psi, CovariantFamily::H, pat);
            CHECK(std::abs(x - family_covariants(moved, CovariantFamily::H, pat)) < 1e-9 * std::max(1.0, x));
        }
        const double i3 = covariant_norm(iota_chain(psi, 3));
        CHECK(std::abs(i3 - covariant_norm(iota_chain(moved, 3))) < 1e-9 * std::max(1.0, i3));
    }
}
