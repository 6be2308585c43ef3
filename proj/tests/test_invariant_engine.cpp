#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qinv/cumulant.hpp"
#include "qinv/error.hpp"
#include "qinv/haar.hpp"
#include "qinv/invariants.hpp"
#include "qinv/state_io.hpp"

using namespace qinv;

namespace {

double I(const AlgebraElement& psi, const char* bits) { return invariant_I(psi, InvariantIndex::parse(bits)); }

// Permutes sites: site k of the input becomes site perm[k].
AlgebraElement permute_sites(const AlgebraElement& psi, const std::vector<int>& perm) {
    const int n = psi.sites();
    std::vector<Complex> out(psi.size());
    for (std::size_t v = 0; v < psi.size(); ++v) {
        std::size_t w = 0;
        for (int k = 0; k < n; ++k) {
            if (v & site_bit(k, n)) w |= site_bit(perm[static_cast<std::size_t>(k)], n);
        }
        out[w] = psi[v];
    }
    return AlgebraElement(n, 2, std::move(out));
}

}  // namespace

TEST_CASE("index parsing and constants") {
    const InvariantIndex idx = InvariantIndex::parse("1101");
    CHECK(idx.theta() == 3);
    CHECK(idx.degree() == 6);
    CHECK(idx.str() == "1101");
    CHECK(idx.gamma() == doctest::Approx(4.0 * 8.0));
    CHECK(InvariantIndex::parse("100").gamma() == 8.0);
    CHECK_THROWS(InvariantIndex::parse("000"));
    CHECK_THROWS(InvariantIndex::parse("12"));
}

TEST_CASE("named state values") {
    const AlgebraElement bell = generate_state(StateKind::Bell, 2, 0);
    const AlgebraElement ghz = generate_state(StateKind::Ghz, 3, 0);
    CHECK(I(bell, "11") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(I(ghz, "110") == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(I(ghz, "111") == doctest::Approx(0.25).epsilon(1e-12));
    for (double p : {0.1, 0.3, 0.5, 0.8}) {
        AlgebraElement psi(3, 2);
        psi = psi.with(0, std::sqrt(p)).with(7, std::polar(std::sqrt(1.0 - p), 1.1));
        CHECK(std::abs(I(psi, "111") - p * (1.0 - p)) < 1e-12);
    }
    const AlgebraElement r = random_state(4, 3) * Complex{1.7};
    CHECK(std::abs(I(r, "1000") - r.norm_squared()) < 1e-12);
}

TEST_CASE("closed form for the three-qubit 110 invariant") {
    // I110 = |d|^2 + 1/2 |R_{3,1} d|^2 + |R_{3,2} d|^2
    const ClosedForm& cf = closed_form(InvariantIndex::parse("110"));
    std::vector<double> weights;
    for (const auto& t : cf.terms()) weights.push_back(t.weight);
    std::sort(weights.begin(), weights.end());
    CHECK(weights == std::vector<double>{0.5, 1.0, 1.0});
}

TEST_CASE("non-qubit input is rejected") {
    CHECK_THROWS_AS(invariant_I(AlgebraElement::identity(2, 3), InvariantIndex::parse("11")), UnsupportedDimension);
    CHECK_THROWS_AS(invariant_I(AlgebraElement::identity(3, 2), InvariantIndex::parse("11")), ShapeError);
}

TEST_CASE("Sudbery invariants") {
    const AlgebraElement ghz = generate_state(StateKind::Ghz, 3, 0);
    CHECK(sudbery_J(ghz, Sudbery::J1) == doctest::Approx(1.0));
    CHECK(sudbery_J(ghz, Sudbery::J2) == doctest::Approx(0.5));
    CHECK(sudbery_J(ghz, Sudbery::J3) == doctest::Approx(0.5));
    CHECK(sudbery_J(ghz, Sudbery::J4) == doctest::Approx(0.5));
    CHECK(sudbery_J(ghz, Sudbery::J5) == doctest::Approx(0.25));
    const AlgebraElement zero = AlgebraElement::identity(3, 2);
    for (Sudbery j : {Sudbery::J1, Sudbery::J2, Sudbery::J3, Sudbery::J4, Sudbery::J5}) {
        CHECK(sudbery_J(zero, j) == doctest::Approx(1.0));
    }
    CHECK_THROWS(sudbery_J(random_state(2, 1), Sudbery::J1));
    // J2 pairs with the third site.
    const AlgebraElement psi = tensor_product(generate_state(StateKind::Bell, 2, 0), AlgebraElement::identity(1, 2));
    CHECK(sudbery_J(psi, Sudbery::J2) == doctest::Approx(1.0));
    CHECK(sudbery_J(psi, Sudbery::J4) == doctest::Approx(0.5));
}

TEST_CASE("relations between I and J") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        for (const auto& r : check_relations(random_state(3, s))) CHECK(r.residual <= 1e-10);
    }
    const auto ghz = check_relations(generate_state(StateKind::Ghz, 3, 0));
    CHECK(ghz[1].lhs == doctest::Approx(0.5));
    CHECK(ghz[1].residual < 1e-12);
    const auto zero = check_relations(AlgebraElement::identity(3, 2));
    CHECK(std::abs(zero[4].rhs) < 1e-12);
    CHECK(std::abs(zero[4].lhs) < 1e-12);
}

TEST_CASE("families") {
    const CumulantFamily f3 = cumulant_family(3);
    std::vector<std::string> names;
    for (const auto& i : f3.indices) names.push_back(i.str());
    CHECK(names == std::vector<std::string>{"100", "110", "101", "011", "111"});
    CHECK(f3.total_invariants == 6);
    CHECK(cumulant_family(2).indices.size() == 2);
    const CumulantFamily f4 = cumulant_family(4);
    CHECK(f4.indices.size() == 12);
    CHECK(f4.total_invariants == 19);
}

TEST_CASE("invariance under local unitaries and phase") {
    SplitMix64 rng(9);
    for (int n = 2; n <= 4; ++n) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const AlgebraElement psi = random_state(n, 40 + s);
            std::vector<SU2Matrix> gates;
            for (int k = 0; k < n; ++k) gates.push_back(sample_su2(rng));
            const AlgebraElement moved = apply_local_unitaries(psi, gates, std::polar(1.0, 0.4 * s));
            for (const auto& idx : cumulant_family(n).indices) {
                const double a = invariant_I(psi, idx);
                CHECK(std::abs(a - invariant_I(moved, idx)) <= 1e-9 * std::max(1.0, a));
            }
        }
    }
}

TEST_CASE("separable states") {
    const AlgebraElement psi = generate_state(StateKind::Separable, 4, 3, SetPartition::parse("1,3|2,4", 4));
    const double n2 = psi.norm_squared();
    for (const auto& idx : higher_indices(4)) {
        const double value = invariant_I(psi, idx);
        if (splits_partition(idx.multi_index(), SetPartition::parse("1,3|2,4", 4))) {
            CHECK(value <= 1e-12 * std::pow(n2, idx.theta()));
        } else {
            CHECK(value > 1e-6);
        }
    }
    // Padding with |0> leaves the invariant of the factor.
    const AlgebraElement mu = random_state(3, 12);
    const AlgebraElement big = tensor_product(mu, AlgebraElement::identity(1, 2));
    CHECK(std::abs(I(big, "1110") - I(mu, "111")) < 1e-12);
    CHECK(std::abs(I(big, "1010") - I(mu, "101")) < 1e-12);
}

TEST_CASE("degree homogeneity") {
    const AlgebraElement psi = random_state(3, 13);
    const Complex lambda{0.7, -1.2};
    for (const auto& idx : cumulant_family(3).indices) {
        const double expected = std::pow(std::norm(lambda), idx.theta()) * invariant_I(psi, idx);
        CHECK(invariant_I(psi * lambda, idx) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("lower-triangular local action scales d by z^theta") {
    const AlgebraElement psi = random_state(3, 14);
    const Complex w{0.3, 0.2}, z{0.8, -0.5};
    const std::vector<Complex> g{1.0, 0.0, w, z};
    AlgebraElement moved = psi;
    for (int k = 0; k < 3; ++k) moved = apply_local(moved, k, g);
    for (const char* bits : {"110", "101", "111"}) {
        const MultiIndex idx = MultiIndex::parse(bits);
        const APolynomial d = cumulant_poly(idx);
        const Complex before = evaluate_apoly(d, psi);
        CHECK(std::abs(evaluate_apoly(d, moved) - std::pow(z, idx.weight()) * before) < 1e-10);
    }
}

TEST_CASE("site permutations") {
    const AlgebraElement psi = random_state(4, 15);
    const std::vector<int> perm{2, 0, 3, 1};
    const AlgebraElement moved = permute_sites(psi, perm);
    for (const auto& idx : higher_indices(4)) {
        std::vector<int> bits(4);
        for (int k = 0; k < 4; ++k) bits[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = idx[k];
        CHECK(std::abs(invariant_I(moved, InvariantIndex(bits)) - invariant_I(psi, idx)) < 1e-12);
    }
}

TEST_CASE("family evaluation is ordered and thread independent") {
    const AlgebraElement psi = random_state(4, 16);
    const auto indices = cumulant_family(4).indices;
    const InvariantReport a = evaluate_family(psi, indices, 1);
    const InvariantReport b = evaluate_family(psi, indices, 4);
    REQUIRE(a.entries.size() == indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        CHECK(a.entries[i].index == indices[i].str());
        CHECK(a.entries[i].value == b.entries[i].value);
        CHECK(a.entries[i].degree == indices[i].degree());
    }
}

TEST_CASE("negative roundoff is clamped and noted") {
    const InvariantEntry e = make_entry("11", -1e-17, 4, Method::ClosedForm);
    CHECK(e.value == 0.0);
    CHECK(e.note.find("clamped") != std::string::npos);
}

TEST_CASE("jacobian rank") {
    const auto fam3 = cumulant_family(3).indices;
    CHECK(jacobian_rank(fam3, random_state(3, 17)) == 5);
    CHECK(jacobian_rank(cumulant_family(2).indices, random_state(2, 18)) == 2);
    CHECK(jacobian_rank(fam3, AlgebraElement::identity(3, 2)) == 1);
    CHECK_THROWS_AS(jacobian_rank(fam3, random_state(3, 1), 0.0), DomainError);
    CHECK_THROWS_AS(jacobian_rank(fam3, random_state(3, 1), -1e-3), DomainError);
    CHECK_THROWS_AS(jacobian_rank(cumulant_family(5).indices, random_state(5, 1)), DomainError);
}
