#include <doctest.h>

#include <cmath>
#include <set>

#include "qinv/cumulant.hpp"
#include "qinv/error.hpp"
#include "qinv/state_io.hpp"

using namespace qinv;

namespace {

std::uint32_t v(const char* bits) { return static_cast<std::uint32_t>(MultiIndex::parse(bits).linear()); }

APolynomial poly(int n, std::initializer_list<std::pair<std::initializer_list<const char*>, double>> terms) {
    APolynomial p(n);
    for (const auto& [factors, c] : terms) {
        Monomial m;
        for (const char* f : factors) m.push_back(v(f));
        p.add_term(m, c);
    }
    return p;
}

long long bell_number(int m) {
    // Bell triangle.
    std::vector<long long> row{1};
    for (int i = 1; i < m; ++i) {
        std::vector<long long> next{row.back()};
        for (long long x : row) next.push_back(next.back() + x);
        row = next;
    }
    return row.back();
}

}  // namespace

TEST_CASE("partition enumeration") {
    CHECK(enumerate_partitions(1).size() == 1);
    CHECK(enumerate_partitions(3).size() == 5);
    CHECK(enumerate_partitions(5).size() == 52);
    for (int m = 1; m <= 9; ++m) CHECK(static_cast<long long>(enumerate_partitions(m).size()) == bell_number(m));
    const auto all = enumerate_partitions(4);
    std::set<std::string> distinct;
    for (const auto& p : all) distinct.insert(p.str());
    CHECK(distinct.size() == all.size());
    CHECK(all.front().str() == "1,2,3,4");
    CHECK(all.back().str() == "1|2|3|4");
    CHECK_THROWS_AS(enumerate_partitions(0), DomainError);
    CHECK_THROWS_AS(enumerate_partitions(13), DomainError);
}

TEST_CASE("partition parsing") {
    const SetPartition p = SetPartition::parse("3|1,2", 3);
    CHECK(p.str() == "1,2|3");
    CHECK(p.block_of(2) == 1);
    CHECK_THROWS_AS(SetPartition::parse("1,2", 3), ParseError);
    CHECK_THROWS_AS(SetPartition::parse("1,2|2,3", 3), ParseError);
    CHECK_THROWS_AS(SetPartition::parse("1,x|3", 3), ParseError);
}

TEST_CASE("cumulant polynomials") {
    CHECK(cumulant_poly(MultiIndex::parse("11")) == poly(2, {{{"11", "00"}, 1.0}, {{"10", "01"}, -1.0}}));
    CHECK(cumulant_poly(MultiIndex::parse("100")) == poly(3, {{{"100"}, 1.0}}));
    const APolynomial d111 = poly(3, {{{"111", "000", "000"}, 1.0},
                                      {{"000", "110", "001"}, -1.0},
                                      {{"000", "101", "010"}, -1.0},
                                      {{"000", "011", "100"}, -1.0},
                                      {{"100", "010", "001"}, 2.0}});
    CHECK(cumulant_poly(MultiIndex::parse("111")) == d111);
    CHECK(cumulant_poly(MultiIndex::parse("1111")).degree() == 4);
    CHECK_THROWS(cumulant_poly(MultiIndex::parse("000")));
}

TEST_CASE("polynomial evaluation") {
    const AlgebraElement bell = generate_state(StateKind::Bell, 2, 0);
    CHECK(std::abs(evaluate_apoly(cumulant_poly(MultiIndex::parse("11")), bell) - 0.5) < 1e-15);
    CHECK(std::abs(evaluate_apoly(cumulant_poly(MultiIndex::parse("11")), AlgebraElement::identity(2, 2))) == 0.0);
    const AlgebraElement ghz = generate_state(StateKind::Ghz, 3, 0);
    CHECK(std::abs(evaluate_apoly(cumulant_poly(MultiIndex::parse("111")), ghz) - 1.0 / (2.0 * std::sqrt(2.0))) <
          1e-15);
    CHECK_THROWS_AS(evaluate_apoly(cumulant_poly(MultiIndex::parse("11")), ghz), ShapeError);
}

TEST_CASE("homogeneity is enforced") {
    APolynomial p(2);
    p.add_term({v("11"), v("00")}, 1.0);
    CHECK_THROWS(p.add_term({v("11")}, 1.0));
    p.add_term({v("00"), v("11")}, -1.0);
    CHECK(p.is_zero());
}

TEST_CASE("raising operator") {
    const APolynomial d110 = cumulant_poly(MultiIndex::parse("110"));
    CHECK(apply_raising(d110, 2, 0) == d110);
    CHECK(apply_raising(d110, 2, 1) == poly(3, {{{"111", "000"}, 1.0},
                                                 {{"110", "001"}, 1.0},
                                                 {{"101", "010"}, -1.0},
                                                 {{"100", "011"}, -1.0}}));
    CHECK(apply_raising(d110, 2, 2) == poly(3, {{{"111", "001"}, 1.0}, {{"101", "011"}, -1.0}}));
    CHECK(apply_raising(d110, 2, 3).is_zero());
}

TEST_CASE("lowering operator") {
    const APolynomial d110 = cumulant_poly(MultiIndex::parse("110"));
    CHECK(apply_lowering(d110, 2) == d110);
    CHECK(apply_lowering(poly(2, {{{"01", "10"}, 1.0}}), 1) == poly(2, {{{"00", "10"}, 1.0}}));
    const APolynomial l = apply_lowering(d110, 0);
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(std::abs(evaluate_apoly(l, random_state(3, s))) < 1e-15);
}

TEST_CASE("raising to theta or theta-1 at a 1-site gives zero") {
    for (const char* bits : {"11", "110", "111", "1011", "1111"}) {
        const MultiIndex idx = MultiIndex::parse(bits);
        const APolynomial d = cumulant_poly(idx);
        const int theta = idx.weight();
        for (int site : idx.support()) {
            const APolynomial r1 = apply_raising(d, site, theta);
            const APolynomial r2 = apply_raising(d, site, theta - 1);
            for (std::uint64_t s = 0; s < 100; ++s) {
                const AlgebraElement psi = random_state(idx.sites(), s);
                CHECK(std::abs(evaluate_apoly(r1, psi)) <= 1e-10);
                CHECK(std::abs(evaluate_apoly(r2, psi)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("cumulant polynomial matches the algebra log") {
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const AlgebraElement psi = random_state(n, 100 + s);
            const CumulantTable c = cumulants(psi);
            CHECK(std::abs(c.values[0] - std::log(psi.constant())) < 1e-14);
            for (std::size_t v = 1; v < psi.size(); ++v) {
                const MultiIndex idx = MultiIndex::from_linear(v, n, 2);
                const Complex lhs = evaluate_apoly(cumulant_poly(idx), psi);
                CHECK(std::abs(lhs - std::pow(psi.constant(), idx.weight()) * c.at(idx)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("splitting indices") {
    const SetPartition pi = SetPartition::parse("1|2,3", 3);
    CHECK(splits_partition(MultiIndex::parse("110"), pi));
    CHECK_FALSE(splits_partition(MultiIndex::parse("011"), pi));
    CHECK_FALSE(splits_partition(MultiIndex::parse("101"), SetPartition::parse("1,3|2", 3)));
}

TEST_CASE("cumulants vanish on splitting indices of separable states") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto& pi : enumerate_partitions(n)) {
            const AlgebraElement psi = generate_state(StateKind::Separable, n, 7, pi);
            const CumulantTable c = cumulants(psi);
            for (std::size_t v = 1; v < psi.size(); ++v) {
                const MultiIndex idx = MultiIndex::from_linear(v, n, 2);
                if (splits_partition(idx, pi)) CHECK(std::abs(c.at(idx)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("zeroing splitting cumulants gives a separable state") {
    const SetPartition pi = SetPartition::parse("1,3|2", 3);
    const CumulantTable c = cumulants(random_state(3, 11));
    std::vector<Complex> table = c.values;
    for (std::size_t v = 1; v < table.size(); ++v) {
        if (splits_partition(MultiIndex::from_linear(v, 3, 2), pi)) table[v] = 0.0;
    }
    const AlgebraElement psi = algebra_exp(AlgebraElement(3, 2, table));
    // Reshape as (sites 1,3) x (site 2): rank one means every 2x2 minor vanishes.
    auto a = [&](int s1, int s2, int s3) { return psi[static_cast<std::size_t>(4 * s1 + 2 * s2 + s3)]; };
    for (int r = 0; r < 4; ++r) {
        for (int q = 0; q < 4; ++q) {
            const Complex minor = a(r >> 1, 0, r & 1) * a(q >> 1, 1, q & 1) - a(r >> 1, 1, r & 1) * a(q >> 1, 0, q & 1);
            CHECK(std::abs(minor) < 1e-12);
        }
    }
}

TEST_CASE("dimension counts") {
    auto check = [](int n, int d, const char* pi, long long dim, long long split) {
        const DimensionCounts c = separability_dimension_counts(n, d, SetPartition::parse(pi, n));
        CHECK(c.separable_dimension == dim);
        CHECK(c.splitting_indices == split);
        CHECK(c.identity_holds);
    };
    check(3, 2, "1,2|3", 8, 3);
    check(2, 2, "1|2", 4, 1);
    check(1, 2, "1", 2, 0);
    for (int n = 1; n <= 6; ++n) {
        for (const auto& pi : enumerate_partitions(n)) {
            for (int d : {2, 3}) {
                const DimensionCounts c = separability_dimension_counts(n, d, pi);
                long long brute = 0;
                for (std::size_t v = 1; v < table_size(n, d); ++v) {
                    brute += splits_partition(MultiIndex::from_linear(v, n, d), pi) ? 1 : 0;
                }
                CHECK(c.identity_holds);
                CHECK(c.splitting_indices == brute);
            }
        }
    }
}
