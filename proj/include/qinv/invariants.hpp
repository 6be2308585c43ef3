#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qinv/algebra.hpp"
#include "qinv/apoly.hpp"
#include "qinv/multi_index.hpp"

namespace qinv {

// Bit string i_1...i_n labelling a cumulant invariant; theta = number of ones.
class InvariantIndex {
public:
    explicit InvariantIndex(std::vector<int> bits);
    static InvariantIndex parse(std::string_view text);

    int sites() const { return static_cast<int>(bits_.size()); }
    int theta() const { return theta_; }
    int degree() const { return 2 * theta_; }
    int operator[](int site) const { return bits_[static_cast<std::size_t>(site)]; }
    const std::vector<int>& bits() const { return bits_; }
    MultiIndex multi_index() const { return MultiIndex(bits_, 2); }
    std::string str() const;

    // gamma_{n,theta} = (theta+1)^{n-theta} (theta-1)^theta, and 2^n for theta = 1.
    double gamma() const;

    friend bool operator==(const InvariantIndex&, const InvariantIndex&) = default;

private:
    std::vector<int> bits_;
    int theta_ = 0;
};

struct WeightedTerm {
    double weight;
    APolynomial poly;
};

// I = sum_t weight_t |poly_t(a)|^2 with poly_t = prod_p R_{p,k_p} d and
// weight_t = prod_p alpha^{i_p}_{k_p}; alpha^0_k = C(theta,k)^{-1} for
// k = 0..theta and alpha^1_k = C(theta-2,k)^{-1} for k = 0..theta-2.
class ClosedForm {
public:
    explicit ClosedForm(const InvariantIndex& index);

    const InvariantIndex& index() const { return index_; }
    const std::vector<WeightedTerm>& terms() const { return terms_; }
    double evaluate(const AlgebraElement& state) const;

private:
    InvariantIndex index_;
    std::vector<WeightedTerm> terms_;
};

// Expansions are built once per index and shared; safe to call concurrently.
const ClosedForm& closed_form(const InvariantIndex& index);

// Twirled cumulant invariant. theta = 1 gives <psi|psi>. Result >= 0.
double invariant_I(const AlgebraElement& state, const InvariantIndex& index);

enum class Method { ClosedForm, MonteCarlo, Transvectant, Zhou };
std::string_view method_name(Method m);

struct InvariantEntry {
    std::string index;
    double value = 0.0;
    int degree = 0;
    Method method = Method::ClosedForm;
    std::optional<double> std_error;
    std::string note;
};

struct InvariantReport {
    std::vector<InvariantEntry> entries;
};

// Clamps roundoff negatives to zero; the raw value is kept in the note.
InvariantEntry make_entry(std::string index, double raw_value, int degree, Method method, std::string note = {});

// Closed-form values for every index; indices may be evaluated concurrently,
// entries come back in input order.
InvariantReport evaluate_family(const AlgebraElement& state, std::span<const InvariantIndex> indices,
                                int threads = 0);

struct CumulantFamily {
    std::vector<InvariantIndex> indices;  // 10..0 followed by all theta >= 2
    std::optional<long long> total_invariants;  // 2^{n+1} - (3n+1), n >= 3
};

CumulantFamily cumulant_family(int n);

// Every index with theta >= 2, ordered by theta then descending bit string.
std::vector<InvariantIndex> higher_indices(int n);

enum class Sudbery { J1, J2, J3, J4, J5 };

// Sudbery's 3-qubit invariants: J1 = <psi|psi>, J2 = tr rho_3^2,
// J3 = tr rho_2^2, J4 = tr rho_1^2,
// J5 = 3 tr[(rho_1 x rho_2) rho_12] - tr rho_1^3 - tr rho_2^3.
double sudbery_J(const AlgebraElement& state, Sudbery which);

struct RelationResidual {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

std::vector<RelationResidual> check_relations(const AlgebraElement& state);

// Central-difference Jacobian of the listed invariants with respect to the
// 2 * 2^n real amplitude parameters; singular values in descending order.
std::vector<double> jacobian_singular_values(std::span<const InvariantIndex> family, const AlgebraElement& state,
                                             double step = 1e-5);

// Number of singular values above 1e-7 times the largest.
int jacobian_rank(std::span<const InvariantIndex> family, const AlgebraElement& state, double step = 1e-5);

}  // namespace qinv
