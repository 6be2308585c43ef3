#include "qinv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Dense>

#include "qinv/cumulant.hpp"
#include "qinv/density.hpp"
#include "qinv/error.hpp"
#include "qinv/parallel.hpp"

namespace qinv {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void require_qubits(const AlgebraElement& state, int n) {
    if (state.dim() != 2) throw UnsupportedDimension("invariants are defined for qubit states (d = 2)");
    if (state.sites() != n) {
        throw ShapeError("index over " + std::to_string(n) + " sites applied to a " +
                         std::to_string(state.sites()) + "-site state");
    }
}

}  // namespace

InvariantIndex::InvariantIndex(std::vector<int> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw DomainError("empty invariant index");
    for (int b : bits_) {
        if (b != 0 && b != 1) throw DomainError("invariant index digits must be 0 or 1");
        theta_ += b;
    }
    if (theta_ < 1) throw DomainError("invariant index needs at least one 1");
}

InvariantIndex InvariantIndex::parse(std::string_view text) {
    std::vector<int> bits;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParseError("invariant index \"" + std::string(text) + "\" must be a string of 0s and 1s");
        }
        bits.push_back(c - '0');
    }
    if (bits.empty()) throw ParseError("empty invariant index");
    if (std::find(bits.begin(), bits.end(), 1) == bits.end()) {
        throw ParseError("invariant index \"" + std::string(text) + "\" needs at least one 1");
    }
    return InvariantIndex(std::move(bits));
}

std::string InvariantIndex::str() const {
    std::string s;
    for (int b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
}

double InvariantIndex::gamma() const {
    const int n = sites();
    if (theta_ == 1) return std::ldexp(1.0, n);
    return std::pow(theta_ + 1.0, n - theta_) * std::pow(theta_ - 1.0, theta_);
}

ClosedForm::ClosedForm(const InvariantIndex& index) : index_(index) {
    const int n = index.sites();
    const int theta = index.theta();
    if (theta < 2) throw DomainError("closed form needs at least two 1's in the index");

    terms_.push_back({1.0, cumulant_poly(index.multi_index())});
    for (int site = 0; site < n; ++site) {
        const int top = index[site] == 0 ? theta : theta - 2;
        std::vector<WeightedTerm> next;
        for (const auto& term : terms_) {
            for (int k = 0; k <= top; ++k) {
                APolynomial raised = apply_raising(term.poly, site, k);
                if (raised.is_zero()) continue;
                next.push_back({term.weight / binomial(top, k), std::move(raised)});
            }
        }
        terms_ = std::move(next);
    }
}

double ClosedForm::evaluate(const AlgebraElement& state) const {
    require_qubits(state, index_.sites());
    double total = 0.0;
    for (const auto& term : terms_) total += term.weight * std::norm(term.poly.evaluate(state));
    return total;
}

const ClosedForm& closed_form(const InvariantIndex& index) {
    static std::mutex mutex;
    static std::map<std::vector<int>, std::unique_ptr<const ClosedForm>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(index.bits());
    if (it == cache.end()) it = cache.emplace(index.bits(), std::make_unique<const ClosedForm>(index)).first;
    return *it->second;
}

double invariant_I(const AlgebraElement& state, const InvariantIndex& index) {
    require_qubits(state, index.sites());
    if (index.theta() == 1) return state.norm_squared();
    return std::max(0.0, closed_form(index).evaluate(state));
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed-form";
        case Method::MonteCarlo: return "monte-carlo";
        case Method::Transvectant: return "transvectant";
        case Method::Zhou: return "zhou";
    }
    return "unknown";
}

InvariantEntry make_entry(std::string index, double raw_value, int degree, Method method, std::string note) {
    InvariantEntry e{std::move(index), raw_value, degree, method, std::nullopt, std::move(note)};
    if (raw_value < 0.0) {
        e.value = 0.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "clamped from %.3e", raw_value);
        e.note = e.note.empty() ? buf : e.note + "; " + buf;
    }
    return e;
}

InvariantReport evaluate_family(const AlgebraElement& state, std::span<const InvariantIndex> indices, int threads) {
    // Build expansions serially so workers only read the cache.
    for (const auto& idx : indices) {
        if (idx.theta() >= 2) closed_form(idx);
    }
    InvariantReport report;
    report.entries.resize(indices.size());
    parallel_for(indices.size(), threads, [&](std::size_t i) {
        const InvariantIndex& idx = indices[i];
        const double raw = idx.theta() == 1 ? state.norm_squared() : closed_form(idx).evaluate(state);
        report.entries[i] = make_entry(idx.str(), raw, idx.degree(), Method::ClosedForm);
    });
    return report;
}

std::vector<InvariantIndex> higher_indices(int n) {
    if (n < 2 || n > 20) throw DomainError("cumulant family needs 2 <= n <= 20");
    std::vector<std::vector<int>> all;
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) {
        std::vector<int> bits(static_cast<std::size_t>(n));
        int theta = 0;
        for (int k = 0; k < n; ++k) {
            bits[static_cast<std::size_t>(k)] = (v & site_bit(k, n)) ? 1 : 0;
            theta += bits[static_cast<std::size_t>(k)];
        }
        if (theta >= 2) all.push_back(std::move(bits));
    }
    std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        const int ta = static_cast<int>(std::count(a.begin(), a.end(), 1));
        const int tb = static_cast<int>(std::count(b.begin(), b.end(), 1));
        if (ta != tb) return ta < tb;
        return a > b;
    });
    std::vector<InvariantIndex> out;
    out.reserve(all.size());
    for (auto& bits : all) out.emplace_back(std::move(bits));
    return out;
}

CumulantFamily cumulant_family(int n) {
    CumulantFamily family;
    std::vector<int> first(static_cast<std::size_t>(n), 0);
    if (n < 2) throw DomainError("cumulant family needs n >= 2");
    first[0] = 1;
    family.indices.emplace_back(std::move(first));
    for (auto& idx : higher_indices(n)) family.indices.push_back(std::move(idx));
    if (n >= 3) family.total_invariants = (1LL << (n + 1)) - (3LL * n + 1);
    return family;
}

namespace {

double trace_power(const Eigen::MatrixXcd& m, int power) {
    Eigen::MatrixXcd acc = m;
    for (int p = 1; p < power; ++p) acc = acc * m;
    return acc.trace().real();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

double sudbery_J(const AlgebraElement& state, Sudbery which) {
    require_qubits(state, 3);
    const DensityMatrix rho = DensityMatrix::from_pure(state);
    const std::vector<int> s1{0}, s2{1}, s3{2}, s12{0, 1};
    switch (which) {
        case Sudbery::J1: return state.norm_squared();
        case Sudbery::J2: return trace_power(partial_trace(rho, s3).matrix(), 2);
        case Sudbery::J3: return trace_power(partial_trace(rho, s2).matrix(), 2);
        case Sudbery::J4: return trace_power(partial_trace(rho, s1).matrix(), 2);
        case Sudbery::J5: {
            const Eigen::MatrixXcd r1 = partial_trace(rho, s1).matrix();
            const Eigen::MatrixXcd r2 = partial_trace(rho, s2).matrix();
            const Eigen::MatrixXcd r12 = partial_trace(rho, s12).matrix();
            const double mixed = (kron(r1, r2) * r12).trace().real();
            return 3.0 * mixed - trace_power(r1, 3) - trace_power(r2, 3);
        }
    }
    return 0.0;
}

std::vector<RelationResidual> check_relations(const AlgebraElement& state) {
    require_qubits(state, 3);
    const double j1 = sudbery_J(state, Sudbery::J1);
    const double j2 = sudbery_J(state, Sudbery::J2);
    const double j3 = sudbery_J(state, Sudbery::J3);
    const double j4 = sudbery_J(state, Sudbery::J4);
    const double j5 = sudbery_J(state, Sudbery::J5);
    auto I = [&](const char* bits) { return invariant_I(state, InvariantIndex::parse(bits)); };

    std::vector<RelationResidual> out;
    auto add = [&](std::string name, double lhs, double rhs) {
        out.push_back({std::move(name), lhs, rhs, std::abs(lhs - rhs)});
    };
    add("I100 = J1", I("100"), j1);
    add("4 I110 = J1^2 + J2 - J3 - J4", 4.0 * I("110"), j1 * j1 + j2 - j3 - j4);
    add("4 I101 = J1^2 + J3 - J2 - J4", 4.0 * I("101"), j1 * j1 + j3 - j2 - j4);
    add("4 I011 = J1^2 + J4 - J2 - J3", 4.0 * I("011"), j1 * j1 + j4 - j2 - j3);
    add("6 I111 = 5 J1^3 - 3 J1 (J2 + J3 + J4) + 4 J5", 6.0 * I("111"),
        5.0 * j1 * j1 * j1 - 3.0 * j1 * (j2 + j3 + j4) + 4.0 * j5);
    return out;
}

std::vector<double> jacobian_singular_values(std::span<const InvariantIndex> family, const AlgebraElement& state,
                                             double step) {
    if (!(step > 1e-12) || !std::isfinite(step) || step > 1.0) {
        throw DomainError("finite-difference step must lie in (1e-12, 1]");
    }
    if (family.empty()) throw DomainError("empty invariant family");
    const int n = state.sites();
    if (n > 4) throw DomainError("jacobian_rank supports n <= 4");
    for (const auto& idx : family) require_qubits(state, idx.sites());

    const auto params = static_cast<Eigen::Index>(2 * state.size());
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(family.size()), params);
    for (Eigen::Index p = 0; p < params; ++p) {
        const auto amp = static_cast<std::size_t>(p / 2);
        const Complex delta = (p % 2 == 0) ? Complex{step, 0.0} : Complex{0.0, step};
        const AlgebraElement plus = state.with(amp, state[amp] + delta);
        const AlgebraElement minus = state.with(amp, state[amp] - delta);
        for (std::size_t i = 0; i < family.size(); ++i) {
            const double fp = family[i].theta() == 1 ? plus.norm_squared() : closed_form(family[i]).evaluate(plus);
            const double fm =
                family[i].theta() == 1 ? minus.norm_squared() : closed_form(family[i]).evaluate(minus);
            jac(static_cast<Eigen::Index>(i), p) = (fp - fm) / (2.0 * step);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const Eigen::VectorXd sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

int jacobian_rank(std::span<const InvariantIndex> family, const AlgebraElement& state, double step) {
    const std::vector<double> sv = jacobian_singular_values(family, state, step);
    if (sv.empty() || sv.front() == 0.0) return 0;
    const double cutoff = 1e-7 * sv.front();
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > cutoff; }));
}

}  // namespace qinv
