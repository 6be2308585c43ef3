#include "qinv/apoly.hpp"

#include <algorithm>
#include <sstream>

#include "qinv/error.hpp"

namespace qinv {

APolynomial::APolynomial(int n, std::optional<int> degree) : n_(n), degree_(degree) {
    if (n < 1 || n > 31) throw DomainError("APolynomial supports 1..31 qubits");
}

APolynomial APolynomial::amplitude(const MultiIndex& index) {
    if (index.dim() != 2) throw UnsupportedDimension("amplitude polynomials are defined for qubits");
    APolynomial p(index.sites(), 1);
    p.add_term({static_cast<std::uint32_t>(index.linear())}, 1.0);
    return p;
}

void APolynomial::add_term(Monomial factors, Complex c) {
    const int deg = static_cast<int>(factors.size());
    if (degree_ && *degree_ != deg) {
        throw DomainError("inhomogeneous term: degree " + std::to_string(deg) + " in a degree-" +
                          std::to_string(*degree_) + " polynomial");
    }
    const std::uint32_t limit = std::uint32_t{1} << n_;
    for (std::uint32_t f : factors) {
        if (f >= limit) throw DomainError("amplitude index out of range for " + std::to_string(n_) + " qubits");
    }
    degree_ = deg;
    if (c == Complex{}) return;
    std::sort(factors.begin(), factors.end());
    auto [it, inserted] = terms_.try_emplace(std::move(factors), c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) terms_.erase(it);
    }
}

Complex APolynomial::evaluate(const AlgebraElement& state) const {
    if (state.dim() != 2) throw UnsupportedDimension("evaluate_apoly requires a qubit state");
    if (state.sites() != n_) {
        throw ShapeError("polynomial over " + std::to_string(n_) + " qubits evaluated at a " +
                         std::to_string(state.sites()) + "-qubit state");
    }
    Complex total{};
    for (const auto& [mono, c] : terms_) {
        Complex prod = c;
        for (std::uint32_t f : mono) prod *= state[f];
        total += prod;
    }
    return total;
}

std::string APolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        const bool real = c.imag() == 0.0;
        if (real) {
            const double r = c.real();
            if (!first) out << (r < 0 ? " - " : " + ");
            else if (r < 0) out << "-";
            const double mag = std::abs(r);
            if (mag != 1.0) out << mag << "*";
        } else {
            if (!first) out << " + ";
            out << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*";
        }
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (i) out << "*";
            out << "a" << MultiIndex::from_linear(mono[i], n_, 2).str();
        }
        first = false;
    }
    return out.str();
}

APolynomial& APolynomial::operator+=(const APolynomial& rhs) {
    if (rhs.n_ != n_) throw ShapeError("APolynomial site counts differ");
    for (const auto& [mono, c] : rhs.terms_) add_term(mono, c);
    if (!degree_) degree_ = rhs.degree_;
    return *this;
}

APolynomial& APolynomial::operator-=(const APolynomial& rhs) {
    if (rhs.n_ != n_) throw ShapeError("APolynomial site counts differ");
    for (const auto& [mono, c] : rhs.terms_) add_term(mono, -c);
    if (!degree_) degree_ = rhs.degree_;
    return *this;
}

APolynomial& APolynomial::operator*=(Complex s) {
    if (s == Complex{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
}

Complex evaluate_apoly(const APolynomial& p, const AlgebraElement& state) { return p.evaluate(state); }

namespace {

void check_site(const APolynomial& p, int site) {
    if (site < 0 || site >= p.sites()) throw DomainError("site " + std::to_string(site) + " out of range");
}

// Visits all k-subsets of `slots` and emits the monomial with those factors raised.
void raise_subsets(const Monomial& mono, const std::vector<std::size_t>& slots, std::size_t start, int k,
                   std::uint32_t bit, Monomial& scratch, Complex c, APolynomial& out) {
    if (k == 0) {
        out.add_term(scratch, c);
        return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(k) <= slots.size(); ++i) {
        scratch[slots[i]] |= bit;
        raise_subsets(mono, slots, i + 1, k - 1, bit, scratch, c, out);
        scratch[slots[i]] = mono[slots[i]];
    }
}

}  // namespace

APolynomial apply_raising(const APolynomial& p, int site, int k) {
    check_site(p, site);
    if (k < 0) throw DomainError("raising order must be non-negative");
    APolynomial out(p.sites(), p.degree());
    if (k == 0) return p;
    if (p.degree() && k > *p.degree()) return out;
    const std::uint32_t bit = site_bit(site, p.sites());
    for (const auto& [mono, c] : p.terms()) {
        std::vector<std::size_t> slots;
        for (std::size_t q = 0; q < mono.size(); ++q) {
            if ((mono[q] & bit) == 0) slots.push_back(q);
        }
        if (slots.size() < static_cast<std::size_t>(k)) continue;
        Monomial scratch = mono;
        raise_subsets(mono, slots, 0, k, bit, scratch, c, out);
    }
    return out;
}

APolynomial apply_lowering(const APolynomial& p, int site) {
    check_site(p, site);
    const std::uint32_t bit = site_bit(site, p.sites());
    APolynomial out(p.sites(), p.degree());
    for (const auto& [mono, c] : p.terms()) {
        Monomial lowered = mono;
        for (auto& f : lowered) f &= ~bit;
        out.add_term(std::move(lowered), c);
    }
    return out;
}

}  // namespace qinv
