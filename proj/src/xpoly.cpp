#include "qinv/xpoly.hpp"

#include <string>

#include "qinv/error.hpp"

namespace qinv {

XPolynomial::XPolynomial(int n) : n_(n) {
    if (n < 1) throw DomainError("XPolynomial needs at least one site");
}

XPolynomial XPolynomial::constant(int n, Complex c) {
    XPolynomial p(n);
    p.add_term(Exponents(static_cast<std::size_t>(kVarsPerSite * n), 0), c);
    return p;
}

void XPolynomial::add_term(Exponents exps, Complex c) {
    if (exps.size() != static_cast<std::size_t>(kVarsPerSite * n_)) {
        throw ShapeError("exponent table has the wrong length");
    }
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(std::move(exps), c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) terms_.erase(it);
    }
}

Complex XPolynomial::coefficient(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Complex{} : it->second;
}

std::vector<int> XPolynomial::site_degrees() const {
    std::vector<int> degrees;
    for (const auto& [exps, c] : terms_) {
        std::vector<int> here(static_cast<std::size_t>(n_), 0);
        for (int j = 0; j < n_; ++j) {
            for (int v = 0; v < kVarsPerSite; ++v) {
                here[static_cast<std::size_t>(j)] += exps[static_cast<std::size_t>(kVarsPerSite * j + v)];
            }
        }
        if (degrees.empty()) {
            degrees = std::move(here);
        } else if (degrees != here) {
            throw DomainError("covariant is not homogeneous per site");
        }
    }
    if (degrees.empty()) degrees.assign(static_cast<std::size_t>(n_), 0);
    return degrees;
}

bool XPolynomial::is_site_homogeneous() const {
    try {
        site_degrees();
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

XPolynomial operator*(const XPolynomial& a, const XPolynomial& b) {
    if (a.n_ != b.n_) throw ShapeError("XPolynomial site counts differ");
    XPolynomial out(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + eb[i]);
            out.add_term(std::move(e), ca * cb);
        }
    }
    return out;
}

Exponents x_exponents(const std::vector<std::pair<int, int>>& per_site) {
    Exponents e(per_site.size() * kVarsPerSite, 0);
    for (std::size_t j = 0; j < per_site.size(); ++j) {
        e[kVarsPerSite * j + X0] = static_cast<std::uint16_t>(per_site[j].first);
        e[kVarsPerSite * j + X1] = static_cast<std::uint16_t>(per_site[j].second);
    }
    return e;
}

}  // namespace qinv
