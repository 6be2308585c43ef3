#include "qinv/transvectant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qinv/error.hpp"

namespace qinv {

namespace {

std::size_t slot(int site, int var) { return static_cast<std::size_t>(kVarsPerSite * site + var); }

XPolynomial to_y(const XPolynomial& q) {
    XPolynomial out(q.sites());
    for (const auto& [exps, c] : q.terms()) {
        Exponents e = exps;
        for (int j = 0; j < q.sites(); ++j) {
            if (e[slot(j, Y0)] || e[slot(j, Y1)]) throw DomainError("transvectant operand already uses y variables");
            e[slot(j, Y0)] = e[slot(j, X0)];
            e[slot(j, Y1)] = e[slot(j, X1)];
            e[slot(j, X0)] = 0;
            e[slot(j, X1)] = 0;
        }
        out.add_term(std::move(e), c);
    }
    return out;
}

XPolynomial y_to_x(const XPolynomial& p) {
    XPolynomial out(p.sites());
    for (const auto& [exps, c] : p.terms()) {
        Exponents e = exps;
        for (int j = 0; j < p.sites(); ++j) {
            e[slot(j, X0)] = static_cast<std::uint16_t>(e[slot(j, X0)] + e[slot(j, Y0)]);
            e[slot(j, X1)] = static_cast<std::uint16_t>(e[slot(j, X1)] + e[slot(j, Y1)]);
            e[slot(j, Y0)] = 0;
            e[slot(j, Y1)] = 0;
        }
        out.add_term(std::move(e), c);
    }
    return out;
}

// Omega_site = d/dx0 d/dy1 - d/dx1 d/dy0, exact on integer exponents.
XPolynomial omega(const XPolynomial& p, int site) {
    XPolynomial out(p.sites());
    const std::size_t x0 = slot(site, X0), x1 = slot(site, X1), y0 = slot(site, Y0), y1 = slot(site, Y1);
    for (const auto& [exps, c] : p.terms()) {
        if (exps[x0] > 0 && exps[y1] > 0) {
            Exponents e = exps;
            const double f = static_cast<double>(e[x0]) * static_cast<double>(e[y1]);
            --e[x0];
            --e[y1];
            out.add_term(std::move(e), c * f);
        }
        if (exps[x1] > 0 && exps[y0] > 0) {
            Exponents e = exps;
            const double f = static_cast<double>(e[x1]) * static_cast<double>(e[y0]);
            --e[x1];
            --e[y0];
            out.add_term(std::move(e), -c * f);
        }
    }
    return out;
}

std::vector<int> unit_mask(int n, std::initializer_list<int> sites) {
    std::vector<int> mask(static_cast<std::size_t>(n), 0);
    for (int s : sites) mask[static_cast<std::size_t>(s)] = 1;
    return mask;
}

void require_qubits(const AlgebraElement& state) {
    if (state.dim() != 2) throw UnsupportedDimension("covariants are defined for qubit states");
}

}  // namespace

XPolynomial fundamental_form(const AlgebraElement& state) {
    require_qubits(state);
    const int n = state.sites();
    XPolynomial f(n);
    for (std::size_t v = 0; v < state.size(); ++v) {
        Exponents e(static_cast<std::size_t>(kVarsPerSite * n), 0);
        for (int j = 0; j < n; ++j) {
            const bool one = (v >> (n - 1 - j)) & 1u;
            e[slot(j, one ? X1 : X0)] = 1;
        }
        f.add_term(std::move(e), state[v]);
    }
    return f;
}

XPolynomial transvectant(const XPolynomial& p, const XPolynomial& q, const std::vector<int>& mask) {
    if (p.sites() != q.sites()) throw ShapeError("transvectant operands have different site counts");
    if (mask.size() != static_cast<std::size_t>(p.sites())) throw ShapeError("transvectant mask length mismatch");
    XPolynomial product = p * to_y(q);
    for (int j = 0; j < p.sites(); ++j) {
        const int m = mask[static_cast<std::size_t>(j)];
        if (m != 0 && m != 1) throw DomainError("transvectant mask entries must be 0 or 1");
        if (m) product = omega(product, j);
    }
    XPolynomial out = y_to_x(product);
    out.site_degrees();  // throws if per-site homogeneity was lost
    return out;
}

double covariant_norm(const XPolynomial& p) {
    double total = 0.0;
    for (const auto& [exps, c] : p.terms()) {
        double weight = 1.0;
        for (std::uint16_t e : exps) weight *= std::tgamma(static_cast<double>(e) + 1.0);
        total += std::norm(c) * weight;
    }
    return total;
}

XPolynomial iota_chain(const AlgebraElement& state, int k) {
    require_qubits(state);
    const int n = state.sites();
    if (k < 2 || k > n) throw DomainError("iota_chain needs 2 <= k <= n");
    const XPolynomial f = fundamental_form(state);
    XPolynomial chain = transvectant(f, f, unit_mask(n, {0, 1}));
    for (int s = 2; s < k; ++s) chain = transvectant(f, chain, unit_mask(n, {s}));
    return chain;
}

Complex hyperdeterminant(const AlgebraElement& state) {
    require_qubits(state);
    if (state.sites() != 3) throw ShapeError("hyperdeterminant is defined for 3 qubits");
    auto a = [&](int i, int j, int k) { return state[static_cast<std::size_t>((i << 2) | (j << 1) | k)]; };
    auto eps = [](int x, int y) { return x == y ? 0 : (x == 0 ? 1 : -1); };
    Complex total{};
    // Twelve binary summation indices packed into one counter.
    for (int bits = 0; bits < (1 << 12); ++bits) {
        auto b = [&](int pos) { return (bits >> pos) & 1; };
        const int i = b(0), ip = b(1), j = b(2), jp = b(3), k = b(4), kp = b(5);
        const int m = b(6), mp = b(7), nn = b(8), np = b(9), p = b(10), pp = b(11);
        const int sign = eps(i, ip) * eps(j, jp) * eps(k, kp) * eps(m, mp) * eps(nn, np) * eps(p, pp);
        if (sign == 0) continue;
        total += static_cast<double>(sign) * a(i, j, k) * a(ip, jp, m) * a(nn, p, kp) * a(np, pp, mp);
    }
    return total;
}

namespace {

std::vector<int> parse_pattern(CovariantFamily family, std::string_view pattern, int n) {
    if (static_cast<int>(pattern.size()) != n) {
        throw ShapeError("pattern \"" + std::string(pattern) + "\" has length " + std::to_string(pattern.size()) +
                         ", expected " + std::to_string(n));
    }
    const char active = family == CovariantFamily::G ? '1' : '2';
    std::vector<int> sites;
    for (int j = 0; j < n; ++j) {
        const char c = pattern[static_cast<std::size_t>(j)];
        if (c == active) sites.push_back(j);
        else if (c != '0') {
            throw ParseError(std::string("invalid character '") + c + "' in " +
                             (family == CovariantFamily::G ? "G" : "H") + " pattern \"" + std::string(pattern) +
                             "\"");
        }
    }
    if (family == CovariantFamily::G && (sites.size() < 2 || sites.size() % 2 != 0)) {
        throw DomainError("G pattern needs an even number (>= 2) of 1's");
    }
    if (family == CovariantFamily::H && sites.size() != 3) {
        throw DomainError("H pattern needs exactly three 2's");
    }
    return sites;
}

}  // namespace

XPolynomial family_covariant(const AlgebraElement& state, CovariantFamily family, std::string_view pattern) {
    require_qubits(state);
    const int n = state.sites();
    const std::vector<int> sites = parse_pattern(family, pattern, n);
    const XPolynomial f = fundamental_form(state);
    if (family == CovariantFamily::G) {
        std::vector<int> mask(static_cast<std::size_t>(n), 0);
        for (int s : sites) mask[static_cast<std::size_t>(s)] = 1;
        return transvectant(f, f, mask);
    }
    XPolynomial h = transvectant(f, f, unit_mask(n, {sites[0], sites[1]}));
    h = transvectant(f, h, unit_mask(n, {sites[2]}));
    return transvectant(f, h, unit_mask(n, {sites[0], sites[1], sites[2]}));
}

double family_covariants(const AlgebraElement& state, CovariantFamily family, std::string_view pattern) {
    return covariant_norm(family_covariant(state, family, pattern));
}

std::vector<std::string> family_patterns(CovariantFamily family, int n) {
    if (n < 1 || n > 16) throw DomainError("family_patterns supports 1..16 sites");
    std::vector<std::string> out;
    for (std::uint32_t v = (std::uint32_t{1} << n); v-- > 0;) {
        const int ones = std::popcount(v);
        const bool valid = family == CovariantFamily::G ? (ones >= 2 && ones % 2 == 0) : ones == 3;
        if (!valid) continue;
        std::string s;
        for (int j = 0; j < n; ++j) {
            const bool on = (v >> (n - 1 - j)) & 1u;
            s.push_back(on ? (family == CovariantFamily::G ? '1' : '2') : '0');
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace qinv
