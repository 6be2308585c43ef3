#include "qinv/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qinv/error.hpp"

namespace qinv {

namespace {

// Digit table: digits[v * n + k] is the digit of linear index v at site k.
std::vector<int> digit_table(int n, int d) {
    const std::size_t size = table_size(n, d);
    std::vector<int> digits(size * static_cast<std::size_t>(n));
    for (std::size_t v = 0; v < size; ++v) {
        std::size_t rest = v;
        for (int k = n - 1; k >= 0; --k) {
            digits[v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] =
                static_cast<int>(rest % static_cast<std::size_t>(d));
            rest /= static_cast<std::size_t>(d);
        }
    }
    return digits;
}

void check_finite(std::span<const Complex> coeffs) {
    for (const Complex& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw DomainError("algebra element has a non-finite coefficient");
        }
    }
}

void check_invertible(const AlgebraElement& x, const AlgebraOptions& options) {
    const double scale = x.max_abs();
    if (scale == 0.0 || std::abs(x.constant()) < options.singular_threshold * scale) {
        throw SingularError("constant coefficient a_{0...0} vanishes (|a0| = " +
                            std::to_string(std::abs(x.constant())) + ", max|a| = " + std::to_string(scale) +
                            ")");
    }
}

}  // namespace

AlgebraElement::AlgebraElement(int n, int d) : n_(n), d_(d), coeffs_(table_size(n, d)) {}

AlgebraElement::AlgebraElement(int n, int d, std::vector<Complex> coeffs)
    : n_(n), d_(d), coeffs_(std::move(coeffs)) {
    const std::size_t expected = table_size(n, d);
    if (coeffs_.size() != expected) {
        throw ShapeError("coefficient table has " + std::to_string(coeffs_.size()) + " entries, expected " +
                         std::to_string(expected));
    }
    check_finite(coeffs_);
}

AlgebraElement AlgebraElement::identity(int n, int d) {
    AlgebraElement x(n, d);
    x.coeffs_[0] = 1.0;
    return x;
}

AlgebraElement AlgebraElement::basis(const MultiIndex& index) {
    AlgebraElement x(index.sites(), index.dim());
    x.coeffs_[index.linear()] = 1.0;
    return x;
}

Complex AlgebraElement::at(const MultiIndex& index) const {
    if (index.sites() != n_ || index.dim() != d_) throw ShapeError("multi-index shape mismatch");
    return coeffs_[index.linear()];
}

AlgebraElement AlgebraElement::with(std::size_t linear, Complex value) const {
    AlgebraElement copy = *this;
    copy.coeffs_.at(linear) = value;
    return copy;
}

double AlgebraElement::max_abs() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double AlgebraElement::norm_squared() const {
    double s = 0.0;
    for (const Complex& c : coeffs_) s += std::norm(c);
    return s;
}

void AlgebraElement::check_same_shape(const AlgebraElement& rhs) const {
    if (n_ != rhs.n_ || d_ != rhs.d_) {
        throw ShapeError("algebra shape mismatch: (n=" + std::to_string(n_) + ", d=" + std::to_string(d_) +
                         ") vs (n=" + std::to_string(rhs.n_) + ", d=" + std::to_string(rhs.d_) + ")");
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
    check_same_shape(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
    check_same_shape(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
    for (Complex& c : coeffs_) c *= s;
    return *this;
}

AlgebraElement algebra_product(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    if (lhs.sites() != rhs.sites() || lhs.dim() != rhs.dim()) {
        throw ShapeError("algebra_product: shape mismatch");
    }
    const int n = lhs.sites();
    const int d = lhs.dim();
    const std::size_t size = lhs.size();
    std::vector<Complex> out(size);

    if (d == 2) {
        // e_i^2 = 0: only disjoint supports contribute, and u + w = u | w.
        for (std::size_t u = 0; u < size; ++u) {
            const Complex a = lhs[u];
            if (a == Complex{}) continue;
            for (std::size_t w = 0; w < size; ++w) {
                if ((u & w) == 0) out[u | w] += a * rhs[w];
            }
        }
        return AlgebraElement(n, d, std::move(out));
    }

    const std::vector<int> digits = digit_table(n, d);
    const auto nn = static_cast<std::size_t>(n);
    for (std::size_t u = 0; u < size; ++u) {
        const Complex a = lhs[u];
        if (a == Complex{}) continue;
        for (std::size_t w = 0; w < size; ++w) {
            bool vanishes = false;
            for (std::size_t k = 0; k < nn; ++k) {
                if (digits[u * nn + k] + digits[w * nn + k] >= d) {
                    vanishes = true;
                    break;
                }
            }
            // Without carries the digit-wise sum is the integer sum.
            if (!vanishes) out[u + w] += a * rhs[w];
        }
    }
    return AlgebraElement(n, d, std::move(out));
}

AlgebraElement nilpotent_series(const AlgebraElement& x, std::span<const Complex> series) {
    const int n = x.sites();
    const int d = x.dim();
    AlgebraElement result(n, d);
    if (series.empty()) return result;

    const AlgebraElement r = x.with(0, 0.0);
    AlgebraElement power = AlgebraElement::identity(n, d);
    result += power * series[0];
    for (std::size_t k = 1; k < series.size(); ++k) {
        power = algebra_product(power, r);
        result += power * series[k];
    }
    return result;
}

namespace {

std::size_t nilpotency_order(const AlgebraElement& x) {
    // r^{n(d-1)+1} = 0, so terms k = 0..n(d-1) are kept.
    return static_cast<std::size_t>(x.sites()) * static_cast<std::size_t>(x.dim() - 1) + 1;
}

}  // namespace

AlgebraElement algebra_inverse(const AlgebraElement& x, const AlgebraOptions& options) {
    check_invertible(x, options);
    const Complex a = x.constant();
    std::vector<Complex> series(nilpotency_order(x));
    // (a + r)^{-1} = sum_k (-1)^k r^k / a^{k+1}
    Complex term = 1.0 / a;
    for (auto& c : series) {
        c = term;
        term *= -1.0 / a;
    }
    return nilpotent_series(x, series);
}

AlgebraElement algebra_log(const AlgebraElement& x, const AlgebraOptions& options) {
    check_invertible(x, options);
    const Complex a = x.constant();
    std::vector<Complex> series(nilpotency_order(x));
    // log(a + r) = log a + sum_{k>=1} (-1)^{k+1} r^k / (k a^k)
    series[0] = std::log(a);
    Complex inv_power = 1.0;
    for (std::size_t k = 1; k < series.size(); ++k) {
        inv_power /= a;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        series[k] = sign * inv_power / static_cast<double>(k);
    }
    return nilpotent_series(x, series);
}

AlgebraElement algebra_exp(const AlgebraElement& x) {
    std::vector<Complex> series(nilpotency_order(x));
    Complex term = std::exp(x.constant());
    for (std::size_t k = 0; k < series.size(); ++k) {
        series[k] = term;
        term /= static_cast<double>(k + 1);
    }
    return nilpotent_series(x, series);
}

AlgebraElement embed_sites(const AlgebraElement& local, std::span<const int> sites, int n) {
    if (static_cast<int>(sites.size()) != local.sites()) {
        throw ShapeError("embed_sites: site list length differs from element site count");
    }
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int s : sites) {
        if (s < 0 || s >= n || used[static_cast<std::size_t>(s)]) {
            throw DomainError("embed_sites: invalid or repeated site " + std::to_string(s));
        }
        used[static_cast<std::size_t>(s)] = true;
    }
    const int d = local.dim();
    const int k = local.sites();
    std::vector<std::size_t> weight(static_cast<std::size_t>(n));
    std::size_t w = 1;
    for (int site = n - 1; site >= 0; --site) {
        weight[static_cast<std::size_t>(site)] = w;
        w *= static_cast<std::size_t>(d);
    }
    std::vector<Complex> out(table_size(n, d));
    for (std::size_t v = 0; v < local.size(); ++v) {
        std::size_t target = 0;
        for (int j = 0; j < k; ++j) {
            target += static_cast<std::size_t>(digit_at(v, j, k, d)) *
                      weight[static_cast<std::size_t>(sites[static_cast<std::size_t>(j)])];
        }
        out[target] = local[v];
    }
    return AlgebraElement(n, d, std::move(out));
}

AlgebraElement tensor_product(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    if (lhs.dim() != rhs.dim()) throw ShapeError("tensor_product: local dimensions differ");
    std::vector<Complex> out(lhs.size() * rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        for (std::size_t j = 0; j < rhs.size(); ++j) out[i * rhs.size() + j] = lhs[i] * rhs[j];
    }
    return AlgebraElement(lhs.sites() + rhs.sites(), lhs.dim(), std::move(out));
}

AlgebraElement apply_local(const AlgebraElement& x, int site, std::span<const Complex> matrix) {
    const int n = x.sites();
    const int d = x.dim();
    if (site < 0 || site >= n) throw DomainError("apply_local: site out of range");
    if (matrix.size() != static_cast<std::size_t>(d * d)) throw ShapeError("apply_local: matrix must be d x d");

    std::size_t stride = 1;
    for (int k = n - 1; k > site; --k) stride *= static_cast<std::size_t>(d);
    const std::size_t block = stride * static_cast<std::size_t>(d);
    const auto dd = static_cast<std::size_t>(d);

    std::vector<Complex> out(x.size());
    std::vector<Complex> column(dd);
    for (std::size_t outer = 0; outer < x.size(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (std::size_t k = 0; k < dd; ++k) column[k] = x[base + k * stride];
            for (std::size_t j = 0; j < dd; ++j) {
                Complex acc{};
                for (std::size_t k = 0; k < dd; ++k) acc += matrix[j * dd + k] * column[k];
                out[base + j * stride] = acc;
            }
        }
    }
    return AlgebraElement(n, d, std::move(out));
}

double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.sites() != b.sites() || a.dim() != b.dim()) throw ShapeError("max_abs_difference: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace qinv
