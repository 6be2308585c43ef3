#include "qinv/multi_index.hpp"

#include <limits>

#include "qinv/error.hpp"

namespace qinv {

MultiIndex::MultiIndex(std::vector<int> digits, int d) : digits_(std::move(digits)), d_(d) {
    if (d < 2) throw DomainError("local dimension must be at least 2");
    for (int digit : digits_) {
        if (digit < 0 || digit >= d) {
            throw DomainError("multi-index digit " + std::to_string(digit) + " outside [0, " +
                              std::to_string(d - 1) + "]");
        }
    }
}

MultiIndex MultiIndex::from_linear(std::size_t value, int n, int d) {
    if (value >= table_size(n, d)) throw DomainError("linear index out of range");
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(k)] = static_cast<int>(value % static_cast<std::size_t>(d));
        value /= static_cast<std::size_t>(d);
    }
    return MultiIndex(std::move(digits), d);
}

MultiIndex MultiIndex::parse(std::string_view text, int d) {
    if (text.empty()) throw ParseError("empty index string");
    std::vector<int> digits;
    digits.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9' || c - '0' >= d) {
            throw ParseError("invalid digit '" + std::string(1, c) + "' in index \"" + std::string(text) +
                             "\"");
        }
        digits.push_back(c - '0');
    }
    return MultiIndex(std::move(digits), d);
}

std::size_t MultiIndex::linear() const {
    std::size_t value = 0;
    for (int digit : digits_) value = value * static_cast<std::size_t>(d_) + static_cast<std::size_t>(digit);
    return value;
}

int MultiIndex::weight() const {
    int w = 0;
    for (int digit : digits_) w += digit != 0;
    return w;
}

std::vector<int> MultiIndex::support() const {
    std::vector<int> out;
    for (int k = 0; k < sites(); ++k) {
        if (digits_[static_cast<std::size_t>(k)] != 0) out.push_back(k);
    }
    return out;
}

std::string MultiIndex::str() const {
    std::string s;
    for (int digit : digits_) s.push_back(static_cast<char>('0' + digit));
    return s;
}

std::size_t table_size(int n, int d) {
    if (n < 0 || d < 2) throw DomainError("invalid table shape");
    std::size_t size = 1;
    for (int k = 0; k < n; ++k) {
        if (size > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(d) / 16) {
            throw DomainError("d^n too large");
        }
        size *= static_cast<std::size_t>(d);
    }
    return size;
}

}  // namespace qinv
