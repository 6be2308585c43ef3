#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qinv {

// Basis label i_1 ... i_n of an n-site, local-dimension-d state.
// Site 1 is the most significant digit of the linear (mixed-radix) value.
class MultiIndex {
public:
    MultiIndex(std::vector<int> digits, int d);

    static MultiIndex from_linear(std::size_t value, int n, int d);
    // Digit string such as "0110"; each character must be < d.
    static MultiIndex parse(std::string_view text, int d = 2);

    int sites() const { return static_cast<int>(digits_.size()); }
    int dim() const { return d_; }
    int operator[](int site) const { return digits_[static_cast<std::size_t>(site)]; }
    const std::vector<int>& digits() const { return digits_; }

    std::size_t linear() const;
    // Number of nonzero digits; for bit strings this is theta.
    int weight() const;
    std::vector<int> support() const;
    std::string str() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> digits_;
    int d_;
};

// d^n with overflow guard.
std::size_t table_size(int n, int d);

// Digit of `value` at `site` in base d for an n-site layout.
inline int digit_at(std::size_t value, int site, int n, int d) {
    for (int k = n - 1; k > site; --k) value /= static_cast<std::size_t>(d);
    return static_cast<int>(value % static_cast<std::size_t>(d));
}

// Bit mask for site `site` (0-based) in an n-qubit linear index.
inline std::uint32_t site_bit(int site, int n) {
    return std::uint32_t{1} << (n - 1 - site);
}

}  // namespace qinv
