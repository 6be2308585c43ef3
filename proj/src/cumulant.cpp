#include "qinv/cumulant.hpp"

#include <algorithm>

#include "qinv/error.hpp"

namespace qinv {

CumulantTable cumulants(const AlgebraElement& state, const AlgebraOptions& options) {
    const AlgebraElement log_state = algebra_log(state, options);
    const auto c = log_state.coefficients();
    return CumulantTable{state.sites(), state.dim(), std::vector<Complex>(c.begin(), c.end())};
}

APolynomial cumulant_poly(const MultiIndex& index) {
    if (index.dim() != 2) throw UnsupportedDimension("cumulant polynomials are defined for bit indices");
    const int n = index.sites();
    const std::vector<int> ones = index.support();
    const int theta = static_cast<int>(ones.size());
    if (theta == 0) throw DomainError("cumulant polynomial of the all-zero index is undefined");

    APolynomial p(n, theta);
    if (theta == 1) {
        p.add_term({site_bit(ones.front(), n)}, 1.0);
        return p;
    }

    std::vector<double> signed_factorial(static_cast<std::size_t>(theta) + 1);
    double f = 1.0;
    for (int k = 1; k <= theta; ++k) {
        signed_factorial[static_cast<std::size_t>(k)] = ((k - 1) % 2 == 0 ? 1.0 : -1.0) * f;
        f *= k;
    }

    for_each_rgs(theta, [&](const std::vector<int>& rgs) {
        const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        Monomial factors(static_cast<std::size_t>(theta - blocks), 0u);
        std::vector<std::uint32_t> block_index(static_cast<std::size_t>(blocks), 0u);
        for (int e = 0; e < theta; ++e) {
            block_index[static_cast<std::size_t>(rgs[static_cast<std::size_t>(e)])] |=
                site_bit(ones[static_cast<std::size_t>(e)], n);
        }
        factors.insert(factors.end(), block_index.begin(), block_index.end());
        p.add_term(std::move(factors), signed_factorial[static_cast<std::size_t>(blocks)]);
    });
    return p;
}

bool splits_partition(const MultiIndex& index, const SetPartition& pi) {
    if (index.sites() != pi.elements()) throw ShapeError("index length differs from partition size");
    int first_block = -1;
    for (int site : index.support()) {
        const int b = pi.block_of(site);
        if (first_block == -1) first_block = b;
        else if (b != first_block) return true;
    }
    return false;
}

DimensionCounts separability_dimension_counts(int n, int d, const SetPartition& pi) {
    if (pi.elements() != n) throw ShapeError("partition does not cover n sites");
    auto ipow = [](long long base, std::size_t e) {
        long long r = 1;
        for (std::size_t i = 0; i < e; ++i) r *= base;
        return r;
    };
    DimensionCounts counts;
    const long long total = ipow(d, static_cast<std::size_t>(n));
    counts.splitting_indices = total - 1;
    for (const auto& block : pi.blocks()) {
        const long long local = ipow(d, block.size());
        counts.separable_dimension += 2 * local - 2;
        counts.splitting_indices -= local - 1;
    }
    counts.identity_holds = counts.separable_dimension == (2 * total - 2) - 2 * counts.splitting_indices;
    return counts;
}

}  // namespace qinv
