#pragma once

#include <vector>

#include "qinv/algebra.hpp"
#include "qinv/apoly.hpp"
#include "qinv/multi_index.hpp"
#include "qinv/partition.hpp"

namespace qinv {

// Cumulants c_{i_1...i_n}: coefficients of log(psi) in the state algebra.
struct CumulantTable {
    int n = 0;
    int d = 2;
    std::vector<Complex> values;

    Complex at(const MultiIndex& index) const { return values.at(index.linear()); }
};

CumulantTable cumulants(const AlgebraElement& state, const AlgebraOptions& options = {});

// d_{i_1...i_n} = a_{0...0}^theta c_{i_1...i_n} as a degree-theta polynomial:
// sum over partitions pi of the 1-positions S of
// (-1)^{|pi|-1} (|pi|-1)! a_0^{theta-|pi|} prod_j a_{pi_j}.
APolynomial cumulant_poly(const MultiIndex& index);

// True iff the nonzero positions of `index` meet two or more blocks of `pi`.
bool splits_partition(const MultiIndex& index, const SetPartition& pi);

struct DimensionCounts {
    long long separable_dimension = 0;  // d_pi
    long long splitting_indices = 0;    // N_pi
    bool identity_holds = false;        // d_pi == (2 d^n - 2) - 2 N_pi
};

DimensionCounts separability_dimension_counts(int n, int d, const SetPartition& pi);

}  // namespace qinv
