#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "qinv/algebra.hpp"
#include "qinv/invariants.hpp"

namespace qinv {

// SplitMix64; small enough to construct once per Monte-Carlo sample.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Seed of sample `counter` under master seed `seed`; independent of how the
// samples are distributed over threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

// [[u, v], [w, z]]
struct SU2Matrix {
    Complex u, v, w, z;

    Complex determinant() const { return u * z - v * w; }
    std::array<Complex, 4> row_major() const { return {u, v, w, z}; }
    // Max deviation of g g^dagger from the identity and of det g from 1.
    double unitarity_error() const;
};

// First row uniform on the unit sphere of C^2 (normalised complex Gaussian
// pair), second row (-conj(v), conj(u)).
template <class URBG>
SU2Matrix sample_su2(URBG& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double re0, im0, re1, im1, r2;
    do {
        re0 = normal(rng);
        im0 = normal(rng);
        re1 = normal(rng);
        im1 = normal(rng);
        r2 = re0 * re0 + im0 * im0 + re1 * re1 + im1 * im1;
    } while (r2 == 0.0);
    const double inv = 1.0 / std::sqrt(r2);
    const Complex u{re0 * inv, im0 * inv};
    const Complex v{re1 * inv, im1 * inv};
    return SU2Matrix{u, v, -std::conj(v), std::conj(u)};
}

// Applies g_k at site k for every site, then multiplies by `phase`.
AlgebraElement apply_local_unitaries(const AlgebraElement& state, std::span<const SU2Matrix> gates,
                                     Complex phase = 1.0);

struct TwirlEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// Sum in a fixed binary tree; bitwise reproducible for a given input.
double pairwise_sum(std::span<const double> values);

// Mean and standard error of the mean from the sample variance.
TwirlEstimate summarize(std::span<const double> values, std::uint64_t seed);

// gamma_{n,theta} * E_g |d(g psi)|^2 over Haar-random g in SU(2)^n.
// Requires theta >= 2 and samples >= 100. threads <= 0 uses the OpenMP default.
TwirlEstimate twirl_estimate(const AlgebraElement& state, const InvariantIndex& index, std::size_t samples,
                             std::uint64_t seed, int threads = 0);

// Single-threaded reference; bitwise identical to twirl_estimate.
TwirlEstimate twirl_estimate_serial(const AlgebraElement& state, const InvariantIndex& index, std::size_t samples,
                                    std::uint64_t seed);

// Estimate of C(p+q, p) E[|u|^{2p} |v|^{2q}], which equals 1/(p+q+1) under Haar measure.
TwirlEstimate su2_moment(int p, int q, std::size_t samples, std::uint64_t seed, int threads = 0);

// Real and imaginary estimates of E[u^a v^b conj(u)^c conj(v)^e].
std::array<TwirlEstimate, 2> su2_cross_moment(int a, int b, int c, int e, std::size_t samples, std::uint64_t seed,
                                              int threads = 0);

}  // namespace qinv
