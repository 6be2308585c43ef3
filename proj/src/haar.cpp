#include "qinv/haar.hpp"

#include <algorithm>
#include <cmath>

#include "qinv/cumulant.hpp"
#include "qinv/error.hpp"
#include "qinv/parallel.hpp"

namespace qinv {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    SplitMix64 mix(seed ^ (counter * 0xd1b54a32d192ed03ULL));
    mix();
    return mix() ^ counter;
}

double SU2Matrix::unitarity_error() const {
    const Complex a = u * std::conj(u) + v * std::conj(v) - 1.0;
    const Complex b = u * std::conj(w) + v * std::conj(z);
    const Complex c = w * std::conj(w) + z * std::conj(z) - 1.0;
    const Complex det = determinant() - 1.0;
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(det)});
}

AlgebraElement apply_local_unitaries(const AlgebraElement& state, std::span<const SU2Matrix> gates, Complex phase) {
    if (state.dim() != 2) throw UnsupportedDimension("local SU(2) action requires a qubit state");
    if (static_cast<int>(gates.size()) != state.sites()) throw ShapeError("need one SU(2) matrix per site");
    AlgebraElement out = state;
    for (int k = 0; k < state.sites(); ++k) {
        const auto m = gates[static_cast<std::size_t>(k)].row_major();
        out = apply_local(out, k, m);
    }
    return out * phase;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

TwirlEstimate summarize(std::span<const double> values, std::uint64_t seed) {
    TwirlEstimate est;
    est.samples = values.size();
    est.seed = seed;
    if (values.empty()) return est;
    const double count = static_cast<double>(values.size());
    est.mean = pairwise_sum(values) / count;
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double dev = values[i] - est.mean;
            sq[i] = dev * dev;
        }
        const double variance = pairwise_sum(sq) / (count - 1.0);
        est.std_error = std::sqrt(variance / count);
    }
    return est;
}

namespace {

// Flattened polynomial: term t has coefficient coeffs[t] and factors
// factors[t*degree .. (t+1)*degree).
struct FlatPoly {
    int degree = 0;
    std::vector<Complex> coeffs;
    std::vector<std::uint32_t> factors;

    explicit FlatPoly(const APolynomial& p) : degree(p.degree().value_or(0)) {
        for (const auto& [mono, c] : p.terms()) {
            coeffs.push_back(c);
            factors.insert(factors.end(), mono.begin(), mono.end());
        }
    }

    Complex evaluate(const std::vector<Complex>& a) const {
        Complex total{};
        const auto deg = static_cast<std::size_t>(degree);
        for (std::size_t t = 0; t < coeffs.size(); ++t) {
            Complex prod = coeffs[t];
            for (std::size_t q = 0; q < deg; ++q) prod *= a[factors[t * deg + q]];
            total += prod;
        }
        return total;
    }
};

void rotate_in_place(std::vector<Complex>& a, int n, int site, const SU2Matrix& g) {
    const std::size_t stride = std::size_t{1} << (n - 1 - site);
    for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = a[i];
            const Complex a1 = a[i + stride];
            a[i] = g.u * a0 + g.v * a1;
            a[i + stride] = g.w * a0 + g.z * a1;
        }
    }
}

struct TwirlKernel {
    std::vector<Complex> amplitudes;
    int n;
    FlatPoly d;
    double gamma;
    std::uint64_t seed;

    void fill(std::size_t begin, std::size_t end, std::vector<double>& values) const {
        std::vector<Complex> work(amplitudes.size());
        for (std::size_t s = begin; s < end; ++s) {
            SplitMix64 rng(derive_seed(seed, s));
            std::copy(amplitudes.begin(), amplitudes.end(), work.begin());
            for (int k = 0; k < n; ++k) rotate_in_place(work, n, k, sample_su2(rng));
            values[s] = gamma * std::norm(d.evaluate(work));
        }
    }
};

TwirlKernel make_kernel(const AlgebraElement& state, const InvariantIndex& index, std::size_t samples,
                        std::uint64_t seed) {
    if (state.dim() != 2) throw UnsupportedDimension("twirl_estimate requires a qubit state");
    if (index.sites() != state.sites()) throw ShapeError("index length differs from site count");
    if (index.theta() < 2) {
        throw DomainError("twirl_estimate needs theta >= 2; the theta = 1 invariant is the squared norm");
    }
    if (samples < 100) throw DomainError("twirl_estimate needs at least 100 samples");
    const auto c = state.coefficients();
    return TwirlKernel{std::vector<Complex>(c.begin(), c.end()), state.sites(),
                       FlatPoly(cumulant_poly(index.multi_index())), index.gamma(), seed};
}

Complex ipow(Complex base, int e) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Work is split in fixed chunks so the per-sample values never depend on the
// thread count.
constexpr std::size_t kChunk = 1024;

template <class Fill>
void fill_parallel(std::size_t samples, int threads, Fill fill) {
    const std::size_t chunks = (samples + kChunk - 1) / kChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        fill(begin, std::min(samples, begin + kChunk));
    });
}

}  // namespace

TwirlEstimate twirl_estimate(const AlgebraElement& state, const InvariantIndex& index, std::size_t samples,
                             std::uint64_t seed, int threads) {
    const TwirlKernel kernel = make_kernel(state, index, samples, seed);
    std::vector<double> values(samples);
    fill_parallel(samples, threads, [&](std::size_t b, std::size_t e) { kernel.fill(b, e, values); });
    return summarize(values, seed);
}

TwirlEstimate twirl_estimate_serial(const AlgebraElement& state, const InvariantIndex& index, std::size_t samples,
                                    std::uint64_t seed) {
    const TwirlKernel kernel = make_kernel(state, index, samples, seed);
    std::vector<double> values(samples);
    kernel.fill(0, samples, values);
    return summarize(values, seed);
}

TwirlEstimate su2_moment(int p, int q, std::size_t samples, std::uint64_t seed, int threads) {
    if (p < 0 || q < 0) throw DomainError("moment exponents must be non-negative");
    if (samples < 1) throw DomainError("su2_moment needs at least one sample");
    double binom = 1.0;
    for (int i = 1; i <= q; ++i) binom = binom * (p + i) / i;
    std::vector<double> values(samples);
    fill_parallel(samples, threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t s = b; s < e; ++s) {
            SplitMix64 rng(derive_seed(seed, s));
            const SU2Matrix g = sample_su2(rng);
            values[s] = binom * std::pow(std::norm(g.u), p) * std::pow(std::norm(g.v), q);
        }
    });
    return summarize(values, seed);
}

std::array<TwirlEstimate, 2> su2_cross_moment(int a, int b, int c, int e, std::size_t samples, std::uint64_t seed,
                                              int threads) {
    if (a < 0 || b < 0 || c < 0 || e < 0) throw DomainError("moment exponents must be non-negative");
    if (samples < 1) throw DomainError("su2_cross_moment needs at least one sample");
    std::vector<double> re(samples), im(samples);
    fill_parallel(samples, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            SplitMix64 rng(derive_seed(seed, s));
            const SU2Matrix g = sample_su2(rng);
            const Complex val =
                ipow(g.u, a) * ipow(g.v, b) * ipow(std::conj(g.u), c) * ipow(std::conj(g.v), e);
            re[s] = val.real();
            im[s] = val.imag();
        }
    });
    return {summarize(re, seed), summarize(im, seed)};
}

}  // namespace qinv
