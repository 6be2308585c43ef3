#include "qinv/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "qinv/algebra.hpp"
#include "qinv/cli.hpp"
#include "qinv/cumulant.hpp"
#include "qinv/density.hpp"
#include "qinv/haar.hpp"
#include "qinv/invariants.hpp"
#include "qinv/state_io.hpp"
#include "qinv/transvectant.hpp"

namespace qinv {

namespace {

// Pinned tolerances, one per check.
constexpr double kAlgebraTol = 1e-10;
constexpr double kCumulantTol = 1e-10;
constexpr double kInvarianceTol = 1e-9;
constexpr double kRelationTol = 1e-10;
constexpr double kSeparableTol = 1e-10;
constexpr double kSigmaBand = 5.0;
constexpr double kLiftTol = 1e-10;
constexpr double kRatioSpreadTol = 1e-8;
constexpr double kDetTol = 1e-12;
constexpr double kZhouTol = 1e-8;
constexpr double kZhouProductTol = 1e-10;
constexpr double kZhouBellTol = 1e-10;

constexpr std::size_t kTwirlSamples = 100000;

std::string fmt(const char* format, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

struct Tracker {
    double worst = 0.0;
    bool ok = true;
    void observe(double residual, double tol) {
        if (!(residual <= tol)) ok = false;
        if (!(residual <= worst)) worst = residual;  // NaN sticks
    }
};

// Well-conditioned element: constant near 1, the rest O(1/2).
AlgebraElement random_element(int n, int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> c(table_size(n, d));
    for (auto& v : c) v = Complex{0.5 * g(rng), 0.5 * g(rng)};
    c[0] = Complex{1.0 + 0.3 * g(rng), 0.3 * g(rng)};
    return AlgebraElement(n, d, std::move(c));
}

std::vector<SU2Matrix> random_gates(int n, SplitMix64& rng) {
    std::vector<SU2Matrix> gates;
    for (int k = 0; k < n; ++k) gates.push_back(sample_su2(rng));
    return gates;
}

AlgebraElement ghz3() { return generate_state(StateKind::Ghz, 3, 0); }

CriterionResult make(int id, std::string name, const Tracker& t, double threshold, std::string detail) {
    return CriterionResult{id, std::move(name), t.ok, t.worst, threshold, std::move(detail)};
}

CriterionResult algebra_identities(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tracker t;
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % 5;
        const int d = 2 + (i / 5) % 2;
        const AlgebraElement x = random_element(n, d, rng);
        const AlgebraElement y = random_element(n, d, rng);
        const AlgebraElement one = AlgebraElement::identity(n, d);
        // Residuals are relative to the largest magnitude that enters each
        // identity; products are scaled by the product of their factors.
        auto m = [](const AlgebraElement& a) { return std::max(1.0, a.max_abs()); };
        const AlgebraElement lx = algebra_log(x), ly = algebra_log(y), lxy = algebra_log(algebra_product(x, y));
        const AlgebraElement ex = algebra_exp(x), ey = algebra_exp(y), inv = algebra_inverse(x);
        const AlgebraElement back = algebra_exp(lx);
        t.observe(max_abs_difference(lxy, lx + ly) / std::max({m(lxy), m(lx), m(ly)}), kAlgebraTol);
        t.observe(max_abs_difference(algebra_exp(x + y), algebra_product(ex, ey)) / (m(ex) * m(ey)), kAlgebraTol);
        t.observe(max_abs_difference(algebra_product(x, inv), one) / (m(x) * m(inv)), kAlgebraTol);
        t.observe(max_abs_difference(back, x) / std::max(m(x), m(lx)), kAlgebraTol);
    }
    return make(1, "algebra identities", t, kAlgebraTol, "200 instances, n<=5, d<=3");
}

CriterionResult cumulant_consistency(std::uint64_t seed) {
    Tracker t;
    for (int s = 0; s < 100; ++s) {
        const int n = 1 + s % 4;
        const AlgebraElement psi = random_state(n, derive_seed(seed, s));
        const CumulantTable table = cumulants(psi);
        for (std::size_t v = 1; v < psi.size(); ++v) {
            const MultiIndex idx = MultiIndex::from_linear(v, n, 2);
            const Complex lhs = evaluate_apoly(cumulant_poly(idx), psi);
            const Complex rhs = std::pow(psi.constant(), idx.weight()) * table.values[v];
            t.observe(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), kCumulantTol);
        }
    }
    return make(2, "cumulant consistency", t, kCumulantTol, "100 states, n<=4, all indices");
}

CriterionResult lu_invariance(std::uint64_t seed) {
    Tracker t;
    for (int s = 0; s < 100; ++s) {
        const int n = 2 + s % 3;
        const AlgebraElement psi = random_state(n, derive_seed(seed, 2 * s));
        SplitMix64 rng(derive_seed(seed, 2 * s + 1));
        const auto gates = random_gates(n, rng);
        const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
        const AlgebraElement moved = apply_local_unitaries(psi, gates, std::polar(1.0, phase));
        for (const auto& idx : cumulant_family(n).indices) {
            const double a = invariant_I(psi, idx);
            const double b = invariant_I(moved, idx);
            t.observe(std::abs(a - b) / std::max(1.0, a), kInvarianceTol);
        }
    }
    return make(3, "local-unitary invariance", t, kInvarianceTol, "100 (state, SU(2)^n x U(1)) pairs, n<=4");
}

CriterionResult sudbery_relations(std::uint64_t seed) {
    Tracker t;
    for (int s = 0; s < 100; ++s) {
        for (const auto& r : check_relations(random_state(3, derive_seed(seed, s)))) t.observe(r.residual, kRelationTol);
    }
    const AlgebraElement ghz = ghz3();
    const double i110 = invariant_I(ghz, InvariantIndex::parse("110"));
    const double i111 = invariant_I(ghz, InvariantIndex::parse("111"));
    t.observe(std::abs(i110 - 0.125), kRelationTol);
    t.observe(std::abs(i111 - 0.25), kRelationTol);
    return make(4, "Sudbery relations", t, kRelationTol,
                "100 random states; GHZ I110=" + fmt("%.12g", i110) + " I111=" + fmt("%.12g", i111));
}

CriterionResult separability(std::uint64_t seed) {
    std::vector<SetPartition> partitions;
    for (int n = 2; n <= 4; ++n) {
        for (auto& p : enumerate_partitions(n)) partitions.push_back(std::move(p));
    }
    Tracker t;
    long long checked = 0;
    for (int s = 0; s < 50; ++s) {
        const SetPartition& pi = partitions[static_cast<std::size_t>(s) % partitions.size()];
        const int n = pi.elements();
        const AlgebraElement psi = generate_state(StateKind::Separable, n, derive_seed(seed, s), pi);
        const double norm2 = psi.norm_squared();
        for (const auto& idx : higher_indices(n)) {
            if (!splits_partition(idx.multi_index(), pi)) continue;
            t.observe(invariant_I(psi, idx) / std::pow(norm2, idx.theta()), kSeparableTol);
            ++checked;
        }
    }
    // Factor matching: mu (x) |0...0> against mu.
    for (int k = 2; k <= 4; ++k) {
        for (int pad = 1; k + pad <= 5; ++pad) {
            const AlgebraElement mu = random_state(k, derive_seed(seed, 1000 + 10 * k + pad));
            const AlgebraElement zero = AlgebraElement::identity(pad, 2);
            const AlgebraElement big = tensor_product(mu, zero);
            for (const auto& idx : higher_indices(k)) {
                std::vector<int> bits = idx.bits();
                bits.resize(static_cast<std::size_t>(k + pad), 0);
                const double lifted = invariant_I(big, InvariantIndex(bits));
                t.observe(std::abs(lifted - invariant_I(mu, idx)), kSeparableTol);
                ++checked;
            }
        }
    }
    return make(5, "separability criterion", t, kSeparableTol,
                "50 separable states over " + std::to_string(partitions.size()) + " partitions, " +
                    std::to_string(checked) + " checks");
}

CriterionResult monte_carlo(const AcceptanceOptions& o) {
    Tracker t;  // measured: worst |z| score
    const std::size_t samples = o.quick ? kTwirlSamples / 10 : kTwirlSamples;
    auto z_score = [](double mean, double se, double exact) {
        return std::abs(mean - exact) / std::max(se, 1e-15);
    };
    int moments = 0;
    for (int p = 0; p <= 6; ++p) {
        for (int q = 0; p + q <= 6; ++q) {
            if (p + q == 0) continue;
            const TwirlEstimate e = su2_moment(p, q, samples, derive_seed(o.seed, 100 + 7 * p + q), o.threads);
            t.observe(z_score(e.mean, e.std_error, 1.0 / (p + q + 1)), kSigmaBand);
            ++moments;
        }
    }
    // Mismatched weights integrate to zero.
    const int cross[][4] = {{1, 1, 2, 0}, {1, 0, 0, 1}, {2, 0, 0, 0}, {1, 1, 0, 0}, {2, 1, 1, 0}};
    for (const auto& c : cross) {
        const auto e = su2_cross_moment(c[0], c[1], c[2], c[3], samples, derive_seed(o.seed, 200 + c[0] + 4 * c[2]),
                                        o.threads);
        t.observe(z_score(e[0].mean, e[0].std_error, 0.0), kSigmaBand);
        t.observe(z_score(e[1].mean, e[1].std_error, 0.0), kSigmaBand);
    }
    const int states = o.quick ? 3 : 20;
    int estimates = 0;
    for (int n = 2; n <= 4; ++n) {
        for (int s = 0; s < states; ++s) {
            const AlgebraElement psi = random_state(n, derive_seed(o.seed, 300 + 100 * n + s));
            for (const auto& idx : higher_indices(n)) {
                const TwirlEstimate e =
                    twirl_estimate(psi, idx, samples, derive_seed(o.seed, 10000 * n + 100 * s + estimates % 97),
                                   o.threads);
                t.observe(z_score(e.mean, e.std_error, invariant_I(psi, idx)), kSigmaBand);
                ++estimates;
            }
        }
    }
    return make(6, "Monte-Carlo oracle", t, kSigmaBand,
                std::to_string(moments) + " moments, " + std::to_string(estimates) + " twirl estimates at " +
                    std::to_string(samples) + " samples (measured = worst z)");
}

CriterionResult lift_consistency(std::uint64_t seed) {
    // single: one zero site traced out; multi: two or more at once.
    Tracker pure, single, multi;
    long long n_single = 0, n_multi = 0;
    for (int n = 3; n <= 4; ++n) {
        for (int s = 0; s < 5; ++s) {
            const AlgebraElement psi = random_state(n, derive_seed(seed, 50 * n + s));
            const DensityMatrix rho = DensityMatrix::from_pure(psi);
            for (const auto& idx : higher_indices(n)) {
                const double exact = invariant_I(psi, idx);
                pure.observe(std::abs(mixed_hatI(rho, idx) - exact), kLiftTol);
                std::vector<int> zeros;
                for (int k = 0; k < n; ++k) {
                    if (idx[k] == 0) zeros.push_back(k);
                }
                for (std::uint32_t m = 1; m < (1u << zeros.size()); ++m) {
                    std::vector<int> keep, bits;
                    for (int k = 0; k < n; ++k) {
                        const auto it = std::find(zeros.begin(), zeros.end(), k);
                        const bool traced = it != zeros.end() && (m >> (it - zeros.begin())) & 1u;
                        if (!traced) {
                            keep.push_back(k);
                            bits.push_back(idx[k]);
                        }
                    }
                    const double err = std::abs(mixed_hatI(partial_trace(rho, keep), InvariantIndex(bits)) - exact);
                    if (std::popcount(m) == 1) {
                        single.observe(err, kLiftTol);
                        ++n_single;
                    } else {
                        multi.observe(err, kLiftTol);
                        ++n_multi;
                    }
                }
            }
        }
    }
    Tracker t;
    for (const Tracker* sub : {&pure, &single, &multi}) {
        t.observe(sub->worst, kLiftTol);
    }
    auto flag = [](const Tracker& x) { return x.ok ? std::string("ok") : std::string("FAIL"); };
    return make(7, "lift/trace consistency", t, kLiftTol,
                "pure " + flag(pure) + fmt(" %.1e", pure.worst) + "; one site traced " + flag(single) +
                    fmt(" %.1e", single.worst) + " (" + std::to_string(n_single) + "); several sites traced " +
                    flag(multi) + fmt(" %.1e", multi.worst) + " (" + std::to_string(n_multi) + "); n<=4");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

CriterionResult transvectant_xi(const AcceptanceOptions& o) {
    Tracker t;
    const int pairs[][2] = {{2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {4, 4}};
    const int states = o.quick ? 10 : 50;
    std::string detail;
    for (const auto& [n, k] : pairs) {
        std::vector<int> bits(static_cast<std::size_t>(n), 0);
        std::fill(bits.begin(), bits.begin() + k, 1);
        const InvariantIndex idx(bits);
        double lo = INFINITY, hi = -INFINITY, sum = 0.0;
        for (int s = 0; s < states; ++s) {
            const AlgebraElement psi = random_state(n, derive_seed(o.seed, 1000 * n + 100 * k + s));
            const double ratio = covariant_norm(iota_chain(psi, k)) / invariant_I(psi, idx);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            sum += ratio;
        }
        const double mean = sum / states;
        const double xi = 4.0 * std::pow(factorial(k - 2), k) * std::pow(factorial(k), n - k);
        t.observe((hi - lo) / mean, kRatioSpreadTol);
        t.observe(std::abs(mean - xi) / xi, kRatioSpreadTol);
        detail += (detail.empty() ? "" : " ") + std::string("(") + std::to_string(n) + "," + std::to_string(k) +
                  "):" + fmt("%.10g", mean);
    }
    return make(8, "transvectant xi", t, kRatioSpreadTol, "ratios " + detail);
}

CriterionResult hyperdeterminant_check(const AcceptanceOptions& o) {
    Tracker t;
    const Complex det_ghz = hyperdeterminant(ghz3());
    const Complex det_w = hyperdeterminant(generate_state(StateKind::W, 3, 0));
    t.observe(std::abs(det_ghz - Complex{-0.5, 0.0}), kDetTol);
    t.observe(std::abs(det_w), kDetTol);
    const int states = o.quick ? 10 : 50;
    double lo = INFINITY, hi = -INFINITY, sum = 0.0;
    for (int s = 0; s < states; ++s) {
        const AlgebraElement psi = random_state(3, derive_seed(o.seed, 4000 + s));
        const double ratio = family_covariants(psi, CovariantFamily::H, "222") / std::norm(hyperdeterminant(psi));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        sum += ratio;
    }
    const double mean = sum / states;
    t.observe((hi - lo) / mean, kRatioSpreadTol);
    return make(9, "hyperdeterminant", t, kRatioSpreadTol,
                "Det(GHZ)=" + fmt("%.12g", det_ghz.real()) + " |Det(W)|=" + fmt("%.3e", std::abs(det_w)) +
                    " H222/|Det|^2=" + fmt("%.10g", mean) + " (tolerances 1e-12 / 1e-8)");
}

CriterionResult zhou(const AcceptanceOptions& o) {
    const InvariantIndex i11 = InvariantIndex::parse("11");
    const InvariantIndex i111 = InvariantIndex::parse("111");
    Tracker t;
    Tracker m11, f1, f2, product, bell, f1_twice;

    for (int s = 0; s < 50; ++s) {
        const AlgebraElement psi = random_state(2, derive_seed(o.seed, 5000 + s));
        const double i = invariant_I(psi, i11);
        m11.observe(std::abs(zhou_M(psi, i11) - (i + std::sqrt(i))), kZhouTol);
    }
    for (int s = 0; s < 20; ++s) {
        // a|000> + b|111>, |a|^2 sweeps (0, 1), b carries a phase.
        const double p = (s + 0.5) / 20.0;
        AlgebraElement psi(3, 2);
        psi = psi.with(0, std::sqrt(p)).with(7, std::polar(std::sqrt(1.0 - p), 0.3 * s));
        const double i = invariant_I(psi, i111);
        const double m = zhou_M(psi, i111);
        const double rhs = 6.0 * i * std::sqrt(std::max(0.0, 1.0 - 4.0 * i)) +
                           2.0 * std::sqrt(std::max(0.0, i + i * i - 4.0 * i * i * i));
        f1.observe(std::abs(m - rhs), kZhouTol);
        f1_twice.observe(std::abs(2.0 * m - rhs), kZhouTol);
    }
    for (int s = 0; s < 20; ++s) {
        // a|100> + b|010> + c|001> on a deterministic grid of the simplex.
        const double u = (s % 5 + 0.5) / 5.0;
        const double v = (s / 5 + 0.5) / 4.0;
        const double pa = u * v, pb = (1.0 - u) * v, pc = 1.0 - v;
        AlgebraElement psi(3, 2);
        psi = psi.with(4, std::sqrt(pa)).with(2, std::polar(std::sqrt(pb), 0.7)).with(1, std::sqrt(pc));
        const double i = invariant_I(psi, i111);
        const double m = zhou_M(psi, i111);
        f2.observe(std::abs(std::pow(m - i / 2.0, 3) - i / 4.0), kZhouTol);
    }
    for (int s = 0; s < 20; ++s) {
        const int n = 2 + s % 2;
        const AlgebraElement psi = generate_state(StateKind::Separable, n, derive_seed(o.seed, 5100 + s));
        product.observe(zhou_M(psi, InvariantIndex(std::vector<int>(static_cast<std::size_t>(n), 1))),
                        kZhouProductTol);
    }
    const double m_bell = zhou_M(generate_state(StateKind::Bell, 2, 0), i11);
    bell.observe(std::abs(m_bell - 0.75), kZhouBellTol);
    const double m_ghz = zhou_M(ghz3(), i111);

    for (const Tracker* sub : {&m11, &f1, &f2, &product, &bell}) {
        t.observe(sub->worst, kZhouTol);
        t.ok = t.ok && sub->ok;
    }
    auto flag = [](const Tracker& s) { return s.ok ? std::string("ok") : std::string("FAIL"); };
    std::string detail = "M11 " + flag(m11) + fmt(" %.1e", m11.worst) + "; f1 " + flag(f1) + fmt(" %.1e", f1.worst) +
                         "; f2 " + flag(f2) + fmt(" %.1e", f2.worst) + "; product " + flag(product) +
                         fmt(" %.1e", product.worst) + "; Bell M11=" + fmt("%.12g", m_bell) +
                         "; GHZ M111=" + fmt("%.12g", m_ghz) + "; f1 with 2M in place of M: " + flag(f1_twice) +
                         fmt(" %.1e", f1_twice.worst);
    return make(10, "Zhou invariants", t, kZhouTol, detail);
}

CriterionResult independence(std::uint64_t seed) {
    Tracker t;  // measured: number of rank mismatches
    int mismatches = 0;
    std::string ranks;
    const auto fam3 = cumulant_family(3).indices;
    const auto fam2 = cumulant_family(2).indices;
    for (int s = 0; s < 10; ++s) {
        const int r = jacobian_rank(fam3, random_state(3, derive_seed(seed, 6000 + s)));
        if (r != 5) ++mismatches;
        ranks += std::to_string(r);
    }
    const int r2 = jacobian_rank(fam2, random_state(2, derive_seed(seed, 6100)));
    if (r2 != 2) ++mismatches;
    const int r0 = jacobian_rank(fam3, AlgebraElement::identity(3, 2));
    if (r0 >= 5) ++mismatches;
    t.observe(mismatches, 0.0);
    return make(11, "independence surrogate", t, 0.0,
                "n=3 ranks " + ranks + ", n=2 rank " + std::to_string(r2) + ", |000> rank " + std::to_string(r0));
}

CriterionResult dimension_counts() {
    Tracker t;  // measured: number of failures
    long long failures = 0, total = 0;
    for (int n = 1; n <= 6; ++n) {
        for (const auto& pi : enumerate_partitions(n)) {
            for (int d : {2, 3}) {
                const DimensionCounts c = separability_dimension_counts(n, d, pi);
                // Brute-force N_pi: nonzero digit strings whose support meets 2+ blocks.
                long long brute = 0;
                for (std::size_t v = 1; v < table_size(n, d); ++v) {
                    if (splits_partition(MultiIndex::from_linear(v, n, d), pi)) ++brute;
                }
                if (!c.identity_holds || brute != c.splitting_indices) ++failures;
                ++total;
            }
        }
    }
    t.observe(static_cast<double>(failures), 0.0);
    return make(12, "dimension-count identity", t, 0.0,
                std::to_string(total) + " (partition, d) cases, n<=6, d in {2,3}");
}

std::string run_captured(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CriterionResult determinism(const AcceptanceOptions& o) {
    namespace fs = std::filesystem;
    Tracker t;  // measured: number of differing outputs
    const fs::path dir = fs::temp_directory_path() / ("qinv-accept-" + std::to_string(o.seed));
    fs::create_directories(dir);
    const std::string seed = std::to_string(o.seed);
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    const std::string sep = (dir / "sep.json").string();
    int differing = 0, commands = 0;
    auto compare = [&](const std::string& x, const std::string& y) {
        ++commands;
        if (x != y) ++differing;
    };

    run_captured({"gen", "--kind", "random", "-n", "3", "--seed", seed, "-o", a});
    run_captured({"gen", "--kind", "random", "-n", "3", "--seed", seed, "-o", b});
    compare(slurp(a), slurp(b));
    run_captured({"gen", "--kind", "separable", "-n", "3", "--partition", "1,2|3", "--seed", seed, "-o", sep});

    const std::vector<std::vector<std::string>> seeded = {
        {"invariants", "--state", a, "--all"},
        {"invariants", "--state", a, "--family", "G"},
        {"separability", "--state", sep, "--partition", "1,2|3"},
        {"twirl", "--state", a, "--index", "111", "--samples", "20000", "--seed", seed},
        {"twirl", "--state", a, "--index", "110", "--samples", "20000", "--seed", seed, "--threads", "3"},
        {"lift", "--state", a, "--trace-out", "3", "--index", "110"},
        {"zhou", "--state", a, "--index", "111"},
    };
    for (const auto& cmd : seeded) compare(run_captured(cmd), run_captured(cmd));

    // Serial reference and parallel kernel agree bit for bit.
    const AlgebraElement psi = parse_state(a);
    const InvariantIndex idx = InvariantIndex::parse("111");
    const TwirlEstimate serial = twirl_estimate_serial(psi, idx, 5000, o.seed);
    const TwirlEstimate par = twirl_estimate(psi, idx, 5000, o.seed, 4);
    compare(fmt("%a", serial.mean) + fmt("%a", serial.std_error), fmt("%a", par.mean) + fmt("%a", par.std_error));

    std::error_code ec;
    fs::remove_all(dir, ec);
    t.observe(differing, 0.0);
    return make(13, "determinism", t, 0.0,
                std::to_string(commands) + " repeated outputs compared, " + std::to_string(differing) + " differ");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o) {
    std::vector<std::function<CriterionResult()>> battery = {
        [&] { return algebra_identities(o.seed); },
        [&] { return cumulant_consistency(o.seed); },
        [&] { return lu_invariance(o.seed); },
        [&] { return sudbery_relations(o.seed); },
        [&] { return separability(o.seed); },
        [&] { return monte_carlo(o); },
        [&] { return lift_consistency(o.seed); },
        [&] { return transvectant_xi(o); },
        [&] { return hyperdeterminant_check(o); },
        [&] { return zhou(o); },
        [&] { return independence(o.seed); },
        [&] { return dimension_counts(); },
    };
    battery.push_back([&] { return determinism(o); });
    auto wanted = [&](int id) {
        if (id == 13 && !o.determinism) return false;
        return o.only.empty() || std::find(o.only.begin(), o.only.end(), id) != o.only.end();
    };
    static const char* const names[] = {"algebra identities",   "cumulant consistency",   "local-unitary invariance",
                                        "Sudbery relations",    "separability criterion", "Monte-Carlo oracle",
                                        "lift/trace consistency", "transvectant xi",      "hyperdeterminant",
                                        "Zhou invariants",      "independence surrogate", "dimension-count identity",
                                        "determinism"};
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < battery.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!wanted(id)) continue;
        try {
            out.push_back(battery[i]());
        } catch (const std::exception& e) {
            out.push_back(CriterionResult{id, names[i], false, NAN, 0.0, std::string("exception: ") + e.what()});
        }
    }
    return out;
}

std::string format_criterion(const CriterionResult& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%s] %02d %s: measured=%.3e threshold=%.1e", r.passed ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.measured, r.threshold);
    return std::string(buf) + " (" + r.detail + ")";
}

}  // namespace qinv
