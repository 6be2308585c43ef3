#include "qinv/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qinv/acceptance.hpp"
#include "qinv/cumulant.hpp"
#include "qinv/density.hpp"
#include "qinv/error.hpp"
#include "qinv/haar.hpp"
#include "qinv/invariants.hpp"
#include "qinv/report.hpp"
#include "qinv/state_io.hpp"
#include "qinv/transvectant.hpp"

namespace qinv {

namespace {

constexpr double kSeparabilityTol = 1e-10;  // times (norm^2)^theta
constexpr double kLiftTol = 1e-10;          // times max(1, I)
constexpr double kTwirlBand = 5.0;          // standard errors
constexpr std::uint64_t kFallbackSeed = 1;

std::uint64_t default_seed() {
    const char* env = std::getenv("QINV_SEED");
    if (env == nullptr || *env == '\0') return kFallbackSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') throw CLI::ValidationError("QINV_SEED", "must be an unsigned integer");
    return v;
}

// "1,3" (1-based) -> {0, 2}
std::vector<int> parse_site_list(const std::string& text, int n) {
    std::vector<int> sites;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        int site = 0;
        try {
            std::size_t used = 0;
            site = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("site list: \"" + item + "\" is not an integer");
        }
        if (site < 1 || site > n) throw ParseError("site list: site " + item + " outside 1.." + std::to_string(n));
        if (std::find(sites.begin(), sites.end(), site - 1) != sites.end()) {
            throw ParseError("site list: site " + item + " repeated");
        }
        sites.push_back(site - 1);
    }
    if (sites.empty()) throw ParseError("site list is empty");
    std::sort(sites.begin(), sites.end());
    return sites;
}

InvariantIndex parse_index_for(const std::string& text, const AlgebraElement& state) {
    InvariantIndex idx = InvariantIndex::parse(text);
    if (idx.sites() != state.sites()) {
        throw ParseError("index \"" + text + "\" has length " + std::to_string(idx.sites()) + ", state has n = " +
                         std::to_string(state.sites()));
    }
    return idx;
}

ReportDocument start_report(const std::string& command, const AlgebraElement& state) {
    ReportDocument r;
    r.command = command;
    r.input_digest = state_digest(state);
    return r;
}

struct Options {
    std::string state_path;
    std::vector<std::string> indices;
    std::string family;
    bool all = false;
    int threads = 0;
    std::string partition;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    std::string trace_out;
    std::string kind;
    int n = 0;
    std::string output;
    bool quick = false;
};

int cmd_invariants(const Options& o, std::ostream& out) {
    const AlgebraElement psi = parse_state(o.state_path);
    ReportDocument r = start_report("invariants", psi);
    const std::string family = o.family.empty() ? "cumulant" : o.family;
    if (family == "cumulant") {
        std::vector<InvariantIndex> list;
        if (o.all || o.indices.empty()) {
            const CumulantFamily fam = cumulant_family(psi.sites());
            list = fam.indices;
            if (fam.total_invariants) r.integer_fields.emplace_back("total_invariants", *fam.total_invariants);
        }
        for (const auto& text : o.indices) {
            InvariantIndex idx = parse_index_for(text, psi);
            if (std::find(list.begin(), list.end(), idx) == list.end()) list.push_back(std::move(idx));
        }
        r.entries = evaluate_family(psi, list, o.threads).entries;
    } else if (family == "G" || family == "H") {
        const CovariantFamily f = family == "G" ? CovariantFamily::G : CovariantFamily::H;
        std::vector<std::string> patterns = o.indices;
        if (o.all || patterns.empty()) patterns = family_patterns(f, psi.sites());
        const int degree = f == CovariantFamily::G ? 4 : 8;
        for (const auto& pattern : patterns) {
            r.entries.push_back(
                make_entry(family + pattern, family_covariants(psi, f, pattern), degree, Method::Transvectant));
        }
    } else {
        throw CLI::ValidationError("--family", "must be cumulant, G or H");
    }
    out << r.dump() << "\n";
    return kExitOk;
}

int cmd_separability(const Options& o, std::ostream& out) {
    const AlgebraElement psi = parse_state(o.state_path);
    const SetPartition pi = SetPartition::parse(o.partition, psi.sites());
    ReportDocument r = start_report("separability", psi);
    r.text_fields.emplace_back("partition", pi.str());
    r.number_fields.emplace_back("tolerance_scale", kSeparabilityTol);
    const double norm2 = psi.norm_squared();
    bool separable = true;
    for (const auto& idx : higher_indices(psi.sites())) {
        if (!splits_partition(idx.multi_index(), pi)) continue;
        const double value = invariant_I(psi, idx);
        const double tol = kSeparabilityTol * std::pow(norm2, idx.theta());
        const bool vanishes = value <= tol;
        separable = separable && vanishes;
        r.entries.push_back(make_entry(idx.str(), value, idx.degree(), Method::ClosedForm,
                                       vanishes ? "splitting, vanishes" : "splitting, nonzero"));
    }
    r.verdict = separable ? "separable" : "not separable";
    out << r.dump() << "\n";
    return kExitOk;
}

int cmd_twirl(const Options& o, std::ostream& out) {
    const AlgebraElement psi = parse_state(o.state_path);
    ReportDocument r = start_report("twirl", psi);
    r.seed = o.seed;
    r.integer_fields.emplace_back("samples", static_cast<long long>(o.samples));
    bool agree = true;
    for (const auto& text : o.indices) {
        const InvariantIndex idx = parse_index_for(text, psi);
        const double exact = invariant_I(psi, idx);
        const TwirlEstimate est = twirl_estimate(psi, idx, o.samples, o.seed, o.threads);
        InvariantEntry mc = make_entry(idx.str(), est.mean, idx.degree(), Method::MonteCarlo);
        mc.std_error = est.std_error;
        const double z = std::abs(est.mean - exact) / std::max(est.std_error, 1e-15);
        agree = agree && z <= kTwirlBand;
        r.entries.push_back(make_entry(idx.str(), exact, idx.degree(), Method::ClosedForm));
        r.entries.push_back(std::move(mc));
    }
    r.verdict = agree ? "agree" : "disagree";
    out << r.dump() << "\n";
    return agree ? kExitOk : kExitVerificationFailed;
}

int cmd_lift(const Options& o, std::ostream& out) {
    const AlgebraElement psi = parse_state(o.state_path);
    const int n = psi.sites();
    const std::vector<int> traced = parse_site_list(o.trace_out, n);
    ReportDocument r = start_report("lift", psi);
    std::vector<int> keep;
    for (int k = 0; k < n; ++k) {
        if (std::find(traced.begin(), traced.end(), k) == traced.end()) keep.push_back(k);
    }
    if (keep.empty()) throw ParseError("--trace-out removes every site");
    std::string traced_text;
    for (int k : traced) traced_text += (traced_text.empty() ? "" : ",") + std::to_string(k + 1);
    r.text_fields.emplace_back("trace_out", traced_text);
    bool agree = true;
    const DensityMatrix reduced = partial_trace(DensityMatrix::from_pure(psi), keep);
    for (const auto& text : o.indices) {
        const InvariantIndex idx = parse_index_for(text, psi);
        std::vector<int> bits;
        for (int k : traced) {
            if (idx[k] != 0) throw ParseError("index " + text + " has a 1 at traced-out site " + std::to_string(k + 1));
        }
        for (int k : keep) bits.push_back(idx[k]);
        const InvariantIndex local(bits);
        const double pure = invariant_I(psi, idx);
        const double mixed = mixed_hatI(reduced, local);
        agree = agree && std::abs(pure - mixed) <= kLiftTol * std::max(1.0, pure);
        r.entries.push_back(make_entry(idx.str(), pure, idx.degree(), Method::ClosedForm));
        r.entries.push_back(make_entry(local.str(), mixed, local.degree(), Method::ClosedForm,
                                       "mixed-state form on the reduced density matrix"));
    }
    r.verdict = agree ? "consistent" : "inconsistent";
    out << r.dump() << "\n";
    return agree ? kExitOk : kExitVerificationFailed;
}

int cmd_zhou(const Options& o, std::ostream& out) {
    const AlgebraElement psi = parse_state(o.state_path);
    ReportDocument r = start_report("zhou", psi);
    for (const auto& text : o.indices) {
        const InvariantIndex idx = parse_index_for(text, psi);
        r.entries.push_back(make_entry(idx.str(), zhou_M(psi, idx), 0, Method::Zhou,
                                       "half trace norm of the cumulant operator; not polynomial"));
    }
    out << r.dump() << "\n";
    return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
    std::optional<SetPartition> pi;
    if (!o.partition.empty()) pi = SetPartition::parse(o.partition, o.n);
    const AlgebraElement psi = generate_state(parse_state_kind(o.kind), o.n, o.seed, pi);
    if (o.output.empty() || o.output == "-") {
        out << write_state_json(psi) << "\n";
        return kExitOk;
    }
    write_state(psi, o.output);
    ReportDocument r = start_report("gen", psi);
    r.seed = o.seed;
    r.text_fields.emplace_back("kind", std::string(state_kind_name(parse_state_kind(o.kind))));
    if (pi) r.text_fields.emplace_back("partition", pi->str());
    out << r.dump() << "\n";
    return kExitOk;
}

int cmd_selftest(const Options& o, std::ostream& out, std::ostream& err) {
    AcceptanceOptions opts;
    opts.seed = o.seed;
    opts.threads = o.threads;
    opts.quick = o.quick;
    ReportDocument r;
    r.command = "selftest";
    r.seed = o.seed;
    r.criteria = run_acceptance(opts);
    bool ok = true;
    for (const auto& c : r.criteria) {
        err << format_criterion(c) << "\n";
        ok = ok && c.passed;
    }
    r.verdict = ok ? "pass" : "fail";
    out << r.dump() << "\n";
    return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local-unitary invariants of multi-qubit states", "qinv"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));
    Options o;

    auto* inv = app.add_subcommand("invariants", "closed-form invariant values");
    inv->add_option("--state", o.state_path, "state JSON file")->required();
    inv->add_option("--index", o.indices, "index bit string (or family pattern)");
    inv->add_option("--family", o.family, "cumulant | G | H");
    inv->add_flag("--all", o.all, "every index of the family");
    inv->add_option("--threads", o.threads, "worker threads (0 = default)");

    auto* sep = app.add_subcommand("separability", "splitting invariants and verdict for a partition");
    sep->add_option("--state", o.state_path)->required();
    sep->add_option("--partition", o.partition, "e.g. 1,2|3")->required();

    auto* tw = app.add_subcommand("twirl", "Monte-Carlo Haar twirl against the closed form");
    tw->add_option("--state", o.state_path)->required();
    tw->add_option("--index", o.indices)->required();
    tw->add_option("--samples", o.samples)->check(CLI::Range(std::size_t{100}, std::size_t{1} << 32));
    tw->add_option("--seed", o.seed, "default: $QINV_SEED or 1");
    tw->add_option("--threads", o.threads);

    auto* lift = app.add_subcommand("lift", "pure invariant against its mixed form on a partial trace");
    lift->add_option("--state", o.state_path)->required();
    lift->add_option("--trace-out", o.trace_out, "1-based sites, e.g. 3 or 2,4")->required();
    lift->add_option("--index", o.indices)->required();

    auto* zh = app.add_subcommand("zhou", "trace-norm cumulant invariant M");
    zh->add_option("--state", o.state_path)->required();
    zh->add_option("--index", o.indices)->required();

    auto* gen = app.add_subcommand("gen", "write a named or random state");
    gen->add_option("--kind", o.kind, "random | bell | ghz | w | separable")->required();
    gen->add_option("-n", o.n, "qubits")->required();
    gen->add_option("-o,--output", o.output, "output file (stdout if omitted)");
    gen->add_option("--seed", o.seed, "default: $QINV_SEED or 1");
    gen->add_option("--partition", o.partition, "blocks for separable states, e.g. 1,2|3");

    auto* self = app.add_subcommand("selftest", "run the acceptance battery");
    self->add_option("--seed", o.seed, "default: $QINV_SEED or 1");
    self->add_option("--threads", o.threads);
    self->add_flag("--quick", o.quick, "reduced sample counts");

    try {
        o.seed = default_seed();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*inv) return cmd_invariants(o, out);
        if (*sep) return cmd_separability(o, out);
        if (*tw) return cmd_twirl(o, out);
        if (*lift) return cmd_lift(o, out);
        if (*zh) return cmd_zhou(o, out);
        if (*gen) return cmd_gen(o, out);
        if (*self) return cmd_selftest(o, out, err);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qinv
